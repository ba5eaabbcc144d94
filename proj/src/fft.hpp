#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace cyclo::fft {

using cplx = std::complex<double>;

// Unnormalized 1-D transforms along one axis of a row-major block of shape
// dims, repeated `batch` times at `batch_stride` elements apart. sign = -1 is
// the forward exp(-2 pi i jk/n) transform. Plans are cached and shared; the
// execute call is safe to use concurrently on distinct data.
class AxisPlan {
 public:
  // elem_stride spreads the block apart in memory (interleaved batches).
  AxisPlan(const std::array<int, 3>& dims, int axis, int sign, int batch = 1,
           std::ptrdiff_t batch_stride = 0, std::ptrdiff_t elem_stride = 1);
  void execute(cplx* data) const;

 private:
  void* plan_;
};

// Forward (sign -1) or backward transform along every axis listed.
void transform_axes(cplx* data, const std::array<int, 3>& dims, std::initializer_list<int> axes,
                    int sign);

}  // namespace cyclo::fft
