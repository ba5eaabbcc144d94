#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace cyclo::fft {

namespace {

using Key = std::tuple<int, int, int, int, int, int, std::ptrdiff_t, std::ptrdiff_t>;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::map<Key, fftw_plan>& plan_cache() {
  static std::map<Key, fftw_plan> cache;
  return cache;
}

fftw_plan make_plan(const std::array<int, 3>& dims, int axis, int sign, int batch,
                    std::ptrdiff_t batch_stride, std::ptrdiff_t es) {
  const std::ptrdiff_t strides[3] = {std::ptrdiff_t(dims[1]) * dims[2] * es, dims[2] * es, es};
  fftw_iodim dim{dims[axis], int(strides[axis]), int(strides[axis])};
  std::vector<fftw_iodim> many;
  for (int a = 0; a < 3; ++a) {
    if (a == axis || dims[a] == 1) continue;
    many.push_back(fftw_iodim{dims[a], int(strides[a]), int(strides[a])});
  }
  if (batch > 1) many.push_back(fftw_iodim{batch, int(batch_stride), int(batch_stride)});

  std::size_t total = std::size_t(dims[0]) * dims[1] * dims[2] * es;
  if (batch > 1) total += std::size_t(batch - 1) * batch_stride;
  auto* buf = fftw_alloc_complex(total);
  fftw_plan p = fftw_plan_guru_dft(1, &dim, int(many.size()), many.data(), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  return p;
}

}  // namespace

AxisPlan::AxisPlan(const std::array<int, 3>& dims, int axis, int sign, int batch,
                   std::ptrdiff_t batch_stride, std::ptrdiff_t elem_stride) {
  const Key key{dims[0], dims[1], dims[2], axis, sign, batch, batch > 1 ? batch_stride : 0, elem_stride};
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto& cache = plan_cache();
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_plan(dims, axis, sign, batch, batch_stride, elem_stride)).first;
  plan_ = it->second;
}

void AxisPlan::execute(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_), p, p);
}

void transform_axes(cplx* data, const std::array<int, 3>& dims, std::initializer_list<int> axes,
                    int sign) {
  for (int a : axes) {
    if (dims[a] == 1) continue;
    AxisPlan(dims, a, sign).execute(data);
  }
}

}  // namespace cyclo::fft
