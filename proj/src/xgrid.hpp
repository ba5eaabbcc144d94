#pragma once

#include <vector>

#include "cyclo/fields.hpp"
#include "cyclo/phase_space.hpp"

namespace cyclo {

// Physical x grid for pointwise products. With dealiasing the grid has
// 3 kmax + 1 points per axis so quadratic products do not alias back into
// the retained modes. Physical data are stored x-major: [point][v].
class XGrid {
 public:
  XGrid(const Geometry& g, bool dealias);

  int nx() const { return nx_; }
  std::size_t n_points() const { return n_points_; }
  Vec3 point(std::size_t p) const;

  std::vector<cplx> to_physical(const std::vector<cplx>& spectral) const;
  std::vector<cplx> to_spectral(const std::vector<cplx>& physical) const;
  // in-place variants working on a caller buffer of n_points * v_size
  void to_physical(const std::vector<cplx>& spectral, std::vector<cplx>& physical) const;
  void to_spectral(std::vector<cplx>& physical, std::vector<cplx>& spectral) const;

  std::vector<Vec3> field_to_physical(const std::vector<CVec3>& f) const;

 private:
  std::size_t slot(const IVec3& k) const;
  void transform(cplx* data, int sign) const;

  Geometry g_;
  int nx_;
  std::size_t n_points_;
  std::vector<std::size_t> slots_;
};

}  // namespace cyclo
