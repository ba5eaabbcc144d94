#include "xgrid.hpp"

#include <algorithm>

#include "fft.hpp"

namespace cyclo {

XGrid::XGrid(const Geometry& g, bool dealias) : g_(g) {
  nx_ = dealias ? 3 * g.kmax + 1 : 2 * g.kmax + 1;
  n_points_ = g.dim_x == 3 ? std::size_t(nx_) * nx_ * nx_ : std::size_t(nx_);
  slots_.resize(g.n_modes());
  for (std::size_t m = 0; m < g.n_modes(); ++m) slots_[m] = slot(mode_vector(g, m));
}

std::size_t XGrid::slot(const IVec3& k) const {
  auto w = [&](int c) { return std::size_t(c < 0 ? c + nx_ : c); };
  if (g_.dim_x == 1) return w(k[2]);
  return (w(k[0]) * nx_ + w(k[1])) * nx_ + w(k[2]);
}

Vec3 XGrid::point(std::size_t p) const {
  const double h = 1.0 / nx_;
  if (g_.dim_x == 1) return Vec3{0.0, 0.0, p * h};
  return Vec3{double(p / (nx_ * nx_)) * h, double((p / nx_) % nx_) * h, double(p % nx_) * h};
}

void XGrid::transform(cplx* data, int sign) const {
  const std::ptrdiff_t nvs = std::ptrdiff_t(g_.v_size());
  if (g_.dim_x == 1) {
    fft::AxisPlan({1, 1, nx_}, 2, sign, int(nvs), 1, nvs).execute(data);
    return;
  }
  for (int a = 0; a < 3; ++a) fft::AxisPlan({nx_, nx_, nx_}, a, sign, int(nvs), 1, nvs).execute(data);
}

void XGrid::to_physical(const std::vector<cplx>& spectral, std::vector<cplx>& physical) const {
  const std::size_t nvs = g_.v_size();
  physical.assign(n_points_ * nvs, cplx(0.0));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(slots_.size()); ++m)
    std::copy(spectral.begin() + m * nvs, spectral.begin() + (m + 1) * nvs,
              physical.begin() + slots_[m] * nvs);
  transform(physical.data(), +1);
}

std::vector<cplx> XGrid::to_physical(const std::vector<cplx>& spectral) const {
  std::vector<cplx> out;
  to_physical(spectral, out);
  return out;
}

void XGrid::to_spectral(std::vector<cplx>& physical, std::vector<cplx>& spectral) const {
  const std::size_t nvs = g_.v_size();
  transform(physical.data(), -1);
  const double scale = 1.0 / double(n_points_);
  spectral.resize(slots_.size() * nvs);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(slots_.size()); ++m)
    for (std::size_t i = 0; i < nvs; ++i) spectral[m * nvs + i] = physical[slots_[m] * nvs + i] * scale;
}

std::vector<cplx> XGrid::to_spectral(const std::vector<cplx>& physical) const {
  std::vector<cplx> tmp = physical, out;
  to_spectral(tmp, out);
  return out;
}

std::vector<Vec3> XGrid::field_to_physical(const std::vector<CVec3>& f) const {
  std::vector<cplx> buf(n_points_ * 3, cplx(0.0));
  for (std::size_t m = 0; m < slots_.size(); ++m)
    for (int i = 0; i < 3; ++i) buf[slots_[m] * 3 + i] = f[m][i];
  if (g_.dim_x == 1) {
    fft::AxisPlan({1, 1, nx_}, 2, +1, 3, 1, 3).execute(buf.data());
  } else {
    for (int a = 0; a < 3; ++a) fft::AxisPlan({nx_, nx_, nx_}, a, +1, 3, 1, 3).execute(buf.data());
  }
  std::vector<Vec3> out(n_points_);
  for (std::size_t p = 0; p < n_points_; ++p)
    for (int i = 0; i < 3; ++i) out[p][i] = buf[p * 3 + i].real();
  return out;
}

}  // namespace cyclo
