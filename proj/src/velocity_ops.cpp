#include "velocity_ops.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "fft.hpp"

namespace cyclo::vops {

using std::numbers::pi;

namespace {

// Multiply the axis-a spectrum by exp(2 pi i eta_a * alpha * v_b), i.e.
// g(.., v_a, .., v_b, ..) = h(.., v_a + alpha v_b, .., v_b, ..).
void shear(const Geometry& g, cplx* block, int a, int b, double alpha) {
  const auto dims = g.v_dims();
  const int na = dims[a];
  const auto eta = eta_axis(g, a);
  const auto vb = v_axis(g, b);
  std::vector<cplx> table(std::size_t(na) * dims[b]);
  for (int j = 0; j < na; ++j)
    for (int i = 0; i < dims[b]; ++i)
      table[std::size_t(j) * dims[b] + i] =
          j == na / 2 ? cplx(0.0) : std::polar(1.0 / na, 2.0 * pi * eta[j] * alpha * vb[i]);
  fft::AxisPlan(dims, a, -1).execute(block);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < dims[0]; ++i0)
    for (int i1 = 0; i1 < dims[1]; ++i1)
      for (int i2 = 0; i2 < dims[2]; ++i2, ++idx) {
        const int ii[3] = {i0, i1, i2};
        block[idx] *= table[std::size_t(ii[a]) * dims[b] + ii[b]];
      }
  fft::AxisPlan(dims, a, +1).execute(block);
}

}  // namespace

void shift(const Geometry& g, cplx* block, const Vec3& d) {
  const auto dims = g.v_dims();
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0 || dims[a] == 1) continue;
    const int na = dims[a];
    const auto eta = eta_axis(g, a);
    std::vector<cplx> ph(na);
    for (int j = 0; j < na; ++j) ph[j] = j == na / 2 ? cplx(0.0) : std::polar(1.0 / na, -2.0 * pi * eta[j] * d[a]);
    fft::AxisPlan(dims, a, -1).execute(block);
    std::size_t idx = 0;
    for (int i0 = 0; i0 < dims[0]; ++i0)
      for (int i1 = 0; i1 < dims[1]; ++i1)
        for (int i2 = 0; i2 < dims[2]; ++i2, ++idx) {
          const int ii[3] = {i0, i1, i2};
          block[idx] *= ph[ii[a]];
        }
    fft::AxisPlan(dims, a, +1).execute(block);
  }
}

void rotate(const Geometry& g, cplx* block, int a, int b, double theta) {
  if (theta == 0.0) return;
  const int pieces = int(std::ceil(std::abs(theta) / (pi / 4)));
  const double th = theta / pieces;
  // Q^{-1} = A B A with A = [[1, tan(th/2)], [0, 1]], B = [[1, 0], [-sin th, 1]]
  const double t = std::tan(0.5 * th), s = std::sin(th);
  for (int p = 0; p < pieces; ++p) {
    shear(g, block, a, b, t);
    shear(g, block, b, a, -s);
    shear(g, block, a, b, t);
  }
}

Mat3 plane_rotation(int a, int b, double theta) {
  Mat3 m{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  const double c = std::cos(theta), s = std::sin(theta);
  m[a][a] = c;
  m[a][b] = -s;
  m[b][a] = s;
  m[b][b] = c;
  return m;
}

void phase(const Geometry& g, cplx* block, const Vec3& c) {
  const auto dims = g.v_dims();
  std::vector<cplx> p[3];
  for (int a = 0; a < 3; ++a) {
    const auto v = v_axis(g, a);
    p[a].resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) p[a][i] = std::polar(1.0, 2.0 * pi * c[a] * v[i]);
  }
  std::size_t idx = 0;
  for (int i0 = 0; i0 < dims[0]; ++i0)
    for (int i1 = 0; i1 < dims[1]; ++i1) {
      const cplx q = p[0][i0] * p[1][i1];
      for (int i2 = 0; i2 < dims[2]; ++i2, ++idx) block[idx] *= q * p[2][i2];
    }
}

namespace {

void apply_axis_weights(const Geometry& g, cplx* block, const std::array<bool, 3>& axes,
                        double (*weight)(double, double), double param) {
  const auto dims = g.v_dims();
  for (int a = 0; a < 3; ++a) {
    if (!axes[a] || dims[a] == 1) continue;
    const int na = dims[a];
    std::vector<double> keep(na);
    for (int j = 0; j < na; ++j) {
      const int jj = j < na / 2 ? j : j - na;
      keep[j] = j == na / 2 ? 0.0 : weight(std::abs(jj) / double(na / 2), param) / na;
    }
    fft::AxisPlan(dims, a, -1).execute(block);
    std::size_t idx = 0;
    for (int i0 = 0; i0 < dims[0]; ++i0)
      for (int i1 = 0; i1 < dims[1]; ++i1)
        for (int i2 = 0; i2 < dims[2]; ++i2, ++idx) {
          const int ii[3] = {i0, i1, i2};
          block[idx] *= keep[ii[a]];
        }
    fft::AxisPlan(dims, a, +1).execute(block);
  }
}

}  // namespace

void filter(const Geometry& g, cplx* block, const std::array<bool, 3>& axes, double fraction) {
  apply_axis_weights(g, block, axes, [](double x, double f) { return x <= f ? 1.0 : 0.0; }, fraction);
}

void smooth_filter(const Geometry& g, cplx* block, const std::array<bool, 3>& axes, double strength) {
  apply_axis_weights(g, block, axes, [](double x, double s) { return std::exp(-s * std::pow(x, 36)); },
                     strength);
}

}  // namespace cyclo::vops
