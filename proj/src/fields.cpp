#include "cyclo/fields.hpp"

#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"
#include "fft.hpp"
#include "xgrid.hpp"

namespace cyclo {

using std::numbers::pi;

namespace {

double knorm(const IVec3& k) { return std::sqrt(double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2])); }

}  // namespace

CVec3 w_hat(const InteractionPotential& w, const IVec3& k) {
  const double s = w.amplitude / (1.0 + std::pow(knorm(k), w.gamma));
  const cplx I(0.0, 1.0);
  if (w.kind == PotentialKind::perpendicular_odd) {
    const double sg = k[2] > 0 ? 1.0 : (k[2] < 0 ? -1.0 : 0.0);
    return CVec3{I * sg * s, 0.0, 0.0};
  }
  return CVec3{-2.0 * pi * I * double(k[0]) * s, -2.0 * pi * I * double(k[1]) * s,
               -2.0 * pi * I * double(k[2]) * s};
}

InteractionPotential make_potential(double gamma, double amplitude, PotentialKind kind, int kmax) {
  if (!(gamma > 1.0)) throw ConfigError("potential: gamma must be > 1");
  if (!(amplitude >= 0.0)) throw ConfigError("potential: amplitude must be >= 0");
  InteractionPotential w{gamma, amplitude, kind};
  if (kind != PotentialKind::perpendicular_odd) return w;
  for (int a = -kmax; a <= kmax; ++a)
    for (int b = -kmax; b <= kmax; ++b)
      for (int c = -kmax; c <= kmax; ++c) {
        const IVec3 k{a, b, c};
        const CVec3 wk = w_hat(w, k);
        const double mag = std::sqrt(std::norm(wk[0]) + std::norm(wk[1]) + std::norm(wk[2]));
        if (mag > 1.0 / (1.0 + std::pow(knorm(k), gamma)) * (1 + 1e-14))
          throw ConfigError("potential: |W(k)| exceeds 1/(1+|k|^gamma) (amplitude must be <= 1)");
        const CVec3 wm = w_hat(w, IVec3{a, b, -c});
        for (int i = 0; i < 3; ++i)
          if (std::abs(wk[i] + wm[i]) > 1e-15) throw ConfigError("potential: W is not odd in x3");
        if (wk[2] != cplx(0.0)) throw ConfigError("potential: third component must vanish");
      }
  return w;
}

FieldState zero_fields(const Geometry& g) {
  FieldState s;
  s.e_hat.assign(g.n_modes(), CVec3{});
  s.b_hat.assign(g.n_modes(), CVec3{});
  return s;
}

std::vector<CVec3> electric_field(const Geometry& g, const std::vector<cplx>& rho_hat,
                                  const InteractionPotential& w) {
  std::vector<CVec3> e(g.n_modes());
  for (std::size_t m = 0; m < e.size(); ++m) {
    const CVec3 wk = w_hat(w, mode_vector(g, m));
    for (int i = 0; i < 3; ++i) e[m][i] = wk[i] * rho_hat[m];
  }
  return e;
}

std::vector<CVec3> advance_b(const Geometry& g, const std::vector<CVec3>& b_hat,
                             const std::vector<CVec3>& e_old, const std::vector<CVec3>& e_new,
                             double dt) {
  std::vector<CVec3> b = b_hat;
  const cplx c(0.0, 2.0 * pi * 0.5 * dt);
  for (std::size_t m = 0; m < b.size(); ++m) {
    const Vec3 k = to_vec(mode_vector(g, m));
    CVec3 e;
    for (int i = 0; i < 3; ++i) e[i] = e_old[m][i] + e_new[m][i];
    b[m][0] += c * (k[1] * e[2] - k[2] * e[1]);
    b[m][1] += c * (k[2] * e[0] - k[0] * e[2]);
    b[m][2] += c * (k[0] * e[1] - k[1] * e[0]);
  }
  return b;
}

double field_energy(const std::vector<CVec3>& f) {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
  return s;
}

double max_divergence(const Geometry& g, const std::vector<CVec3>& b_hat) {
  double worst = 0.0;
  for (std::size_t m = 0; m < b_hat.size(); ++m) {
    const Vec3 k = to_vec(mode_vector(g, m));
    worst = std::max(worst, std::abs(k[0] * b_hat[m][0] + k[1] * b_hat[m][1] + k[2] * b_hat[m][2]));
  }
  return worst;
}

SpectralDistribution lorentz_term(const SpectralDistribution& dist, const FieldState& fields,
                                  const Kinematics& kin) {
  const Geometry& g = dist.geometry;
  const std::size_t nvs = g.v_size();
  const int vdim = g.vdim();
  const auto dims = g.v_dims();

  // spectral velocity gradient of every mode
  std::vector<std::vector<cplx>> grad(3, std::vector<cplx>(dist.data.size()));
  std::vector<std::vector<double>> eta(3);
  for (int a = 0; a < 3; ++a) eta[a] = eta_axis(g, a);
  for (int a = 0; a < 3; ++a) {
    if (vdim == 1 && a != 2) continue;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(g.n_modes()); ++m) {
      cplx* blk = grad[a].data() + m * nvs;
      std::copy(dist.mode(m), dist.mode(m) + nvs, blk);
      v_transform_block(g, blk, -1);
      std::size_t idx = 0;
      for (int i = 0; i < dims[0]; ++i)
        for (int j = 0; j < dims[1]; ++j)
          for (int l = 0; l < dims[2]; ++l, ++idx) {
            const int ia[3] = {i, j, l};
            double e = eta[a][ia[a]];
            // drop the unpaired Nyquist frequency
            if (ia[a] == g.axis_points(a) / 2) e = 0.0;
            blk[idx] *= cplx(0.0, 2.0 * pi * e);
          }
      v_transform_block(g, blk, +1);
    }
  }

  // fields and gradients on the padded physical x grid
  XGrid xg(g, true);
  std::vector<std::vector<cplx>> gx(3);
  for (int a = 0; a < 3; ++a)
    if (vdim == 3 || a == 2) gx[a] = xg.to_physical(grad[a]);
  const auto ex = xg.field_to_physical(fields.e_hat);
  const auto bx = xg.field_to_physical(fields.b_hat);

  const auto v1 = v_axis(g, 0), v2 = v_axis(g, 1), v3 = v_axis(g, 2);
  std::vector<cplx> out(xg.n_points() * nvs);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(xg.n_points()); ++p) {
    const Vec3 E = ex[p], B = bx[p];
    const Vec3 Bt{B[0], B[1], B[2] - kin.omega};
    std::size_t idx = 0;
    for (double a : v1)
      for (double b : v2)
        for (double c : v3) {
          const Vec3 v{a, b, c};
          const Vec3 F{E[0] + v[1] * Bt[2] - v[2] * Bt[1], E[1] + v[2] * Bt[0] - v[0] * Bt[2],
                       E[2] + v[0] * Bt[1] - v[1] * Bt[0]};
          cplx s(0.0);
          const std::size_t q = p * nvs + idx;
          if (vdim == 3) s = F[0] * gx[0][q] + F[1] * gx[1][q] + F[2] * gx[2][q];
          else s = F[2] * gx[2][q];
          out[q] = s;
          ++idx;
        }
  }
  SpectralDistribution res(g);
  res.time = dist.time;
  res.data = xg.to_spectral(out);
  return res;
}

}  // namespace cyclo
