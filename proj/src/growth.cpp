#include "cyclo/growth.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "cyclo/error.hpp"
#include "cyclo/kernels.hpp"

namespace cyclo {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 7>;

double slope_fit(const std::vector<double>& t, const std::vector<double>& phi, double t0) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0) continue;
    const double y = std::log(phi[i]);
    sx += t[i];
    sy += y;
    sxx += t[i] * t[i];
    sxy += t[i] * y;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

GrowthResult growth_control_solve(double amplitude, const GrowthKernels& kernels,
                                  const std::vector<cplx>& k0_kernel, double dt, double t_end,
                                  double kappa_margin, double kappa_min) {
  const auto& ep = kernels.echo;
  validate(ep);
  if (!(amplitude > 0)) throw ConfigError("growth: amplitude must be > 0");
  if (!(kernels.c >= 0)) throw ConfigError("growth: K1 coefficient must be >= 0");
  if (!(dt > 0) || !(t_end > dt)) throw ConfigError("growth: need 0 < dt < t_end");
  if (kappa_margin < kappa_min)
    throw ConfigError("growth: stability margin " + std::to_string(kappa_margin) + " below " +
                      std::to_string(kappa_min));
  const std::size_t n = std::size_t(std::llround(t_end / dt)) + 1;
  if (k0_kernel.size() < n) throw ConfigError("growth: K0 table shorter than the horizon");

  GrowthResult r;
  r.amplitude = amplitude;
  r.kappa_margin = kappa_margin;
  r.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.t[i] = i * dt;

  // product weights of the damping kernels against the hat functions
  const int sub = std::max(1, int(std::ceil(dt / quad_width(ep))));
  auto damping = [&](double t, double tau) {
    double v = ep.c0 / std::pow(1.0 + tau, ep.m);
    if (kernels.c > 0) v += kernels.c * kernel_value(t, tau, ep);
    if (kernels.k0) v += kernels.k0(t, tau);
    return v;
  };
  const auto& x = Gauss::abscissa();
  const auto& wq = Gauss::weights();
  // cell j contributes to the hats of nodes j and j + 1
  std::vector<double> wl, wr;
  auto weights_row = [&](std::size_t i, std::vector<double>& w) {
    const double t = r.t[i], h = dt / sub, half = 0.5 * h;
    wl.assign(i, 0.0);
    wr.assign(i, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t j = 0; j < std::ptrdiff_t(i); ++j) {
      const double a = r.t[j];
      for (int s = 0; s < sub; ++s) {
        const double mid = a + (s + 0.5) * h;
        for (std::size_t q = 0; q < x.size(); ++q)
          for (int sg : {-1, 1}) {
            if (q == 0 && x[0] == 0.0 && sg > 0) continue;
            const double tau = mid + sg * half * x[q];
            const double v = half * wq[q] * damping(t, tau);
            wl[j] += v * (a + dt - tau) / dt;
            wr[j] += v * (tau - a) / dt;
          }
      }
    }
    w.assign(i + 1, 0.0);
    for (std::size_t j = 0; j < i; ++j) {
      w[j] += wl[j];
      w[j + 1] += wr[j];
    }
  };

  std::vector<cplx> Phi(n);
  r.phi.resize(n);
  Phi[0] = amplitude;
  r.phi[0] = amplitude;
  std::vector<double> w;
  const cplx k00 = 0.5 * dt * k0_kernel[0];
  for (std::size_t i = 1; i < n; ++i) {
    weights_row(i, w);
    double s_known = amplitude;
    for (std::size_t j = 0; j < i; ++j) s_known += w[j] * r.phi[j];
    const cplx hist = dt * (0.5 * k0_kernel[i] * Phi[0] + kernels::history_sum(k0_kernel.data(), Phi.data(), i));
    // Phi_i = s_known + w_ii |Phi_i| + hist + k00 Phi_i, solved by fixed point
    if (w[i] + std::abs(k00) >= 1.0) throw NumericError("growth: step too large for the implicit update");
    cplx x = Phi[i - 1];
    for (int it = 0; it < 200; ++it) {
      const cplx nx = s_known + w[i] * std::abs(x) + hist + k00 * x;
      const bool done = std::abs(nx - x) <= 1e-15 * std::abs(nx);
      x = nx;
      if (done) break;
    }
    if (!std::isfinite(std::abs(x))) throw NumericError("growth: non-finite value at t = " + std::to_string(r.t[i]));
    Phi[i] = x;
    r.phi[i] = std::abs(x);
  }

  r.slope_window_start = r.t.back() * 2.0 / 3.0;
  r.log_slope = slope_fit(r.t, r.phi, r.slope_window_start);
  for (std::size_t i = 0; i < n; ++i)
    r.envelope_ratio = std::max(r.envelope_ratio, r.phi[i] / (amplitude * std::exp(ep.eps * r.t[i])));
  return r;
}

GrowthResult growth_control_solve(double amplitude, const GrowthKernels& kernels,
                                  const Equilibrium& eq, const InteractionPotential& w,
                                  const IVec3& k, const Kinematics& kin, double dt, double t_end,
                                  double kappa_min) {
  const auto rep = stability_margin(eq, w, k, default_omega_grid(eq, k, kin), kin, 3.0, kappa_min);
  const auto grid = uniform_grid(t_end, dt);
  const auto k0 = kernel_k0(eq, w, k, grid, kin);
  return growth_control_solve(amplitude, kernels, k0, dt, t_end, rep.kappa_margin, kappa_min);
}

}  // namespace cyclo
