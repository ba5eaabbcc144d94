#include "cyclo/echo.hpp"

#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"
#include "cyclo/vlasov_solver.hpp"

namespace cyclo {

using std::numbers::pi;

double predicted_echo_time(const EchoScenario& s) {
  if (!(s.k2 > s.k1 && s.k1 >= 1)) throw ConfigError("echo: need k2 > k1 >= 1");
  return s.k2 * s.tau_pulse / double(s.k2 - s.k1);
}

void apply_pulse(SpectralDistribution& f, const IVec3& k, double a) {
  const auto& g = f.geometry;
  const std::size_t nvs = g.v_size();
  const SpectralDistribution old = f;
  for (std::size_t m = 0; m < g.n_modes(); ++m) {
    const IVec3 q = mode_vector(g, m);
    for (int sgn : {-1, 1}) {
      const int src = mode_index(g, IVec3{q[0] - sgn * k[0], q[1] - sgn * k[1], q[2] - sgn * k[2]});
      if (src < 0) continue;
      const cplx* b = old.mode(src);
      cplx* out = f.mode(m);
      for (std::size_t i = 0; i < nvs; ++i) out[i] += 0.5 * a * b[i];
    }
  }
}

namespace {

Equilibrium echo_equilibrium(const Geometry& g, double vt) {
  Equilibrium eq;
  eq.vdim = g.vdim();
  eq.v_thermal = eq.v_thermal_perp = vt;
  return eq;
}

}  // namespace

EchoResult run_echo(const EchoScenario& s, const Geometry& g, const Kinematics& kin, double t_end,
                    double output_dt) {
  EchoResult r;
  r.predicted_time = predicted_echo_time(s);
  if (!(s.tau_pulse > 0.0)) throw ConfigError("echo: tau_pulse must be > 0");
  if (r.predicted_time > t_end)
    throw ConfigError("echo: predicted echo time " + std::to_string(r.predicted_time) +
                      " is beyond the horizon t_end = " + std::to_string(t_end));
  if (g.kmax < s.k1 + s.k2) throw ConfigError("echo: kmax must be >= k1 + k2");
  if (!(output_dt > 0.0)) throw ConfigError("echo: output_dt must be > 0");

  const auto eq = echo_equilibrium(g, s.v_thermal);
  SpectralDistribution f = initial_distribution(g, eq, {});
  const IVec3 k1{0, 0, s.k1}, k2{0, 0, s.k2};
  apply_pulse(f, k1, s.a1);
  const int echo = mode_index(g, IVec3{0, 0, s.k2 - s.k1});
  r.first_pulse_peak = std::abs(density_mode(g, f.mode(mode_index(g, k1))));

  const long n = long(std::floor(t_end / output_dt + 1e-9));
  bool pulsed = false;
  double now = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double t = i * output_dt;
    if (!pulsed && t >= s.tau_pulse) {
      free_flow(f, kin, s.tau_pulse - now);
      now = s.tau_pulse;
      apply_pulse(f, k2, s.a2);
      pulsed = true;
    }
    free_flow(f, kin, t - now);
    now = t;
    const double a = std::abs(density_mode(g, f.mode(echo)));
    r.t.push_back(t);
    r.amplitude.push_back(a);
    if (t > s.tau_pulse && a > r.peak_value) {
      r.peak_value = a;
      r.peak_time = t;
    }
  }
  return r;
}

MixingCheck gaussian_mixing_check(int k1, double v_thermal, const std::vector<double>& t_grid,
                                  const Geometry& g) {
  if (k1 < 1 || k1 > g.kmax) throw ConfigError("mixing: need 1 <= k1 <= kmax");
  const auto eq = echo_equilibrium(g, v_thermal);
  const auto kin = make_kinematics(0.0);
  SpectralDistribution f = initial_distribution(g, eq, {});
  apply_pulse(f, IVec3{0, 0, k1}, 0.1);
  const int m = mode_index(g, IVec3{0, 0, k1});
  const double r0 = std::abs(density_mode(g, f.mode(m)));
  MixingCheck c;
  const double kappa = 2.0 * pi * k1;
  for (double t : t_grid) {
    SpectralDistribution ft = f;
    free_flow(ft, kin, t);
    const double ratio = std::abs(density_mode(g, ft.mode(m))) / r0;
    const double law = std::exp(-0.5 * kappa * kappa * v_thermal * v_thermal * t * t);
    c.t.push_back(t);
    c.ratio.push_back(ratio);
    c.law.push_back(law);
    c.max_rel_error = std::max(c.max_rel_error, std::abs(ratio - law) / law);
  }
  return c;
}

}  // namespace cyclo
