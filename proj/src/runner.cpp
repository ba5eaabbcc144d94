#include "cyclo/runner.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "cyclo/analytic_norms.hpp"
#include "cyclo/echo_kernel.hpp"
#include "cyclo/error.hpp"
#include "cyclo/growth.hpp"
#include "cyclo/linear_volterra.hpp"
#include "cyclo/output.hpp"

namespace cyclo {

namespace {

using nlohmann::json;

std::string mode_tag(const IVec3& k) {
  return std::to_string(k[0]) + "_" + std::to_string(k[1]) + "_" + std::to_string(k[2]);
}

std::string num(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%g", x);
  return b;
}

Metadata metadata(const Scenario& s) {
  const char* wkind = s.potential.kind == PotentialKind::perpendicular_odd ? "perpendicular_odd" : "scalar_gradient";
  return {{"scenario", s.name},
          {"scenario_hash", scenario_hash(s)},
          {"code_version", kCodeVersion},
          {"experiment", to_string(s.experiment)},
          {"fourier", "f(k) = int exp(-2 pi i k.x) f dx, same for v"},
          {"rotation", "R(omega t) counterclockwise, force omega z x v"},
          {"potential", std::string(wkind) + " gamma=" + num(s.potential.gamma) +
                            " amplitude=" + num(s.potential.amplitude)}};
}

json stability_json(const StabilityReport& r) {
  return {{"k", r.k},
          {"kappa_margin", r.kappa_margin},
          {"sup_abs", r.sup_abs},
          {"sup_abs_small_sigma", r.sup_abs_small_sigma},
          {"omega_at_sup", r.omega_at_sup},
          {"sigma", r.sigma},
          {"v_te", r.v_te},
          {"resonant_mass", r.resonant_mass},
          {"stable", r.stable},
          {"experimental_k3_zero", r.experimental_k3_zero}};
}

struct Ctx {
  const Scenario& s;
  Kinematics kin;
  Metadata meta;
  RunSummary out;
  json j;

  std::string path(const std::string& suffix) const {
    return (std::filesystem::path(s.output_dir) / (s.name + suffix)).string();
  }
  void csv(const std::string& suffix, const std::vector<std::string>& cols,
           const std::vector<std::vector<double>>& rows) {
    const auto p = path(suffix);
    write_csv(p, meta, cols, rows);
    out.files.push_back(p);
  }
};

StabilityReport stability_for(const Ctx& c, const IVec3& k) {
  const auto& s = c.s;
  return stability_margin(s.equilibrium, s.potential, k,
                          default_omega_grid(s.equilibrium, k, c.kin, s.stability.n_omega), c.kin,
                          s.stability.v_te, s.stability.kappa_min);
}

void run_linear(Ctx& c) {
  const auto& s = c.s;
  const auto grid = uniform_grid(s.linear.t_end, s.linear.dt);
  for (const auto& p : s.perturbations) {
    const auto& k = p.mode;
    auto sys = make_system(k, s.linear.dt, s.linear.t_end,
                           source_a_analytic(p, s.equilibrium, k, grid, c.kin),
                           kernel_k0(s.equilibrium, s.potential, k, grid, c.kin));
    sys.rho_of_t = volterra_march(sys);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const cplx r = sys.rho_of_t[i];
      rows.push_back({grid[i], r.real(), r.imag(), std::abs(r)});
    }
    c.csv("_rho_" + mode_tag(k) + ".csv", {"t", "re", "im", "abs"}, rows);

    json m{{"k", k}, {"stability", stability_json(stability_for(c, k))}};
    double start = s.linear.fit_start;
    if (start <= 0) {
      const double kk = k[2] != 0 ? std::abs(k[2]) : std::sqrt(double(k[0] * k[0] + k[1] * k[1]));
      start = 2.0 / (kk * s.equilibrium.v_thermal);
    }
    try {
      const auto f = fit_decay_rate(grid, sys.rho_of_t, start);
      m["fit"] = {{"rate", f.rate}, {"r_squared", f.r_squared}, {"non_exponential", f.non_exponential},
                  {"n_points", f.n_points}, {"t_start", start}};
    } catch (const NumericError& e) {
      m["fit"] = {{"error", e.what()}};
    }
    c.j["modes"].push_back(m);
  }
}

void run_nonlinear(Ctx& c) {
  const auto& s = c.s;
  VlasovProblem pb{s.geometry, s.equilibrium, s.potential, c.kin, s.solver};
  if (std::filesystem::path(pb.config.checkpoint_prefix).parent_path().empty())
    pb.config.checkpoint_prefix = (std::filesystem::path(s.output_dir) / pb.config.checkpoint_prefix).string();
  const auto dist0 = initial_distribution(s.geometry, s.equilibrium, s.perturbations);
  const auto res = run(dist0, pb);
  const auto& d = res.diagnostics;
  std::vector<std::string> cols{"t", "e_energy", "b_energy", "mass", "l2"};
  std::vector<int> idx;
  for (const auto& p : s.perturbations) {
    idx.push_back(mode_index(s.geometry, p.mode));
    cols.push_back("re_rho_" + mode_tag(p.mode));
    cols.push_back("im_rho_" + mode_tag(p.mode));
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    std::vector<double> r{d.t[i], d.e_energy[i], d.b_energy[i], d.mass[i], d.l2[i]};
    for (int m : idx) {
      r.push_back(d.rho[i][m].real());
      r.push_back(d.rho[i][m].imag());
    }
    rows.push_back(r);
  }
  c.csv("_diagnostics.csv", cols, rows);
  c.j["steps"] = d.t.empty() ? 0 : d.t.size();
  c.j["final_mass"] = d.mass.empty() ? 0.0 : d.mass.back();
  c.j["final_e_energy"] = d.e_energy.empty() ? 0.0 : d.e_energy.back();
  c.j["reality_defect"] = reality_defect(res.final_dist);
}

void run_echo_exp(Ctx& c) {
  const auto& s = c.s;
  const auto r = run_echo(s.echo.pulses, s.geometry, c.kin, s.echo.t_end, s.echo.output_dt);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.t.size(); ++i) rows.push_back({r.t[i], r.amplitude[i]});
  c.csv("_echo.csv", {"t", "abs_rho_k2_minus_k1"}, rows);
  c.j["peak_time"] = r.peak_time;
  c.j["peak_value"] = r.peak_value;
  c.j["predicted_time"] = r.predicted_time;
  c.j["first_pulse_peak"] = r.first_pulse_peak;
  c.j["output_dt"] = s.echo.output_dt;
  c.j["within_one_interval"] = std::abs(r.peak_time - r.predicted_time) <= s.echo.output_dt;
}

void run_stability(Ctx& c) {
  for (const auto& p : c.s.perturbations) c.j["modes"].push_back(stability_json(stability_for(c, p.mode)));
}

void run_moments(Ctx& c) {
  const auto& m = c.s.moments;
  std::vector<std::vector<double>> rows;
  for (double t : m.t) {
    const auto f = forward_moment(t, m.kernel);
    rows.push_back({t, f.value, f.bound_shape});
  }
  c.csv("_forward_moment.csv", {"t", "moment", "bound_shape"}, rows);
  if (m.t.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(rows.size());
    for (const auto& r : rows) {
      const double x = std::log(r[0]), y = std::log(r[1]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    c.j["forward_loglog_slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    c.j["reference_slope"] = -(m.kernel.gamma - 1);
  }
  const auto b = backward_moment(m.tau_max, m.kernel, m.n_tau);
  rows.clear();
  for (std::size_t i = 0; i < b.tau.size(); ++i) rows.push_back({b.tau[i], b.integral[i]});
  c.csv("_backward_moment.csv", {"tau", "integral"}, rows);
  c.j["backward"] = {{"value", b.value}, {"argmax", b.argmax}, {"bound_shape", b.bound_shape},
                     {"ratio_to_bound_shape", b.value / b.bound_shape}, {"tail_bound", b.tail_bound}};
}

void run_norms(Ctx& c) {
  const auto r = prop25_suite(c.s.seed, c.s.norms.samples);
  c.j["suite"] = json::parse(r.to_json());
  if (!r.all_pass()) throw NumericError("norm suite: an asserted inequality failed");
}

void run_growth(Ctx& c) {
  const auto& s = c.s;
  const auto& gb = s.growth;
  GrowthKernels gk;
  gk.c = gb.c;
  gk.echo = gb.kernel;
  const auto r = growth_control_solve(gb.amplitude, gk, s.equilibrium, s.potential, gb.mode, c.kin, gb.dt,
                                      gb.t_end, s.stability.kappa_min);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.t.size(); ++i)
    rows.push_back({r.t[i], r.phi[i], gb.amplitude * std::exp(gb.kernel.eps * r.t[i])});
  c.csv("_growth.csv", {"t", "phi", "envelope"}, rows);
  c.j["log_slope"] = r.log_slope;
  c.j["slope_window_start"] = r.slope_window_start;
  c.j["eps"] = gb.kernel.eps;
  c.j["envelope_ratio"] = r.envelope_ratio;
  c.j["kappa_margin"] = r.kappa_margin;
}

}  // namespace

std::string scenario_hash(const Scenario& s) {
  Scenario c = s;
  c.output_dir.clear();
  return hex64(fnv1a(dump(c)));
}

RunSummary run_scenario(const Scenario& s) {
  validate(s);
  Ctx c{s, make_kinematics(s.b0), metadata(s), {}, json::object()};
  c.j["scenario"] = s.name;
  c.j["experiment"] = to_string(s.experiment);
  c.j["scenario_hash"] = scenario_hash(s);
  c.j["code_version"] = kCodeVersion;
  const std::string name = to_string(s.experiment);
  try {
    switch (s.experiment) {
      case Experiment::linear: run_linear(c); break;
      case Experiment::nonlinear: run_nonlinear(c); break;
      case Experiment::echo: run_echo_exp(c); break;
      case Experiment::stability: run_stability(c); break;
      case Experiment::moments: run_moments(c); break;
      case Experiment::norms: run_norms(c); break;
      case Experiment::growth: run_growth(c); break;
    }
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError(name + ": " + e.what());
  }
  c.out.json = c.j.dump(2);
  const auto p = c.path("_summary.json");
  write_text(p, c.out.json + "\n");
  c.out.files.push_back(p);
  return c.out;
}

}  // namespace cyclo
