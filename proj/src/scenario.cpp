#include "cyclo/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "cyclo/error.hpp"

namespace cyclo {

namespace {

std::string where(const YAML::Node& n) {
  const auto m = n.Mark();
  return m.line >= 0 ? " (line " + std::to_string(m.line + 1) + ")" : "";
}

void check_keys(const YAML::Node& n, const std::string& block, const std::set<std::string>& allowed) {
  if (!n.IsMap()) throw ConfigError(block + ": expected a mapping" + where(n));
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key))
      throw ConfigError(block + ": unknown key \"" + key + "\"" + where(kv.first));
  }
}

template <class T>
void read(const YAML::Node& n, const char* key, T& out, const std::string& block) {
  const auto v = n[key];
  if (!v) return;
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(block + "." + key + ": bad value" + where(v));
  }
}

void read_ivec(const YAML::Node& n, const char* key, IVec3& out, const std::string& block) {
  const auto v = n[key];
  if (!v) return;
  std::vector<int> a;
  read(n, key, a, block);
  if (a.size() != 3) throw ConfigError(block + "." + key + ": need three integers" + where(v));
  out = {a[0], a[1], a[2]};
}

void read_vec(const YAML::Node& n, const char* key, Vec3& out, const std::string& block) {
  const auto v = n[key];
  if (!v) return;
  std::vector<double> a;
  read(n, key, a, block);
  if (a.size() != 3) throw ConfigError(block + "." + key + ": need three numbers" + where(v));
  out = {a[0], a[1], a[2]};
}

void read_kernel(const YAML::Node& n, EchoKernelParams& p, const std::string& block) {
  read(n, "alpha", p.alpha, block);
  read(n, "gamma", p.gamma, block);
  read(n, "eps", p.eps, block);
  read(n, "c0", p.c0, block);
  read(n, "m", p.m, block);
  read(n, "kmax_sup", p.kmax_sup, block);
  read(n, "quad_width", p.quad_width, block);
}

const std::set<std::string> kKernelKeys{"alpha", "gamma", "eps", "c0", "m", "kmax_sup", "quad_width"};

std::set<std::string> with_kernel(std::set<std::string> s) {
  s.insert(kKernelKeys.begin(), kKernelKeys.end());
  return s;
}

Experiment parse_experiment(const YAML::Node& n) {
  const auto s = n.as<std::string>();
  for (auto e : {Experiment::linear, Experiment::nonlinear, Experiment::echo, Experiment::stability,
                 Experiment::moments, Experiment::norms, Experiment::growth})
    if (to_string(e) == s) return e;
  throw ConfigError("experiment: unknown kind \"" + s + "\"" + where(n));
}

Scenario from_node(const YAML::Node& root) {
  Scenario s;
  check_keys(root, "scenario",
             {"name", "experiment", "seed", "geometry", "kinematics", "potential", "equilibrium",
              "perturbations", "solver", "linear", "echo", "moments", "growth", "stability", "norms",
              "output"});
  read(root, "name", s.name, "scenario");
  if (root["experiment"]) s.experiment = parse_experiment(root["experiment"]);
  read(root, "seed", s.seed, "scenario");

  if (auto n = root["geometry"]) {
    check_keys(n, "geometry", {"dim_x", "kmax", "nv", "nv_perp", "lv"});
    auto& g = s.geometry;
    read(n, "dim_x", g.dim_x, "geometry");
    read(n, "kmax", g.kmax, "geometry");
    read(n, "nv", g.nv, "geometry");
    read(n, "nv_perp", g.nv_perp, "geometry");
    read(n, "lv", g.lv, "geometry");
  }
  if (auto n = root["kinematics"]) {
    check_keys(n, "kinematics", {"b0"});
    read(n, "b0", s.b0, "kinematics");
  }
  if (auto n = root["potential"]) {
    check_keys(n, "potential", {"gamma", "amplitude", "kind"});
    read(n, "gamma", s.potential.gamma, "potential");
    read(n, "amplitude", s.potential.amplitude, "potential");
    if (auto k = n["kind"]) {
      const auto v = k.as<std::string>();
      if (v == "perpendicular_odd") s.potential.kind = PotentialKind::perpendicular_odd;
      else if (v == "scalar_gradient") s.potential.kind = PotentialKind::scalar_gradient;
      else throw ConfigError("potential.kind: unknown \"" + v + "\"" + where(k));
    }
  }
  s.equilibrium.vdim = s.geometry.vdim();
  if (auto n = root["equilibrium"]) {
    check_keys(n, "equilibrium", {"v_thermal", "v_thermal_perp", "c0", "lambda0"});
    read(n, "v_thermal", s.equilibrium.v_thermal, "equilibrium");
    s.equilibrium.v_thermal_perp = s.equilibrium.v_thermal;
    read(n, "v_thermal_perp", s.equilibrium.v_thermal_perp, "equilibrium");
    read(n, "c0", s.equilibrium.c0, "equilibrium");
    read(n, "lambda0", s.equilibrium.lambda0, "equilibrium");
  }
  if (auto n = root["perturbations"]) {
    if (!n.IsSequence()) throw ConfigError("perturbations: expected a list" + where(n));
    for (const auto& e : n) {
      check_keys(e, "perturbations", {"mode", "amplitude", "profile", "center", "width"});
      Perturbation p;
      read_ivec(e, "mode", p.mode, "perturbations");
      read(e, "amplitude", p.amplitude, "perturbations");
      if (auto k = e["profile"]) {
        const auto v = k.as<std::string>();
        if (v == "equilibrium") p.profile.kind = Profile::Kind::equilibrium;
        else if (v == "gaussian") p.profile.kind = Profile::Kind::gaussian;
        else throw ConfigError("perturbations.profile: unknown \"" + v + "\"" + where(k));
      }
      read_vec(e, "center", p.profile.center, "perturbations");
      read(e, "width", p.profile.width, "perturbations");
      s.perturbations.push_back(p);
    }
  }
  if (auto n = root["solver"]) {
    check_keys(n, "solver", {"dt", "t_end", "splitting", "dealias", "track_deflection", "linearized",
                             "filter_rate", "diag_every", "checkpoint_every", "checkpoint_prefix"});
    auto& c = s.solver;
    read(n, "dt", c.dt, "solver");
    read(n, "t_end", c.t_end, "solver");
    read(n, "splitting", c.splitting, "solver");
    read(n, "dealias", c.dealias, "solver");
    read(n, "track_deflection", c.track_deflection, "solver");
    read(n, "linearized", c.linearized, "solver");
    read(n, "filter_rate", c.filter_rate, "solver");
    read(n, "diag_every", c.diag_every, "solver");
    read(n, "checkpoint_every", c.checkpoint_every, "solver");
    read(n, "checkpoint_prefix", c.checkpoint_prefix, "solver");
  }
  if (auto n = root["linear"]) {
    check_keys(n, "linear", {"dt", "t_end", "fit_start"});
    read(n, "dt", s.linear.dt, "linear");
    read(n, "t_end", s.linear.t_end, "linear");
    read(n, "fit_start", s.linear.fit_start, "linear");
  }
  if (auto n = root["echo"]) {
    check_keys(n, "echo", {"a1", "a2", "k1", "k2", "tau_pulse", "t_end", "output_dt"});
    auto& p = s.echo.pulses;
    read(n, "a1", p.a1, "echo");
    read(n, "a2", p.a2, "echo");
    read(n, "k1", p.k1, "echo");
    read(n, "k2", p.k2, "echo");
    read(n, "tau_pulse", p.tau_pulse, "echo");
    read(n, "t_end", s.echo.t_end, "echo");
    read(n, "output_dt", s.echo.output_dt, "echo");
  }
  s.echo.pulses.v_thermal = s.equilibrium.v_thermal;
  if (auto n = root["moments"]) {
    check_keys(n, "moments", with_kernel({"t", "tau_max", "n_tau"}));
    read_kernel(n, s.moments.kernel, "moments");
    read(n, "t", s.moments.t, "moments");
    read(n, "tau_max", s.moments.tau_max, "moments");
    read(n, "n_tau", s.moments.n_tau, "moments");
  }
  if (auto n = root["growth"]) {
    check_keys(n, "growth", with_kernel({"amplitude", "c", "mode", "dt", "t_end"}));
    read_kernel(n, s.growth.kernel, "growth");
    read(n, "amplitude", s.growth.amplitude, "growth");
    read(n, "c", s.growth.c, "growth");
    read_ivec(n, "mode", s.growth.mode, "growth");
    read(n, "dt", s.growth.dt, "growth");
    read(n, "t_end", s.growth.t_end, "growth");
  }
  if (auto n = root["stability"]) {
    check_keys(n, "stability", {"kappa_min", "v_te", "n_omega"});
    read(n, "kappa_min", s.stability.kappa_min, "stability");
    read(n, "v_te", s.stability.v_te, "stability");
    read(n, "n_omega", s.stability.n_omega, "stability");
  }
  if (auto n = root["norms"]) {
    check_keys(n, "norms", {"samples"});
    read(n, "samples", s.norms.samples, "norms");
  }
  if (auto n = root["output"]) {
    check_keys(n, "output", {"dir"});
    read(n, "dir", s.output_dir, "output");
  }
  return s;
}

template <class T>
YAML::Node flow(const T& a) {
  YAML::Node n;
  for (auto x : a) n.push_back(x);
  n.SetStyle(YAML::EmitterStyle::Flow);
  return n;
}

YAML::Node kernel_node(const EchoKernelParams& p, YAML::Node n) {
  n["alpha"] = p.alpha;
  n["gamma"] = p.gamma;
  n["eps"] = p.eps;
  n["c0"] = p.c0;
  n["m"] = p.m;
  n["kmax_sup"] = p.kmax_sup;
  n["quad_width"] = p.quad_width;
  return n;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::linear: return "linear";
    case Experiment::nonlinear: return "nonlinear";
    case Experiment::echo: return "echo";
    case Experiment::stability: return "stability";
    case Experiment::moments: return "moments";
    case Experiment::norms: return "norms";
    case Experiment::growth: return "growth";
  }
  return "?";
}

void validate(const Scenario& s) {
  auto wrap = [](const char* block, auto&& f) {
    try {
      f();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(block) + ": " + e.what());
    }
  };
  wrap("geometry", [&] { make_geometry(s.geometry.dim_x, s.geometry.kmax, s.geometry.nv, s.geometry.lv, s.geometry.nv_perp); });
  wrap("kinematics", [&] { make_kinematics(s.b0); });
  wrap("potential", [&] { make_potential(s.potential.gamma, s.potential.amplitude, s.potential.kind); });
  wrap("equilibrium", [&] {
    if (!(s.equilibrium.v_thermal > 0) || !(s.equilibrium.v_thermal_perp > 0))
      throw ConfigError("thermal speeds must be > 0");
    maxwellian(s.geometry, s.equilibrium.v_thermal, s.equilibrium.v_thermal_perp);
  });
  wrap("perturbations", [&] {
    for (const auto& p : s.perturbations) {
      if (mode_index(s.geometry, p.mode) < 0) throw ConfigError("mode outside the lattice");
      if (!(p.profile.width > 0)) throw ConfigError("width must be > 0");
    }
  });
  switch (s.experiment) {
    case Experiment::linear:
      wrap("linear", [&] {
        if (s.perturbations.empty()) throw ConfigError("needs at least one perturbation");
        if (!(s.linear.dt > 0) || !(s.linear.t_end > s.linear.dt)) throw ConfigError("need 0 < dt < t_end");
      });
      break;
    case Experiment::nonlinear:
      wrap("solver", [&] {
        validate(VlasovProblem{s.geometry, s.equilibrium, s.potential, make_kinematics(s.b0), s.solver});
      });
      break;
    case Experiment::echo:
      wrap("echo", [&] {
        const auto& p = s.echo.pulses;
        if (!(p.k2 > p.k1 && p.k1 > 0)) throw ConfigError("need 0 < k1 < k2");
        if (s.geometry.kmax < p.k1 + p.k2) throw ConfigError("geometry.kmax must be >= k1 + k2");
        if (!(s.echo.output_dt > 0)) throw ConfigError("output_dt must be > 0");
        if (s.echo.t_end <= predicted_echo_time(p)) throw ConfigError("t_end must exceed the echo time");
      });
      break;
    case Experiment::moments:
      wrap("moments", [&] {
        validate(s.moments.kernel);
        for (double t : s.moments.t)
          if (!(t > 0)) throw ConfigError("sample times must be > 0");
        if (!(s.moments.tau_max > 0) || s.moments.n_tau < 2) throw ConfigError("need tau_max > 0, n_tau >= 2");
      });
      break;
    case Experiment::growth:
      wrap("growth", [&] {
        validate(s.growth.kernel);
        if (!(s.growth.amplitude > 0)) throw ConfigError("amplitude must be > 0");
        if (!(s.growth.dt > 0) || !(s.growth.t_end > s.growth.dt)) throw ConfigError("need 0 < dt < t_end");
      });
      break;
    case Experiment::stability:
      wrap("stability", [&] {
        if (s.perturbations.empty()) throw ConfigError("needs at least one perturbation mode");
        if (!(s.stability.kappa_min > 0)) throw ConfigError("kappa_min must be > 0");
        if (s.stability.n_omega < 3) throw ConfigError("n_omega must be >= 3");
      });
      break;
    case Experiment::norms:
      wrap("norms", [&] {
        if (s.norms.samples < 1) throw ConfigError("samples must be >= 1");
      });
      break;
  }
}

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("scenario: parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError("scenario: empty document");
  auto s = from_node(root);
  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("scenario: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string dump(const Scenario& s) {
  YAML::Node r;
  r["name"] = s.name;
  r["experiment"] = to_string(s.experiment);
  r["seed"] = s.seed;
  const auto& g = s.geometry;
  r["geometry"]["dim_x"] = g.dim_x;
  r["geometry"]["kmax"] = g.kmax;
  r["geometry"]["nv"] = g.nv;
  r["geometry"]["nv_perp"] = g.nv_perp;
  r["geometry"]["lv"] = g.lv;
  r["kinematics"]["b0"] = s.b0;
  r["potential"]["gamma"] = s.potential.gamma;
  r["potential"]["amplitude"] = s.potential.amplitude;
  r["potential"]["kind"] =
      s.potential.kind == PotentialKind::perpendicular_odd ? "perpendicular_odd" : "scalar_gradient";
  r["equilibrium"]["v_thermal"] = s.equilibrium.v_thermal;
  r["equilibrium"]["v_thermal_perp"] = s.equilibrium.v_thermal_perp;
  r["equilibrium"]["c0"] = s.equilibrium.c0;
  r["equilibrium"]["lambda0"] = s.equilibrium.lambda0;
  YAML::Node pl(YAML::NodeType::Sequence);
  for (const auto& p : s.perturbations) {
    YAML::Node n;
    n["mode"] = flow(p.mode);
    n["amplitude"] = p.amplitude;
    n["profile"] = p.profile.kind == Profile::Kind::equilibrium ? "equilibrium" : "gaussian";
    n["center"] = flow(p.profile.center);
    n["width"] = p.profile.width;
    pl.push_back(n);
  }
  r["perturbations"] = pl;
  const auto& c = s.solver;
  r["solver"]["dt"] = c.dt;
  r["solver"]["t_end"] = c.t_end;
  r["solver"]["splitting"] = c.splitting;
  r["solver"]["dealias"] = c.dealias;
  r["solver"]["track_deflection"] = c.track_deflection;
  r["solver"]["linearized"] = c.linearized;
  r["solver"]["filter_rate"] = c.filter_rate;
  r["solver"]["diag_every"] = c.diag_every;
  r["solver"]["checkpoint_every"] = c.checkpoint_every;
  r["solver"]["checkpoint_prefix"] = c.checkpoint_prefix;
  r["linear"]["dt"] = s.linear.dt;
  r["linear"]["t_end"] = s.linear.t_end;
  r["linear"]["fit_start"] = s.linear.fit_start;
  const auto& e = s.echo.pulses;
  r["echo"]["a1"] = e.a1;
  r["echo"]["a2"] = e.a2;
  r["echo"]["k1"] = e.k1;
  r["echo"]["k2"] = e.k2;
  r["echo"]["tau_pulse"] = e.tau_pulse;
  r["echo"]["t_end"] = s.echo.t_end;
  r["echo"]["output_dt"] = s.echo.output_dt;
  r["moments"] = kernel_node(s.moments.kernel, YAML::Node());
  r["moments"]["t"] = flow(s.moments.t);
  r["moments"]["tau_max"] = s.moments.tau_max;
  r["moments"]["n_tau"] = s.moments.n_tau;
  r["growth"] = kernel_node(s.growth.kernel, YAML::Node());
  r["growth"]["amplitude"] = s.growth.amplitude;
  r["growth"]["c"] = s.growth.c;
  r["growth"]["mode"] = flow(s.growth.mode);
  r["growth"]["dt"] = s.growth.dt;
  r["growth"]["t_end"] = s.growth.t_end;
  r["stability"]["kappa_min"] = s.stability.kappa_min;
  r["stability"]["v_te"] = s.stability.v_te;
  r["stability"]["n_omega"] = s.stability.n_omega;
  r["norms"]["samples"] = s.norms.samples;
  r["output"]["dir"] = s.output_dir;
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << r;
  return std::string(out.c_str()) + "\n";
}

}  // namespace cyclo
