#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "cyclo/analytic_norms.hpp"
#include "cyclo/echo_kernel.hpp"
#include "cyclo/error.hpp"
#include "cyclo/runner.hpp"
#include "cyclo/scenario.hpp"

using namespace cyclo;

namespace {

void set_threads() {
  if (const char* s = std::getenv("CYCLO_THREADS")) {
    const int n = std::atoi(s);
    if (n < 1) throw ConfigError("CYCLO_THREADS must be a positive integer");
    omp_set_num_threads(n);
  }
}

int report(const RunSummary& r) {
  for (const auto& f : r.files) std::printf("wrote %s\n", f.c_str());
  std::printf("%s\n", r.json.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclo: magnetized Vlasov toolkit"};
  app.require_subcommand(1);

  std::string path, out_dir;
  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", path, "YAML scenario")->required();
  run->add_option("--out", out_dir, "override output directory");

  auto* val = app.add_subcommand("validate", "check a scenario and print it normalized");
  val->add_option("scenario", path, "YAML scenario")->required();

  unsigned seed = 0;
  int samples = 20;
  auto* norms = app.add_subcommand("norms-suite", "randomized norm inequality suite");
  norms->add_option("--seed", seed);
  norms->add_option("--samples", samples);

  EchoKernelParams kp;
  std::vector<double> times{50, 71, 100, 141, 200, 283, 400};
  double tau_max = 60;
  int n_tau = 31;
  auto* mom = app.add_subcommand("moments", "forward and backward kernel moments");
  mom->add_option("--alpha", kp.alpha)->required();
  mom->add_option("--gamma", kp.gamma)->required();
  mom->add_option("--eps", kp.eps)->required();
  mom->add_option("--t", times, "forward sample times");
  mom->add_option("--tau-max", tau_max);
  mom->add_option("--n-tau", n_tau);

  auto* stab = app.add_subcommand("stability", "stability margin of every perturbation mode");
  stab->add_option("scenario", path, "YAML scenario")->required();
  stab->add_option("--out", out_dir, "override output directory");

  auto* echo = app.add_subcommand("echo", "two-pulse echo experiment");
  echo->add_option("scenario", path, "YAML scenario")->required();
  echo->add_option("--out", out_dir, "override output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    set_threads();
    auto load = [&](Experiment force, bool do_force) {
      Scenario s = load_scenario(path);
      if (do_force) s.experiment = force;
      if (!out_dir.empty()) s.output_dir = out_dir;
      validate(s);
      return s;
    };
    if (*run) return report(run_scenario(load(Experiment::linear, false)));
    if (*stab) return report(run_scenario(load(Experiment::stability, true)));
    if (*echo) return report(run_scenario(load(Experiment::echo, true)));
    if (*val) {
      std::cout << dump(load(Experiment::linear, false));
      return 0;
    }
    if (*norms) {
      const auto r = prop25_suite(seed, samples);
      std::printf("%s\n", r.to_json().c_str());
      return r.all_pass() ? 0 : 3;
    }
    if (*mom) {
      validate(kp);
      std::printf("t,moment,bound_shape\n");
      for (double t : times) {
        const auto m = forward_moment(t, kp);
        std::printf("%.17g,%.17g,%.17g\n", t, m.value, m.bound_shape);
      }
      const auto b = backward_moment(tau_max, kp, n_tau);
      std::printf("# backward sup %.17g at tau %.17g, bound shape %.17g\n", b.value, b.argmax, b.bound_shape);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
