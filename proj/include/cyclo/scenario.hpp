#pragma once

#include <string>
#include <vector>

#include "cyclo/echo.hpp"
#include "cyclo/echo_kernel.hpp"
#include "cyclo/fields.hpp"
#include "cyclo/phase_space.hpp"
#include "cyclo/vlasov_solver.hpp"

namespace cyclo {

enum class Experiment { linear, nonlinear, echo, stability, moments, norms, growth };

std::string to_string(Experiment e);

struct LinearBlock {
  double dt = 0.01;
  double t_end = 20.0;
  double fit_start = 0.0;  // 0 picks 2 / (|k3| vT)
};

struct EchoBlock {
  EchoScenario pulses;
  double t_end = 30.0;
  double output_dt = 0.05;
};

struct MomentsBlock {
  EchoKernelParams kernel;
  std::vector<double> t{50, 71, 100, 141, 200, 283, 400};
  double tau_max = 60.0;
  int n_tau = 31;
};

struct GrowthBlock {
  double amplitude = 1.0;
  double c = 0.01;
  EchoKernelParams kernel;
  IVec3 mode{1, 0, 1};
  double dt = 0.5;
  double t_end = 200.0;
};

struct StabilityBlock {
  double kappa_min = 0.1;
  double v_te = 3.0;
  int n_omega = 2001;
};

struct NormsBlock {
  int samples = 20;
};

struct Scenario {
  std::string name = "scenario";
  Experiment experiment = Experiment::linear;
  unsigned seed = 0;
  Geometry geometry;
  double b0 = 0.0;
  InteractionPotential potential;
  Equilibrium equilibrium;
  std::vector<Perturbation> perturbations;
  SolverConfig solver;
  LinearBlock linear;
  EchoBlock echo;
  MomentsBlock moments;
  GrowthBlock growth;
  StabilityBlock stability;
  NormsBlock norms;
  std::string output_dir = "out";
};

// Parses YAML, fills defaults and validates every block. Unknown keys are
// errors. Throws ConfigError with the line number where one is known.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text);

// Normalized YAML with every field written out.
std::string dump(const Scenario& s);

void validate(const Scenario& s);

}  // namespace cyclo
