#pragma once

#include <string>
#include <vector>

#include "cyclo/fields.hpp"
#include "cyclo/phase_space.hpp"

namespace cyclo {

struct SolverConfig {
  double dt = 0.05;
  double t_end = 10.0;
  std::string splitting = "strang";
  bool dealias = true;
  bool track_deflection = false;
  // drop the force acting on delta f, keeping only the kick of f0
  bool linearized = false;
  // filaments are damped by exp(-rate dt (eta/eta_max)^36) after every step
  // along the streaming axes; 0 disables
  double filter_rate = 1000.0;
  int diag_every = 1;
  int checkpoint_every = 0;
  std::string checkpoint_prefix = "checkpoint";
};

struct VlasovProblem {
  Geometry geometry;
  Equilibrium equilibrium;
  InteractionPotential potential;
  Kinematics kinematics;
  SolverConfig config;
};

// Throws ConfigError on an inconsistent setup (CFL guard, splitting name,
// 1-D velocity grid with a potential that needs v1).
void validate(const VlasovProblem& pb);

// Field snapshots on the step grid. Between samples E and B are linear in t.
struct FieldHistory {
  Geometry geometry;
  std::vector<double> t;
  std::vector<FieldState> states;

  void push(double time, const FieldState& s);
  // physical E and B at (time, x), clamped to the recorded window
  void sample(double time, const Vec3& x, Vec3& e, Vec3& b) const;
  // copy with every B scaled by s
  FieldHistory scaled_b(double s) const;
};

// Exact magnetized free flow over h on every (k, v) block:
// f(k, v) <- f(k, R(-omega h) v) exp(2 pi i k.M(-h) v).
void free_flow(SpectralDistribution& dist, const Kinematics& kin, double h);

// Field kick over dt on delta f = f - f0 with fields E, B (perturbation
// only). Velocity update v -> S Q S v with S the half impulse of E and Q a
// symmetric product of planar rotations approximating the rotation about B.
void kick(SpectralDistribution& delta, const Equilibrium& eq, const std::vector<CVec3>& e_hat,
          const std::vector<CVec3>& b_hat, double dt, bool dealias, bool linearized);

// One Strang step of delta f. On entry fields hold (E_n, B_n), on exit
// (E_{n+1}, B_{n+1}).
void strang_step(SpectralDistribution& delta, FieldState& fields, const VlasovProblem& pb);

struct Diagnostics {
  std::vector<double> t;
  std::vector<std::vector<cplx>> rho;  // density modes of delta f
  std::vector<double> e_energy, b_energy, mass, l2;
};

struct RunResult {
  Diagnostics diagnostics;
  FieldHistory history;
  SpectralDistribution final_dist;  // full f
};

// dist0 is the full distribution including f0.
RunResult run(const SpectralDistribution& dist0, const VlasovProblem& pb);

}  // namespace cyclo
