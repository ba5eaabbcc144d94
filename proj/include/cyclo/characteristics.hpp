#pragma once

#include <vector>

#include "cyclo/kinematics.hpp"
#include "cyclo/linear_volterra.hpp"
#include "cyclo/vlasov_solver.hpp"

namespace cyclo {

struct CharacteristicsOptions {
  // RK steps per interval of the field history grid
  int substeps = 8;
  // step bound when the history has no interior sample in the window
  double max_step = 0.01;
};

// Trajectory that sits at p at time tau, followed to time t (either
// direction) under B0 and E (reduced) or E + v x dB (full). Lawson RK4 in
// the frame of the exact free flow, so the free part is integrated exactly.
// Positions come back unwrapped; use reduce_mod1 for torus coordinates.
PhasePoint reduced_characteristics(double t, double tau, const PhasePoint& p, const FieldHistory& h,
                                   const Kinematics& kin, const CharacteristicsOptions& opt = {});
PhasePoint full_characteristics(double t, double tau, const PhasePoint& p, const FieldHistory& h,
                                const Kinematics& kin, const CharacteristicsOptions& opt = {});

struct Deflection {
  Vec3 dx{};
  Vec3 dv{};
};

// endpoint minus exact_flow_unwrapped from the same start
Deflection deflection(double t, double tau, const PhasePoint& p, const FieldHistory& h, const Kinematics& kin,
                      bool full = false, const CharacteristicsOptions& opt = {});

struct DeflectionSample {
  double t = 0.0;
  double dx = 0.0;  // sup over probes of |dX|
  double dv = 0.0;  // sup over probes of |dV|
};

struct DeflectionTrace {
  double tau = 0.0;
  std::vector<DeflectionSample> samples;
};

DeflectionTrace deflection_trace(const std::vector<PhasePoint>& probes, double tau,
                                 const std::vector<double>& t_samples, const FieldHistory& h,
                                 const Kinematics& kin, bool full = false,
                                 const CharacteristicsOptions& opt = {});

// First n points of the Halton sequence in (x, v) with x in [0,1)^3 and
// |v| <= v_max (points outside the ball are skipped).
std::vector<PhasePoint> halton_probes(int n, double v_max);

// max over probes of |X_full - X_reduced| + |V_full - V_reduced| at time t
double reduction_gap(const std::vector<PhasePoint>& probes, double t, double tau, const FieldHistory& h,
                     const Kinematics& kin, const CharacteristicsOptions& opt = {});

// E(t,k) = W(k) rho(t,k) from linear solutions on the listed modes (and their
// mirrors), B from Faraday's law; samples on the Volterra grid.
FieldHistory field_history_from_linear(const Geometry& g, const InteractionPotential& w,
                                       const std::vector<VolterraSystem>& modes);

}  // namespace cyclo
