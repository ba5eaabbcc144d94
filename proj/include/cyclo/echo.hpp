#pragma once

#include <vector>

#include "cyclo/phase_space.hpp"

namespace cyclo {

struct EchoScenario {
  double a1 = 0.1;
  double a2 = 0.1;
  int k1 = 1;
  int k2 = 2;
  double tau_pulse = 10.0;
  double v_thermal = 1.0;
};

// k2 tau / (k2 - k1)
double predicted_echo_time(const EchoScenario& s);

struct EchoResult {
  std::vector<double> t;
  std::vector<double> amplitude;  // |rho(t, k2 - k1)|
  double peak_time = 0.0;         // argmax over samples after the second pulse
  double peak_value = 0.0;
  double predicted_time = 0.0;
  double first_pulse_peak = 0.0;  // |rho(0, k1)|
};

// Free transport of f0 modulated by (1 + a1 cos 2 pi k1 x3) at t = 0 and by
// (1 + a2 cos 2 pi k2 x3) at t = tau_pulse, sampled every output_dt.
EchoResult run_echo(const EchoScenario& s, const Geometry& g, const Kinematics& kin, double t_end,
                    double output_dt);

// f <- f (1 + a cos 2 pi k.x)
void apply_pulse(SpectralDistribution& f, const IVec3& k, double a);

struct MixingCheck {
  std::vector<double> t;
  std::vector<double> ratio;  // |rho(t,k1)| / |rho(0,k1)|
  std::vector<double> law;    // exp(-kappa^2 vT^2 t^2 / 2), kappa = 2 pi k1
  double max_rel_error = 0.0;
};

MixingCheck gaussian_mixing_check(int k1, double v_thermal, const std::vector<double>& t_grid,
                                  const Geometry& g);

}  // namespace cyclo
