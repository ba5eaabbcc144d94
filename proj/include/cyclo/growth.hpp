#pragma once

#include <functional>
#include <vector>

#include "cyclo/echo_kernel.hpp"
#include "cyclo/linear_volterra.hpp"

namespace cyclo {

struct GrowthKernels {
  double c = 0.0;                 // K1 = c K^{(alpha),gamma}
  EchoKernelParams echo;          // alpha, gamma, eps, c0, m
  std::function<double(double, double)> k0;  // optional extra kernel K0(t, tau) >= 0
};

struct GrowthResult {
  std::vector<double> t;
  std::vector<double> phi;
  double amplitude = 0.0;
  double log_slope = 0.0;      // least squares over the final third
  double slope_window_start = 0.0;
  double envelope_ratio = 0.0;  // max phi / (A e^{eps t})
  double kappa_margin = 0.0;
};

// Worst case with equality: Phi = S + K^0 * Phi, S(t) = A + int_0^t (K0 + K1 + c0/(1+tau)^m) |Phi| dtau,
// phi = |Phi|. k0_kernel is sampled on the uniform grid of step dt starting at 0.
// Refuses (ConfigError) when kappa_margin < kappa_min.
GrowthResult growth_control_solve(double amplitude, const GrowthKernels& kernels,
                                  const std::vector<cplx>& k0_kernel, double dt, double t_end,
                                  double kappa_margin, double kappa_min = 0.1);

// Same, with K^0 and its margin taken from the linear theory at mode k.
GrowthResult growth_control_solve(double amplitude, const GrowthKernels& kernels,
                                  const Equilibrium& eq, const InteractionPotential& w,
                                  const IVec3& k, const Kinematics& kin, double dt, double t_end,
                                  double kappa_min = 0.1);

}  // namespace cyclo
