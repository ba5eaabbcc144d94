#pragma once

#include <vector>

namespace cyclo {

struct EchoKernelParams {
  double alpha = 0.1;
  double gamma = 2.0;
  double eps = 0.05;
  double c0 = 0.0;
  double m = 2.0;
  int kmax_sup = 0;  // 0 picks ceil(40 / alpha)
  double quad_width = 0.0;  // Gauss cell width for the moments, 0 picks 0.02 / alpha
};

void validate(const EchoKernelParams& p);
int lattice_cutoff(const EchoKernelParams& p);
double quad_width(const EchoKernelParams& p);

// (1 + tau) sup_{k,l != 0} exp(-alpha|l| - alpha (t-tau)|k-l|/t - alpha|k(t-tau) + l tau|) / (1 + |k-l|^gamma)
double kernel_value(double t, double tau, const EchoKernelParams& p);

struct Moment {
  double value = 0.0;
  double bound_shape = 0.0;
};

// exp(-eps t) int_0^t K(t, tau) exp(eps tau) dtau; bound shape 1/(alpha^3 eps^(1+gamma) t^(gamma-1))
Moment forward_moment(double t, const EchoKernelParams& p);

// exp(eps tau) int_tau^inf exp(-eps t) K(t, tau) dt at one tau
double backward_integral(double tau, const EchoKernelParams& p);

struct BackwardMoment {
  double value = 0.0;     // sup over the tau grid
  double argmax = 0.0;
  double bound_shape = 0.0;  // 1/(alpha^2 eps) + 1/(alpha eps^gamma)
  double tail_bound = 0.0;
  std::vector<double> tau;
  std::vector<double> integral;
};

BackwardMoment backward_moment(double tau_max, const EchoKernelParams& p, int n_tau = 201);

}  // namespace cyclo
