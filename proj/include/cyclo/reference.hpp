#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Plain serial versions of the OpenMP kernels, kept for testing and benchmarks.
namespace cyclo::reference {

using cplx = std::complex<double>;

std::vector<cplx> volterra_solve(const std::vector<cplx>& a, const std::vector<cplx>& k, double dt);

std::vector<cplx> laplace_transform(const std::vector<cplx>& kernel, double dt,
                                    const std::vector<double>& omega, double sigma);

// K^{(alpha),gamma}(t, tau) by scanning every |k|, |l| <= kmax
double echo_kernel(double t, double tau, double alpha, double gamma, int kmax);

}  // namespace cyclo::reference
