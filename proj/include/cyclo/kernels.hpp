#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// OpenMP hot loops. Every reduction is split into fixed blocks that are
// combined in index order, so results do not depend on the thread count.
namespace cyclo::kernels {

using cplx = std::complex<double>;

// sum_{j=1}^{n-1} k[n-j] rho[j]
cplx history_sum(const cplx* k, const cplx* rho, std::size_t n);

// trapezoid product-integration march of rho = a + k * rho
std::vector<cplx> volterra_solve(const std::vector<cplx>& a, const std::vector<cplx>& k, double dt);

// int_0^T exp((2 pi i w - sigma) t) K(t) dt with K piecewise linear on the
// uniform grid, for every w.
std::vector<cplx> laplace_transform(const std::vector<cplx>& kernel, double dt,
                                    const std::vector<double>& omega, double sigma);

}  // namespace cyclo::kernels
