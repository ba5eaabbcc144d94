#include "cyclo/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cyclo::reference {

std::vector<cplx> volterra_solve(const std::vector<cplx>& a, const std::vector<cplx>& k, double dt) {
  const std::size_t n = a.size();
  if (k.size() != n) throw std::invalid_argument("volterra_solve: size mismatch");
  std::vector<cplx> rho(n);
  if (n == 0) return rho;
  rho[0] = a[0];
  for (std::size_t i = 1; i < n; ++i) {
    cplx s = 0.5 * k[i] * rho[0];
    for (std::size_t j = 1; j < i; ++j) s += k[i - j] * rho[j];
    rho[i] = (a[i] + dt * s) / (1.0 - 0.5 * dt * k[0]);
  }
  return rho;
}

// Same piecewise-linear product rule, each cell integrated by 8-point
// Gauss-Legendre.
std::vector<cplx> laplace_transform(const std::vector<cplx>& kernel, double dt,
                                    const std::vector<double>& omega, double sigma) {
  using std::numbers::pi;
  static const double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                              0.9602898564975363};
  static const double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                              0.1012285362903763};
  std::vector<cplx> out(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const cplx z(-sigma, 2.0 * pi * omega[i]);
    cplx s = 0.0;
    for (std::size_t j = 0; j + 1 < kernel.size(); ++j) {
      const double t0 = j * dt;
      for (int q = 0; q < 8; ++q) {
        const double u = q < 4 ? 0.5 * (1 - x[q]) : 0.5 * (1 + x[q - 4]);
        const double wq = 0.5 * w[q % 4];
        const cplx kv = kernel[j] + (kernel[j + 1] - kernel[j]) * u;
        s += dt * wq * kv * std::exp(z * (t0 + u * dt));
      }
    }
    out[i] = s;
  }
  return out;
}

double echo_kernel(double t, double tau, double alpha, double gamma, int kmax) {
  double best = 0.0;
  for (int k = -kmax; k <= kmax; ++k)
    for (int l = -kmax; l <= kmax; ++l) {
      if (k == 0 || l == 0) continue;
      const double kl = std::abs(double(k - l));
      const double v = std::exp(-alpha * std::abs(double(l)) - alpha * (t - tau) * kl / t -
                                alpha * std::abs(k * (t - tau) + l * tau)) /
                       (1.0 + std::pow(kl, gamma));
      best = std::max(best, v);
    }
  return (1.0 + tau) * best;
}

}  // namespace cyclo::reference
