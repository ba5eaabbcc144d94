#include "cyclo/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cyclo::kernels {

namespace {

constexpr std::size_t kBlock = 2048;

// (e^{zh} - 1) / z and int_0^h s e^{zs} ds, with series for small zh
void linear_weights(cplx z, double h, cplx& e0, cplx& e1) {
  const cplx zh = z * h;
  if (std::abs(zh) < 1e-2) {
    // e0 = h sum (zh)^n / (n+1)!, e1 = h^2 sum (zh)^n / (n! (n+2))
    cplx p = 1.0, s0 = 0.0, s1 = 0.0;
    double f0 = 1.0, fn = 1.0;
    for (int n = 0; n < 10; ++n) {
      s0 += p / f0;
      s1 += p / (fn * (n + 2));
      p *= zh;
      f0 *= n + 2;
      fn *= n + 1;
    }
    e0 = h * s0;
    e1 = h * h * s1;
    return;
  }
  const cplx ezh = std::exp(zh);
  e0 = (ezh - 1.0) / z;
  e1 = h * ezh / z - (ezh - 1.0) / (z * z);
}

}  // namespace

cplx history_sum(const cplx* k, const cplx* rho, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t m = n - 1;  // terms j = 1 .. n-1
  const std::size_t nb = (m + kBlock - 1) / kBlock;
  if (nb == 1) {
    cplx s = 0.0;
    for (std::size_t j = 1; j < n; ++j) s += k[n - j] * rho[j];
    return s;
  }
  std::vector<cplx> part(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < std::ptrdiff_t(nb); ++b) {
    const std::size_t lo = 1 + b * kBlock, hi = std::min(n, lo + kBlock);
    cplx s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += k[n - j] * rho[j];
    part[b] = s;
  }
  cplx s = 0.0;
  for (const auto& p : part) s += p;
  return s;
}

std::vector<cplx> volterra_solve(const std::vector<cplx>& a, const std::vector<cplx>& k, double dt) {
  const std::size_t n = a.size();
  if (k.size() != n) throw std::invalid_argument("volterra_solve: size mismatch");
  std::vector<cplx> rho(n);
  if (n == 0) return rho;
  const cplx denom = 1.0 - 0.5 * dt * k[0];
  rho[0] = a[0];
  for (std::size_t i = 1; i < n; ++i) {
    const cplx hist = 0.5 * k[i] * rho[0] + history_sum(k.data(), rho.data(), i);
    rho[i] = (a[i] + dt * hist) / denom;
  }
  return rho;
}

std::vector<cplx> laplace_transform(const std::vector<cplx>& kernel, double dt,
                                    const std::vector<double>& omega, double sigma) {
  using std::numbers::pi;
  std::vector<cplx> out(omega.size());
  const std::size_t n = kernel.size();
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(omega.size()); ++i) {
    const cplx z(-sigma, 2.0 * pi * omega[i]);
    cplx e0, e1;
    linear_weights(z, dt, e0, e1);
    const cplx wa = e0 - e1 / dt, wb = e1 / dt;
    cplx s = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double t = double(j) * dt;
      const cplx ph = std::exp(-sigma * t) * std::polar(1.0, 2.0 * pi * omega[i] * t);
      s += ph * (kernel[j] * wa + kernel[j + 1] * wb);
    }
    out[i] = s;
  }
  return out;
}

}  // namespace cyclo::kernels
