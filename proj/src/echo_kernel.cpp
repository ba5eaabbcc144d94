#include "cyclo/echo_kernel.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <functional>

#include "cyclo/error.hpp"

namespace cyclo {

namespace {

// The integrands are sups of many narrow exponential spikes with kinks at
// rational tau/t; fixed Gauss cells resolve them better than adaptive
// refinement does.
double composite(const std::function<double(double)>& f, double a, double b, double width) {
  if (!(b > a)) return 0.0;
  const long n = std::max(1L, long(std::ceil((b - a) / width)));
  const double h = (b - a) / n;
  double s = 0.0;
  for (long i = 0; i < n; ++i)
    s += boost::math::quadrature::gauss<double, 7>::integrate(f, a + i * h, a + (i + 1) * h);
  return s;
}

}  // namespace

void validate(const EchoKernelParams& p) {
  if (!(p.alpha > 0 && p.alpha < 1)) throw ConfigError("echo kernel: alpha must lie in (0,1)");
  if (!(p.gamma > 1)) throw ConfigError("echo kernel: gamma must be > 1");
  if (!(p.eps > 0 && p.eps < 1)) throw ConfigError("echo kernel: eps must lie in (0,1)");
  if (!(p.c0 >= 0)) throw ConfigError("echo kernel: c0 must be >= 0");
  if (!(p.m > 1)) throw ConfigError("echo kernel: m must be > 1");
}

double quad_width(const EchoKernelParams& p) { return p.quad_width > 0 ? p.quad_width : 0.02 / p.alpha; }

int lattice_cutoff(const EchoKernelParams& p) {
  return p.kmax_sup > 0 ? p.kmax_sup : int(std::ceil(40.0 / p.alpha));
}

double kernel_value(double t, double tau, const EchoKernelParams& p) {
  if (!(t > 0) || tau < 0 || tau > t) throw ConfigError("echo kernel: need 0 <= tau <= t, t > 0");
  const double a = p.alpha, g = p.gamma, d = t - tau;
  const int kmax = lattice_cutoff(p);
  auto term = [&](long k, long l) {
    const double kl = std::abs(double(k - l));
    return std::exp(-a * std::abs(double(l)) - a * d * kl / t - a * std::abs(k * d + l * tau)) /
           (1.0 + std::pow(kl, g));
  };
  // (k, l) -> (-k, -l) leaves the term unchanged, so l > 0. Writing
  // d = |k - l|, for k between l and k* = -l tau/d the log of the term is
  // -(a d + log(1 + d^g)) - b |k - k*| with a = alpha (t-tau)/t and
  // b = alpha (t-tau). Its only interior local maximum is where
  // g d^(g-1)/(1 + d^g) = b - a on the rising branch; everywhere else the
  // maximum sits at k = l or k = k*.
  double d1 = -1.0;
  {
    const double target = a * d * (1.0 - 1.0 / t);
    const double dp = std::pow(g - 1.0, 1.0 / g);
    auto slope = [&](double x) { return g * std::pow(x, g - 1) / (1 + std::pow(x, g)); };
    if (target > 0 && target < slope(dp)) {
      double lo = 0.0, hi = dp;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < target ? lo : hi) = mid;
      }
      d1 = lo;
    }
  }
  double best = 0.0;
  for (long l = 1; l <= kmax; ++l) {
    if (std::exp(-a * l) <= best) break;
    long cand[12] = {l - 1, l, l + 1};
    int nc = 3;
    if (d > 0) {
      const double ks = -double(l) * tau / d;
      const long f = long(std::floor(std::max(ks, -double(kmax) - 1)));
      cand[nc++] = f;
      cand[nc++] = f + 1;
      cand[nc++] = f - 1;
      cand[nc++] = f + 2;
      if (d1 > 0) {
        const long sg = ks < l ? -1 : 1;
        cand[nc++] = l + sg * long(std::floor(d1));
        cand[nc++] = l + sg * long(std::ceil(d1));
        cand[nc++] = l + sg * (long(std::ceil(d1)) + 1);
      }
    }
    for (int i = 0; i < nc; ++i) {
      long k = cand[i];
      if (k == 0) {
        best = std::max({best, term(1, l), term(-1, l)});
        continue;
      }
      if (std::abs(k) > kmax) continue;
      best = std::max(best, term(k, l));
    }
  }
  return (1.0 + tau) * best;
}

Moment forward_moment(double t, const EchoKernelParams& p) {
  validate(p);
  Moment m;
  if (!(t > 0)) return m;
  m.bound_shape = 1.0 / (std::pow(p.alpha, 3) * std::pow(p.eps, 1 + p.gamma) * std::pow(t, p.gamma - 1));
  const double w = quad_width(p);
  auto f = [&](double tau) { return kernel_value(t, tau, p) * std::exp(-p.eps * (t - tau)); };
  // peaks at tau = t m / (m + 1) from l = -1; beyond the last break the
  // peaks are closer than their width
  std::vector<double> br{0.0};
  const int mmax = std::min(4000, int(std::ceil(std::sqrt(p.alpha * t))) + 50);
  for (int k = 1; k <= mmax; ++k) br.push_back(t * k / (k + 1.0));
  br.push_back(t);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) s += composite(f, br[i], br[i + 1], w);
  m.value = s;
  return m;
}

double backward_integral(double tau, const EchoKernelParams& p) {
  validate(p);
  const double horizon = (std::log((1.0 + tau) / p.eps) + 15.0) / p.eps;
  const double w = quad_width(p);
  auto f = [&](double t) { return kernel_value(t, tau, p) * std::exp(-p.eps * (t - tau)); };
  std::vector<double> br;
  br.push_back(tau);
  if (tau > 0) {
    // peaks at t = tau (m + 1) / m, dense near tau
    for (int m = 400; m >= 1; --m) {
      const double b = tau * (m + 1.0) / m;
      if (b > br.back() && b < tau + horizon) br.push_back(b);
    }
  }
  br.push_back(tau + horizon);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    if (br[i] == 0.0) {
      // K(t, 0) is fine at t -> 0, but kernel_value needs t > 0
      s += composite(f, 1e-12, br[i + 1], w);
    } else {
      s += composite(f, br[i], br[i + 1], w);
    }
  }
  return s;
}

BackwardMoment backward_moment(double tau_max, const EchoKernelParams& p, int n_tau) {
  validate(p);
  if (!(tau_max > 0) || n_tau < 2) throw ConfigError("backward moment: need tau_max > 0 and n_tau >= 2");
  BackwardMoment r;
  r.bound_shape = 1.0 / (p.alpha * p.alpha * p.eps) + 1.0 / (p.alpha * std::pow(p.eps, p.gamma));
  r.tau.resize(n_tau);
  r.integral.resize(n_tau);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n_tau; ++i) {
    r.tau[i] = tau_max * i / (n_tau - 1);
    r.integral[i] = backward_integral(r.tau[i], p);
  }
  const auto it = std::max_element(r.integral.begin(), r.integral.end());
  r.value = *it;
  r.argmax = r.tau[it - r.integral.begin()];
  // beyond the horizon K <= 1 + tau and the weight is below e^{-15} eps / (1 + tau)
  r.tail_bound = std::exp(-15.0);
  return r;
}

}  // namespace cyclo
