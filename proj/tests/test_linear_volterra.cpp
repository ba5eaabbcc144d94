#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cyclo/error.hpp"
#include "cyclo/kernels.hpp"
#include "cyclo/linear_volterra.hpp"
#include "cyclo/reference.hpp"

using namespace cyclo;
using std::numbers::pi;

namespace {

Equilibrium maxw(double vt = 1.0, double vp = -1.0) {
  Equilibrium e;
  e.v_thermal = vt;
  e.v_thermal_perp = vp > 0 ? vp : vt;
  e.vdim = 3;
  return e;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("zero kernel returns the source") {
  const auto t = uniform_grid(5.0, 0.01);
  std::vector<cplx> a(t.size()), k(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) a[i] = std::exp(-t[i]) * std::polar(1.0, t[i]);
  auto s = make_system({0, 0, 1}, 0.01, 5.0, a, k);
  CHECK(volterra_march(s) == a);
}

TEST_CASE("constant kernel resolvent") {
  // rho = a + c int rho  =>  rho = a e^{ct}
  const double c = -0.7, a0 = 1.3, T = 2.0;
  double prev = 0;
  for (double dt : {0.02, 0.01, 0.005}) {
    const auto t = uniform_grid(T, dt);
    auto s = make_system({0, 0, 1}, dt, T, std::vector<cplx>(t.size(), a0), std::vector<cplx>(t.size(), c));
    const auto r = volterra_march(s);
    double err = 0;
    for (std::size_t i = 0; i < t.size(); ++i) err = std::max(err, std::abs(r[i] - a0 * std::exp(c * t[i])));
    CHECK(err < 0.1 * dt * dt);
    if (prev > 0) CHECK(prev / err > 3.5);
    prev = err;
  }
}

TEST_CASE("self convergence order") {
  auto sol = [](double dt) {
    const auto t = uniform_grid(8.0, dt);
    std::vector<cplx> a(t.size()), k(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      a[i] = std::exp(-t[i] * t[i]) * std::polar(1.0, 0.5 * t[i]);
      k[i] = -1.5 * std::exp(-t[i]) * std::cos(3 * t[i]);
    }
    return volterra_march(make_system({0, 0, 1}, dt, 8.0, a, k));
  };
  const auto r1 = sol(0.04), r2 = sol(0.02), r3 = sol(0.01);
  double d12 = 0, d23 = 0;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    d12 = std::max(d12, std::abs(r1[i] - r2[2 * i]));
    d23 = std::max(d23, std::abs(r2[2 * i] - r3[4 * i]));
  }
  CHECK(std::log2(d12 / d23) >= 1.8);
}

TEST_CASE("linearity of the march") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  const auto t = uniform_grid(4.0, 0.01);
  std::vector<cplx> a1(t.size()), a2(t.size()), k(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    a1[i] = {n(rng), n(rng)};
    a2[i] = {n(rng), n(rng)};
    k[i] = std::exp(-t[i]) * cplx(n(rng), n(rng));
  }
  const cplx al(0.3, -1.1), be(2.0, 0.5);
  std::vector<cplx> a3(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) a3[i] = al * a1[i] + be * a2[i];
  const auto r1 = volterra_march(make_system({0, 0, 1}, 0.01, 4.0, a1, k));
  const auto r2 = volterra_march(make_system({0, 0, 1}, 0.01, 4.0, a2, k));
  const auto r3 = volterra_march(make_system({0, 0, 1}, 0.01, 4.0, a3, k));
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(r3[i] - (al * r1[i] + be * r2[i])) < 1e-10);
}

TEST_CASE("near singular step") {
  const auto t = uniform_grid(1.0, 0.1);
  auto s = make_system({0, 0, 1}, 0.1, 1.0, std::vector<cplx>(t.size(), 1.0), std::vector<cplx>(t.size(), 20.0));
  CHECK_THROWS_AS(volterra_march(s), NumericError);
}

TEST_CASE("parallel kernels match the serial reference") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  const std::size_t N = 6000;
  std::vector<cplx> a(N), k(N);
  for (std::size_t i = 0; i < N; ++i) {
    a[i] = {n(rng), n(rng)};
    k[i] = std::exp(-0.001 * i) * cplx(n(rng), n(rng));
  }
  const auto p = kernels::volterra_solve(a, k, 1e-3);
  const auto s = reference::volterra_solve(a, k, 1e-3);
  double scale = 0;
  for (auto& v : s) scale = std::max(scale, std::abs(v));
  CHECK(max_abs_diff(p, s) < 1e-12 * scale);
  std::vector<double> w{-3.0, -0.5, 0.0, 0.25, 2.0};
  const auto lp = kernels::laplace_transform(k, 0.01, w, 0.01);
  const auto ls = reference::laplace_transform(k, 0.01, w, 0.01);
  CHECK(max_abs_diff(lp, ls) < 1e-10);
}

TEST_CASE("landau kernel from an independent 1-D formula") {
  // E = -grad(Ws * rho): K(t) = -4 pi^2 Ws |k|^2 t f0^(k t)
  const auto w = make_potential(2.0, 1.0, PotentialKind::scalar_gradient);
  Equilibrium eq;
  eq.vdim = 1;
  eq.v_thermal = 1.0;
  const auto kin = make_kinematics(1e-8);
  for (int k3 : {1, 2, 3}) {
    const auto t = uniform_grid(4.0, 0.01);
    const auto K = kernel_k0(eq, w, {0, 0, k3}, t, kin);
    const double ws = 1.0 / (1.0 + k3 * k3);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double kt = k3 * t[i];
      const double want = -4 * pi * pi * ws * k3 * k3 * t[i] * std::exp(-2 * pi * pi * kt * kt);
      CHECK(std::abs(K[i] - want) < 1e-8);
    }
  }
}

TEST_CASE("zero potential gives zero kernel") {
  const auto w = make_potential(2.0, 0.0, PotentialKind::perpendicular_odd);
  const auto t = uniform_grid(3.0, 0.05);
  for (auto v : kernel_k0(maxw(1.0, 0.7), w, {1, 1, 1}, t, make_kinematics(1.0))) CHECK(v == cplx(0));
}

TEST_CASE("magnetic kernel terms at zero field") {
  // omega = 0: xi = k s, g(s) = 4 pi^2 (vt^2 - vp^2) k3 s^2 (k1 b2 - k2 b1) exp(-alpha s^2)
  const auto w = make_potential(2.0, 1.0, PotentialKind::perpendicular_odd);
  const auto eq = maxw(1.0, 0.6);
  const IVec3 k{1, 1, 1};
  const auto t = uniform_grid(3.0, 0.05);
  KernelOptions only_b;
  only_b.e_term = false;
  const auto K = kernel_k0(eq, w, k, t, make_kinematics(0.0), only_b);
  const double wk = 1.0 / (1.0 + 3.0);
  // W = (i wk, 0, 0), k x W = (0, i wk, -i wk), b = 2 pi i k x W
  const cplx b1 = 0.0, b2 = 2 * pi * cplx(0, 1) * cplx(0, wk);
  const double alpha = 2 * pi * pi * (1.0 + 0.36 * 2);
  const cplx c = 4 * pi * pi * (1.0 - 0.36) * (1.0 * b2 - 1.0 * b1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = t[i];
    const double I2 = std::sqrt(pi) * std::erf(std::sqrt(alpha) * s) / (4 * std::pow(alpha, 1.5)) -
                      s * std::exp(-alpha * s * s) / (2 * alpha);
    CHECK(std::abs(K[i] - c * I2) < 1e-12);
  }
  // isotropic equilibrium: no magnetic contribution
  const auto K0 = kernel_k0(maxw(), w, k, t, make_kinematics(0.5), only_b);
  for (auto v : K0) CHECK(v == cplx(0));
}

TEST_CASE("source from the eta grid") {
  // the cubic error scales with deta^4 = (2 lv)^-4
  const auto g = make_geometry(1, 2, 1024, 32.0);
  Equilibrium eq;
  eq.vdim = 1;
  Perturbation p;
  p.mode = {0, 0, 1};
  p.amplitude = 0.1;
  const auto d = initial_distribution(g, eq, {p}, false);
  const auto hat = v_transform(d);
  const int m = mode_index(g, {0, 0, 1});
  std::vector<cplx> block(hat.begin() + m * g.v_size(), hat.begin() + (m + 1) * g.v_size());
  const auto t = uniform_grid(1.2, 0.01);
  const auto a = source_a(g, block, {0, 0, 1}, t, make_kinematics(0.0));
  const auto b = source_a_analytic(p, eq, {0, 0, 1}, t, make_kinematics(0.0));
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(std::abs(a[i] - 0.05 * std::exp(-2 * pi * pi * t[i] * t[i])) < 1e-6);
    CHECK(std::abs(b[i] - 0.05 * std::exp(-2 * pi * pi * t[i] * t[i])) < 1e-15);
  }
  const auto far = uniform_grid(20.0, 1.0);
  CHECK_THROWS_AS(source_a(g, block, {0, 0, 1}, far, make_kinematics(0.0)), NumericError);

  // oblique mode with the 3-D velocity grid and rotation
  const auto g3 = make_geometry(3, 1, 64, 8.0, 64);
  Equilibrium e3 = maxw();
  Perturbation q;
  q.mode = {1, 0, 1};
  q.amplitude = 0.2;
  q.profile.kind = Profile::Kind::gaussian;
  q.profile.width = 1.0;
  q.profile.center = {0.3, -0.2, 0.1};
  const auto d3 = initial_distribution(g3, e3, {q}, false);
  const auto h3 = v_transform(d3);
  const int m3 = mode_index(g3, {1, 0, 1});
  std::vector<cplx> blk(h3.begin() + m3 * g3.v_size(), h3.begin() + (m3 + 1) * g3.v_size());
  const auto t3 = uniform_grid(0.8, 0.05);
  const auto kin = make_kinematics(1.0);
  const auto s3 = source_a(g3, blk, {1, 0, 1}, t3, kin);
  const auto r3 = source_a_analytic(q, e3, {1, 0, 1}, t3, kin);
  CHECK(max_abs_diff(s3, r3) < 2e-4);
}

TEST_CASE("perpendicular modes are not damped") {
  const auto w = make_potential(2.0, 1.0, PotentialKind::perpendicular_odd);
  const auto eq = maxw();
  const auto kin = make_kinematics(1.0);
  const IVec3 k{1, 0, 0};
  const double dt = 2 * pi / 400;
  const auto t = uniform_grid(4 * pi, dt);
  Perturbation p;
  p.mode = k;
  p.amplitude = 0.1;
  const auto a = source_a_analytic(p, eq, k, t, kin);
  const auto K = kernel_k0(eq, w, k, t, kin);
  const auto r = volterra_march(make_system(k, dt, 4 * pi, a, K));
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(std::abs(r[i]) - std::abs(a[i])) < 1e-8);
  // one gyration later the density returns
  CHECK(std::abs(std::abs(r[400]) - std::abs(r[0])) < 1e-8);
  CHECK(std::abs(std::abs(r[800]) - std::abs(r[0])) < 1e-8);
}

TEST_CASE("stability margin") {
  const auto eq = maxw();
  const auto kin = make_kinematics(1.0);
  const IVec3 k{1, 0, 1};
  const auto grid = default_omega_grid(eq, k, kin, 801);
  const auto zero = stability_margin(eq, make_potential(2.0, 0.0, PotentialKind::perpendicular_odd), k, grid, kin);
  CHECK(zero.sup_abs == 0.0);
  CHECK(zero.kappa_margin == 1.0);
  const auto r1 = stability_margin(eq, make_potential(2.0, 1.0, PotentialKind::perpendicular_odd), k, grid, kin);
  const auto r2 = stability_margin(eq, make_potential(2.0, 0.5, PotentialKind::perpendicular_odd), k, grid, kin);
  CHECK(r1.kappa_margin > 0.0);
  CHECK(r1.stable);
  CHECK(std::abs(r2.sup_abs - 0.5 * r1.sup_abs) < 1e-10);
  CHECK(r1.resonant_mass == doctest::Approx(std::erf(3.0 / std::sqrt(2.0))));
  CHECK_THROWS_AS(stability_margin(eq, make_potential(2.0, 1.0, PotentialKind::perpendicular_odd), k,
                                   std::vector<double>{-1.0, 1.0}, kin),
                  ConfigError);
}

TEST_CASE("periodic laplace transform against brute force") {
  // k3 = 0 with a scalar potential: K(t) = -4 pi^2 Ws sin(t) f0^(xi(t)) is 2 pi periodic
  Equilibrium eq = maxw();
  const auto w = make_potential(2.0, 1.0, PotentialKind::scalar_gradient);
  const auto kin = make_kinematics(1.0);
  const IVec3 k{1, 0, 0};
  const std::vector<double> grid{-5.0, -1.3, 0.4, 5.0};
  const auto r = stability_margin(eq, w, k, grid, kin);
  // composite Simpson over 30 / sigma time units
  const double sigma = 1e-3;
  const double h = 2 * pi / 2048;
  const std::size_t n = 2 * std::size_t(15.0 / sigma / h);
  double best = 0;
  for (double om : grid) {
    cplx s = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double t = j * h;
      const double xi1 = std::sin(t), xi2 = std::cos(t) - 1;
      const double K = -4 * pi * pi * 0.5 * xi1 * std::exp(-2 * pi * pi * (xi1 * xi1 + xi2 * xi2));
      const double wgt = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      s += wgt * h / 3 * K * std::exp(-sigma * t) * std::polar(1.0, 2 * pi * om * t);
    }
    best = std::max(best, std::abs(s));
  }
  CHECK(std::abs(r.sup_abs - best) < 1e-5 * best);
}

TEST_CASE("decay fits") {
  const auto t = uniform_grid(20.0, 0.01);
  std::vector<cplx> a(t.size()), b(t.size()), c(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    a[i] = std::exp(-0.5 * t[i]);
    b[i] = std::exp(-0.3 * t[i]) * std::cos(4 * t[i]);
    c[i] = std::exp(-0.5 * t[i] * t[i]);
  }
  const auto fa = fit_decay_rate(t, a, 1.0);
  CHECK(std::abs(fa.rate - 0.5) < 1e-6);
  CHECK_FALSE(fa.non_exponential);
  const auto fb = fit_decay_rate(t, b, 1.0);
  CHECK(std::abs(fb.rate - 0.3) < 0.02);
  const auto fc = fit_decay_rate(t, c, 1.0, 20.0);
  CHECK(fc.rate > 0);
  CHECK(fc.non_exponential);
  CHECK_THROWS_AS(fit_decay_rate(t, a, 1.0, 1.05), NumericError);
}
