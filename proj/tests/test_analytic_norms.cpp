#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cyclo/analytic_norms.hpp"
#include "cyclo/error.hpp"

using namespace cyclo;
using std::numbers::pi;

namespace {

const Kinematics kLandau = make_kinematics(0.0);

SpectralDistribution random_dist(const Geometry& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uw(0.7, 1.5), uc(-1, 1);
  std::normal_distribution<double> n;
  SpectralDistribution d(g);
  const auto v = v_axis(g, 2);
  for (std::size_t m = 0; m < g.n_modes(); ++m) {
    const double w = uw(rng), c = uc(rng);
    const cplx a(n(rng), n(rng));
    for (int i = 0; i < g.nv; ++i) d.mode(m)[i] = a * std::exp(-0.5 * (v[i] - c) * (v[i] - c) / (w * w));
  }
  return d;
}

}  // namespace

TEST_CASE("f norm closed forms") {
  const auto g = make_geometry(1, 3, 32, 8.0);
  std::vector<cplx> f(g.n_modes(), 0.0);
  CHECK(f_norm(g, f, 0.3) == 0.0);
  f[mode_index(g, {0, 0, 1})] = 0.5;
  f[mode_index(g, {0, 0, -1})] = 0.5;
  CHECK(f_norm(g, f, 0.3) == doctest::Approx(std::exp(2 * pi * 0.3)).epsilon(1e-14));
  f[mode_index(g, {0, 0, 2})] = 0.5;
  f[mode_index(g, {0, 0, -2})] = 0.5;
  CHECK(f_norm(g, f, 0.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(f_norm(g, f, 200.0), NumericError);
}

TEST_CASE("single mode z norm") {
  // g(v) e^{2 pi i x3}, tau = t, lambda = 0: e^{2 pi mu} |g|_p
  const auto g = make_geometry(1, 2, 64, 8.0);
  SpectralDistribution d(g);
  const auto v = v_axis(g, 2);
  double l1 = 0, linf = 0;
  for (int i = 0; i < g.nv; ++i) {
    const double gv = std::exp(-0.5 * v[i] * v[i]);
    d.mode(mode_index(g, {0, 0, 1}))[i] = gv;
    l1 += gv * g.dv();
    linf = std::max(linf, gv);
  }
  auto q = make_norm_params(0.0, 0.37, 1.0, 1.0);
  CHECK(z_norm(d, q, kLandau) == doctest::Approx(std::exp(2 * pi * 0.37) * l1).epsilon(1e-13));
  q.p = std::numeric_limits<double>::infinity();
  CHECK(z_norm(d, q, kLandau) == doctest::Approx(std::exp(2 * pi * 0.37) * linf).epsilon(1e-13));
}

TEST_CASE("v-only data") {
  const auto g = make_geometry(1, 2, 64, 8.0);
  std::mt19937_64 rng(1);
  auto d = random_dist(g, rng);
  for (std::size_t m = 0; m < g.n_modes(); ++m)
    if (mode_vector(g, m)[2] != 0)
      for (int i = 0; i < g.nv; ++i) d.mode(m)[i] = 0.0;
  const cplx* b = d.mode(mode_index(g, {0, 0, 0}));
  for (double p : {1.0, 2.0}) {
    const double c = c_norm(g, b, 0.3, p).value;
    for (double mu : {0.0, 0.4})
      for (double tau : {-2.0, 0.0, 1.5}) {
        const auto q = make_norm_params(0.3, mu, 0.0, tau, 0.0, p);
        CHECK(z_norm(d, q, kLandau) == doctest::Approx(c).epsilon(1e-12));
      }
  }
}

TEST_CASE("x-only data") {
  const auto g = make_geometry(1, 4, 32, 8.0);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  std::vector<cplx> f(g.n_modes());
  for (auto& c : f) c = {n(rng), n(rng)};
  for (double tau : {-2.5, 0.0, 1.0}) {
    const auto q = make_norm_params(0.4, 0.2, 0.0, tau);
    const double want = f_norm(g, f, 0.4 * std::abs(tau) + 0.2);
    CHECK(f_tau_norm_x(g, f, q, kLandau) == doctest::Approx(want).epsilon(1e-12));
    CHECK(z_norm_x(g, f, q, kLandau).value == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("y norm single eta mode") {
  const auto g = make_geometry(1, 2, 64, 8.0);
  SpectralDistribution d(g);
  const auto v = v_axis(g, 2);
  const auto eta = eta_axis(g, 2);
  const int j = 5;
  const IVec3 k{0, 0, -2};
  const double a = 0.7;
  for (int i = 0; i < g.nv; ++i) d.mode(mode_index(g, k))[i] = a / (2 * g.lv) * std::polar(1.0, 2 * pi * eta[j] * v[i]);
  const auto q = make_norm_params(0.3, 0.2, 0.5, 0.0);
  const double want = a * std::exp(2 * pi * 0.2 * 2) * std::exp(2 * pi * 0.3 * std::abs(eta[j] + k[2] * 0.5));
  CHECK(y_norm(d, q, kLandau) == doctest::Approx(want).epsilon(1e-12));
  CHECK(y_norm(SpectralDistribution(g), q, kLandau) == 0.0);
}

TEST_CASE("norm properties on random data") {
  const auto g = make_geometry(1, 3, 64, 8.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 0.5), ut(-2, 2);
  for (int s = 0; s < 50; ++s) {
    const auto d = random_dist(g, rng);
    const auto e = random_dist(g, rng);
    const auto q = make_norm_params(u(rng), u(rng), 0.0, ut(rng));
    const double zd = z_norm(d, q, kLandau);
    CHECK(y_norm(d, q, kLandau) <= zd * (1 + 1e-9));
    if (s < 10) {
      SpectralDistribution sum = d, scaled = d;
      for (std::size_t i = 0; i < d.data.size(); ++i) {
        sum.data[i] += e.data[i];
        scaled.data[i] *= cplx(-2.0, 1.0);
      }
      CHECK(z_norm(sum, q, kLandau) <= (zd + z_norm(e, q, kLandau)) * (1 + 1e-12));
      CHECK(z_norm(scaled, q, kLandau) == doctest::Approx(std::sqrt(5.0) * zd).epsilon(1e-12));
      NormParams lo = q;
      lo.lambda *= 0.5;
      lo.mu *= 0.7;
      CHECK(z_norm(d, lo, kLandau) <= zd);
      const auto sv = z_norm_series(d, q, kLandau);
      const auto sv5 = z_norm_series(d, q, kLandau, sv.n_max + 5);
      CHECK(std::abs(sv5.value - sv.value) < 1e-9 * sv.value);
      CHECK(sv.tail_bound < 1e-10 * sv.value);
    }
  }
}

TEST_CASE("divergence and overflow reports") {
  const auto g = make_geometry(1, 2, 64, 8.0);
  std::mt19937_64 rng(4);
  const auto d = random_dist(g, rng);
  CHECK_THROWS_AS(z_norm(d, make_norm_params(50.0, 0.0, 0.0, 3.0), kLandau), NumericError);
  CHECK_THROWS_AS(z_norm(d, make_norm_params(0.1, 80.0, 0.0, 0.0), kLandau), NumericError);
  CHECK_THROWS_AS(make_norm_params(-0.1, 0.0, 0.0, 0.0), ConfigError);
}

TEST_CASE("3-D velocity series") {
  // product Gaussian: the C norm factorizes over axes with D = grad
  const auto g = make_geometry(1, 1, 32, 8.0, 32);
  const auto g1 = make_geometry(1, 1, 32, 8.0);
  std::vector<cplx> b(g.v_size()), b1(g1.v_size());
  const auto v = v_axis(g, 2);
  std::size_t idx = 0;
  for (double x : v)
    for (double y : v)
      for (double z : v) b[idx++] = std::exp(-0.5 * (x * x + y * y + z * z));
  for (int i = 0; i < g1.nv; ++i) b1[i] = std::exp(-0.5 * v[i] * v[i]);
  const double c3 = c_norm(g, b.data(), 0.2, 1.0).value;
  const double c1 = c_norm(g1, b1.data(), 0.2, 1.0).value;
  CHECK(c3 == doctest::Approx(c1 * c1 * c1).epsilon(1e-9));
}

TEST_CASE("inequality suite") {
  const auto rep = prop25_suite(0, 20);
  CHECK(rep.all_pass());
  for (const auto& it : rep.items) {
    CHECK(it.samples > 0);
    if (it.asserted) CHECK(it.pass);
  }
  CHECK(rep.truncation_change < 1e-9);
  CHECK(rep.to_json().find("\"items\"") != std::string::npos);
}
