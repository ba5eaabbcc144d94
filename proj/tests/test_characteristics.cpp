#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cyclo/characteristics.hpp"

using namespace cyclo;
using std::numbers::pi;

namespace {

// uniform fields held in the k = 0 mode
FieldHistory uniform_history(const Geometry& g, const Vec3& e, const Vec3& b, double t_end, double dt) {
  FieldHistory h;
  h.geometry = g;
  const int z = mode_index(g, {0, 0, 0});
  for (int i = 0; double(i) * dt <= t_end + 1e-12; ++i) {
    auto s = zero_fields(g);
    for (int a = 0; a < 3; ++a) {
      s.e_hat[z][a] = e[a];
      s.b_hat[z][a] = b[a];
    }
    h.push(i * dt, s);
  }
  return h;
}

// E1 = delta exp(-lambda s) cos(2 pi x3)
FieldHistory decaying_history(const Geometry& g, double delta, double lambda, double t_end, double dt) {
  FieldHistory h;
  h.geometry = g;
  const int m = mode_index(g, {0, 0, 1}), mm = mode_index(g, {0, 0, -1});
  for (int i = 0; double(i) * dt <= t_end + 1e-12; ++i) {
    auto s = zero_fields(g);
    s.e_hat[m][0] = s.e_hat[mm][0] = 0.5 * delta * std::exp(-lambda * i * dt);
    h.push(i * dt, s);
  }
  return h;
}

double dist(const PhasePoint& a, const PhasePoint& b) {
  double s = 0;
  for (int i = 0; i < 3; ++i) s = std::max({s, std::abs(a.x[i] - b.x[i]), std::abs(a.v[i] - b.v[i])});
  return s;
}

}  // namespace

TEST_CASE("no field means no deflection") {
  const auto g = make_geometry(1, 1, 32, 8.0);
  const auto h = uniform_history(g, Vec3{}, Vec3{}, 10.0, 0.5);
  const auto kin = make_kinematics(1.7);
  for (const auto& p : halton_probes(16, 5.0)) {
    const auto d = deflection(7.3, 1.1, p, h, kin);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(d.dx[i]) < 1e-13);
      CHECK(std::abs(d.dv[i]) < 1e-13);
    }
  }
}

TEST_CASE("uniform acceleration") {
  const auto g = make_geometry(1, 1, 32, 8.0);
  const double e1 = 0.3;
  const auto h = uniform_history(g, Vec3{e1, 0, 0}, Vec3{}, 10.0, 0.5);
  const auto kin = make_kinematics(0.0);
  const PhasePoint p{{0.2, 0.4, 0.6}, {1.0, -0.5, 0.25}};
  for (double t : {0.7, 4.0, 9.5}) {
    const double tau = 0.3;
    const auto d = deflection(t, tau, p, h, kin);
    CHECK(d.dv[0] == doctest::Approx(e1 * (t - tau)).epsilon(1e-12));
    CHECK(d.dx[0] == doctest::Approx(0.5 * e1 * (t - tau) * (t - tau)).epsilon(1e-12));
    CHECK(std::abs(d.dx[1]) + std::abs(d.dv[2]) < 1e-14);
  }
}

TEST_CASE("uniform field with gyration matches the Duhamel integral") {
  const auto g = make_geometry(1, 1, 32, 8.0);
  const Vec3 e{0.2, -0.1, 0.05};
  const auto h = uniform_history(g, e, Vec3{}, 10.0, 0.25);
  const auto kin = make_kinematics(1.3);
  const PhasePoint p{{0.1, 0.2, 0.3}, {0.5, 1.0, -1.0}};
  const double t = 6.0, tau = 0.5;
  const auto d = deflection(t, tau, p, h, kin);
  // dV = int R(t-s) E ds = M(t-tau) E, dX = int M(t-s) E ds (Simpson)
  const Vec3 dv = matvec(drift_matrix(t - tau, kin), e);
  const int n = 2000;
  Vec3 dx{};
  for (int i = 0; i <= n; ++i) {
    const double s = tau + (t - tau) * i / n;
    const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    const Vec3 q = matvec(drift_matrix(t - s, kin), e);
    for (int a = 0; a < 3; ++a) dx[a] += w * q[a] * (t - tau) / n / 3;
  }
  for (int a = 0; a < 3; ++a) {
    CHECK(d.dv[a] == doctest::Approx(dv[a]).epsilon(1e-9));
    CHECK(d.dx[a] == doctest::Approx(dx[a]).epsilon(1e-10));
  }
}

TEST_CASE("full equals reduced when dB vanishes") {
  const auto g = make_geometry(1, 1, 32, 8.0);
  const auto h = decaying_history(g, 0.2, 0.3, 10.0, 0.1);
  const auto kin = make_kinematics(0.9);
  for (const auto& p : halton_probes(8, 5.0)) {
    const auto a = full_characteristics(9.0, 0.0, p, h, kin);
    const auto b = reduced_characteristics(9.0, 0.0, p, h, kin);
    CHECK(dist(a, b) < 1e-12);
  }
  CHECK(reduction_gap(halton_probes(8, 5.0), 9.0, 0.0, h, kin) < 1e-12);
}

TEST_CASE("time reversal returns to the start") {
  const auto g = make_geometry(1, 1, 32, 8.0);
  const auto h = uniform_history(g, Vec3{0.1, 0.0, -0.2}, Vec3{0.05, 0.1, 0.0}, 10.0, 0.2);
  auto hd = decaying_history(g, 0.3, 0.2, 10.0, 0.2);
  for (std::size_t i = 0; i < hd.states.size(); ++i) hd.states[i].b_hat = h.states[i].b_hat;
  const auto kin = make_kinematics(1.1);
  for (const auto& p : halton_probes(16, 5.0)) {
    const auto q = full_characteristics(10.0, 0.0, p, hd, kin);
    const auto back = full_characteristics(0.0, 10.0, q, hd, kin);
    CHECK(dist(back, p) < 1e-9);
  }
}

TEST_CASE("deflection of a decaying field") {
  const auto g = make_geometry(1, 1, 32, 8.0);
  const double delta = 0.2, lambda = 0.5;
  const auto h = decaying_history(g, delta, lambda, 20.0, 0.1);
  const auto kin = make_kinematics(1.0);
  const auto probes = halton_probes(64, 5.0);
  double prev = 1e300;
  for (double tau : {0.0, 2.0, 4.0, 6.0}) {
    const auto tr = deflection_trace(probes, tau, {tau + 5.0}, h, kin);
    const double dv = tr.samples[0].dv;
    CHECK(dv <= delta / lambda * std::exp(-lambda * tau));
    CHECK(dv <= prev);
    prev = dv;
  }
  const auto tr = deflection_trace(probes, 3.0, {3.0}, h, kin);
  CHECK(tr.samples[0].dx == 0.0);
  CHECK(tr.samples[0].dv == 0.0);
}

TEST_CASE("Halton probes") {
  const auto p = halton_probes(64, 5.0);
  REQUIRE(p.size() == 64);
  for (const auto& q : p) {
    CHECK(std::sqrt(q.v[0] * q.v[0] + q.v[1] * q.v[1] + q.v[2] * q.v[2]) <= 5.0);
    for (double x : q.x) CHECK((x >= 0.0 && x < 1.0));
  }
  CHECK(dist(p[10], halton_probes(64, 5.0)[10]) == 0.0);
}

TEST_CASE("reduction error is linear in the magnetic amplitude") {
  const auto g = make_geometry(3, 1, 32, 8.0, 32);
  Equilibrium eq;
  const auto w = make_potential(2.0, 1.0, PotentialKind::perpendicular_odd);
  const auto kin = make_kinematics(1.0);
  const IVec3 k{1, 0, 1};
  Perturbation p;
  p.mode = k;
  p.amplitude = 0.01;
  const double dt = 0.05, t_end = 10.0;
  const auto tg = uniform_grid(t_end, dt);
  auto sys = make_system(k, dt, t_end, source_a_analytic(p, eq, k, tg, kin), kernel_k0(eq, w, k, tg, kin));
  sys.rho_of_t = volterra_march(sys);
  const auto h = field_history_from_linear(g, w, {sys});
  CHECK(max_divergence(g, h.states.back().b_hat) < 1e-15);
  const auto probes = halton_probes(64, 5.0);
  double gap[3];
  for (int i = 0; i < 3; ++i) gap[i] = reduction_gap(probes, t_end, 0.0, h.scaled_b(std::pow(0.5, i)), kin);
  const double slope = std::log(gap[0] / gap[2]) / std::log(4.0);
  MESSAGE("gap " << gap[0] << " slope " << slope);
  CHECK(gap[0] > 0.0);
  CHECK(std::abs(slope - 1.0) < 0.1);
}
