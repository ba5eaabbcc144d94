#include "cyclo/kinematics.hpp"

#include <cmath>

namespace cyclo {

namespace {
constexpr double kSeriesThreshold = 1e-4;
}

Kinematics make_kinematics(double b0) { return Kinematics{b0, b0}; }

double sin_over_omega(double omega, double dt) {
  const double th = omega * dt;
  if (std::abs(th) < kSeriesThreshold) {
    const double t2 = th * th;
    return dt * (1.0 - t2 / 6.0 * (1.0 - t2 / 20.0));
  }
  return std::sin(th) / omega;
}

double cos_minus_one_over_omega(double omega, double dt) {
  const double th = omega * dt;
  if (std::abs(th) < kSeriesThreshold) {
    const double t2 = th * th;
    return -dt * th * 0.5 * (1.0 - t2 / 12.0 * (1.0 - t2 / 30.0));
  }
  return (std::cos(th) - 1.0) / omega;
}

Mat3 rotation_matrix(double dt, const Kinematics& kin) {
  const double c = std::cos(kin.omega * dt);
  const double s = std::sin(kin.omega * dt);
  return Mat3{Vec3{c, -s, 0.0}, Vec3{s, c, 0.0}, Vec3{0.0, 0.0, 1.0}};
}

Mat3 drift_matrix(double dt, const Kinematics& kin) {
  const double so = sin_over_omega(kin.omega, dt);
  const double co = cos_minus_one_over_omega(kin.omega, dt);
  return Mat3{Vec3{so, co, 0.0}, Vec3{-co, so, 0.0}, Vec3{0.0, 0.0, dt}};
}

Vec3 matvec(const Mat3& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

Mat3 transpose(const Mat3& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
  return r;
}

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Vec3 to_vec(const IVec3& k) { return Vec3{double(k[0]), double(k[1]), double(k[2])}; }

double reduce_mod1(double x) {
  double r = x - std::floor(x);
  // floor can round x - floor(x) up to exactly 1 for tiny negative x
  if (r >= 1.0) r = 0.0;
  return r;
}

PhasePoint exact_flow_unwrapped(double t, double tau, const PhasePoint& p, const Kinematics& kin) {
  const double d = t - tau;
  const Vec3 dx = matvec(drift_matrix(d, kin), p.v);
  PhasePoint out;
  out.v = matvec(rotation_matrix(d, kin), p.v);
  for (int i = 0; i < 3; ++i) out.x[i] = p.x[i] + dx[i];
  return out;
}

PhasePoint exact_flow(double t, double tau, const PhasePoint& p, const Kinematics& kin) {
  PhasePoint out = exact_flow_unwrapped(t, tau, p, kin);
  for (auto& xi : out.x) xi = reduce_mod1(xi);
  return out;
}

Vec3 shift_vector(double d, const Kinematics& kin) {
  const double so = sin_over_omega(kin.omega, d);
  return Vec3{so, so, d};
}

PhasePoint shift_s0(double t, double tau, const PhasePoint& p, const Kinematics& kin) {
  const Vec3 s = shift_vector(t - tau, kin);
  PhasePoint out = p;
  for (int i = 0; i < 3; ++i) out.x[i] = reduce_mod1(p.x[i] + s[i] * p.v[i]);
  return out;
}

RotatedFrequency rotated_frequencies(const IVec3& k, double t, const Kinematics& kin) {
  const double so = sin_over_omega(kin.omega, t);
  const double co = cos_minus_one_over_omega(kin.omega, t);
  RotatedFrequency r;
  // (1/W)(-k2 cos Wt + k2 - k1 sin Wt) and (1/W)(k1 cos Wt - k1 - k2 sin Wt)
  r.eta_k1 = -k[1] * co - k[0] * so;
  r.eta_k2 = k[0] * co - k[1] * so;
  r.nu_k = std::abs(r.eta_k1) + std::abs(r.eta_k2) + std::abs(double(k[2])) * t;
  return r;
}

Vec3 transport_frequency(const Vec3& k, double t, const Kinematics& kin) {
  return matvec(transpose(drift_matrix(t, kin)), k);
}

}  // namespace cyclo
