#pragma once

#include <array>

namespace cyclo {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;
using IVec3 = std::array<int, 3>;

// Uniform background field along z with q = m = 1, so omega == b0.
struct Kinematics {
  double omega = 0.0;
  double b0 = 0.0;
};

Kinematics make_kinematics(double b0);

struct PhasePoint {
  Vec3 x{};  // torus coordinates in [0,1)
  Vec3 v{};
};

struct RotatedFrequency {
  double eta_k1 = 0.0;
  double eta_k2 = 0.0;
  double nu_k = 0.0;
};

// sin(omega*dt)/omega and (cos(omega*dt)-1)/omega with a series branch
// near omega*dt = 0.
double sin_over_omega(double omega, double dt);
double cos_minus_one_over_omega(double omega, double dt);

Mat3 rotation_matrix(double dt, const Kinematics& kin);
Mat3 drift_matrix(double dt, const Kinematics& kin);

PhasePoint exact_flow(double t, double tau, const PhasePoint& p, const Kinematics& kin);
// Same flow without the mod-1 reduction of the position.
PhasePoint exact_flow_unwrapped(double t, double tau, const PhasePoint& p, const Kinematics& kin);
PhasePoint shift_s0(double t, double tau, const PhasePoint& p, const Kinematics& kin);

RotatedFrequency rotated_frequencies(const IVec3& k, double t, const Kinematics& kin);

// Diagonal shift vector (sin(W d)/W, sin(W d)/W, d) used by the time-shifted
// norms, with d = t - tau.
Vec3 shift_vector(double d, const Kinematics& kin);

// xi(t) = M(t)^T k: the velocity frequency reached at time t by a mode k of
// the free-streamed initial datum.
Vec3 transport_frequency(const Vec3& k, double t, const Kinematics& kin);

Vec3 matvec(const Mat3& m, const Vec3& v);
Mat3 matmul(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& m);
double det3(const Mat3& m);
Vec3 to_vec(const IVec3& k);
double reduce_mod1(double x);

}  // namespace cyclo
