#pragma once

#include <array>
#include <vector>

#include "cyclo/phase_space.hpp"

namespace cyclo {

using CVec3 = std::array<cplx, 3>;

enum class PotentialKind {
  perpendicular_odd,  // W1 = i sign(k3) a / (1 + |k|^gamma), W2 = W3 = 0
  scalar_gradient     // E = -grad(Ws * rho), Ws = a / (1 + |k|^gamma)
};

struct InteractionPotential {
  double gamma = 2.0;
  double amplitude = 1.0;
  PotentialKind kind = PotentialKind::perpendicular_odd;
};

// Validates gamma > 1 and, for the perpendicular kind, the bound
// |W(k)| <= 1/(1+|k|^gamma) and oddness in x3 on the lattice |k_i| <= kmax.
InteractionPotential make_potential(double gamma, double amplitude, PotentialKind kind, int kmax = 16);

CVec3 w_hat(const InteractionPotential& w, const IVec3& k);

struct FieldState {
  std::vector<CVec3> e_hat;
  std::vector<CVec3> b_hat;
  double time = 0.0;
};

FieldState zero_fields(const Geometry& g);

std::vector<CVec3> electric_field(const Geometry& g, const std::vector<cplx>& rho_hat,
                                  const InteractionPotential& w);

// Trapezoid update of dB/dt = 2 pi i k x E between two electric field samples.
std::vector<CVec3> advance_b(const Geometry& g, const std::vector<CVec3>& b_hat,
                             const std::vector<CVec3>& e_old, const std::vector<CVec3>& e_new,
                             double dt);

double field_energy(const std::vector<CVec3>& f);
double max_divergence(const Geometry& g, const std::vector<CVec3>& b_hat);

// (E + v x (B - omega z)) . grad_v f on the (k, v) grid. The background part
// is written as v x (-omega z) = omega z x v, the generator of R(omega t).
SpectralDistribution lorentz_term(const SpectralDistribution& dist, const FieldState& fields,
                                  const Kinematics& kin);

}  // namespace cyclo
