#pragma once

#include <vector>

#include "cyclo/fields.hpp"
#include "cyclo/phase_space.hpp"

namespace cyclo {

struct VolterraSystem {
  IVec3 k{0, 0, 1};
  double dt = 0.01;
  std::vector<double> t_grid;
  std::vector<cplx> a_of_t;
  std::vector<cplx> kernel_of_t;
  std::vector<cplx> rho_of_t;
};

std::vector<double> uniform_grid(double t_end, double dt);

// A(t,k) from the eta-grid block of the perturbation f0^(k, eta) (one mode,
// FFT order, as produced by v_transform), interpolated at xi(t) = M(t)^T k.
// Cubic per axis, linear in the last cell at the grid edge.
std::vector<cplx> source_a(const Geometry& g, const std::vector<cplx>& f_hat_block, const IVec3& k,
                           const std::vector<double>& t_grid, const Kinematics& kin);

// Closed-form counterpart for a cos-modulated profile of amplitude a.
std::vector<cplx> source_a_analytic(const Perturbation& p, const Equilibrium& eq, const IVec3& k,
                                    const std::vector<double>& t_grid, const Kinematics& kin);

struct KernelOptions {
  bool e_term = true;
  bool b_terms = true;
};

// K(t) = -2 pi i (W.xi) f0^(xi) + int_0^t g, g(s) = 4 pi^2 (vt^2 - vp^2) xi3 (xi1 b2 - xi2 b1) f0^(xi)
// with b = 2 pi i k x W and xi = xi(s). The inner integral is accumulated
// cell by cell on t_grid with Gauss-Kronrod.
std::vector<cplx> kernel_k0(const Equilibrium& eq, const InteractionPotential& w, const IVec3& k,
                            const std::vector<double>& t_grid, const Kinematics& kin,
                            const KernelOptions& opt = {});

// The limit of int_0^t g as t -> infinity, needed for Laplace tails.
cplx kernel_b_tail(const Equilibrium& eq, const InteractionPotential& w, const IVec3& k,
                   const Kinematics& kin);

VolterraSystem make_system(const IVec3& k, double dt, double t_end, std::vector<cplx> a,
                           std::vector<cplx> kernel);

// rho = A + int_0^t K(t-s) rho(s) ds, trapezoid product integration.
std::vector<cplx> volterra_march(const VolterraSystem& s);

struct StabilityReport {
  IVec3 k{0, 0, 1};
  double sup_abs = 0.0;
  double sup_abs_small_sigma = 0.0;  // same sup at sigma / 10
  double omega_at_sup = 0.0;
  double kappa_margin = 1.0;
  double sigma = 0.0;
  double v_te = 0.0;
  double resonant_mass = 0.0;
  bool stable = true;
  bool experimental_k3_zero = false;
};

// omega grid of n points spanning the required [-5, 5] max(5 |k3| vT, omega) window
std::vector<double> default_omega_grid(const Equilibrium& eq, const IVec3& k, const Kinematics& kin,
                                       int n = 2001);

StabilityReport stability_margin(const Equilibrium& eq, const InteractionPotential& w, const IVec3& k,
                                 const std::vector<double>& omega_grid, const Kinematics& kin,
                                 double v_te = 3.0, double kappa_min = 0.1);

struct DecayFit {
  double rate = 0.0;
  double r_squared = 0.0;
  bool non_exponential = false;
  int n_points = 0;
};

// Least-squares rate of the log envelope of |rho| inside [t_start, t_end].
DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<cplx>& rho, double t_start,
                        double t_end = 1e300);

}  // namespace cyclo
