#pragma once

#include <vector>

#include "cyclo/phase_space.hpp"

namespace cyclo {

// Time-independent R(x) and G(x, v) in the reduced (x3, v3) geometry.
// Positions are followed backwards, x - v (t - s).
struct BilinearPair {
  Geometry geometry;          // dim_x = 1, 1-D velocity grid
  std::vector<cplx> r_hat;    // R(k) in mode_index order
  SpectralDistribution g_hat; // G(l, v), required to vanish at l = 0
};

struct SigmaParams {
  double lambda = 0.05;
  double lambda_bar = 0.08;  // lambda < lambda_bar <= 2 lambda
  double mu_hat = 0.02;      // mu_hat < mu < mu' <= mu_bar
  double mu = 0.04;
  double mu_prime = 0.06;
  double mu_bar = 0.08;
  double d_coef = 0.1;       // b(t, s) = d s / (t (1 + t))
  int lattice = 64;          // |k|, |l| range of the weight sups
};

void validate(const SigmaParams& p);

// sigma(t, k, v) = sum_l R(k-l) G(l, v) int_0^t exp(-2 pi i k v (t-s)) ds
SpectralDistribution sigma(const BilinearPair& pair, double t);
// velocity integral of sigma
std::vector<cplx> sigma1(const BilinearPair& pair, double t);

struct SigmaReport {
  double t = 0.0;
  double lhs_sigma = 0.0;   // ||sigma||_{Z_t^{lambda,mu;1}}
  double lhs_sigma1 = 0.0;  // ||sigma1||_{F^{lambda t + mu}}
  double rhs[4] = {0, 0, 0, 0};
  double ratio[4] = {0, 0, 0, 0};  // LHS / RHS for the four inequalities in order
};

SigmaReport bilinear_sigma_norms(const BilinearPair& pair, double t, const SigmaParams& p);

// R on |k| <= 2, G on 1 <= |l| <= 2 with Gaussian velocity profiles; the
// sigma lattice has kmax = 4.
BilinearPair random_pair(unsigned seed, int nv = 512, double lv = 6.0);

}  // namespace cyclo
