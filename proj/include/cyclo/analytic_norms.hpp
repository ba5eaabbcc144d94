#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cyclo/phase_space.hpp"

namespace cyclo {

// (lambda, mu) regularity, time pair (t, tau) with the b-modified shift
// time tau - b t / (1 + b), and the L^p index (p = inf is a grid max).
struct NormParams {
  double lambda = 0.0;
  double mu = 0.0;
  double t = 0.0;
  double tau = 0.0;
  double b = 0.0;
  double p = 1.0;
};

NormParams make_norm_params(double lambda, double mu, double t, double tau, double b = 0.0, double p = 1.0);

// t - (tau - b t / (1 + b))
double shift_time(const NormParams& q);

struct SeriesValue {
  double value = 0.0;
  int n_max = 0;          // largest derivative order kept
  double tail_bound = 0;  // certified bound on the dropped terms
};

// x-only fields: coefficients per lattice mode (mode_index order).
double f_norm(const Geometry& g, const std::vector<cplx>& field, double weight);
double f_tau_norm_x(const Geometry& g, const std::vector<cplx>& field, const NormParams& q, const Kinematics& kin);
SeriesValue z_norm_x(const Geometry& g, const std::vector<cplx>& field, const NormParams& q, const Kinematics& kin);

// velocity-only C^{lambda;p} norm of one grid block
SeriesValue c_norm(const Geometry& g, const cplx* block, double lambda, double p, int n_max = -1);

double f_tau_norm(const SpectralDistribution& dist, const NormParams& q, const Kinematics& kin);
// n_max < 0 picks the order from the tail certificate (tail < 1e-10 of the sum)
SeriesValue z_norm_series(const SpectralDistribution& dist, const NormParams& q, const Kinematics& kin,
                          int n_max = -1);
double z_norm(const SpectralDistribution& dist, const NormParams& q, const Kinematics& kin);
double y_norm(const SpectralDistribution& dist, const NormParams& q, const Kinematics& kin);

struct SuiteItem {
  std::string item;
  int samples = 0;
  double worst_ratio = 0.0;  // LHS / RHS (or relative defect for the equalities)
  bool asserted = true;
  bool pass = true;
};

struct SuiteReport {
  unsigned seed = 0;
  std::vector<SuiteItem> items;
  double truncation_change = 0.0;  // relative change of z under n_max + 5
  bool all_pass() const;
  std::string to_json() const;
};

SuiteReport prop25_suite(unsigned seed, int samples = 20);

}  // namespace cyclo
