#include "cyclo/sigma.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "cyclo/analytic_norms.hpp"
#include "cyclo/error.hpp"

namespace cyclo {

using std::numbers::pi;

void validate(const SigmaParams& p) {
  if (!(2 * p.lambda >= p.lambda_bar && p.lambda_bar > p.lambda && p.lambda > 0))
    throw ConfigError("sigma: need 2 lambda >= lambda_bar > lambda > 0");
  if (!(p.mu_bar >= p.mu_prime && p.mu_prime > p.mu && p.mu > p.mu_hat && p.mu_hat > 0))
    throw ConfigError("sigma: need mu_bar >= mu' > mu > mu_hat > 0");
  if (!(p.d_coef > 0)) throw ConfigError("sigma: d_coef must be > 0");
}

namespace {

void check_pair(const BilinearPair& pair) {
  const auto& g = pair.geometry;
  if (g.dim_x != 1 || g.vdim() != 1) throw ConfigError("sigma: reduced geometry only (dim_x = 1, 1-D velocity)");
  const cplx* z = pair.g_hat.mode(mode_index(g, {0, 0, 0}));
  for (int i = 0; i < g.nv; ++i)
    if (z[i] != 0.0) throw ConfigError("sigma: G must have no l = 0 mode");
}

// int_0^t exp(-2 pi i a (t - s)) ds
cplx phase_integral(double a, double t) {
  const double x = 2 * pi * a * t;
  if (std::abs(x) < 1e-6) return t * cplx(1.0 - x * x / 6.0, -x / 2.0);
  return (1.0 - std::polar(1.0, -x)) / cplx(0.0, 2 * pi * a);
}

const Kinematics kFlat = make_kinematics(0.0);

double z_at(const SpectralDistribution& d, double lambda, double mu, double shift) {
  return z_norm(d, make_norm_params(lambda, mu, shift, 0.0), kFlat);
}

}  // namespace

SpectralDistribution sigma(const BilinearPair& pair, double t) {
  check_pair(pair);
  const auto& g = pair.geometry;
  const auto v = v_axis(g, 2);
  SpectralDistribution out(g);
  out.time = t;
  for (std::size_t m = 0; m < g.n_modes(); ++m) {
    const int k = mode_vector(g, m)[2];
    cplx* o = out.mode(m);
    for (std::size_t n = 0; n < g.n_modes(); ++n) {
      const int l = mode_vector(g, n)[2];
      const int r = mode_index(g, {0, 0, k - l});
      if (r < 0 || pair.r_hat[r] == 0.0) continue;
      const cplx* gl = pair.g_hat.mode(n);
      for (int i = 0; i < g.nv; ++i) o[i] += pair.r_hat[r] * gl[i] * phase_integral(k * v[i], t);
    }
  }
  return out;
}

std::vector<cplx> sigma1(const BilinearPair& pair, double t) { return density(sigma(pair, t)); }

SigmaReport bilinear_sigma_norms(const BilinearPair& pair, double t, const SigmaParams& p) {
  validate(p);
  check_pair(pair);
  if (!(t > 0)) throw ConfigError("sigma: t must be > 0");
  const auto& g = pair.geometry;
  SigmaReport rep;
  rep.t = t;
  rep.lhs_sigma = z_at(sigma(pair, t), p.lambda, p.mu, t);
  rep.lhs_sigma1 = f_norm(g, sigma1(pair, t), p.lambda * t + p.mu);

  const double dl = p.lambda_bar - p.lambda, dm = p.mu_bar - p.mu;
  auto b_of = [&](double s) { return p.d_coef * s / (t * (1 + t)); };
  auto sup34 = [&](double s, double b) {
    double best = 0.0;
    for (int k = -p.lattice; k <= p.lattice; ++k)
      for (int l = -p.lattice; l <= p.lattice; ++l) {
        if (k == 0 || l == 0) continue;
        const double e = -pi * dm * std::abs(l) - pi * dl * std::abs(k * (t - s) + l * s) -
                         2 * pi * (p.mu_prime - p.mu + p.lambda * b * (t - s)) * std::abs(k - l);
        best = std::max(best, std::exp(e));
      }
    return best;
  };
  auto r_norm = [&](double w) { return f_norm(g, pair.r_hat, w); };

  using GL = boost::math::quadrature::gauss<double, 30>;
  rep.rhs[0] = GL::integrate(
      [&](double s) {
        const double b = b_of(s);
        return std::exp(-2 * pi * dm - 2 * pi * dl * s) * r_norm(p.lambda_bar * s + p.mu_bar) *
               z_at(pair.g_hat, p.lambda * (1 - b), p.mu_hat, s);
      },
      0.0, t);
  rep.rhs[1] = GL::integrate(
      [&](double s) {
        const double b = b_of(s);
        return sup34(s, b) * r_norm(p.lambda * s + p.mu_prime - p.lambda * b * (t - s)) *
               z_at(pair.g_hat, p.lambda_bar * (1 + b), p.mu_bar, s - b * t / (1 + b));
      },
      0.0, t);
  rep.rhs[2] = rep.rhs[1];
  rep.rhs[3] = GL::integrate(
      [&](double s) {
        const double b = b_of(s);
        return std::exp(-2 * pi * dl * s) * r_norm(p.lambda_bar * s + p.mu + p.lambda * b * (t - s)) *
               z_at(pair.g_hat, p.lambda * (1 - b), p.mu, s + b * t / (1 - b));
      },
      0.0, t);
  const double lhs[4] = {rep.lhs_sigma, rep.lhs_sigma, rep.lhs_sigma1, rep.lhs_sigma1};
  for (int i = 0; i < 4; ++i) rep.ratio[i] = rep.rhs[i] > 0 ? lhs[i] / rep.rhs[i] : 0.0;
  return rep;
}

BilinearPair random_pair(unsigned seed, int nv, double lv) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> uc(-1.0, 1.0), uw(0.6, 1.2);
  BilinearPair pair;
  pair.geometry = make_geometry(1, 4, nv, lv);
  const auto& g = pair.geometry;
  pair.r_hat.assign(g.n_modes(), 0.0);
  for (int k = -2; k <= 2; ++k) pair.r_hat[mode_index(g, {0, 0, k})] = cplx(n(rng), n(rng));
  pair.g_hat = SpectralDistribution(g);
  const auto v = v_axis(g, 2);
  for (int l : {-2, -1, 1, 2}) {
    const cplx a(n(rng), n(rng));
    const double c = uc(rng), w = uw(rng);
    cplx* b = pair.g_hat.mode(mode_index(g, {0, 0, l}));
    for (int i = 0; i < g.nv; ++i) b[i] = a * std::exp(-0.5 * (v[i] - c) * (v[i] - c) / (w * w)) / (std::sqrt(2 * pi) * w);
  }
  return pair;
}

}  // namespace cyclo
