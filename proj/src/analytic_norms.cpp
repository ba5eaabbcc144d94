#include "cyclo/analytic_norms.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>

#include "cyclo/error.hpp"

namespace cyclo {

using std::numbers::pi;

namespace {

constexpr int kSeriesCap = 400;
constexpr double kTailRel = 1e-10;

double knorm(const IVec3& k) { return std::sqrt(double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2])); }

double guarded_exp(double e, const char* what) {
  if (e > 700.0) throw NumericError(std::string(what) + ": weighted-norm overflow (exponent " + std::to_string(e) + " > 700)");
  return std::exp(e);
}

double lp_norm(const Geometry& g, const cplx* v, double p) {
  const std::size_t n = g.v_size();
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
  double s = 0.0;
  if (p == 1.0)
    for (std::size_t i = 0; i < n; ++i) s += std::abs(v[i]);
  else
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(v[i]), p);
  s *= g.dv_cell();
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

// log of x^m / m!
double log_term(double x, int m) { return m * std::log(x) - std::lgamma(m + 1.0); }

// bound on sum_{n > N} x^n / n! for N + 2 > x
double tail_factor(double x, int N) {
  if (x <= 0.0) return 0.0;
  if (N + 2 <= x) return std::numeric_limits<double>::infinity();
  return std::exp(log_term(x, N + 1)) / (1.0 - x / (N + 2));
}

std::vector<std::array<int, 3>> multi_indices(int n, const std::array<bool, 3>& active) {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) {
      const int c = n - a - b;
      const std::array<int, 3> al{a, b, c};
      bool ok = true;
      for (int i = 0; i < 3; ++i)
        if (!active[i] && al[i] > 0) ok = false;
      if (ok) out.push_back(al);
    }
  return out;
}

// sum_n lambda^n/alpha! ||D^alpha f||_p for one mode given its eta-space
// block; D_i = d/dv_i + 2 pi i c_i.
SeriesValue mode_series(const Geometry& g, const std::vector<cplx>& hat, const Vec3& c, double lambda,
                        double p, int n_fixed) {
  const auto dims = g.v_dims();
  const std::size_t nvs = g.v_size();
  std::array<bool, 3> active{};
  std::array<std::vector<cplx>, 3> mult;
  double R = 0.0;
  for (int a = 0; a < 3; ++a) {
    active[a] = dims[a] > 1;
    if (!active[a]) continue;
    const auto eta = eta_axis(g, a);
    mult[a].resize(eta.size());
    double emax = 0.0;
    for (std::size_t j = 0; j < eta.size(); ++j) {
      mult[a][j] = cplx(0.0, 2.0 * pi * (eta[j] + c[a]));
      emax = std::max(emax, std::abs(eta[j]));
    }
    R += 2.0 * pi * (emax + std::abs(c[a]));
  }
  std::vector<cplx> work(nvs);
  auto deriv_norm = [&](const std::array<int, 3>& al) {
    std::size_t idx = 0;
    for (int i0 = 0; i0 < dims[0]; ++i0)
      for (int i1 = 0; i1 < dims[1]; ++i1)
        for (int i2 = 0; i2 < dims[2]; ++i2, ++idx) {
          cplx m = 1.0;
          const int ii[3] = {i0, i1, i2};
          for (int a = 0; a < 3; ++a)
            if (al[a] > 0) m *= std::pow(mult[a][ii[a]], al[a]);
          work[idx] = hat[idx] * m;
        }
    v_transform_block(g, work.data(), +1);
    return lp_norm(g, work.data(), p);
  };

  SeriesValue s;
  const double f0 = deriv_norm({0, 0, 0});
  s.value = f0;
  if (lambda == 0.0 || f0 == 0.0) return s;
  const double x = lambda * R;
  const int limit = n_fixed >= 0 ? n_fixed : kSeriesCap;
  int n = 0;
  while (n < limit) {
    if (n_fixed < 0 && n + 2 > x && f0 * tail_factor(x, n) < kTailRel * s.value) break;
    ++n;
    double term = 0.0;
    for (const auto& al : multi_indices(n, active)) {
      double lw = n * std::log(lambda);
      for (int a = 0; a < 3; ++a) lw -= std::lgamma(al[a] + 1.0);
      term += std::exp(lw) * deriv_norm(al);
    }
    s.value += term;
  }
  if (n_fixed < 0 && !(n + 2 > x && f0 * tail_factor(x, n) < kTailRel * s.value))
    throw NumericError("z_norm: derivative series not certified within n_max = " + std::to_string(kSeriesCap) +
                       " (lambda * spectral radius = " + std::to_string(x) +
                       "); terms are still non-decreasing up to n = " + std::to_string(int(std::floor(x))));
  s.n_max = n;
  s.tail_bound = f0 * tail_factor(x, n);
  return s;
}

Vec3 mode_shift(const IVec3& l, const NormParams& q, const Kinematics& kin) {
  const Vec3 s = shift_vector(shift_time(q), kin);
  return {s[0] * l[0], s[1] * l[1], s[2] * l[2]};
}

std::vector<cplx> mode_block(const std::vector<cplx>& hat, const Geometry& g, std::size_t m) {
  return {hat.begin() + m * g.v_size(), hat.begin() + (m + 1) * g.v_size()};
}

}  // namespace

NormParams make_norm_params(double lambda, double mu, double t, double tau, double b, double p) {
  if (!(lambda >= 0.0) || !(mu >= 0.0) || !std::isfinite(lambda) || !std::isfinite(mu))
    throw ConfigError("norms: lambda and mu must be finite and >= 0");
  if (!(b > -1.0)) throw ConfigError("norms: b must be > -1");
  if (!(p >= 1.0)) throw ConfigError("norms: p must lie in [1, inf]");
  return NormParams{lambda, mu, t, tau, b, p};
}

double shift_time(const NormParams& q) { return q.t - (q.tau - q.b * q.t / (1.0 + q.b)); }

double f_norm(const Geometry& g, const std::vector<cplx>& field, double weight) {
  double s = 0.0;
  for (std::size_t m = 0; m < field.size(); ++m) {
    if (field[m] == cplx(0.0)) continue;
    s += std::abs(field[m]) * guarded_exp(2.0 * pi * weight * knorm(mode_vector(g, m)), "f_norm");
  }
  return s;
}

double f_tau_norm_x(const Geometry& g, const std::vector<cplx>& field, const NormParams& q, const Kinematics& kin) {
  double s = 0.0;
  for (std::size_t m = 0; m < field.size(); ++m) {
    if (field[m] == cplx(0.0)) continue;
    const IVec3 l = mode_vector(g, m);
    const Vec3 c = mode_shift(l, q, kin);
    const double e = 2.0 * pi * (q.lambda * std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]) + q.mu * knorm(l));
    s += std::abs(field[m]) * guarded_exp(e, "f_tau_norm");
  }
  return s;
}

SeriesValue z_norm_x(const Geometry& g, const std::vector<cplx>& field, const NormParams& q, const Kinematics& kin) {
  // for x-only data only the shift part of D survives: D^alpha = prod (2 pi i c_i)^alpha_i
  SeriesValue out;
  for (std::size_t m = 0; m < field.size(); ++m) {
    if (field[m] == cplx(0.0)) continue;
    const IVec3 l = mode_vector(g, m);
    const Vec3 c = mode_shift(l, q, kin);
    const double a = 2.0 * pi * (std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]));
    const double x = q.lambda * a;
    double sum = 1.0, term = 1.0;
    int n = 0;
    while (!(n + 2 > x && tail_factor(x, n) < kTailRel * sum)) {
      if (++n > kSeriesCap) throw NumericError("z_norm_x: series not certified");
      term *= x / n;
      sum += term;
    }
    const double w = std::abs(field[m]) * guarded_exp(2.0 * pi * q.mu * knorm(l), "z_norm_x");
    out.value += w * sum;
    out.tail_bound += w * tail_factor(x, n);
    out.n_max = std::max(out.n_max, n);
  }
  return out;
}

SeriesValue c_norm(const Geometry& g, const cplx* block, double lambda, double p, int n_max) {
  std::vector<cplx> hat(block, block + g.v_size());
  v_transform_block(g, hat.data(), -1);
  return mode_series(g, hat, Vec3{}, lambda, p, n_max);
}

double f_tau_norm(const SpectralDistribution& dist, const NormParams& q, const Kinematics& kin) {
  const Geometry& g = dist.geometry;
  const auto hat = v_transform(dist);
  const auto dims = g.v_dims();
  std::array<std::vector<double>, 3> eta;
  for (int a = 0; a < 3; ++a) eta[a] = eta_axis(g, a);
  const double deta = std::pow(g.deta(), g.vdim());
  double s = 0.0;
  for (std::size_t m = 0; m < g.n_modes(); ++m) {
    const IVec3 l = mode_vector(g, m);
    const Vec3 c = mode_shift(l, q, kin);
    const double wk = guarded_exp(2.0 * pi * q.mu * knorm(l), "f_tau_norm");
    std::size_t idx = 0;
    for (int i0 = 0; i0 < dims[0]; ++i0)
      for (int i1 = 0; i1 < dims[1]; ++i1)
        for (int i2 = 0; i2 < dims[2]; ++i2, ++idx) {
          const double z0 = dims[0] > 1 ? eta[0][i0] + c[0] : c[0];
          const double z1 = dims[1] > 1 ? eta[1][i1] + c[1] : c[1];
          const double z2 = eta[2][i2] + c[2];
          const double e = 2.0 * pi * q.lambda * std::sqrt(z0 * z0 + z1 * z1 + z2 * z2);
          s += deta * wk * std::abs(hat[m * g.v_size() + idx]) * guarded_exp(e, "f_tau_norm");
        }
  }
  return s;
}

SeriesValue z_norm_series(const SpectralDistribution& dist, const NormParams& q, const Kinematics& kin, int n_max) {
  const Geometry& g = dist.geometry;
  const auto hat = v_transform(dist);
  const std::size_t nm = g.n_modes();
  std::vector<SeriesValue> per(nm);
  std::vector<double> weight(nm);
  for (std::size_t m = 0; m < nm; ++m) weight[m] = guarded_exp(2.0 * pi * q.mu * knorm(mode_vector(g, m)), "z_norm");
  std::string failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(nm); ++m) {
    try {
      per[m] = mode_series(g, mode_block(hat, g, m), mode_shift(mode_vector(g, m), q, kin), q.lambda, q.p, n_max);
    } catch (const NumericError& e) {
#pragma omp critical
      failure = e.what();
    }
  }
  if (!failure.empty()) throw NumericError(failure);
  SeriesValue out;
  for (std::size_t m = 0; m < nm; ++m) {
    out.value += weight[m] * per[m].value;
    out.tail_bound += weight[m] * per[m].tail_bound;
    out.n_max = std::max(out.n_max, per[m].n_max);
  }
  return out;
}

double z_norm(const SpectralDistribution& dist, const NormParams& q, const Kinematics& kin) {
  return z_norm_series(dist, q, kin).value;
}

double y_norm(const SpectralDistribution& dist, const NormParams& q, const Kinematics& kin) {
  const Geometry& g = dist.geometry;
  const auto hat = v_transform(dist);
  const auto dims = g.v_dims();
  std::array<std::vector<double>, 3> eta;
  for (int a = 0; a < 3; ++a) eta[a] = eta_axis(g, a);
  double best = 0.0;
  for (std::size_t m = 0; m < g.n_modes(); ++m) {
    const IVec3 l = mode_vector(g, m);
    const Vec3 c = mode_shift(l, q, kin);
    const double wk = 2.0 * pi * q.mu * knorm(l);
    std::size_t idx = 0;
    for (int i0 = 0; i0 < dims[0]; ++i0)
      for (int i1 = 0; i1 < dims[1]; ++i1)
        for (int i2 = 0; i2 < dims[2]; ++i2, ++idx) {
          const double a = std::abs(hat[m * g.v_size() + idx]);
          if (a == 0.0) continue;
          const double z0 = dims[0] > 1 ? eta[0][i0] + c[0] : c[0];
          const double z1 = dims[1] > 1 ? eta[1][i1] + c[1] : c[1];
          const double z2 = eta[2][i2] + c[2];
          const double e = wk + 2.0 * pi * q.lambda * std::sqrt(z0 * z0 + z1 * z1 + z2 * z2);
          best = std::max(best, a * guarded_exp(e, "y_norm"));
        }
  }
  return best;
}

bool SuiteReport::all_pass() const {
  for (const auto& it : items)
    if (it.asserted && !it.pass) return false;
  return truncation_change < 1e-9;
}

std::string SuiteReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["truncation_change"] = truncation_change;
  j["all_pass"] = all_pass();
  for (const auto& it : items)
    j["items"].push_back({{"item", it.item},
                          {"samples", it.samples},
                          {"worst_ratio", it.worst_ratio},
                          {"asserted", it.asserted},
                          {"pass", it.pass}});
  return j.dump(2);
}

SuiteReport prop25_suite(unsigned seed, int samples) {
  // reduced (x3, v3) geometry
  const Geometry g = make_geometry(1, 4, 64, 8.0);
  const Kinematics kin = make_kinematics(0.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uw(0.7, 1.5), uc(-1.0, 1.0), ul(0.0, 0.5), ut(-3.0, 3.0), u01(0.0, 1.0);
  std::normal_distribution<double> nrm;
  const auto v = v_axis(g, 2);

  auto gaussian = [&](double w, double c) {
    std::vector<cplx> b(g.nv);
    for (int i = 0; i < g.nv; ++i) b[i] = std::exp(-0.5 * (v[i] - c) * (v[i] - c) / (w * w)) / (std::sqrt(2 * pi) * w);
    return b;
  };
  auto random_dist = [&]() {
    SpectralDistribution d(g);
    for (int k = 0; k <= g.kmax; ++k) {
      const auto b = gaussian(uw(rng), uc(rng));
      const cplx a = k == 0 ? cplx(std::abs(nrm(rng)), 0.0) : cplx(nrm(rng), nrm(rng)) / double(1 + k);
      cplx* p = d.mode(mode_index(g, {0, 0, k}));
      cplx* q = d.mode(mode_index(g, {0, 0, -k}));
      for (int i = 0; i < g.nv; ++i) {
        p[i] = a * b[i];
        if (k) q[i] = std::conj(a) * b[i];
      }
    }
    return d;
  };

  SuiteItem i1{"(i) x-only: F_tau == Z_tau == F^{lambda|tau|+mu}", 0, 0.0, true, true};
  SuiteItem i2{"(ii) v-only: Z_tau == C^{lambda;p}", 0, 0.0, true, true};
  SuiteItem i4{"(iv) |grad f|_C(lambda) / bound", 0, 0.0, false, true};
  SuiteItem i5{"(v) |v f|_Z(lambda) / |f|_Z(lambda_bar)", 0, 0.0, false, true};
  SuiteItem i8{"(viii) monotonicity in lambda, mu and tau-shift", 0, 0.0, true, true};
  SuiteItem i9y{"(viiii) Y <= Z(p=1)", 0, 0.0, true, true};
  SuiteItem i9{"(ix) |int f dv|_F <= Z(p=1)", 0, 0.0, true, true};
  SuiteReport rep;
  rep.seed = seed;
  const double tol = 1e-9;

  for (int s = 0; s < samples; ++s) {
    const double lam = ul(rng), mu = ul(rng), tau = ut(rng);
    const NormParams q = make_norm_params(lam, mu, 0.0, tau);
    const auto d = random_dist();

    // (i)
    std::vector<cplx> fx(g.n_modes());
    for (auto& c : fx) c = cplx(nrm(rng), nrm(rng));
    const double a1 = f_tau_norm_x(g, fx, q, kin);
    const double a2 = z_norm_x(g, fx, q, kin).value;
    const double a3 = f_norm(g, fx, lam * std::abs(tau) + mu);
    i1.worst_ratio = std::max({i1.worst_ratio, std::abs(a1 - a3) / a3, std::abs(a2 - a3) / a3});
    ++i1.samples;

    // (ii)
    SpectralDistribution dv(g);
    const auto gv = gaussian(uw(rng), uc(rng));
    std::copy(gv.begin(), gv.end(), dv.mode(mode_index(g, {0, 0, 0})));
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      NormParams qp = q;
      qp.p = p;
      const double z = z_norm(dv, qp, kin);
      const double c = c_norm(g, gv.data(), lam, p).value;
      i2.worst_ratio = std::max(i2.worst_ratio, std::abs(z - c) / c);
    }
    ++i2.samples;

    // (iv): |grad g|_C(lam) <= |g|_C(1.5 lam) / (lam e log 1.5)
    if (lam > 0.01) {
      std::vector<cplx> dg(gv);
      v_transform_block(g, dg.data(), -1);
      const auto eta = eta_axis(g, 2);
      for (int j = 0; j < g.nv; ++j) dg[j] *= cplx(0.0, 2 * pi * eta[j]);
      v_transform_block(g, dg.data(), +1);
      const double lhs = c_norm(g, dg.data(), lam, 1.0).value;
      const double rhs = c_norm(g, gv.data(), 1.5 * lam, 1.0).value / (lam * std::exp(1.0) * std::log(1.5));
      i4.worst_ratio = std::max(i4.worst_ratio, lhs / rhs);
      ++i4.samples;
    }

    // (v)
    {
      SpectralDistribution vf = d;
      for (std::size_t m = 0; m < g.n_modes(); ++m)
        for (int i = 0; i < g.nv; ++i) vf.mode(m)[i] *= v[i];
      NormParams qb = q;
      qb.lambda = 1.5 * lam;
      const double lhs = z_norm(vf, q, kin), rhs = z_norm(d, qb, kin);
      i5.worst_ratio = std::max(i5.worst_ratio, lhs / rhs);
      ++i5.samples;
    }

    const double z1 = z_norm(d, q, kin);
    // (viii)
    {
      NormParams lo = q;
      lo.lambda = lam * u01(rng);
      lo.mu = mu * u01(rng);
      i8.worst_ratio = std::max(i8.worst_ratio, z_norm(d, lo, kin) / z1);
      const double tb = ut(rng);
      NormParams other = q;
      other.tau = tb;
      other.mu = mu + lam * std::abs(tau - tb);
      i8.worst_ratio = std::max(i8.worst_ratio, z1 / z_norm(d, other, kin));
      ++i8.samples;
    }
    // (viiii)
    i9y.worst_ratio = std::max(i9y.worst_ratio, y_norm(d, q, kin) / z1);
    ++i9y.samples;
    // (ix)
    i9.worst_ratio = std::max(i9.worst_ratio, f_norm(g, density(d), lam * std::abs(tau) + mu) / z1);
    ++i9.samples;

    // truncation certificate
    const auto sv = z_norm_series(d, q, kin);
    const auto sv5 = z_norm_series(d, q, kin, sv.n_max + 5);
    rep.truncation_change = std::max(rep.truncation_change, std::abs(sv5.value - sv.value) / sv.value);
  }
  i1.pass = i1.worst_ratio < 1e-10;
  i2.pass = i2.worst_ratio < 1e-10;
  i8.pass = i8.worst_ratio <= 1.0 + tol;
  i9y.pass = i9y.worst_ratio <= 1.0 + tol;
  i9.pass = i9.worst_ratio <= 1.0 + tol;
  i4.pass = i4.worst_ratio <= 1.0;
  i5.pass = i5.worst_ratio <= 1.0;
  rep.items = {i1, i2, i4, i5, i8, i9y, i9};
  return rep;
}

}  // namespace cyclo
