#include "cyclo/linear_volterra.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"
#include "cyclo/kernels.hpp"

namespace cyclo {

using std::numbers::pi;

std::vector<double> uniform_grid(double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw ConfigError("time grid: need dt > 0 and t_end >= 0");
  const auto n = std::size_t(std::llround(t_end / dt)) + 1;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = double(i) * dt;
  return t;
}

namespace {

// 4-point Lagrange weights at fractional offset s in [0,1) from node 0 of
// nodes -1, 0, 1, 2
std::array<double, 4> cubic_weights(double s) {
  return {-s * (s - 1) * (s - 2) / 6, (s + 1) * (s - 1) * (s - 2) / 2, -(s + 1) * s * (s - 2) / 2,
          (s + 1) * s * (s - 1) / 6};
}

struct AxisStencil {
  int n = 0;
  int slot[4] = {0, 0, 0, 0};
  double w[4] = {0, 0, 0, 0};
};

AxisStencil stencil(double eta, double deta, int n) {
  AxisStencil st;
  if (n == 1) {
    st.n = 1;
    st.w[0] = 1.0;
    return st;
  }
  const double u = eta / deta;
  const int lo = -n / 2, hi = n / 2 - 1;
  if (u < lo || u > hi)
    throw NumericError("source_a: requested eta = " + std::to_string(eta) +
                       " lies outside the eta-grid (increase nv)");
  int i0 = int(std::floor(u));
  if (i0 == hi) i0 = hi - 1;
  const double s = u - i0;
  auto slot = [n](int j) { return ((j % n) + n) % n; };
  if (i0 - 1 >= lo && i0 + 2 <= hi) {
    const auto w = cubic_weights(s);
    st.n = 4;
    for (int q = 0; q < 4; ++q) {
      st.slot[q] = slot(i0 - 1 + q);
      st.w[q] = w[q];
    }
  } else {
    st.n = 2;
    st.slot[0] = slot(i0);
    st.slot[1] = slot(i0 + 1);
    st.w[0] = 1 - s;
    st.w[1] = s;
  }
  return st;
}

double knorm(const IVec3& k) { return std::sqrt(double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2])); }

CVec3 cross(const Vec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct KernelParts {
  cplx e_coef[3];  // -2 pi i W
  cplx b[3];       // 2 pi i k x W
  double aniso;    // vt^2 - vp^2
};

KernelParts kernel_parts(const Equilibrium& eq, const InteractionPotential& w, const IVec3& k) {
  KernelParts p;
  const CVec3 wk = w_hat(w, k);
  const cplx I(0.0, 1.0);
  for (int i = 0; i < 3; ++i) p.e_coef[i] = -2.0 * pi * I * wk[i];
  const CVec3 kw = cross(to_vec(k), wk);
  for (int i = 0; i < 3; ++i) p.b[i] = 2.0 * pi * I * kw[i];
  p.aniso = eq.vdim == 3 ? eq.v_thermal * eq.v_thermal - eq.v_thermal_perp * eq.v_thermal_perp : 0.0;
  return p;
}

cplx g_integrand(const KernelParts& p, const Equilibrium& eq, const Vec3& k, double s,
                 const Kinematics& kin) {
  if (p.aniso == 0.0) return 0.0;
  const Vec3 xi = transport_frequency(k, s, kin);
  return 4.0 * pi * pi * p.aniso * xi[2] * (xi[0] * p.b[1] - xi[1] * p.b[0]) *
         equilibrium_transform(eq, xi);
}

cplx integrate_g(const KernelParts& p, const Equilibrium& eq, const Vec3& k, double a, double b,
                 const Kinematics& kin) {
  using boost::math::quadrature::gauss_kronrod;
  auto re = [&](double s) { return g_integrand(p, eq, k, s, kin).real(); };
  auto im = [&](double s) { return g_integrand(p, eq, k, s, kin).imag(); };
  return {gauss_kronrod<double, 31>::integrate(re, a, b, 0), gauss_kronrod<double, 31>::integrate(im, a, b, 0)};
}

}  // namespace

std::vector<cplx> source_a(const Geometry& g, const std::vector<cplx>& f_hat_block, const IVec3& k,
                           const std::vector<double>& t_grid, const Kinematics& kin) {
  if (f_hat_block.size() != g.v_size()) throw ConfigError("source_a: block size does not match geometry");
  const auto dims = g.v_dims();
  std::vector<cplx> out(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const Vec3 xi = transport_frequency(to_vec(k), t_grid[i], kin);
    if (g.vdim() == 1 && (std::abs(xi[0]) > 1e-14 || std::abs(xi[1]) > 1e-14))
      throw ConfigError("source_a: a 1-D velocity grid cannot represent perpendicular frequencies");
    const AxisStencil s0 = stencil(xi[0], g.deta(), dims[0]);
    const AxisStencil s1 = stencil(xi[1], g.deta(), dims[1]);
    const AxisStencil s2 = stencil(xi[2], g.deta(), dims[2]);
    cplx v = 0.0;
    for (int a = 0; a < s0.n; ++a)
      for (int b = 0; b < s1.n; ++b)
        for (int c = 0; c < s2.n; ++c) {
          const std::size_t idx = (std::size_t(s0.slot[a]) * dims[1] + s1.slot[b]) * dims[2] + s2.slot[c];
          v += s0.w[a] * s1.w[b] * s2.w[c] * f_hat_block[idx];
        }
    out[i] = v;
  }
  return out;
}

std::vector<cplx> source_a_analytic(const Perturbation& p, const Equilibrium& eq, const IVec3& k,
                                    const std::vector<double>& t_grid, const Kinematics& kin) {
  std::vector<cplx> out(t_grid.size(), 0.0);
  const bool plus = k == p.mode;
  const bool minus = k == IVec3{-p.mode[0], -p.mode[1], -p.mode[2]};
  if (!plus && !minus) return out;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const Vec3 xi = transport_frequency(to_vec(k), t_grid[i], kin);
    out[i] = 0.5 * p.amplitude * profile_transform(p.profile, eq, xi, eq.vdim);
  }
  return out;
}

std::vector<cplx> kernel_k0(const Equilibrium& eq, const InteractionPotential& w, const IVec3& k,
                            const std::vector<double>& t_grid, const Kinematics& kin,
                            const KernelOptions& opt) {
  const KernelParts p = kernel_parts(eq, w, k);
  const Vec3 kv = to_vec(k);
  std::vector<cplx> out(t_grid.size(), 0.0);
  cplx inner = 0.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (opt.e_term) {
      const Vec3 xi = transport_frequency(kv, t, kin);
      const cplx wdot = p.e_coef[0] * xi[0] + p.e_coef[1] * xi[1] + p.e_coef[2] * xi[2];
      out[i] += wdot * equilibrium_transform(eq, xi);
    }
    if (opt.b_terms && p.aniso != 0.0) {
      if (i > 0) inner += integrate_g(p, eq, kv, t_grid[i - 1], t, kin);
      out[i] += inner;
    }
  }
  return out;
}

cplx kernel_b_tail(const Equilibrium& eq, const InteractionPotential& w, const IVec3& k,
                   const Kinematics& kin) {
  const KernelParts p = kernel_parts(eq, w, k);
  if (p.aniso == 0.0 || k[2] == 0) return 0.0;
  const double scale = 1.0 / (std::abs(k[2]) * eq.v_thermal);
  const double t_max = 10.0 * scale;
  double h = 0.25 * scale;
  if (kin.omega > 0) h = std::min(h, 0.5 / kin.omega);
  const int n = int(std::ceil(t_max / h));
  cplx s = 0.0;
  for (int i = 0; i < n; ++i) s += integrate_g(p, eq, to_vec(k), i * t_max / n, (i + 1) * t_max / n, kin);
  return s;
}

VolterraSystem make_system(const IVec3& k, double dt, double t_end, std::vector<cplx> a,
                           std::vector<cplx> kernel) {
  VolterraSystem s;
  s.k = k;
  s.dt = dt;
  s.t_grid = uniform_grid(t_end, dt);
  if (a.size() != s.t_grid.size() || kernel.size() != s.t_grid.size())
    throw ConfigError("volterra: source and kernel must share the time grid");
  s.a_of_t = std::move(a);
  s.kernel_of_t = std::move(kernel);
  return s;
}

std::vector<cplx> volterra_march(const VolterraSystem& s) {
  if (s.a_of_t.size() != s.kernel_of_t.size()) throw ConfigError("volterra: size mismatch");
  if (!s.kernel_of_t.empty() && std::abs(1.0 - 0.5 * s.dt * s.kernel_of_t[0]) < 1e-8)
    throw NumericError("volterra: near-singular step update |1 - dt K(0)/2| < 1e-8, reduce dt");
  auto rho = kernels::volterra_solve(s.a_of_t, s.kernel_of_t, s.dt);
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (!std::isfinite(rho[i].real()) || !std::isfinite(rho[i].imag()))
      throw NumericError("volterra: non-finite value at step " + std::to_string(i));
  return rho;
}

namespace {

double omega_window(const Equilibrium& eq, const IVec3& k, const Kinematics& kin) {
  return 5.0 * std::max(5.0 * std::abs(k[2]) * eq.v_thermal, kin.omega);
}

}  // namespace

std::vector<double> default_omega_grid(const Equilibrium& eq, const IVec3& k, const Kinematics& kin, int n) {
  double wmax = omega_window(eq, k, kin);
  if (wmax == 0.0) wmax = 5.0 * knorm(k) * eq.v_thermal_perp;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = -wmax + 2.0 * wmax * i / (n - 1);
  return w;
}

StabilityReport stability_margin(const Equilibrium& eq, const InteractionPotential& w, const IVec3& k,
                                 const std::vector<double>& omega_grid, const Kinematics& kin,
                                 double v_te, double kappa_min) {
  if (omega_grid.empty()) throw ConfigError("stability: empty omega grid");
  const double need = omega_window(eq, k, kin);
  const auto [lo, hi] = std::minmax_element(omega_grid.begin(), omega_grid.end());
  if (*lo > -need * (1 - 1e-12) || *hi < need * (1 - 1e-12))
    throw ConfigError("stability: omega grid must span [-" + std::to_string(need) + ", " +
                      std::to_string(need) + "]");
  const double kn = knorm(k);
  if (kn == 0.0) throw ConfigError("stability: k must be nonzero");

  StabilityReport r;
  r.k = k;
  r.sigma = 1e-3 * kn * eq.v_thermal;
  r.v_te = v_te;
  r.resonant_mass = std::erf(v_te / (std::sqrt(2.0) * eq.v_thermal));
  r.experimental_k3_zero = k[2] == 0;

  const bool periodic = k[2] == 0 && kin.omega > 0.0;
  double t_max, dt;
  if (periodic) {
    t_max = 2.0 * pi / kin.omega;
    dt = t_max / 4096;
  } else {
    const double vt = eq.vdim == 3 ? std::min(eq.v_thermal, eq.v_thermal_perp) : eq.v_thermal;
    const double scale = k[2] != 0 ? 1.0 / (std::abs(k[2]) * eq.v_thermal) : 1.0 / (kn * vt);
    t_max = 10.0 * scale;
    dt = scale / 200;
    if (kin.omega > 0) dt = std::min(dt, 2.0 * pi / kin.omega / 200);
  }
  const auto t = uniform_grid(t_max, dt);
  const auto kern = kernel_k0(eq, w, k, t, kin);
  const cplx tail = periodic ? cplx(0.0) : kernel_b_tail(eq, w, k, kin);
  const double T = t.back();

  auto sup_at = [&](double sigma, double* arg) {
    const auto lt = kernels::laplace_transform(kern, dt, omega_grid, sigma);
    double best = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
      const cplx z(-sigma, 2.0 * pi * omega_grid[i]);
      cplx v = lt[i];
      if (periodic) v /= (1.0 - std::exp(z * T));
      else if (tail != 0.0) v += -tail * std::exp(z * T) / z;
      if (std::abs(v) > best) {
        best = std::abs(v);
        if (arg) *arg = omega_grid[i];
      }
    }
    return best;
  };
  r.sup_abs = sup_at(r.sigma, &r.omega_at_sup);
  r.sup_abs_small_sigma = sup_at(0.1 * r.sigma, nullptr);
  r.kappa_margin = 1.0 - r.sup_abs;
  r.stable = r.kappa_margin >= kappa_min;
  return r;
}

namespace {

struct LineFit {
  double slope = 0, r2 = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

}  // namespace

DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<cplx>& rho, double t_start,
                        double t_end) {
  if (t.size() != rho.size()) throw ConfigError("fit_decay_rate: size mismatch");
  std::vector<double> tw, aw;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= t_start && t[i] <= t_end && std::abs(rho[i]) > 1e-300) {
      tw.push_back(t[i]);
      aw.push_back(std::abs(rho[i]));
    }
  // envelope: interior local maxima, or the samples themselves for a
  // monotone signal
  std::vector<double> x, y;
  for (std::size_t i = 1; i + 1 < aw.size(); ++i)
    if (aw[i] >= aw[i - 1] && aw[i] > aw[i + 1]) {
      x.push_back(tw[i]);
      y.push_back(std::log(aw[i]));
    }
  if (x.empty())
    for (std::size_t i = 0; i < aw.size(); ++i) {
      x.push_back(tw[i]);
      y.push_back(std::log(aw[i]));
    }
  if (x.size() < 8)
    throw NumericError("fit_decay_rate: window too short (" + std::to_string(x.size()) + " envelope points)");
  const auto f = least_squares(x, y);
  DecayFit d;
  d.rate = -f.slope;
  d.r_squared = f.r2;
  d.n_points = int(x.size());
  const std::size_t h = x.size() / 2;
  if (h >= 3) {
    const auto a = least_squares({x.begin(), x.begin() + h}, {y.begin(), y.begin() + h});
    const auto b = least_squares({x.begin() + h, x.end()}, {y.begin() + h, y.end()});
    const double r1 = -a.slope, r2 = -b.slope;
    d.non_exponential = r1 > 0 && r2 > 1.2 * r1;
  }
  return d;
}

}  // namespace cyclo
