#include "cyclo/characteristics.hpp"

#include <algorithm>
#include <cmath>

#include "cyclo/error.hpp"

namespace cyclo {

namespace {

struct State {
  Vec3 x, v;
};

Vec3 add(const Vec3& a, const Vec3& b, double s = 1.0) {
  return Vec3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
}

State add(const State& a, const State& b) { return State{add(a.x, b.x), add(a.v, b.v)}; }

double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

// exp(hL) on (x, v) for the free flow; linear, so it also maps increments
struct FreeMap {
  Mat3 m, r;
  FreeMap(double h, const Kinematics& kin) : m(drift_matrix(h, kin)), r(rotation_matrix(h, kin)) {}
  State operator()(const State& s) const { return State{add(s.x, matvec(m, s.v)), matvec(r, s.v)}; }
};

Vec3 force(double t, const State& s, const FieldHistory& h, bool full) {
  Vec3 e, b;
  h.sample(t, s.x, e, b);
  if (!full) return e;
  const Vec3& v = s.v;
  return Vec3{e[0] + v[1] * b[2] - v[2] * b[1], e[1] + v[2] * b[0] - v[0] * b[2],
              e[2] + v[0] * b[1] - v[1] * b[0]};
}

State impulse(const Vec3& f, double c) { return State{Vec3{}, Vec3{c * f[0], c * f[1], c * f[2]}}; }

State lawson_step(double t, double dt, const State& z, const FreeMap& half, const FreeMap& whole,
                  const FieldHistory& h, bool full) {
  const Vec3 k1 = force(t, z, h, full);
  const State z2 = half(add(z, impulse(k1, 0.5 * dt)));
  const Vec3 k2 = force(t + 0.5 * dt, z2, h, full);
  const State z3 = add(half(z), impulse(k2, 0.5 * dt));
  const Vec3 k3 = force(t + 0.5 * dt, z3, h, full);
  const State z4 = add(whole(z), half(impulse(k3, dt)));
  const Vec3 k4 = force(t + dt, z4, h, full);
  State out = whole(add(z, impulse(k1, dt / 6.0)));
  out = add(out, half(impulse(add(k2, k3), dt / 3.0)));
  out.v = add(out.v, k4, dt / 6.0);
  return out;
}

PhasePoint integrate(double t, double tau, const PhasePoint& p, const FieldHistory& h, const Kinematics& kin,
                     bool full, const CharacteristicsOptions& opt) {
  State z{p.x, p.v};
  if (t == tau) return p;
  const double dir = t > tau ? 1.0 : -1.0;
  // breakpoints: history samples strictly inside the window, then the end
  std::vector<double> marks;
  for (double s : h.t)
    if ((s - tau) * dir > 0 && (t - s) * dir > 0) marks.push_back(s);
  if (dir < 0) std::reverse(marks.begin(), marks.end());
  marks.push_back(t);
  double s0 = tau;
  for (double s1 : marks) {
    const double len = s1 - s0;
    int n = opt.substeps;
    if (marks.size() == 1) n = std::max(n, int(std::ceil(std::abs(len) / opt.max_step)));
    const double dt = len / n;
    const FreeMap half(0.5 * dt, kin), whole(dt, kin);
    for (int i = 0; i < n; ++i) z = lawson_step(s0 + i * dt, dt, z, half, whole, h, full);
    s0 = s1;
  }
  return PhasePoint{z.x, z.v};
}

double radical_inverse(int i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

}  // namespace

PhasePoint reduced_characteristics(double t, double tau, const PhasePoint& p, const FieldHistory& h,
                                   const Kinematics& kin, const CharacteristicsOptions& opt) {
  return integrate(t, tau, p, h, kin, false, opt);
}

PhasePoint full_characteristics(double t, double tau, const PhasePoint& p, const FieldHistory& h,
                                const Kinematics& kin, const CharacteristicsOptions& opt) {
  return integrate(t, tau, p, h, kin, true, opt);
}

Deflection deflection(double t, double tau, const PhasePoint& p, const FieldHistory& h, const Kinematics& kin,
                      bool full, const CharacteristicsOptions& opt) {
  const PhasePoint q = integrate(t, tau, p, h, kin, full, opt);
  const PhasePoint f = exact_flow_unwrapped(t, tau, p, kin);
  Deflection d;
  for (int i = 0; i < 3; ++i) {
    d.dx[i] = q.x[i] - f.x[i];
    d.dv[i] = q.v[i] - f.v[i];
  }
  return d;
}

DeflectionTrace deflection_trace(const std::vector<PhasePoint>& probes, double tau,
                                 const std::vector<double>& t_samples, const FieldHistory& h,
                                 const Kinematics& kin, bool full, const CharacteristicsOptions& opt) {
  DeflectionTrace tr;
  tr.tau = tau;
  tr.samples.resize(t_samples.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(t_samples.size()); ++i) {
    DeflectionSample s;
    s.t = t_samples[i];
    for (const auto& p : probes) {
      const Deflection d = deflection(s.t, tau, p, h, kin, full, opt);
      s.dx = std::max(s.dx, norm(d.dx));
      s.dv = std::max(s.dv, norm(d.dv));
    }
    tr.samples[i] = s;
  }
  return tr;
}

std::vector<PhasePoint> halton_probes(int n, double v_max) {
  static const int bases[6] = {2, 3, 5, 7, 11, 13};
  std::vector<PhasePoint> out;
  for (int i = 1; int(out.size()) < n; ++i) {
    PhasePoint p;
    for (int a = 0; a < 3; ++a) {
      p.x[a] = radical_inverse(i, bases[a]);
      p.v[a] = v_max * (2.0 * radical_inverse(i, bases[a + 3]) - 1.0);
    }
    if (norm(p.v) <= v_max) out.push_back(p);
  }
  return out;
}

double reduction_gap(const std::vector<PhasePoint>& probes, double t, double tau, const FieldHistory& h,
                     const Kinematics& kin, const CharacteristicsOptions& opt) {
  std::vector<double> gap(probes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(probes.size()); ++i) {
    const PhasePoint a = full_characteristics(t, tau, probes[i], h, kin, opt);
    const PhasePoint b = reduced_characteristics(t, tau, probes[i], h, kin, opt);
    Vec3 dx, dv;
    for (int k = 0; k < 3; ++k) {
      dx[k] = a.x[k] - b.x[k];
      dv[k] = a.v[k] - b.v[k];
    }
    gap[i] = norm(dx) + norm(dv);
  }
  return gap.empty() ? 0.0 : *std::max_element(gap.begin(), gap.end());
}

FieldHistory field_history_from_linear(const Geometry& g, const InteractionPotential& w,
                                       const std::vector<VolterraSystem>& modes) {
  if (modes.empty()) throw ConfigError("field history: no modes");
  const auto& tg = modes.front().t_grid;
  for (const auto& s : modes)
    if (s.t_grid != tg || s.rho_of_t.size() != tg.size())
      throw ConfigError("field history: modes must share one solved time grid");
  FieldHistory h;
  h.geometry = g;
  FieldState st = zero_fields(g);
  std::vector<CVec3> e_prev;
  for (std::size_t i = 0; i < tg.size(); ++i) {
    std::vector<CVec3> e(g.n_modes(), CVec3{});
    for (const auto& s : modes) {
      const int m = mode_index(g, s.k), mm = mode_index(g, IVec3{-s.k[0], -s.k[1], -s.k[2]});
      if (m < 0 || mm < 0) throw ConfigError("field history: mode outside the lattice");
      const CVec3 wk = w_hat(w, s.k), wm = w_hat(w, IVec3{-s.k[0], -s.k[1], -s.k[2]});
      for (int a = 0; a < 3; ++a) {
        e[m][a] += wk[a] * s.rho_of_t[i];
        e[mm][a] += wm[a] * std::conj(s.rho_of_t[i]);
      }
    }
    if (i > 0) st.b_hat = advance_b(g, st.b_hat, e_prev, e, tg[i] - tg[i - 1]);
    st.e_hat = e;
    st.time = tg[i];
    h.push(tg[i], st);
    e_prev = std::move(e);
  }
  return h;
}

}  // namespace cyclo
