#include "cyclo/vlasov_solver.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>

#include "cyclo/error.hpp"
#include "velocity_ops.hpp"
#include "xgrid.hpp"

namespace cyclo {

using std::numbers::pi;

void validate(const VlasovProblem& pb) {
  const auto& g = pb.geometry;
  const auto& c = pb.config;
  if (c.splitting != "strang") throw ConfigError("solver: unknown splitting '" + c.splitting + "'");
  if (!(c.dt > 0.0) || !(c.t_end >= 0.0)) throw ConfigError("solver: dt must be > 0 and t_end >= 0");
  const double kmax = (g.dim_x == 3 ? std::sqrt(3.0) : 1.0) * g.kmax;
  if (c.dt * kmax * g.lv >= 1.0)
    throw ConfigError("solver: dt*max|k|*lv = " + std::to_string(c.dt * kmax * g.lv) + " must be < 1");
  if (g.vdim() == 1 && pb.potential.kind != PotentialKind::scalar_gradient)
    throw ConfigError("solver: the perpendicular potential needs a 3-D velocity grid (nv_perp > 0)");
  if (g.vdim() == 1 && g.dim_x == 3)
    throw ConfigError("solver: dim_x = 3 needs a 3-D velocity grid");
  if (pb.equilibrium.vdim != g.vdim()) throw ConfigError("solver: equilibrium and grid velocity dimensions differ");
}

void FieldHistory::push(double time, const FieldState& s) {
  t.push_back(time);
  states.push_back(s);
}

void FieldHistory::sample(double time, const Vec3& x, Vec3& e, Vec3& b) const {
  e = Vec3{};
  b = Vec3{};
  if (t.empty()) return;
  std::size_t i = 0;
  double w = 0.0;
  if (time >= t.back()) {
    i = t.size() - 1;
  } else if (time > t.front()) {
    i = std::size_t(std::upper_bound(t.begin(), t.end(), time) - t.begin()) - 1;
    w = (time - t[i]) / (t[i + 1] - t[i]);
  }
  const std::size_t nm = geometry.n_modes();
  for (std::size_t m = 0; m < nm; ++m) {
    const Vec3 k = to_vec(mode_vector(geometry, m));
    const cplx ph = std::polar(1.0, 2.0 * pi * (k[0] * x[0] + k[1] * x[1] + k[2] * x[2]));
    for (int a = 0; a < 3; ++a) {
      cplx ev = states[i].e_hat[m][a], bv = states[i].b_hat[m][a];
      if (w > 0.0) {
        ev += w * (states[i + 1].e_hat[m][a] - ev);
        bv += w * (states[i + 1].b_hat[m][a] - bv);
      }
      e[a] += (ev * ph).real();
      b[a] += (bv * ph).real();
    }
  }
}

FieldHistory FieldHistory::scaled_b(double s) const {
  FieldHistory h = *this;
  for (auto& st : h.states)
    for (auto& b : st.b_hat)
      for (auto& c : b) c *= s;
  return h;
}

void free_flow(SpectralDistribution& dist, const Kinematics& kin, double h) {
  const auto& g = dist.geometry;
  const double theta = kin.omega * h;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(g.n_modes()); ++m) {
    cplx* blk = dist.mode(m);
    if (g.vdim() == 3) vops::rotate(g, blk, 0, 1, theta);
    const Vec3 k = to_vec(mode_vector(g, m));
    if (k[0] == 0 && k[1] == 0 && k[2] == 0) continue;
    vops::phase(g, blk, transport_frequency(k, -h, kin));
  }
  dist.time += h;
}

void kick(SpectralDistribution& delta, const Equilibrium& eq, const std::vector<CVec3>& e_hat,
          const std::vector<CVec3>& b_hat, double dt, bool dealias, bool linearized) {
  const auto& g = delta.geometry;
  const XGrid xg(g, dealias);
  const auto ex = xg.field_to_physical(e_hat);
  const auto bx = xg.field_to_physical(b_hat);
  const std::size_t nvs = g.v_size();
  const bool v3d = g.vdim() == 3;

  std::vector<cplx> phys;
  xg.to_physical(delta.data, phys);

  const auto v1 = v_axis(g, 0), v2 = v_axis(g, 1), v3 = v_axis(g, 2);
  std::vector<double> f0(nvs);
  {
    std::size_t idx = 0;
    for (double a : v1)
      for (double b : v2)
        for (double c : v3) f0[idx++] = equilibrium_value(eq, Vec3{a, b, c});
  }

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(xg.n_points()); ++p) {
    cplx* blk = phys.data() + p * nvs;
    Vec3 d{};
    for (int a = 0; a < 3; ++a) d[a] = 0.5 * dt * ex[p][a];
    if (!v3d) d[0] = d[1] = 0.0;

    // planar pieces in particle-map order; dv/dt = v x B rotates about B by -|B| dt
    struct Piece { int a, b; double th; };
    std::vector<Piece> pieces;
    if (v3d) {
      const Vec3 th{-bx[p][0] * dt, -bx[p][1] * dt, -bx[p][2] * dt};
      pieces = {{1, 2, 0.5 * th[0]}, {2, 0, 0.5 * th[1]}, {0, 1, th[2]}, {2, 0, 0.5 * th[1]}, {1, 2, 0.5 * th[0]}};
    }
    Mat3 q{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    for (const auto& pc : pieces) q = matmul(vops::plane_rotation(pc.a, pc.b, pc.th), q);
    const Mat3 qinv = transpose(q);

    if (!linearized) {
      vops::shift(g, blk, d);
      for (const auto& pc : pieces)
        if (pc.th != 0.0) vops::rotate(g, blk, pc.a, pc.b, pc.th);
      vops::shift(g, blk, d);
    }

    // f0(P^{-1} u) - f0(u), P^{-1} u = Q^{-1}(u - d) - d
    std::size_t idx = 0;
    for (double a : v1)
      for (double b : v2)
        for (double c : v3) {
          const Vec3 u{a - d[0], b - d[1], c - d[2]};
          Vec3 w = matvec(qinv, u);
          for (int i = 0; i < 3; ++i) w[i] -= d[i];
          blk[idx] += equilibrium_value(eq, w) - f0[idx];
          ++idx;
        }
  }
  xg.to_spectral(phys, delta.data);
}

namespace {

void eta_filter(SpectralDistribution& dist, double strength) {
  if (strength <= 0.0) return;
  const auto& g = dist.geometry;
  const bool perp = g.vdim() == 3 && g.dim_x == 3;
  const std::array<bool, 3> axes{perp, perp, true};
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(g.n_modes()); ++m) vops::smooth_filter(g, dist.mode(m), axes, strength);
}

std::vector<CVec3> e_from(const SpectralDistribution& delta, const InteractionPotential& w) {
  return electric_field(delta.geometry, density(delta), w);
}

}  // namespace

void strang_step(SpectralDistribution& delta, FieldState& fields, const VlasovProblem& pb) {
  const double dt = pb.config.dt;
  const auto& g = pb.geometry;
  free_flow(delta, pb.kinematics, 0.5 * dt);
  const auto e_mid = e_from(delta, pb.potential);
  const auto b_mid = advance_b(g, fields.b_hat, fields.e_hat, e_mid, 0.5 * dt);
  kick(delta, pb.equilibrium, e_mid, b_mid, dt, pb.config.dealias, pb.config.linearized);
  free_flow(delta, pb.kinematics, 0.5 * dt);
  eta_filter(delta, pb.config.filter_rate * dt);
  const auto e_new = e_from(delta, pb.potential);
  fields.b_hat = advance_b(g, fields.b_hat, fields.e_hat, e_new, dt);
  fields.e_hat = e_new;
  fields.time += dt;
}

namespace {

std::vector<double> f0_grid(const Geometry& g, const Equilibrium& eq) {
  std::vector<double> f(g.v_size());
  std::size_t idx = 0;
  for (double a : v_axis(g, 0))
    for (double b : v_axis(g, 1))
      for (double c : v_axis(g, 2)) f[idx++] = equilibrium_value(eq, Vec3{a, b, c});
  return f;
}

}  // namespace

RunResult run(const SpectralDistribution& dist0, const VlasovProblem& pb) {
  validate(pb);
  const auto& g = pb.geometry;
  const auto& cfg = pb.config;
  if (dist0.geometry.nv != g.nv || dist0.geometry.kmax != g.kmax || dist0.geometry.dim_x != g.dim_x ||
      dist0.geometry.nv_perp != g.nv_perp || dist0.geometry.lv != g.lv)
    throw ConfigError("solver: initial data geometry differs from the problem geometry");

  const auto f0 = f0_grid(g, pb.equilibrium);
  const std::size_t zero = std::size_t(mode_index(g, {0, 0, 0}));
  double f0_mass = 0.0, f0_max = 0.0;
  for (double v : f0) {
    f0_mass += v * g.dv_cell();
    f0_max = std::max(f0_max, v);
  }

  SpectralDistribution delta = dist0;
  for (std::size_t i = 0; i < f0.size(); ++i) delta.mode(zero)[i] -= f0[i];

  if (!cfg.dealias) {
    double amp = 0.0;
    for (const auto& c : delta.data) amp = std::max(amp, std::abs(c));
    if (amp > 0.1 * f0_max)
      std::cerr << "warning: dealiasing disabled with perturbation amplitude " << amp / f0_max
                << " > 0.1; quadratic products will alias\n";
  }

  FieldState fields = zero_fields(g);
  fields.e_hat = e_from(delta, pb.potential);
  fields.time = dist0.time;

  RunResult res;
  res.history.geometry = g;

  auto full = [&]() {
    SpectralDistribution f = delta;
    for (std::size_t i = 0; i < f0.size(); ++i) f.mode(zero)[i] += f0[i];
    return f;
  };
  auto record = [&]() {
    auto& d = res.diagnostics;
    d.t.push_back(delta.time);
    auto rho = density(delta);
    d.mass.push_back(f0_mass + rho[zero].real());
    d.rho.push_back(std::move(rho));
    d.e_energy.push_back(field_energy(fields.e_hat));
    d.b_energy.push_back(field_energy(fields.b_hat));
    double l2 = 0.0;
    for (std::size_t m = 0; m < g.n_modes(); ++m)
      for (std::size_t i = 0; i < g.v_size(); ++i) {
        const cplx v = delta.mode(m)[i] + (m == zero ? f0[i] : 0.0);
        l2 += std::norm(v);
      }
    d.l2.push_back(std::sqrt(l2 * g.dv_cell()));
  };

  const long n = cfg.t_end > 0 ? long(std::ceil(cfg.t_end / cfg.dt - 1e-9)) : 0;
  VlasovProblem step_pb = pb;
  if (n > 0) step_pb.config.dt = cfg.t_end / double(n);

  record();
  res.history.push(delta.time, fields);
  for (long s = 1; s <= n; ++s) {
    strang_step(delta, fields, step_pb);
    for (const auto& c : fields.e_hat)
      if (!std::isfinite(c[0].real() + c[0].imag() + c[1].real() + c[1].imag() + c[2].real() + c[2].imag()))
        throw NumericError("solver: non-finite field at step " + std::to_string(s));
    res.history.push(delta.time, fields);
    if (s % std::max(1, cfg.diag_every) == 0 || s == n) record();
    if (cfg.checkpoint_every > 0 && s % cfg.checkpoint_every == 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "_%06ld.ckp", s);
      write_checkpoint(cfg.checkpoint_prefix + buf, full());
    }
  }
  res.final_dist = full();
  return res;
}

}  // namespace cyclo
