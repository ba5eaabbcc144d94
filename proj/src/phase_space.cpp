#include "cyclo/phase_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

#include "cyclo/error.hpp"
#include "fft.hpp"

namespace cyclo {

using std::numbers::pi;

std::size_t Geometry::n_modes() const {
  const std::size_t m = modes_per_axis();
  return dim_x == 3 ? m * m * m : m;
}

Geometry make_geometry(int dim_x, int kmax, int nv, double lv, int nv_perp) {
  if (dim_x != 1 && dim_x != 3) throw ConfigError("geometry: dim_x must be 1 or 3");
  if (kmax < 0) throw ConfigError("geometry: kmax must be >= 0");
  auto pow2 = [](int n) { return n > 0 && std::has_single_bit(unsigned(n)); };
  if (!pow2(nv)) throw ConfigError("geometry: nv must be a power of two");
  if (nv < 32) throw ConfigError("geometry: nv must be >= 32");
  if (nv_perp != 0 && (!pow2(nv_perp) || nv_perp < 32))
    throw ConfigError("geometry: nv_perp must be 0 or a power of two >= 32");
  if (!(lv > 0.0)) throw ConfigError("geometry: lv must be positive");
  if (dim_x == 3 && nv_perp == 0)
    throw ConfigError("geometry: dim_x = 3 needs a 3-D velocity grid (nv_perp > 0)");
  return Geometry{dim_x, kmax, nv, nv_perp, lv};
}

int mode_index(const Geometry& g, const IVec3& k) {
  const int K = g.kmax, m = g.modes_per_axis();
  if (g.dim_x == 1) {
    if (k[0] != 0 || k[1] != 0 || std::abs(k[2]) > K) return -1;
    return k[2] + K;
  }
  for (int c : k)
    if (std::abs(c) > K) return -1;
  return ((k[0] + K) * m + (k[1] + K)) * m + (k[2] + K);
}

IVec3 mode_vector(const Geometry& g, std::size_t idx) {
  const int K = g.kmax, m = g.modes_per_axis();
  if (g.dim_x == 1) return IVec3{0, 0, int(idx) - K};
  const int i = int(idx);
  return IVec3{i / (m * m) - K, (i / m) % m - K, i % m - K};
}

std::vector<IVec3> mode_list(const Geometry& g) {
  std::vector<IVec3> out(g.n_modes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mode_vector(g, i);
  return out;
}

std::vector<double> v_axis(const Geometry& g, int axis) {
  if (axis != 2 && g.nv_perp == 0) return std::vector<double>{0.0};
  const int n = g.axis_points(axis);
  const double dv = axis == 2 ? g.dv() : g.dv_perp();
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = -g.lv + i * dv;
  return v;
}

std::vector<double> eta_axis(const Geometry& g, int axis) {
  if (axis != 2 && g.nv_perp == 0) return std::vector<double>{0.0};
  const int n = g.axis_points(axis);
  std::vector<double> e(n);
  for (int j = 0; j < n; ++j) e[j] = (j < n / 2 ? j : j - n) * g.deta();
  return e;
}

SpectralDistribution::SpectralDistribution(const Geometry& g)
    : geometry(g), data(g.n_modes() * g.v_size(), cplx(0.0, 0.0)) {}

double equilibrium_value(const Equilibrium& eq, const Vec3& v) {
  const double a = eq.v_thermal;
  const double p1 = std::exp(-0.5 * v[2] * v[2] / (a * a)) / (std::sqrt(2.0 * pi) * a);
  if (eq.vdim == 1) return p1;
  const double b = eq.v_thermal_perp;
  const double r2 = v[0] * v[0] + v[1] * v[1];
  return p1 * std::exp(-0.5 * r2 / (b * b)) / (2.0 * pi * b * b);
}

double equilibrium_transform(const Equilibrium& eq, const Vec3& eta) {
  const double a = eq.v_thermal;
  double e = a * a * eta[2] * eta[2];
  if (eq.vdim == 3) {
    const double b = eq.v_thermal_perp;
    e += b * b * (eta[0] * eta[0] + eta[1] * eta[1]);
  }
  return std::exp(-2.0 * pi * pi * e);
}

MaxwellianGrid maxwellian(const Geometry& g, double v_thermal, double v_thermal_perp) {
  if (!(v_thermal > 0.0)) throw ConfigError("equilibrium: v_thermal must be positive");
  Equilibrium eq;
  eq.v_thermal = v_thermal;
  eq.v_thermal_perp = v_thermal_perp > 0.0 ? v_thermal_perp : v_thermal;
  eq.vdim = g.vdim();
  const double vmax = eq.vdim == 3 ? std::max(eq.v_thermal, eq.v_thermal_perp) : eq.v_thermal;
  const double vmin = eq.vdim == 3 ? std::min(eq.v_thermal, eq.v_thermal_perp) : eq.v_thermal;

  // boundary decay: largest value of f0 on the faces of the box
  double edge = equilibrium_value(eq, Vec3{0.0, 0.0, g.lv});
  if (eq.vdim == 3) edge = std::max(edge, equilibrium_value(eq, Vec3{g.lv, 0.0, 0.0}));
  if (edge > 1e-12)
    throw ConfigError("equilibrium: boundary-truncation error, f0 at the velocity boundary is " +
                      std::to_string(edge) + " > 1e-12 (increase lv)");
  if (g.lv < 6.0 * vmax) throw ConfigError("geometry: lv must be >= 6 v_thermal");

  // |f0^(eta)| <= exp(-2 pi^2 vmin^2 |eta|^2) <= c0 exp(-2 pi lambda0 |eta|)
  eq.lambda0 = vmin;
  eq.c0 = std::exp(eq.lambda0 * eq.lambda0 / (2.0 * vmin * vmin));

  MaxwellianGrid out{eq, std::vector<double>(g.v_size())};
  const auto v1 = v_axis(g, 0), v2 = v_axis(g, 1), v3 = v_axis(g, 2);
  const auto e1 = eta_axis(g, 0), e2 = eta_axis(g, 1), e3 = eta_axis(g, 2);
  std::size_t idx = 0;
  for (std::size_t a = 0; a < v1.size(); ++a)
    for (std::size_t b = 0; b < v2.size(); ++b)
      for (std::size_t c = 0; c < v3.size(); ++c, ++idx) {
        out.values[idx] = equilibrium_value(eq, Vec3{v1[a], v2[b], v3[c]});
        const Vec3 eta{e1[a], e2[b], e3[c]};
        const double n = std::sqrt(eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2]);
        if (equilibrium_transform(eq, eta) > eq.c0 * std::exp(-2.0 * pi * eq.lambda0 * n) * (1 + 1e-12))
          throw NumericError("equilibrium: analyticity certificate violated on the eta-grid");
      }
  return out;
}

double profile_value(const Profile& p, const Equilibrium& eq, const Vec3& v, int vdim) {
  if (p.kind == Profile::Kind::equilibrium) return equilibrium_value(eq, v);
  const double w = p.width;
  double r2 = (v[2] - p.center[2]) * (v[2] - p.center[2]);
  double norm = std::sqrt(2.0 * pi) * w;
  if (vdim == 3) {
    r2 += (v[0] - p.center[0]) * (v[0] - p.center[0]) + (v[1] - p.center[1]) * (v[1] - p.center[1]);
    norm = std::pow(2.0 * pi * w * w, 1.5);
  }
  return std::exp(-0.5 * r2 / (w * w)) / norm;
}

cplx profile_transform(const Profile& p, const Equilibrium& eq, const Vec3& eta, int vdim) {
  if (p.kind == Profile::Kind::equilibrium) return equilibrium_transform(eq, eta);
  double e2 = eta[2] * eta[2];
  double phase = eta[2] * p.center[2];
  if (vdim == 3) {
    e2 += eta[0] * eta[0] + eta[1] * eta[1];
    phase += eta[0] * p.center[0] + eta[1] * p.center[1];
  }
  return std::exp(-2.0 * pi * pi * p.width * p.width * e2) * std::polar(1.0, -2.0 * pi * phase);
}

SpectralDistribution initial_distribution(const Geometry& g, const Equilibrium& eq,
                                          const std::vector<Perturbation>& perturbations,
                                          bool include_equilibrium) {
  SpectralDistribution dist(g);
  const auto v1 = v_axis(g, 0), v2 = v_axis(g, 1), v3 = v_axis(g, 2);
  auto fill = [&](cplx* block, double scale, auto&& fn) {
    std::size_t idx = 0;
    for (double a : v1)
      for (double b : v2)
        for (double c : v3) block[idx++] += scale * fn(Vec3{a, b, c});
  };
  if (include_equilibrium) {
    const int i0 = mode_index(g, IVec3{0, 0, 0});
    fill(dist.mode(i0), 1.0, [&](const Vec3& v) { return equilibrium_value(eq, v); });
  }
  for (const auto& p : perturbations) {
    const int ip = mode_index(g, p.mode);
    const int im = mode_index(g, IVec3{-p.mode[0], -p.mode[1], -p.mode[2]});
    if (ip < 0 || im < 0) throw ConfigError("perturbation: mode outside the k-lattice");
    if (ip == im) throw ConfigError("perturbation: mode must be nonzero");
    auto fn = [&](const Vec3& v) { return profile_value(p.profile, eq, v, g.vdim()); };
    fill(dist.mode(ip), 0.5 * p.amplitude, fn);
    fill(dist.mode(im), 0.5 * p.amplitude, fn);
  }
  return dist;
}

void v_transform_block(const Geometry& g, cplx* block, int sign) {
  const auto dims = g.v_dims();
  const std::size_t n = g.v_size();
  if (sign < 0) {
    if (g.vdim() == 3) fft::transform_axes(block, dims, {0, 1, 2}, -1);
    else fft::transform_axes(block, dims, {2}, -1);
  }
  const double scale = sign < 0 ? g.dv_cell() : 1.0 / (g.dv_cell() * double(n));
  std::size_t idx = 0;
  for (int a = 0; a < dims[0]; ++a)
    for (int b = 0; b < dims[1]; ++b)
      for (int c = 0; c < dims[2]; ++c, ++idx) {
        const bool odd = (a + b + c) & 1;
        block[idx] *= odd ? -scale : scale;
      }
  if (sign > 0) {
    if (g.vdim() == 3) fft::transform_axes(block, dims, {0, 1, 2}, +1);
    else fft::transform_axes(block, dims, {2}, +1);
  }
}

std::vector<cplx> v_transform(const SpectralDistribution& dist) {
  std::vector<cplx> out = dist.data;
  const auto& g = dist.geometry;
  const std::size_t nm = g.n_modes(), nvs = g.v_size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(nm); ++m) v_transform_block(g, out.data() + m * nvs, -1);
  return out;
}

SpectralDistribution inverse_v_transform(const Geometry& g, const std::vector<cplx>& hat) {
  SpectralDistribution dist(g);
  dist.data = hat;
  const std::size_t nm = g.n_modes();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(nm); ++m) v_transform_block(g, dist.mode(m), +1);
  return dist;
}

cplx density_mode(const Geometry& g, const cplx* block) {
  cplx s(0.0, 0.0);
  const std::size_t n = g.v_size();
  for (std::size_t i = 0; i < n; ++i) s += block[i];
  return s * g.dv_cell();
}

std::vector<cplx> density(const SpectralDistribution& dist) {
  const auto& g = dist.geometry;
  std::vector<cplx> rho(g.n_modes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(rho.size()); ++m) rho[m] = density_mode(g, dist.mode(m));
  return rho;
}

double reality_defect(const SpectralDistribution& dist) {
  const auto& g = dist.geometry;
  double worst = 0.0;
  for (std::size_t m = 0; m < g.n_modes(); ++m) {
    const IVec3 k = mode_vector(g, m);
    const int mm = mode_index(g, IVec3{-k[0], -k[1], -k[2]});
    const cplx* a = dist.mode(m);
    const cplx* b = dist.mode(mm);
    for (std::size_t i = 0; i < g.v_size(); ++i) worst = std::max(worst, std::abs(b[i] - std::conj(a[i])));
  }
  return worst;
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 8);
}

void put_f64(std::ostream& os, double d) { put_u64(os, std::bit_cast<std::uint64_t>(d)); }

std::uint64_t get_u(std::istream& is, int nbytes) {
  unsigned char b[8] = {};
  is.read(reinterpret_cast<char*>(b), nbytes);
  if (!is) throw ConfigError("checkpoint: truncated file");
  std::uint64_t v = 0;
  for (int i = 0; i < nbytes; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u(is, 8)); }

constexpr char kMagic[8] = {'C', 'Y', 'C', 'L', 'O', 'C', 'K', 'P'};

}  // namespace

void write_checkpoint(const std::string& path, const SpectralDistribution& dist) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("checkpoint: cannot open " + path);
  const auto& g = dist.geometry;
  os.write(kMagic, 8);
  put_u32(os, 1);
  put_u32(os, g.dim_x);
  put_u32(os, g.kmax);
  put_u32(os, g.nv);
  put_u32(os, g.nv_perp);
  put_f64(os, g.lv);
  put_f64(os, dist.time);
  put_u64(os, dist.data.size());
  for (const cplx& z : dist.data) {
    put_f64(os, z.real());
    put_f64(os, z.imag());
  }
}

SpectralDistribution read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("checkpoint: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) throw ConfigError("checkpoint: bad magic in " + path);
  if (get_u(is, 4) != 1) throw ConfigError("checkpoint: unsupported version");
  const int dim_x = int(get_u(is, 4)), kmax = int(get_u(is, 4)), nv = int(get_u(is, 4)),
            nv_perp = int(get_u(is, 4));
  const double lv = get_f64(is);
  const Geometry g = make_geometry(dim_x, kmax, nv, lv, nv_perp);
  SpectralDistribution dist(g);
  dist.time = get_f64(is);
  const std::uint64_t count = get_u(is, 8);
  if (count != dist.data.size()) throw ConfigError("checkpoint: size does not match geometry");
  for (auto& z : dist.data) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    z = cplx(re, im);
  }
  return dist;
}

}  // namespace cyclo
