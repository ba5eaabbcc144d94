#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cyclo/kinematics.hpp"

namespace cyclo {

using cplx = std::complex<double>;

// Truncated Fourier lattice in x (|k_i| <= kmax along each retained axis) and
// a periodic velocity box [-lv, lv). nv points along v3, nv_perp along v1 and
// v2; nv_perp == 0 keeps only v3.
struct Geometry {
  int dim_x = 1;
  int kmax = 4;
  int nv = 64;
  int nv_perp = 0;
  double lv = 8.0;

  int vdim() const { return nv_perp > 0 ? 3 : 1; }
  double dv() const { return 2.0 * lv / nv; }
  double dv_perp() const { return nv_perp > 0 ? 2.0 * lv / nv_perp : 0.0; }
  double deta() const { return 1.0 / (2.0 * lv); }
  // cell volume of the velocity grid
  double dv_cell() const { return nv_perp > 0 ? dv() * dv_perp() * dv_perp() : dv(); }
  std::size_t v_size() const {
    return nv_perp > 0 ? std::size_t(nv_perp) * nv_perp * nv : std::size_t(nv);
  }
  int modes_per_axis() const { return 2 * kmax + 1; }
  std::size_t n_modes() const;
  // block shape of one mode's velocity data, row-major (v1, v2, v3)
  std::array<int, 3> v_dims() const {
    return nv_perp > 0 ? std::array<int, 3>{nv_perp, nv_perp, nv} : std::array<int, 3>{1, 1, nv};
  }
  int axis_points(int axis) const { return axis == 2 ? nv : (nv_perp > 0 ? nv_perp : 1); }
};

Geometry make_geometry(int dim_x, int kmax, int nv, double lv, int nv_perp = 0);

// Mode bookkeeping: index of k (or -1 when outside the lattice) and back.
int mode_index(const Geometry& g, const IVec3& k);
IVec3 mode_vector(const Geometry& g, std::size_t idx);
std::vector<IVec3> mode_list(const Geometry& g);

// Grid coordinates along velocity axis a (0,1,2 = v1,v2,v3) and the matching
// frequencies eta_j in FFT order.
std::vector<double> v_axis(const Geometry& g, int axis);
std::vector<double> eta_axis(const Geometry& g, int axis);

struct SpectralDistribution {
  Geometry geometry;
  std::vector<cplx> data;  // n_modes * v_size, mode-major
  double time = 0.0;

  SpectralDistribution() = default;
  explicit SpectralDistribution(const Geometry& g);
  cplx* mode(std::size_t idx) { return data.data() + idx * geometry.v_size(); }
  const cplx* mode(std::size_t idx) const { return data.data() + idx * geometry.v_size(); }
};

enum class EquilibriumKind { maxwellian };

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::maxwellian;
  double v_thermal = 1.0;       // along v3
  double v_thermal_perp = 1.0;  // along v1, v2
  double c0 = 1.0;
  double lambda0 = 1.0;
  int vdim = 3;
};

struct MaxwellianGrid {
  Equilibrium equilibrium;
  std::vector<double> values;  // f0 on the velocity grid
};

// Normalized Maxwellian on the grid; checks the boundary decay and the
// analyticity certificate. v_thermal_perp <= 0 means isotropic.
MaxwellianGrid maxwellian(const Geometry& g, double v_thermal, double v_thermal_perp = -1.0);

double equilibrium_value(const Equilibrium& eq, const Vec3& v);
// closed-form transform of f0 at eta (only eta[2] used for vdim == 1)
double equilibrium_transform(const Equilibrium& eq, const Vec3& eta);

// Velocity profile of a perturbation: either f0 itself or a normalized
// Gaussian bump with its own centre and width.
struct Profile {
  enum class Kind { equilibrium, gaussian } kind = Kind::equilibrium;
  Vec3 center{};
  double width = 1.0;
};

struct Perturbation {
  IVec3 mode{0, 0, 1};
  double amplitude = 0.0;
  Profile profile;
};

double profile_value(const Profile& p, const Equilibrium& eq, const Vec3& v, int vdim);
cplx profile_transform(const Profile& p, const Equilibrium& eq, const Vec3& eta, int vdim);

// f = f0(v) + sum_j a_j cos(2 pi k_j.x) g_j(v)
SpectralDistribution initial_distribution(const Geometry& g, const Equilibrium& eq,
                                          const std::vector<Perturbation>& perturbations,
                                          bool include_equilibrium = true);

// f(k,eta) = integral exp(-2 pi i eta.v) f(k,v) dv on the grid, FFT order.
std::vector<cplx> v_transform(const SpectralDistribution& dist);
SpectralDistribution inverse_v_transform(const Geometry& g, const std::vector<cplx>& hat);
void v_transform_block(const Geometry& g, cplx* block, int sign);

std::vector<cplx> density(const SpectralDistribution& dist);
cplx density_mode(const Geometry& g, const cplx* block);

// max |f(-k,v) - conj f(k,v)| over the lattice
double reality_defect(const SpectralDistribution& dist);

// Little-endian layout: "CYCLOCKP" magic, u32 version, u32 dim_x, u32 kmax,
// u32 nv, u32 nv_perp, f64 lv, f64 time, u64 count, then count (re, im) f64 pairs.
void write_checkpoint(const std::string& path, const SpectralDistribution& dist);
SpectralDistribution read_checkpoint(const std::string& path);

}  // namespace cyclo
