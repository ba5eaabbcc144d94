#pragma once

#include "cyclo/phase_space.hpp"

namespace cyclo::vops {

// All operations act on one velocity block (one k mode or one x point) and
// are exact Fourier operations on the periodic velocity box. The unpaired
// Nyquist coefficient is dropped by every shift so real data stay real.

// g(v) = h(v - d)
void shift(const Geometry& g, cplx* block, const Vec3& d);

// g(V) = h(Q^{-1} V) where Q rotates by theta in the plane of axes (a, b),
// carrying axis a towards axis b. Done with three shears per piece of at
// most pi/4.
void rotate(const Geometry& g, cplx* block, int a, int b, double theta);

// 3x3 matrix of the rotation used by rotate(), for analytic evaluation.
Mat3 plane_rotation(int a, int b, double theta);

// block *= exp(2 pi i c.v)
void phase(const Geometry& g, cplx* block, const Vec3& c);

// zero every coefficient with |eta_a| > fraction * eta_max along the axes
// whose flag is set
void filter(const Geometry& g, cplx* block, const std::array<bool, 3>& axes, double fraction);

// multiply by exp(-strength (|eta_a| / eta_max)^36) along the flagged axes.
// Unlike the sharp cutoff it leaves no slowly decaying tails in v, so later
// non-integer phase shifts do not leak energy back towards eta = 0.
void smooth_filter(const Geometry& g, cplx* block, const std::array<bool, 3>& axes, double strength);

}  // namespace cyclo::vops
