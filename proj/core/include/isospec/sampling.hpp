#pragma once

#include "isospec/forms.hpp"
#include "isospec/rng.hpp"

namespace isospec {

// Random geometric data for the sampled checks. Every draw consumes only the
// passed stream, so callers control determinism by keying streams on
// (seed, sample index).

// Uniform on the unit sphere of C^d (gaussian direction, normalized).
CVector sample_unit_cvector(StreamRng& rng, int d);

SpherePoint sample_sphere_point(StreamRng& rng, int n);

// Rejection-samples until |q|, |r|, |s| >= min_block: a point of M-hat with a
// healthy margin from the degenerate orbits.
SpherePoint sample_m_hat_point(StreamRng& rng, int n, double min_block = 0.1);

// Point of M_{a,a}: |r| = |s| = a with random phases and a random unit q.
SpherePoint sample_level_point(StreamRng& rng, int n, double a);

TangentVector sample_tangent(StreamRng& rng, const SpherePoint& p);
TangentVector sample_hopf_horizontal(StreamRng& rng, const SpherePoint& p);

// Tangent to the level set M_{|r|,|s|} through p and Hopf-horizontal:
// <X_q, q> = <X_r, r> = <X_s, s> = 0 and <X, ip> = 0.
TangentVector sample_level_tangent(StreamRng& rng, const SpherePoint& p);

RpPoint sample_rp_point(StreamRng& rng, int m);
RpTangent sample_rp_tangent(StreamRng& rng, const RpPoint& pt);

} // namespace isospec
