#pragma once

#include "isospec/forms.hpp"

namespace isospec {

// Tolerances owned by this layer.
inline constexpr double kHorizontalTol = 1e-9; // Hopf-horizontality precondition

enum class Manifold { Sphere, CPn, RPodd };

// Which deformed metric to evaluate:
//   Sphere: g_lambda on S^{2n+1}, built from lambda and the orbit fields Z*;
//   CPn:    g_eta on Hopf-horizontal lifts, built from eta and Z_h;
//   RPodd:  g_lambda on S^{2m+1} in C^m (+) C (descends to RP^{2m+1}).
// For Sphere/CPn, n is the projective dimension and j.m must equal n-1.
// For RPodd, n holds m and j.m must equal m.
struct MetricSpec {
    Manifold manifold = Manifold::Sphere;
    JMapPair j;
    int n = 4;

    MetricSpec(Manifold mf, JMapPair jmap, int dim);
};

// g(X, Y) = <X + sum_k form^k(X) F_k, Y + sum_k form^k(Y) F_k> where form/F
// are (lambda, Z*) on the sphere, (eta, Z_h) on CP^n (X, Y must then be
// Hopf-horizontal) and (rp_lambda, (ip,0)/(0,iq)) on the RP sphere.
double metric_eval(const MetricSpec& spec, const SpherePoint& p, const TangentVector& X,
                   const TangentVector& Y);
double metric_eval(const MetricSpec& spec, const RpPoint& pt, const RpTangent& X,
                   const RpTangent& Y);

// Gram matrix over a frame; same values as pairwise metric_eval but with the
// per-point work (j_Z q products, orbit fields) done once.
RMatrix gram(const MetricSpec& spec, const SpherePoint& p, const std::vector<TangentVector>& frame);
RMatrix gram(const MetricSpec& spec, const RpPoint& pt, const std::vector<RpTangent>& frame);

// Squared g0-area of the torus orbit through p: |r|^2 |s|^2 (1 - |r|^2 - |s|^2),
// which is also det of the (Z_h1, Z_h2) Gram. Requires p in M-hat.
double orbit_area_sq(const SpherePoint& p);

// g0-angle between the orbit fields on M_{a,a}: arccos(-a^2/(1-a^2)),
// defined for 0 < a < 1/sqrt(2). Together with the area this pins |r|, |s| as
// isometry invariants of the quotient.
double orbit_angle(double a);

// T-orbit coordinates ([q], |r|, |s|) of a point in M-hat. q_dir is a unit
// representative; equality of [q] is phase-insensitive.
struct QuotientCoords {
    CVector q_dir;
    double a = 0.0;
    double b = 0.0;
};

QuotientCoords quotient_coords(const SpherePoint& p);
bool coords_equal(const QuotientCoords& c1, const QuotientCoords& c2, double tol = 1e-10);

// Condition (I) transport check. Z = mu1 Z1 + mu2 Z2; A_Z = conjugator_for(j,
// j2, Z); G = blockdiag(A_Z, 1, 1) in SU(n+1). Over `samples` random (p, X)
// draws the residuals of
//   (mu o lambda)_p(X)  = (mu o lambda')_{Gp}(GX)
//   (mu o eta)_p(X)     = (mu o eta')_{Gp}(GX)
// are measured, plus the T-equivariance defect of G; the max is returned.
double condition_I_check(const JMapPair& j, const JMapPair& j2, const DualWeight& mu, int samples,
                         std::uint64_t seed);

// Fubini-Study Gram in the affine chart w -> [(1, w)], real coordinates
// interleaved as (Re w_0, Im w_0, Re w_1, ...):
//   h_ij = delta_ij/(1+|w|^2) - conj(w_i) w_j/(1+|w|^2)^2,
//   g(U, V) = Re(sum_ij h_ij u_i conj(v_j)).
RMatrix fubini_study_chart(const CVector& w);

} // namespace isospec
