#pragma once

#include <functional>
#include <vector>

#include "isospec/jmaps.hpp"
#include "isospec/mat.hpp"

namespace isospec {

// Everything below works over C^{n+1} with the real inner product
//   <X, Y> = sum_i Re(X_i conj(Y_i)),
// fixed once here and used by every module. The sphere S^{2n+1} is the unit
// sphere of C^{n+1}; a point splits as p = (q, r, s) with q the first n-1
// complex components. The torus acts by (q, r, s) -> (q, e^{ia} r, e^{ib} s).

inline constexpr double kPointTol = 1e-12;  // unit-norm and tangency validation
inline constexpr double kOrbitTol = 1e-9;   // |q|, |r|, |s| below this is a degenerate orbit

double real_inner(const CVector& a, const CVector& b);
double real_inner(const Complex& a, const Complex& b);

class SpherePoint {
public:
    // p must be unit within kPointTol and live in C^{n+1} with n >= 4.
    SpherePoint(int n, CVector p);

    int n() const { return n_; }
    const CVector& vec() const { return p_; }
    auto q() const { return p_.head(n_ - 1); }
    Complex r() const { return p_(n_ - 1); }
    Complex s() const { return p_(n_); }

private:
    int n_;
    CVector p_;
};

class TangentVector {
public:
    // x is an ambient vector at base with <x, p> = 0 within kPointTol
    // (relative to max(1, |x|)).
    TangentVector(SpherePoint base, CVector x);

    const SpherePoint& base() const { return base_; }
    const CVector& vec() const { return x_; }
    auto q() const { return x_.head(base_.n() - 1); }
    Complex r() const { return x_(base_.n() - 1); }
    Complex s() const { return x_(base_.n()); }

private:
    SpherePoint base_;
    CVector x_;
};

// Value of a z-valued 1-form, coefficients on the basis (Z1, Z2).
struct ZValuedCovector {
    double c1 = 0.0;
    double c2 = 0.0;
};

// Integer weight in the dual basis of (Z1, Z2); mu identifies the vector
// Z = mu1*Z1 + mu2*Z2 used in the condition-(I) transport.
struct DualWeight {
    int mu1 = 0;
    int mu2 = 0;
};

// Removes the <v, p> p component, the cheap way to manufacture valid tangents.
TangentVector project_tangent(const SpherePoint& p, const CVector& v);

// Removes additionally the <v, ip> ip component (the Hopf vertical direction).
TangentVector project_hopf_horizontal(const SpherePoint& p, const CVector& v);

SpherePoint torus_act(double a, double b, const SpherePoint& p);

// The torus action is complex-linear on each slot, so its differential acts on
// the ambient vector by the same phases.
TangentVector torus_push(double a, double b, const TangentVector& X);

// Orbit field of Z at p: (0, i z1 r, i z2 s) as an ambient vector.
TangentVector z_star(const ZVector& Z, const SpherePoint& p);

// Hopf-horizontal parts of the basis orbit fields, k in {1, 2}:
//   Z_{h,1} = (0, ir, 0) - |r|^2 ip,   Z_{h,2} = (0, 0, is) - |s|^2 ip.
// Their g0-Gram is [[|r|^2(1-|r|^2), -|r|^2|s|^2], [., |s|^2(1-|s|^2)]].
TangentVector z_star_hopf_horizontal(int k, const SpherePoint& p);

// lambda^k(X) = <j_{Zk} q, X_q>  -- the sphere family's admissible form.
ZValuedCovector lambda_form(const JMapPair& j, const SpherePoint& p, const TangentVector& X);

// eta^k(X) = |q|^2 <j_{Zk} q, X_q> - <j_{Zk} q, iq> <iq, X_q>  -- the
// S^1-invariant descendant that defines the metrics on CP^n.
ZValuedCovector eta_form(const JMapPair& j, const SpherePoint& p, const TangentVector& X);

// Same formulas on raw ambient data, no unit/tangency validation. These exist
// for the finite-difference oracles, which probe the constant extensions at
// slightly off-sphere points.
ZValuedCovector lambda_form_ambient(const JMapPair& j, const CVector& p, const CVector& x);
ZValuedCovector eta_form_ambient(const JMapPair& j, const CVector& p, const CVector& x);
ZValuedCovector omega0_ambient(const CVector& p, const CVector& x);

using FormEvaluator =
    std::function<ZValuedCovector(const SpherePoint&, const TangentVector&)>;

// Unnormalized projection of a 1-form onto the complement of a 2-frame:
//   form_h(X) = |F1 ^ F2|^2 form(X) - <X ^ F2, F1 ^ F2> form(F1)
//                                   - <F1 ^ X, F1 ^ F2> form(F2)
// with <a^b, c^d> = <a,c><b,d> - <a,d><b,c>. Annihilates F1 and F2. Errors if
// the frame is degenerate (|F1 ^ F2|^2 <= kOrbitTol^2).
ZValuedCovector horizontalize(const FormEvaluator& form, const SpherePoint& p,
                              const TangentVector& X, const TangentVector& F1,
                              const TangentVector& F2);

// Exterior derivative of eta, the closed-form six-term expression:
//   d eta^k(X,Y) = 2<X_q,q><j_k q,Y_q> - 2<Y_q,q><j_k q,X_q>
//                + 2|q|^2 <j_k X_q,Y_q>
//                - 2<j_k X_q,iq><iq,Y_q> + 2<j_k Y_q,iq><iq,X_q>
//                - 2<j_k q,iq><iX_q,Y_q>.
ZValuedCovector d_eta(const JMapPair& j, const SpherePoint& p, const TangentVector& X,
                      const TangentVector& Y);

// The four surviving terms on tangents to a level set L = M_{a,a}, where
// <X_q, q> = <Y_q, q> = 0 kills the first two.
ZValuedCovector d_eta_restricted(const JMapPair& j, const SpherePoint& p, const TangentVector& X,
                                 const TangentVector& Y);

// omega0(X) = <X_r, ir/(|r|^2(1-|r|^2))> Z1 + <X_s, is/(|s|^2(1-|s|^2))> Z2,
// meant for Hopf-horizontal X at points with r, s != 0. NB: the frame
// (Z_{h,1}, Z_{h,2}) is not g0-orthogonal, so this diagonal normalization is
// not the dual frame: omega0(Z_{h,1}) = (1, -|r|^2/(1-|s|^2)). What matters
// downstream is that its restriction to any M_{a,a} is closed.
ZValuedCovector omega0(const SpherePoint& p, const TangentVector& X);

// --- real projective quotients -------------------------------------------
// S^{2m+1} sits in C^m (+) C with the torus acting by (p, q) -> (e^{ia} p,
// e^{ib} q); the forms below are invariant under the antipodal map and so
// descend to RP^{2m+1}.

class RpPoint {
public:
    // (p, q) unit in C^m (+) C, m >= 3.
    RpPoint(CVector p, Complex q);

    int m() const { return static_cast<int>(p_.size()); }
    const CVector& p() const { return p_; }
    Complex q() const { return q_; }

private:
    CVector p_;
    Complex q_;
};

class RpTangent {
public:
    RpTangent(RpPoint base, CVector xp, Complex xq);

    const RpPoint& base() const { return base_; }
    const CVector& xp() const { return xp_; }
    Complex xq() const { return xq_; }

private:
    RpPoint base_;
    CVector xp_;
    Complex xq_;
};

RpPoint rp_antipode(const RpPoint& pt);
RpTangent rp_antipode_push(const RpTangent& X);
RpTangent rp_project_tangent(const RpPoint& pt, const CVector& vp, const Complex& vq);

// Orbit fields: Z1* = (ip, 0), Z2* = (0, iq).
RpTangent rp_z_star(const ZVector& Z, const RpPoint& pt);

// lambda^k(X) = |p|^2 <j_{Zk} p, X_p> - <X_p, ip> <j_{Zk} p, ip>.
ZValuedCovector rp_lambda(const JMapPair& j, const RpPoint& pt, const RpTangent& X);

// --- frames ----------------------------------------------------------------

// 2n+1 linearly independent tangent vectors at p (orthonormal); determinant
// ratios of Gram matrices over this frame do not depend on the choice.
std::vector<TangentVector> tangent_frame(const SpherePoint& p);

// 2n Hopf-horizontal tangent vectors at p (orthonormal).
std::vector<TangentVector> hopf_horizontal_frame(const SpherePoint& p);

// 2m+1 tangent vectors at an RP base point.
std::vector<RpTangent> rp_tangent_frame(const RpPoint& pt);

} // namespace isospec
