#include "isospec/forms.hpp"

#include <cmath>
#include <string>

namespace isospec {

namespace {

const Complex kI(0.0, 1.0);

// Pivoted modified Gram-Schmidt over the real structure of C^d. Candidates
// are first stripped of their components along `kill` (assumed orthonormal),
// then orthonormalized picking the largest remaining vector each round.
std::vector<CVector> orthonormal_complement(const std::vector<CVector>& kill, int d, int want) {
    std::vector<CVector> cand;
    cand.reserve(2 * static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        CVector e = CVector::Zero(d);
        e(k) = Complex(1, 0);
        cand.push_back(e);
        e(k) = kI;
        cand.push_back(e);
    }
    for (auto& v : cand)
        for (const auto& u : kill) v -= real_inner(v, u) * u;

    std::vector<CVector> out;
    out.reserve(static_cast<std::size_t>(want));
    for (int round = 0; round < want; ++round) {
        int best = -1;
        double best_norm = 0.0;
        for (std::size_t c = 0; c < cand.size(); ++c) {
            double nn = cand[c].norm();
            if (nn > best_norm) {
                best_norm = nn;
                best = static_cast<int>(c);
            }
        }
        if (best < 0 || best_norm < 1e-6)
            throw NumericalError("frame construction ran out of independent directions");
        CVector u = cand[static_cast<std::size_t>(best)] / best_norm;
        for (auto& v : cand) v -= real_inner(v, u) * u;
        out.push_back(u);
    }
    return out;
}

double sq(double x) { return x * x; }

} // namespace

double real_inner(const CVector& a, const CVector& b) { return a.dot(b).real(); }

double real_inner(const Complex& a, const Complex& b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

SpherePoint::SpherePoint(int n, CVector p) : n_(n), p_(std::move(p)) {
    if (n_ < 4) throw InvalidArgument("sphere points need n >= 4 (got n = " + std::to_string(n_) + ")");
    if (p_.size() != n_ + 1)
        throw InvalidArgument("sphere point needs n+1 complex components");
    if (!p_.allFinite()) throw InvalidArgument("sphere point has non-finite entries");
    if (std::abs(p_.norm() - 1.0) > kPointTol)
        throw InvalidArgument("sphere point is not unit: |p| = " + std::to_string(p_.norm()));
}

TangentVector::TangentVector(SpherePoint base, CVector x) : base_(std::move(base)), x_(std::move(x)) {
    if (x_.size() != base_.vec().size())
        throw InvalidArgument("tangent vector dimension mismatch");
    if (!x_.allFinite()) throw InvalidArgument("tangent vector has non-finite entries");
    double defect = std::abs(real_inner(x_, base_.vec()));
    if (defect > kPointTol * std::max(1.0, x_.norm()))
        throw InvalidArgument("vector is not tangent: <x, p> = " + std::to_string(defect));
}

TangentVector project_tangent(const SpherePoint& p, const CVector& v) {
    CVector x = v - real_inner(v, p.vec()) * p.vec();
    return TangentVector(p, std::move(x));
}

TangentVector project_hopf_horizontal(const SpherePoint& p, const CVector& v) {
    CVector ip = kI * p.vec();
    CVector x = v - real_inner(v, p.vec()) * p.vec() - real_inner(v, ip) * ip;
    return TangentVector(p, std::move(x));
}

SpherePoint torus_act(double a, double b, const SpherePoint& p) {
    CVector out = p.vec();
    out(p.n() - 1) *= std::polar(1.0, a);
    out(p.n()) *= std::polar(1.0, b);
    return SpherePoint(p.n(), std::move(out));
}

TangentVector torus_push(double a, double b, const TangentVector& X) {
    SpherePoint base = torus_act(a, b, X.base());
    CVector out = X.vec();
    out(base.n() - 1) *= std::polar(1.0, a);
    out(base.n()) *= std::polar(1.0, b);
    return TangentVector(std::move(base), std::move(out));
}

TangentVector z_star(const ZVector& Z, const SpherePoint& p) {
    CVector x = CVector::Zero(p.n() + 1);
    x(p.n() - 1) = Z.z1 * kI * p.r();
    x(p.n()) = Z.z2 * kI * p.s();
    return TangentVector(p, std::move(x));
}

TangentVector z_star_hopf_horizontal(int k, const SpherePoint& p) {
    if (k != 1 && k != 2) throw InvalidArgument("z_star_hopf_horizontal: k must be 1 or 2");
    CVector x = CVector::Zero(p.n() + 1);
    double coeff;
    if (k == 1) {
        x(p.n() - 1) = kI * p.r();
        coeff = std::norm(p.r());
    } else {
        x(p.n()) = kI * p.s();
        coeff = std::norm(p.s());
    }
    x -= coeff * (kI * p.vec());
    return TangentVector(p, std::move(x));
}

namespace {

// shared kernels on raw views; q is the first n-1 slots of the ambient point
ZValuedCovector lambda_kernel(const JMapPair& j, const CVector& q, const CVector& xq) {
    CVector j1q = j.jZ1() * q;
    CVector j2q = j.jZ2() * q;
    return {real_inner(j1q, xq), real_inner(j2q, xq)};
}

ZValuedCovector eta_kernel(const JMapPair& j, const CVector& q, const CVector& xq) {
    double qq = q.squaredNorm();
    CVector iq = kI * q;
    CVector j1q = j.jZ1() * q;
    CVector j2q = j.jZ2() * q;
    double iq_x = real_inner(iq, xq);
    return {qq * real_inner(j1q, xq) - real_inner(j1q, iq) * iq_x,
            qq * real_inner(j2q, xq) - real_inner(j2q, iq) * iq_x};
}

void check_j_dim(const JMapPair& j, int qdim) {
    if (j.m() != qdim)
        throw InvalidArgument("j map acts on C^" + std::to_string(j.m()) +
                              " but the q block has dimension " + std::to_string(qdim));
}

} // namespace

ZValuedCovector lambda_form(const JMapPair& j, const SpherePoint& p, const TangentVector& X) {
    check_j_dim(j, p.n() - 1);
    return lambda_kernel(j, p.q(), X.q());
}

ZValuedCovector eta_form(const JMapPair& j, const SpherePoint& p, const TangentVector& X) {
    check_j_dim(j, p.n() - 1);
    return eta_kernel(j, p.q(), X.q());
}

ZValuedCovector lambda_form_ambient(const JMapPair& j, const CVector& p, const CVector& x) {
    check_j_dim(j, static_cast<int>(p.size()) - 2);
    return lambda_kernel(j, p.head(p.size() - 2), x.head(x.size() - 2));
}

ZValuedCovector eta_form_ambient(const JMapPair& j, const CVector& p, const CVector& x) {
    check_j_dim(j, static_cast<int>(p.size()) - 2);
    return eta_kernel(j, p.head(p.size() - 2), x.head(x.size() - 2));
}

ZValuedCovector horizontalize(const FormEvaluator& form, const SpherePoint& p,
                              const TangentVector& X, const TangentVector& F1,
                              const TangentVector& F2) {
    double g11 = real_inner(F1.vec(), F1.vec());
    double g22 = real_inner(F2.vec(), F2.vec());
    double g12 = real_inner(F1.vec(), F2.vec());
    double wedge = g11 * g22 - g12 * g12; // |F1 ^ F2|^2
    if (wedge <= sq(kOrbitTol))
        throw InvalidArgument("horizontalize: degenerate frame, |F1 ^ F2|^2 = " +
                              std::to_string(wedge));

    double x1 = real_inner(X.vec(), F1.vec());
    double x2 = real_inner(X.vec(), F2.vec());
    // <X ^ F2, F1 ^ F2> and <F1 ^ X, F1 ^ F2>
    double a1 = x1 * g22 - x2 * g12;
    double a2 = g11 * x2 - g12 * x1;

    ZValuedCovector fX = form(p, X);
    ZValuedCovector f1 = form(p, F1);
    ZValuedCovector f2 = form(p, F2);
    return {wedge * fX.c1 - a1 * f1.c1 - a2 * f2.c1, wedge * fX.c2 - a1 * f1.c2 - a2 * f2.c2};
}

namespace {

ZValuedCovector d_eta_kernel(const JMapPair& j, const CVector& q, const CVector& xq,
                             const CVector& yq, bool include_radial_terms) {
    double qq = q.squaredNorm();
    CVector iq = kI * q;
    double iq_x = real_inner(iq, xq);
    double iq_y = real_inner(iq, yq);
    double ix_y = real_inner(kI * xq, yq);
    double x_q = real_inner(xq, q);
    double y_q = real_inner(yq, q);

    ZValuedCovector out;
    for (int k = 1; k <= 2; ++k) {
        const CMatrix& jk = (k == 1) ? j.jZ1() : j.jZ2();
        CVector jq = jk * q;
        CVector jx = jk * xq;
        CVector jy = jk * yq;
        double val = 2.0 * qq * real_inner(jx, yq) - 2.0 * real_inner(jx, iq) * iq_y +
                     2.0 * real_inner(jy, iq) * iq_x - 2.0 * real_inner(jq, iq) * ix_y;
        if (include_radial_terms)
            val += 2.0 * x_q * real_inner(jq, yq) - 2.0 * y_q * real_inner(jq, xq);
        (k == 1 ? out.c1 : out.c2) = val;
    }
    return out;
}

} // namespace

ZValuedCovector d_eta(const JMapPair& j, const SpherePoint& p, const TangentVector& X,
                      const TangentVector& Y) {
    check_j_dim(j, p.n() - 1);
    return d_eta_kernel(j, p.q(), X.q(), Y.q(), true);
}

ZValuedCovector d_eta_restricted(const JMapPair& j, const SpherePoint& p, const TangentVector& X,
                                 const TangentVector& Y) {
    check_j_dim(j, p.n() - 1);
    return d_eta_kernel(j, p.q(), X.q(), Y.q(), false);
}

ZValuedCovector omega0_ambient(const CVector& p, const CVector& x) {
    const auto n = p.size() - 1;
    Complex r = p(n - 1), s = p(n);
    double rr = std::norm(r), ss = std::norm(s);
    if (rr < sq(kOrbitTol) || ss < sq(kOrbitTol))
        throw InvalidArgument("omega0: degenerate orbit (r or s vanishes)");
    return {real_inner(x(n - 1), kI * r) / (rr * (1.0 - rr)),
            real_inner(x(n), kI * s) / (ss * (1.0 - ss))};
}

ZValuedCovector omega0(const SpherePoint& p, const TangentVector& X) {
    return omega0_ambient(p.vec(), X.vec());
}

// --- real projective quotients ----------------------------------------------

RpPoint::RpPoint(CVector p, Complex q) : p_(std::move(p)), q_(q) {
    if (p_.size() < 3) throw InvalidArgument("rp points need m >= 3");
    if (!p_.allFinite() || !std::isfinite(q_.real()) || !std::isfinite(q_.imag()))
        throw InvalidArgument("rp point has non-finite entries");
    double norm = std::sqrt(p_.squaredNorm() + std::norm(q_));
    if (std::abs(norm - 1.0) > kPointTol)
        throw InvalidArgument("rp point is not unit: |(p,q)| = " + std::to_string(norm));
}

RpTangent::RpTangent(RpPoint base, CVector xp, Complex xq)
    : base_(std::move(base)), xp_(std::move(xp)), xq_(xq) {
    if (xp_.size() != base_.p().size()) throw InvalidArgument("rp tangent dimension mismatch");
    double defect = std::abs(real_inner(xp_, base_.p()) + real_inner(xq_, base_.q()));
    double scale = std::max(1.0, std::sqrt(xp_.squaredNorm() + std::norm(xq_)));
    if (defect > kPointTol * scale)
        throw InvalidArgument("rp vector is not tangent: <x, p> = " + std::to_string(defect));
}

RpPoint rp_antipode(const RpPoint& pt) { return RpPoint(-pt.p(), -pt.q()); }

RpTangent rp_antipode_push(const RpTangent& X) {
    return RpTangent(rp_antipode(X.base()), -X.xp(), -X.xq());
}

RpTangent rp_project_tangent(const RpPoint& pt, const CVector& vp, const Complex& vq) {
    double c = real_inner(vp, pt.p()) + real_inner(vq, pt.q());
    return RpTangent(pt, vp - c * pt.p(), vq - c * pt.q());
}

RpTangent rp_z_star(const ZVector& Z, const RpPoint& pt) {
    return RpTangent(pt, Z.z1 * (kI * pt.p()), Z.z2 * kI * pt.q());
}

ZValuedCovector rp_lambda(const JMapPair& j, const RpPoint& pt, const RpTangent& X) {
    if (j.m() != pt.m())
        throw InvalidArgument("rp_lambda: j acts on C^" + std::to_string(j.m()) +
                              " but the point lives in C^" + std::to_string(pt.m()) + " (+) C");
    double pp = pt.p().squaredNorm();
    CVector ip = kI * pt.p();
    double x_ip = real_inner(X.xp(), ip);
    CVector j1p = j.jZ1() * pt.p();
    CVector j2p = j.jZ2() * pt.p();
    return {pp * real_inner(j1p, X.xp()) - x_ip * real_inner(j1p, ip),
            pp * real_inner(j2p, X.xp()) - x_ip * real_inner(j2p, ip)};
}

// --- frames ------------------------------------------------------------------

std::vector<TangentVector> tangent_frame(const SpherePoint& p) {
    auto basis = orthonormal_complement({p.vec()}, p.n() + 1, 2 * p.n() + 1);
    std::vector<TangentVector> out;
    out.reserve(basis.size());
    for (auto& v : basis) out.emplace_back(p, std::move(v));
    return out;
}

std::vector<TangentVector> hopf_horizontal_frame(const SpherePoint& p) {
    auto basis = orthonormal_complement({p.vec(), kI * p.vec()}, p.n() + 1, 2 * p.n());
    std::vector<TangentVector> out;
    out.reserve(basis.size());
    for (auto& v : basis) out.emplace_back(p, std::move(v));
    return out;
}

std::vector<RpTangent> rp_tangent_frame(const RpPoint& pt) {
    const int m = pt.m();
    CVector full(m + 1);
    full.head(m) = pt.p();
    full(m) = pt.q();
    auto basis = orthonormal_complement({full}, m + 1, 2 * m + 1);
    std::vector<RpTangent> out;
    out.reserve(basis.size());
    for (auto& v : basis) out.emplace_back(pt, v.head(m), v(m));
    return out;
}

} // namespace isospec
