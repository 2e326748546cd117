#include "isospec/sampling.hpp"

#include <cmath>

namespace isospec {

namespace {
const Complex kI(0.0, 1.0);

CVector gaussian_cvector(StreamRng& rng, int d) {
    CVector v(d);
    for (int k = 0; k < d; ++k) v(k) = Complex(rng.normal(), rng.normal());
    return v;
}
} // namespace

CVector sample_unit_cvector(StreamRng& rng, int d) {
    for (;;) {
        CVector v = gaussian_cvector(rng, d);
        double norm = v.norm();
        if (norm > 1e-6) return v / norm;
    }
}

SpherePoint sample_sphere_point(StreamRng& rng, int n) {
    return SpherePoint(n, sample_unit_cvector(rng, n + 1));
}

SpherePoint sample_m_hat_point(StreamRng& rng, int n, double min_block) {
    for (;;) {
        CVector v = sample_unit_cvector(rng, n + 1);
        double nq = v.head(n - 1).norm();
        double nr = std::abs(v(n - 1));
        double ns = std::abs(v(n));
        if (nq >= min_block && nr >= min_block && ns >= min_block)
            return SpherePoint(n, std::move(v));
    }
}

SpherePoint sample_level_point(StreamRng& rng, int n, double a) {
    if (!(a > 0.0) || !(a < 0.7071067811865476))
        throw InvalidArgument("level sets need 0 < a < 1/sqrt(2)");
    CVector p(n + 1);
    double qnorm = std::sqrt(1.0 - 2.0 * a * a);
    p.head(n - 1) = qnorm * sample_unit_cvector(rng, n - 1);
    p(n - 1) = std::polar(a, 6.283185307179586 * rng.uniform());
    p(n) = std::polar(a, 6.283185307179586 * rng.uniform());
    return SpherePoint(n, std::move(p));
}

TangentVector sample_tangent(StreamRng& rng, const SpherePoint& p) {
    return project_tangent(p, gaussian_cvector(rng, p.n() + 1));
}

TangentVector sample_hopf_horizontal(StreamRng& rng, const SpherePoint& p) {
    return project_hopf_horizontal(p, gaussian_cvector(rng, p.n() + 1));
}

TangentVector sample_level_tangent(StreamRng& rng, const SpherePoint& p) {
    const int n = p.n();
    double qq = p.q().squaredNorm();
    double rr = std::norm(p.r());
    double ss = std::norm(p.s());
    if (qq < 1e-4 || rr < 1e-8 || ss < 1e-8)
        throw InvalidArgument("level tangents need a point away from degenerate orbits");

    CVector v = gaussian_cvector(rng, n + 1);
    CVector x(n + 1);
    // kill the radial parts of each block: <X_q,q> = <X_r,r> = <X_s,s> = 0
    x.head(n - 1) = v.head(n - 1) - (real_inner(CVector(v.head(n - 1)), CVector(p.q())) / qq) * p.q();
    x(n - 1) = v(n - 1) - (real_inner(v(n - 1), p.r()) / rr) * p.r();
    x(n) = v(n) - (real_inner(v(n), p.s()) / ss) * p.s();
    // then the Hopf-vertical part, using the iq direction (keeps the three
    // block conditions intact because <iq, q> = 0)
    CVector ip = kI * p.vec();
    double beta = real_inner(x, ip);
    x.head(n - 1) -= (beta / qq) * (kI * p.q());
    return TangentVector(p, std::move(x));
}

RpPoint sample_rp_point(StreamRng& rng, int m) {
    CVector v = sample_unit_cvector(rng, m + 1);
    return RpPoint(v.head(m), v(m));
}

RpTangent sample_rp_tangent(StreamRng& rng, const RpPoint& pt) {
    CVector v = gaussian_cvector(rng, pt.m());
    Complex vq(rng.normal(), rng.normal());
    return rp_project_tangent(pt, v, vq);
}

} // namespace isospec
