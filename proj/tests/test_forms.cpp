#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isospec/forms.hpp"
#include "isospec/jmaps.hpp"
#include "isospec/rng.hpp"
#include "isospec/sampling.hpp"

using namespace isospec;

namespace {

constexpr double pi = std::numbers::pi;

// q = (1/2, i/2, 0), r = s = 1/2: a unit point of S^9 with |q|^2 = 1/2 and
// both orbit radii 1/2, small enough to work out the forms by hand.
SpherePoint hand_point() {
    CVector p(5);
    p << Complex(0.5, 0), Complex(0, 0.5), Complex(0, 0), Complex(0.5, 0), Complex(0.5, 0);
    return SpherePoint(4, p);
}

} // namespace

TEST_CASE("point and tangent validation") {
    CHECK_THROWS_AS(SpherePoint(4, CVector::Zero(5)), InvalidArgument);   // not unit
    CHECK_THROWS_AS(SpherePoint(4, CVector::Ones(4)), InvalidArgument);   // wrong size
    CVector e = CVector::Zero(4);
    e(0) = 1.0;
    CHECK_THROWS_AS(SpherePoint(3, e), InvalidArgument);                  // n too small

    const SpherePoint p = hand_point();
    CHECK_THROWS_AS(TangentVector(p, p.vec()), InvalidArgument);          // radial
    CHECK_NOTHROW(TangentVector(p, Complex(0, 1) * p.vec()));             // vertical is fine
}

TEST_CASE("real inner product convention") {
    CVector a(2), b(2);
    a << Complex(1, 2), Complex(0, -1);
    b << Complex(3, -1), Complex(2, 2);
    // sum of Re(a_i conj(b_i)) = (1*3 + 2*(-1)) + (0*2 + (-1)*2)
    CHECK(real_inner(a, b) == doctest::Approx(1.0 - 2.0).epsilon(1e-15));
    CHECK(real_inner(a, b) == real_inner(b, a));
}

TEST_CASE("projections produce tangent and horizontal vectors") {
    StreamRng rng(5, 0);
    for (int trial = 0; trial < 32; ++trial) {
        const SpherePoint p = sample_sphere_point(rng, 4);
        CVector raw(5);
        for (int k = 0; k < 5; ++k) raw(k) = Complex(rng.normal(), rng.normal());
        const TangentVector t = project_tangent(p, raw);
        CHECK(std::abs(real_inner(t.vec(), p.vec())) < 1e-14);
        const TangentVector h = project_hopf_horizontal(p, raw);
        CHECK(std::abs(real_inner(h.vec(), p.vec())) < 1e-14);
        CHECK(std::abs(real_inner(h.vec(), (Complex(0, 1) * p.vec()).eval())) < 1e-14);
        // projecting twice changes nothing
        const TangentVector h2 = project_hopf_horizontal(p, h.vec());
        CHECK((h2.vec() - h.vec()).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("orbit fields have the displayed block structure") {
    const SpherePoint p = hand_point();
    const TangentVector z1 = z_star(ZVector{1.0, 0.0}, p);
    CHECK(z1.q().cwiseAbs().maxCoeff() == 0.0);
    CHECK(z1.r() == Complex(0, 0.5)); // i r
    CHECK(z1.s() == Complex(0, 0));
    const TangentVector z2 = z_star(ZVector{0.0, 1.0}, p);
    CHECK(z2.r() == Complex(0, 0));
    CHECK(z2.s() == Complex(0, 0.5)); // i s

    const TangentVector h1 = z_star_hopf_horizontal(1, p);
    const CVector expected1 = z1.vec() - 0.25 * (Complex(0, 1) * p.vec());
    CHECK((h1.vec() - expected1).cwiseAbs().maxCoeff() < 1e-16);
    CHECK(std::abs(real_inner(h1.vec(), (Complex(0, 1) * p.vec()).eval())) < 1e-16);
}

TEST_CASE("lambda and eta at a hand-computed point") {
    const SpherePoint p = hand_point();
    const JMapPair j = schueth_family(0.0);
    CVector xv = CVector::Zero(5);
    xv(2) = 1.0; // q_3 direction, tangent because q_3 = 0
    const TangentVector X(p, xv);

    const ZValuedCovector lam = lambda_form(j, p, X);
    CHECK(lam.c1 == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CHECK(lam.c2 == doctest::Approx(0.0).epsilon(1e-14));

    const ZValuedCovector eta = eta_form(j, p, X);
    CHECK(eta.c1 == doctest::Approx(-std::sqrt(3.0) / 4.0).epsilon(1e-14));
    CHECK(eta.c2 == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("ambient evaluators agree with the validated ones on the sphere") {
    StreamRng rng(6, 0);
    const JMapPair j = schueth_family(1.1);
    for (int trial = 0; trial < 32; ++trial) {
        const SpherePoint p = sample_sphere_point(rng, 4);
        const TangentVector X = sample_tangent(rng, p);
        const ZValuedCovector a = lambda_form(j, p, X);
        const ZValuedCovector b = lambda_form_ambient(j, p.vec(), X.vec());
        CHECK(a.c1 == b.c1);
        CHECK(a.c2 == b.c2);
        const ZValuedCovector c = eta_form(j, p, X);
        const ZValuedCovector d = eta_form_ambient(j, p.vec(), X.vec());
        CHECK(c.c1 == d.c1);
        CHECK(c.c2 == d.c2);
    }
}

TEST_CASE("horizontalization annihilates the frame and factors through eta") {
    StreamRng rng(8, 0);
    const JMapPair j = schueth_family(0.9);
    const auto lam = [&](const SpherePoint& q, const TangentVector& v) {
        return lambda_form(j, q, v);
    };
    for (int trial = 0; trial < 32; ++trial) {
        const SpherePoint p = sample_m_hat_point(rng, 4);
        const TangentVector F1 = z_star_hopf_horizontal(1, p);
        const TangentVector F2 = z_star_hopf_horizontal(2, p);

        const ZValuedCovector onF1 = horizontalize(lam, p, F1, F1, F2);
        const ZValuedCovector onF2 = horizontalize(lam, p, F2, F1, F2);
        CHECK(std::abs(onF1.c1) < 1e-14);
        CHECK(std::abs(onF1.c2) < 1e-14);
        CHECK(std::abs(onF2.c1) < 1e-14);
        CHECK(std::abs(onF2.c2) < 1e-14);

        // lambda horizontalized against the hopf-horizontal orbit frame is
        // |r|^2 |s|^2 eta on hopf-horizontal inputs
        const TangentVector X = sample_hopf_horizontal(rng, p);
        const ZValuedCovector lhs = horizontalize(lam, p, X, F1, F2);
        const double scale = std::norm(p.r()) * std::norm(p.s());
        const ZValuedCovector eta = eta_form(j, p, X);
        CHECK(std::abs(lhs.c1 - scale * eta.c1) < 1e-12);
        CHECK(std::abs(lhs.c2 - scale * eta.c2) < 1e-12);
    }
}

TEST_CASE("horizontalize rejects a degenerate frame") {
    const SpherePoint p = hand_point();
    const JMapPair j = schueth_family(0.9);
    const auto lam = [&](const SpherePoint& q, const TangentVector& v) {
        return lambda_form(j, q, v);
    };
    const TangentVector F1 = z_star_hopf_horizontal(1, p);
    CHECK_THROWS_AS(horizontalize(lam, p, F1, F1, F1), InvalidArgument);
}

TEST_CASE("exterior derivative of eta") {
    StreamRng rng(9, 0);
    const JMapPair j = schueth_family(0.6);

    SUBCASE("antisymmetry") {
        for (int trial = 0; trial < 16; ++trial) {
            const SpherePoint p = sample_sphere_point(rng, 4);
            const TangentVector X = sample_tangent(rng, p);
            const TangentVector Y = sample_tangent(rng, p);
            const ZValuedCovector ab = d_eta(j, p, X, Y);
            const ZValuedCovector ba = d_eta(j, p, Y, X);
            CHECK(ab.c1 == doctest::Approx(-ba.c1).epsilon(1e-14));
            CHECK(ab.c2 == doctest::Approx(-ba.c2).epsilon(1e-14));
        }
    }

    SUBCASE("matches central finite differences of the ambient extension") {
        const double h = 1e-5;
        for (int trial = 0; trial < 32; ++trial) {
            const SpherePoint p = sample_sphere_point(rng, 4);
            const TangentVector X = sample_tangent(rng, p);
            const TangentVector Y = sample_tangent(rng, p);
            const auto at = [&](const CVector& base, const CVector& dir) {
                return eta_form_ambient(j, base, dir);
            };
            const ZValuedCovector ya = at(p.vec() + h * X.vec(), Y.vec());
            const ZValuedCovector yb = at(p.vec() - h * X.vec(), Y.vec());
            const ZValuedCovector xa = at(p.vec() + h * Y.vec(), X.vec());
            const ZValuedCovector xb = at(p.vec() - h * Y.vec(), X.vec());
            const double fd1 = (ya.c1 - yb.c1 - xa.c1 + xb.c1) / (2 * h);
            const double fd2 = (ya.c2 - yb.c2 - xa.c2 + xb.c2) / (2 * h);
            const ZValuedCovector closed = d_eta(j, p, X, Y);
            CHECK(std::abs(fd1 - closed.c1) / std::max(1.0, std::abs(closed.c1)) < 1e-6);
            CHECK(std::abs(fd2 - closed.c2) / std::max(1.0, std::abs(closed.c2)) < 1e-6);
        }
    }

    SUBCASE("four-term restriction agrees on level-set tangents") {
        for (int trial = 0; trial < 32; ++trial) {
            const double a = 0.15 + 0.45 * rng.uniform();
            const SpherePoint p = sample_level_point(rng, 4, a);
            const TangentVector X = sample_level_tangent(rng, p);
            const TangentVector Y = sample_level_tangent(rng, p);
            const ZValuedCovector full = d_eta(j, p, X, Y);
            const ZValuedCovector restricted = d_eta_restricted(j, p, X, Y);
            CHECK(std::abs(full.c1 - restricted.c1) < 1e-10);
            CHECK(std::abs(full.c2 - restricted.c2) < 1e-10);
        }
    }
}

TEST_CASE("omega0 on the orbit frame: diagonal normalization, not the dual frame") {
    // The frame (Z_h1, Z_h2) is not orthogonal, so pairing Z_h1 into the
    // second slot picks up -|r|^2/(1-|s|^2). At |r|^2 = |s|^2 = 1/4 that is
    // -1/3; these values are pinned here on purpose.
    const SpherePoint p = hand_point();
    const ZValuedCovector w1 = omega0(p, z_star_hopf_horizontal(1, p));
    CHECK(w1.c1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w1.c2 == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    const ZValuedCovector w2 = omega0(p, z_star_hopf_horizontal(2, p));
    CHECK(w2.c1 == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(w2.c2 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("omega0 requires a nondegenerate orbit") {
    CVector v = CVector::Zero(5);
    v(0) = 1.0; // r = s = 0
    const SpherePoint p(4, v);
    const TangentVector X = project_hopf_horizontal(p, CVector::Unit(5, 1));
    CHECK_THROWS_AS(omega0(p, X), InvalidArgument);
}

TEST_CASE("finite-difference d omega0 vanishes on level-set tangent pairs") {
    StreamRng rng(10, 0);
    const double h = 1e-5;
    for (int trial = 0; trial < 32; ++trial) {
        const double a = 0.15 + 0.45 * rng.uniform();
        const SpherePoint p = sample_level_point(rng, 4, a);
        const TangentVector X = sample_level_tangent(rng, p);
        const TangentVector Y = sample_level_tangent(rng, p);
        const ZValuedCovector ya = omega0_ambient(p.vec() + h * X.vec(), Y.vec());
        const ZValuedCovector yb = omega0_ambient(p.vec() - h * X.vec(), Y.vec());
        const ZValuedCovector xa = omega0_ambient(p.vec() + h * Y.vec(), X.vec());
        const ZValuedCovector xb = omega0_ambient(p.vec() - h * Y.vec(), X.vec());
        CHECK(std::abs((ya.c1 - yb.c1 - xa.c1 + xb.c1) / (2 * h)) < 1e-6);
        CHECK(std::abs((ya.c2 - yb.c2 - xa.c2 + xb.c2) / (2 * h)) < 1e-6);
    }
}

TEST_CASE("projective-space forms") {
    StreamRng rng(12, 0);
    const JMapPair j = schueth_family(0.7);

    SUBCASE("antipodal invariance is exact") {
        for (int trial = 0; trial < 32; ++trial) {
            const RpPoint pt = sample_rp_point(rng, 3);
            const RpTangent X = sample_rp_tangent(rng, pt);
            const ZValuedCovector a = rp_lambda(j, pt, X);
            const ZValuedCovector b = rp_lambda(j, rp_antipode(pt), rp_antipode_push(X));
            CHECK(a.c1 == b.c1); // negation is exact in floating point
            CHECK(a.c2 == b.c2);
        }
    }

    SUBCASE("vanishes on the orbit fields") {
        for (int trial = 0; trial < 32; ++trial) {
            const RpPoint pt = sample_rp_point(rng, 3);
            const ZVector Z{4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5)};
            const ZValuedCovector v = rp_lambda(j, pt, rp_z_star(Z, pt));
            CHECK(std::abs(v.c1) < 1e-14);
            CHECK(std::abs(v.c2) < 1e-14);
        }
    }

    SUBCASE("torus invariance") {
        for (int trial = 0; trial < 32; ++trial) {
            const RpPoint pt = sample_rp_point(rng, 3);
            const RpTangent X = sample_rp_tangent(rng, pt);
            const Complex ea = std::polar(1.0, 2 * pi * rng.uniform());
            const Complex eb = std::polar(1.0, 2 * pi * rng.uniform());
            const RpPoint pt2(ea * pt.p(), eb * pt.q());
            const RpTangent X2(pt2, ea * X.xp(), eb * X.xq());
            const ZValuedCovector a = rp_lambda(j, pt, X);
            const ZValuedCovector b = rp_lambda(j, pt2, X2);
            CHECK(std::abs(a.c1 - b.c1) < 1e-13);
            CHECK(std::abs(a.c2 - b.c2) < 1e-13);
        }
    }
}

TEST_CASE("frames are orthonormal and dimensionally correct") {
    StreamRng rng(13, 0);
    const SpherePoint p = sample_sphere_point(rng, 4);

    const auto tf = tangent_frame(p);
    REQUIRE(static_cast<int>(tf.size()) == 9);
    for (std::size_t i = 0; i < tf.size(); ++i)
        for (std::size_t k = 0; k <= i; ++k) {
            const double want = i == k ? 1.0 : 0.0;
            CHECK(std::abs(real_inner(tf[i].vec(), tf[k].vec()) - want) < 1e-12);
        }

    const auto hf = hopf_horizontal_frame(p);
    REQUIRE(static_cast<int>(hf.size()) == 8);
    const CVector vertical = Complex(0, 1) * p.vec();
    for (std::size_t i = 0; i < hf.size(); ++i) {
        CHECK(std::abs(real_inner(hf[i].vec(), vertical)) < 1e-12);
        for (std::size_t k = 0; k <= i; ++k) {
            const double want = i == k ? 1.0 : 0.0;
            CHECK(std::abs(real_inner(hf[i].vec(), hf[k].vec()) - want) < 1e-12);
        }
    }

    const RpPoint pt = sample_rp_point(rng, 3);
    CHECK(static_cast<int>(rp_tangent_frame(pt).size()) == 7);
}
