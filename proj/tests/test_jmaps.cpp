#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isospec/jmaps.hpp"
#include "isospec/mat.hpp"
#include "isospec/rng.hpp"

using namespace isospec;

namespace {

constexpr double pi = std::numbers::pi;

CMatrix padded4(const CMatrix& a3) {
    CMatrix a = CMatrix::Zero(4, 4);
    a.topLeftCorner(3, 3) = a3;
    return a;
}

} // namespace

TEST_CASE("family generators carry the pinned entries") {
    SUBCASE("t = 0") {
        const JMapPair j = schueth_family(0.0);
        CHECK(std::abs(j.jZ1()(0, 1)) == 0.0);                                 // sin 0
        CHECK(std::abs(j.jZ1()(1, 2)) == 0.0);                                 // sqrt2 sin 0
        CHECK(std::abs(j.jZ1()(0, 2) - std::sqrt(3.0)) < 1e-15);               // sqrt3 cos 0
        CHECK(std::abs(j.jZ2()(0, 0) - Complex(0, 4)) == 0.0);
        CHECK(std::abs(j.jZ2()(1, 1) - Complex(0, 1)) == 0.0);
        CHECK(std::abs(j.jZ2()(2, 2) - Complex(0, -5)) == 0.0);
    }
    SUBCASE("t = pi/2") {
        const JMapPair j = schueth_family(pi / 2);
        CHECK(std::abs(j.jZ1()(0, 1) - 1.0) < 1e-15);
        CHECK(std::abs(j.jZ1()(1, 2) - std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(j.jZ1()(0, 2)) < 1e-15);
        // skew
        CHECK((j.jZ1() + j.jZ1().adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("evaluate is linear in Z") {
    const JMapPair j = schueth_family(0.8);
    const CMatrix lhs = j.evaluate(ZVector{2.0, -3.0});
    const CMatrix rhs = 2.0 * j.jZ1() - 3.0 * j.jZ2();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("family characteristic polynomial does not depend on t") {
    // det(x - (a jZ1(t) + b jZ2)) = x^3 + (3a^2 + 21b^2) x - i(3 a^2 b + 20 b^3)
    for (int kt = 0; kt < 12; ++kt) {
        const JMapPair j = schueth_family(pi * kt / 11.0);
        for (int kz = 0; kz < 16; ++kz) {
            const double th = pi * kz / 16.0;
            const double a = std::cos(th), b = std::sin(th);
            const CharPoly cp = char_poly(j.evaluate(ZVector{a, b}));
            CHECK(std::abs(cp.coeffs[2]) < 1e-12);
            CHECK(std::abs(cp.coeffs[1] - Complex(3 * a * a + 21 * b * b, 0)) < 1e-12);
            CHECK(std::abs(cp.coeffs[0] - Complex(0, -(3 * a * a * b + 20 * b * b * b))) < 1e-12);
        }
    }
}

TEST_CASE("pairwise isospectrality over the Z half circle") {
    const JMapPair j = schueth_family(pi / 2);
    SUBCASE("family members are isospectral") {
        for (const double tp : {pi / 4, 1.0}) {
            const auto res = is_isospectral_pair(j, schueth_family(tp), 64);
            CHECK(res.isospectral);
            CHECK(res.max_residual < 1e-9);
        }
    }
    SUBCASE("a detuned diagonal breaks isospectrality") {
        CMatrix bad = CMatrix::Zero(3, 3);
        bad(0, 0) = Complex(0, 5);
        bad(2, 2) = Complex(0, -5);
        const JMapPair other(schueth_family(pi / 2).jZ1(), bad);
        const auto res = is_isospectral_pair(j, other, 64);
        CHECK_FALSE(res.isospectral);
        CHECK(res.max_residual > 0.5);
    }
}

TEST_CASE("trace obstruction closed form on the family") {
    CHECK(equivalence_obstruction(schueth_family(0.0)) == doctest::Approx(1146.0).epsilon(1e-12));
    CHECK(equivalence_obstruction(schueth_family(pi / 2)) == doctest::Approx(1038.0).epsilon(1e-12));
    CHECK(equivalence_obstruction(schueth_family(pi / 4)) == doctest::Approx(1092.0).epsilon(1e-12));
    for (int k = 0; k < 20; ++k) {
        const double t = pi * k / 19.0;
        const double expect = 1038.0 + 108.0 * std::cos(t) * std::cos(t);
        CHECK(std::abs(equivalence_obstruction(schueth_family(t)) - expect) < 1e-9);
    }
}

TEST_CASE("genericity locus of the family") {
    for (const double t : {pi / 6, pi / 3, pi / 2, 1.0}) CHECK(is_generic(schueth_family(t)));
    for (const double t : {0.0, pi}) CHECK_FALSE(is_generic(schueth_family(t)));
}

TEST_CASE("conjugators with simple spectrum") {
    const JMapPair j = schueth_family(pi / 2);
    const JMapPair j2 = schueth_family(pi / 4);
    StreamRng rng(3, 0);
    for (int trial = 0; trial < 24; ++trial) {
        const double th = pi * rng.uniform();
        const ZVector Z{std::cos(th), std::sin(th)};
        const CMatrix A = conjugator_for(j, j2, Z);
        CHECK((A * A.adjoint() - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(A.determinant() - Complex(1, 0)) < 1e-12);
        const CMatrix lhs = A * j.evaluate(Z) * A.adjoint();
        CHECK((lhs - j2.evaluate(Z)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("conjugator refuses a degenerate spectrum") {
    // the zero-padded family has a double zero eigenvalue in the jZ1 direction
    const JMapPair base = schueth_family(pi / 2);
    const JMapPair padded(padded4(base.jZ1()), padded4(base.jZ2()));
    CHECK_THROWS_AS(conjugator_for(padded, padded, ZVector{1.0, 0.0}), DegenerateSpectrum);
}

TEST_CASE("signed permutation group structure") {
    const auto& group = signed_permutation_group();
    REQUIRE(group.size() == 8);
    // each element: exactly one nonzero (+-1) per row and column
    for (const auto& g : group) {
        for (int r = 0; r < 2; ++r) {
            int nonzero = 0;
            for (int c = 0; c < 2; ++c)
                if (g.e[r][c] != 0) {
                    ++nonzero;
                    CHECK((g.e[r][c] == 1 || g.e[r][c] == -1));
                }
            CHECK(nonzero == 1);
        }
    }
    // all 8 are distinct
    for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t k = i + 1; k < group.size(); ++k) {
            const bool same = group[i].e == group[k].e;
            CHECK_FALSE(same);
        }
    // closed under composition
    for (const auto& g : group)
        for (const auto& h : group) {
            std::array<std::array<int, 2>, 2> prod{};
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    prod[r][c] = g.e[r][0] * h.e[0][c] + g.e[r][1] * h.e[1][c];
            bool found = false;
            for (const auto& cand : group) found = found || cand.e == prod;
            CHECK(found);
        }
}

TEST_CASE("invariant profiles distinguish and identify correctly") {
    const JMapPair j = schueth_family(pi / 2);
    const auto prof = equivalence_invariant_profile(j);

    SUBCASE("a pair is consistent with itself") {
        CHECK(profiles_consistent(prof, prof));
    }
    SUBCASE("family members with different obstruction are inconsistent") {
        CHECK_FALSE(profiles_consistent(prof, equivalence_invariant_profile(schueth_family(pi / 4))));
    }
    SUBCASE("unitary conjugation preserves the profile") {
        CMatrix u = CMatrix::Identity(3, 3);
        const double c = std::cos(0.7), s = std::sin(0.7);
        u(1, 1) = c;
        u(1, 2) = -s;
        u(2, 1) = s;
        u(2, 2) = c;
        const JMapPair conj(u * j.jZ1() * u.adjoint(), u * j.jZ2() * u.adjoint());
        CHECK(profiles_consistent(prof, equivalence_invariant_profile(conj)));
    }
    SUBCASE("a signed basis change preserves consistency") {
        const JMapPair flipped((-j.jZ1()).eval(), j.jZ2());
        CHECK(profiles_consistent(equivalence_invariant_profile(flipped), prof));
    }
}
