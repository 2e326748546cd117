#include "isospec/jmaps.hpp"

#include <Eigen/Eigenvalues>
#include <cassert>
#include <cmath>
#include <sstream>

namespace isospec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Orthonormal eigenbasis of a skew-hermitian S via the hermitian matrix iS.
// Returns (V, h) with S V = V diag(i*h) and h ascending, which is exactly the
// (imag, real) lexicographic order used for eigenvalue multisets.
std::pair<CMatrix, RVector> skew_hermitian_eigs(const CMatrix& S) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(Complex(0.0, 1.0) * S);
    if (es.info() != Eigen::Success) {
        std::ostringstream os;
        os.precision(17);
        os << "eigensolver failed on\n" << S;
        throw NumericalError(os.str());
    }
    // eigenvalue of S is -i*lambda, so ascending lambda means descending imag;
    // flip to get the (imag, real) ascending order used everywhere else
    const int m = static_cast<int>(S.rows());
    CMatrix V(m, m);
    RVector h(m);
    for (int k = 0; k < m; ++k) {
        V.col(k) = es.eigenvectors().col(m - 1 - k);
        h(k) = -es.eigenvalues()(m - 1 - k); // eigenvalue of S is i*h(k), h ascending
    }
    return {V, h};
}

} // namespace

JMapPair::JMapPair(CMatrix jZ1, CMatrix jZ2) : jz1_(std::move(jZ1)), jz2_(std::move(jZ2)) {
    SuElement a(jz1_);
    SuElement b(jz2_);
    if (a.dim() != b.dim()) throw InvalidArgument("jZ1 and jZ2 must have equal dimensions");
    if (a.dim() < 3) throw InvalidArgument("j maps need m >= 3");
}

CMatrix JMapPair::evaluate(const ZVector& Z) const {
    CMatrix M = Z.z1 * jz1_ + Z.z2 * jz2_;
    // real combinations of su elements stay in su exactly
    assert((M + M.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + M.cwiseAbs().maxCoeff()));
    return M;
}

JMapPair schueth_family(double t) {
    const double u = std::sin(t);
    const double v = std::sqrt(2.0) * std::sin(t);
    const double w = std::sqrt(3.0) * std::cos(t);

    CMatrix K = CMatrix::Zero(3, 3);
    K(0, 1) = Complex(u, 0);
    K(1, 0) = Complex(-u, 0);
    K(1, 2) = Complex(v, 0);
    K(2, 1) = Complex(-v, 0);
    K(0, 2) = Complex(w, 0);
    K(2, 0) = Complex(-w, 0);

    CMatrix D = CMatrix::Zero(3, 3);
    D(0, 0) = Complex(0, 4);
    D(1, 1) = Complex(0, 1);
    D(2, 2) = Complex(0, -5);

    return JMapPair(K, D);
}

IsospectralResult is_isospectral_pair(const JMapPair& j, const JMapPair& j2, int z_samples,
                                      double tol) {
    if (j.m() != j2.m()) throw InvalidArgument("is_isospectral_pair: dimension mismatch");
    if (z_samples < 1) throw InvalidArgument("is_isospectral_pair: need z_samples >= 1");

    IsospectralResult res;
    res.isospectral = true;
    for (int k = 0; k < z_samples; ++k) {
        double theta = kPi * static_cast<double>(k) / static_cast<double>(z_samples);
        ZVector Z{std::cos(theta), std::sin(theta)};
        double d = multiset_distance(eigenvalue_multiset(j.evaluate(Z)),
                                     eigenvalue_multiset(j2.evaluate(Z)));
        res.max_residual = std::max(res.max_residual, d);
    }
    res.isospectral = res.max_residual <= tol;
    return res;
}

double equivalence_obstruction(const JMapPair& j) {
    CMatrix S = j.jZ1() * j.jZ1() + j.jZ2() * j.jZ2();
    Complex tr = (S * S).trace();
    if (std::abs(tr.imag()) > 1e-12 * (1.0 + std::abs(tr.real())))
        throw NumericalError("equivalence obstruction came out non-real: imag " +
                             std::to_string(tr.imag()));
    return tr.real();
}

bool is_generic(const JMapPair& j, double rank_tol) {
    return commutant_dimension(j.jZ1(), j.jZ2(), rank_tol) == 0;
}

CMatrix conjugator_for(const JMapPair& j, const JMapPair& j2, const ZVector& Z, double gap_tol) {
    if (j.m() != j2.m()) throw InvalidArgument("conjugator_for: dimension mismatch");
    const int m = j.m();

    auto [V1, h1] = skew_hermitian_eigs(j.evaluate(Z));
    auto [V2, h2] = skew_hermitian_eigs(j2.evaluate(Z));

    for (int k = 0; k + 1 < m; ++k)
        if (h1(k + 1) - h1(k) <= gap_tol)
            throw DegenerateSpectrum("conjugator_for: eigenvalue gap " +
                                     std::to_string(h1(k + 1) - h1(k)) + " at Z = (" +
                                     std::to_string(Z.z1) + ", " + std::to_string(Z.z2) + ")");
    double mismatch = (h1 - h2).cwiseAbs().maxCoeff();
    if (mismatch > kPairTol * (1.0 + h1.cwiseAbs().maxCoeff()))
        throw NumericalError("conjugator_for: eigenvalue multisets differ by " +
                             std::to_string(mismatch));

    // matched eigenbases conjugate one diagonalization onto the other; the
    // column phases drop out because diagonal phases commute with the
    // eigenvalue matrix
    CMatrix A = V2 * V1.adjoint();

    // rotate det(A) (a unit-modulus number) to 1 so A lands in SU(m)
    Complex det = A.determinant();
    A *= std::polar(1.0, -std::arg(det) / static_cast<double>(m));

    double residual = (j2.evaluate(Z) - A * j.evaluate(Z) * A.adjoint()).cwiseAbs().maxCoeff();
    if (residual > 1e-8)
        throw NumericalError("conjugator_for: conjugation residual " + std::to_string(residual));
    return A;
}

const std::array<SignedPermutation, 8>& signed_permutation_group() {
    static const std::array<SignedPermutation, 8> group = [] {
        std::array<SignedPermutation, 8> g{};
        int idx = 0;
        for (int swap = 0; swap < 2; ++swap)
            for (int s1 = -1; s1 <= 1; s1 += 2)
                for (int s2 = -1; s2 <= 1; s2 += 2) {
                    SignedPermutation P;
                    if (swap == 0) {
                        P.e = {{{s1, 0}, {0, s2}}};
                    } else {
                        P.e = {{{0, s2}, {s1, 0}}};
                    }
                    g[static_cast<std::size_t>(idx++)] = P;
                }
        return g;
    }();
    return group;
}

InvariantProfile equivalence_invariant_profile(const JMapPair& j) {
    InvariantProfile prof;
    prof.obstruction = equivalence_obstruction(j);
    const auto& group = signed_permutation_group();
    for (std::size_t k = 0; k < group.size(); ++k) {
        ZVector b1 = group[k].apply(ZVector{1.0, 0.0});
        ZVector b2 = group[k].apply(ZVector{0.0, 1.0});
        prof.spectra[k] = {eigenvalue_multiset(j.evaluate(b1)), eigenvalue_multiset(j.evaluate(b2))};
    }
    return prof;
}

bool profiles_consistent(const InvariantProfile& a, const InvariantProfile& b, double tol) {
    if (std::abs(a.obstruction - b.obstruction) > tol * (1.0 + std::abs(b.obstruction)))
        return false;
    // b's identity slot is index 3 by construction order (s1 = s2 = +1, no
    // swap); recompute defensively instead of relying on that
    const auto& group = signed_permutation_group();
    std::size_t id_slot = 0;
    for (std::size_t k = 0; k < group.size(); ++k)
        if (group[k].e[0][0] == 1 && group[k].e[1][1] == 1 && group[k].e[0][1] == 0 &&
            group[k].e[1][0] == 0)
            id_slot = k;

    for (std::size_t k = 0; k < group.size(); ++k) {
        double d1 = multiset_distance(a.spectra[k].first, b.spectra[id_slot].first);
        double d2 = multiset_distance(a.spectra[k].second, b.spectra[id_slot].second);
        if (std::max(d1, d2) <= tol) return true;
    }
    return false;
}

} // namespace isospec
