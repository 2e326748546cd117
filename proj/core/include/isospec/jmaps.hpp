#pragma once

#include <array>
#include <utility>
#include <vector>

#include "isospec/mat.hpp"

namespace isospec {

// Tolerances owned by this layer.
inline constexpr double kPairTol = 1e-9; // eigenvalue multiset match
inline constexpr double kGapTol = 1e-8;  // simple-spectrum gap for conjugators

// Element of the plane z the maps are defined on, written in the fixed basis
// (Z1, Z2).
struct ZVector {
    double z1 = 0.0;
    double z2 = 0.0;
};

// Linear map z -> su(m), stored through its values on the basis:
// evaluate((a,b)) = a*jZ1 + b*jZ2. Both generators are validated as su(m).
class JMapPair {
public:
    JMapPair(CMatrix jZ1, CMatrix jZ2);

    CMatrix evaluate(const ZVector& Z) const;
    const CMatrix& jZ1() const { return jz1_; }
    const CMatrix& jZ2() const { return jz2_; }
    int m() const { return static_cast<int>(jz1_.rows()); }

private:
    CMatrix jz1_, jz2_;
};

// The one-parameter family: jZ2 = diag(4i, i, -5i) fixed, and
//   jZ1(t) = [ 0   u   w ]      (u, v, w) = (sin t, sqrt(2) sin t, sqrt(3) cos t)
//            [-u   0   v ]
//            [-w  -v   0 ]
// chosen so that |u|^2+|v|^2+|w|^2 = 3 and 4|v|^2 - 5|u|^2 + |w|^2 = 3 hold for
// every t, which makes det(a*jZ1(t) + b*jZ2) independent of t.
JMapPair schueth_family(double t);

struct IsospectralResult {
    bool isospectral = false;
    double max_residual = 0.0; // worst matched-eigenvalue distance over the Z grid
};

// Samples Z on the unit half-circle (theta_k = pi*k/z_samples, k < z_samples)
// and compares eigenvalue multisets of j(Z) and j2(Z). Scaling Z is immaterial
// because eigenvalues are homogeneous in Z.
IsospectralResult is_isospectral_pair(const JMapPair& j, const JMapPair& j2, int z_samples = 64,
                                      double tol = kPairTol);

// tr((jZ1^2 + jZ2^2)^2): invariant under simultaneous unitary conjugation,
// entrywise conjugation, and the signed basis swaps of z, so it separates
// equivalence classes. The value is real for su inputs (checked at 1e-12).
double equivalence_obstruction(const JMapPair& j);

// A pair is generic when nothing in su(m) commutes with both generators.
bool is_generic(const JMapPair& j, double rank_tol = kRankTol);

// Unitary A with j2(Z) = A j(Z) A^H, normalized to det A = 1. Requires the
// spectrum of j(Z) to be simple (gaps > gap_tol) and the two multisets to
// match; built by pairing the sorted orthonormal eigenbases. Residual of the
// conjugation identity is verified at 1e-8 before returning.
CMatrix conjugator_for(const JMapPair& j, const JMapPair& j2, const ZVector& Z,
                       double gap_tol = kGapTol);

// The 8 signed permutations of {+-Z1, +-Z2}: the allowed basis changes of z in
// the equivalence relation. Entries are -1/0/+1; columns are images of Z1, Z2.
struct SignedPermutation {
    std::array<std::array<int, 2>, 2> e{};

    ZVector apply(const ZVector& Z) const {
        return ZVector{e[0][0] * Z.z1 + e[0][1] * Z.z2, e[1][0] * Z.z1 + e[1][1] * Z.z2};
    }
};

const std::array<SignedPermutation, 8>& signed_permutation_group();

// Obstruction value plus, for every Psi in the group, the eigenvalue multisets
// of j_{Psi(Z1)} and j_{Psi(Z2)}. Two pairs related by unitary conjugation,
// conjugation, and a basis swap must have profiles matching under some Psi.
struct InvariantProfile {
    double obstruction = 0.0;
    std::array<std::pair<std::vector<Complex>, std::vector<Complex>>, 8> spectra;
};

InvariantProfile equivalence_invariant_profile(const JMapPair& j);

// True when profile a (composed with some Psi) matches profile b's identity
// slot within tol. Returning false certifies non-equivalence evidence.
bool profiles_consistent(const InvariantProfile& a, const InvariantProfile& b, double tol = kPairTol);

} // namespace isospec
