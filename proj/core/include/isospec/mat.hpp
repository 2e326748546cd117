#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "isospec/common.hpp"

namespace isospec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Tolerances owned by this layer.
inline constexpr double kSuTol = 1e-12;   // skew-hermitian / traceless membership
inline constexpr double kRankTol = 1e-9;  // relative singular-value cutoff for nullity

bool is_finite(const CMatrix& M);

// Throws InvalidArgument unless M is square with finite entries.
void validate_matrix(const CMatrix& M);

// Element of su(m): traceless skew-hermitian. Validation happens once, here;
// downstream code can then rely on M^H = -M exactly to tolerance.
class SuElement {
public:
    explicit SuElement(CMatrix M, double tol = kSuTol);

    const CMatrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

private:
    CMatrix m_;
};

// Monic characteristic polynomial det(lambda I - M).
// coeffs[k] multiplies lambda^k; coeffs[m] == 1.
struct CharPoly {
    std::vector<Complex> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double max_coeff_distance(const CharPoly& other) const;
};

// Coefficients by the Faddeev-LeVerrier trace recursion
//   M_1 = I,  c_{m-k} = -tr(A M_k)/k,  M_{k+1} = A M_k + c_{m-k} I.
// No eigenvalue solve is involved, so this is an algebraic route independent
// of eigenvalue_multiset and safe to compare coefficient-by-coefficient.
CharPoly char_poly(const CMatrix& M);

// Eigenvalues sorted lexicographically by (imag, real). Skew-hermitian inputs
// are routed through the self-adjoint solver on iM, which pins their real
// parts to exactly zero and keeps the sort deterministic.
std::vector<Complex> eigenvalue_multiset(const CMatrix& M);

// max_i |a_i - b_i| after both sides are sorted with the multiset order;
// the mismatch measure used by isospectrality checks.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

// Dimension of {X in su(m) : [X,A] = [X,B] = 0}, computed as the nullity of
// the stacked real-linear commutator map over the standard su(m) basis
// (m^2 - 1 generators). Nullity counts singular values <= rank_tol * sigma_max.
int commutant_dimension(const CMatrix& A, const CMatrix& B, double rank_tol = kRankTol);

// A M A^{-1}. Unitary A (checked at 1e-10) uses the adjoint as inverse;
// otherwise a general solve is used and near-singular A is an error.
CMatrix conjugate(const CMatrix& A, const CMatrix& M);

} // namespace isospec
