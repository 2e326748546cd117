#include "isospec/mat.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace isospec {

namespace {

std::string format_matrix(const CMatrix& M) {
    std::ostringstream os;
    os.precision(17);
    os << "[" << M.rows() << "x" << M.cols() << "]\n" << M;
    return os.str();
}

bool eig_sort_key(const Complex& a, const Complex& b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
}

} // namespace

bool is_finite(const CMatrix& M) {
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            if (!std::isfinite(M(i, j).real()) || !std::isfinite(M(i, j).imag())) return false;
    return true;
}

void validate_matrix(const CMatrix& M) {
    if (M.rows() != M.cols())
        throw InvalidArgument("matrix must be square, got " + std::to_string(M.rows()) + "x" +
                              std::to_string(M.cols()));
    if (!is_finite(M)) throw InvalidArgument("matrix has non-finite entries");
}

SuElement::SuElement(CMatrix M, double tol) : m_(std::move(M)) {
    validate_matrix(m_);
    double skew = (m_ + m_.adjoint()).cwiseAbs().maxCoeff();
    if (skew > tol)
        throw InvalidArgument("matrix is not skew-hermitian within " + std::to_string(tol) +
                              " (residual " + std::to_string(skew) + ")");
    if (std::abs(m_.trace()) > tol)
        throw InvalidArgument("matrix is not traceless within tolerance (trace " +
                              std::to_string(std::abs(m_.trace())) + ")");
}

double CharPoly::max_coeff_distance(const CharPoly& other) const {
    if (coeffs.size() != other.coeffs.size())
        throw InvalidArgument("char poly degree mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        d = std::max(d, std::abs(coeffs[k] - other.coeffs[k]));
    return d;
}

CharPoly char_poly(const CMatrix& M) {
    validate_matrix(M);
    const int m = static_cast<int>(M.rows());
    CharPoly p;
    p.coeffs.assign(static_cast<std::size_t>(m) + 1, Complex(0.0, 0.0));
    p.coeffs[static_cast<std::size_t>(m)] = Complex(1.0, 0.0);

    CMatrix Mk = CMatrix::Identity(m, m);
    for (int k = 1; k <= m; ++k) {
        CMatrix AMk = M * Mk;
        Complex c = -AMk.trace() / static_cast<double>(k);
        p.coeffs[static_cast<std::size_t>(m - k)] = c;
        if (k < m) Mk = AMk + c * CMatrix::Identity(m, m);
    }
    return p;
}

std::vector<Complex> eigenvalue_multiset(const CMatrix& M) {
    validate_matrix(M);
    const int m = static_cast<int>(M.rows());
    std::vector<Complex> out(static_cast<std::size_t>(m));

    double skew = (M + M.adjoint()).cwiseAbs().maxCoeff();
    if (skew <= kSuTol) {
        // iM is hermitian; the self-adjoint solve is both more accurate and
        // guaranteed to converge
        Eigen::SelfAdjointEigenSolver<CMatrix> es(Complex(0.0, 1.0) * M);
        if (es.info() != Eigen::Success)
            throw NumericalError("self-adjoint eigensolver failed on\n" + format_matrix(M));
        for (int k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] = Complex(0.0, -es.eigenvalues()(k));
    } else {
        Eigen::ComplexEigenSolver<CMatrix> es(M, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success)
            throw NumericalError("eigensolver failed to converge on\n" + format_matrix(M));
        for (int k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    }
    std::sort(out.begin(), out.end(), eig_sort_key);
    return out;
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) throw InvalidArgument("eigenvalue multiset size mismatch");
    std::sort(a.begin(), a.end(), eig_sort_key);
    std::sort(b.begin(), b.end(), eig_sort_key);
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

int commutant_dimension(const CMatrix& A, const CMatrix& B, double rank_tol) {
    validate_matrix(A);
    validate_matrix(B);
    if (A.rows() != B.rows()) throw InvalidArgument("commutant: dimension mismatch");
    const int m = static_cast<int>(A.rows());

    // standard su(m) basis: E_ij - E_ji, i(E_ij + E_ji) for i < j,
    // i(E_kk - E_{k+1,k+1}) for the diagonal
    std::vector<CMatrix> basis;
    basis.reserve(static_cast<std::size_t>(m) * m - 1);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            CMatrix X = CMatrix::Zero(m, m);
            X(i, j) = Complex(1, 0);
            X(j, i) = Complex(-1, 0);
            basis.push_back(X);
            CMatrix Y = CMatrix::Zero(m, m);
            Y(i, j) = Complex(0, 1);
            Y(j, i) = Complex(0, 1);
            basis.push_back(Y);
        }
    for (int k = 0; k + 1 < m; ++k) {
        CMatrix D = CMatrix::Zero(m, m);
        D(k, k) = Complex(0, 1);
        D(k + 1, k + 1) = Complex(0, -1);
        basis.push_back(D);
    }

    // real matrix of the map X -> ([X,A], [X,B]); rows are re/im parts
    const int cols = static_cast<int>(basis.size());
    RMatrix S(4 * m * m, cols);
    for (int c = 0; c < cols; ++c) {
        const CMatrix& X = basis[static_cast<std::size_t>(c)];
        CMatrix CA = X * A - A * X;
        CMatrix CB = X * B - B * X;
        int row = 0;
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index i = 0; i < m; ++i) {
                S(row++, c) = CA(i, j).real();
                S(row++, c) = CA(i, j).imag();
            }
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index i = 0; i < m; ++i) {
                S(row++, c) = CB(i, j).real();
                S(row++, c) = CB(i, j).imag();
            }
    }

    Eigen::JacobiSVD<RMatrix> svd(S);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    if (smax == 0.0) return cols; // both commutators vanish identically
    int nullity = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) <= rank_tol * smax) ++nullity;
    nullity += cols - static_cast<int>(sv.size());
    return nullity;
}

CMatrix conjugate(const CMatrix& A, const CMatrix& M) {
    validate_matrix(A);
    validate_matrix(M);
    if (A.rows() != M.rows()) throw InvalidArgument("conjugate: dimension mismatch");
    const int m = static_cast<int>(A.rows());

    double unitary_defect = (A * A.adjoint() - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (unitary_defect <= 1e-10) return A * M * A.adjoint();

    Eigen::FullPivLU<CMatrix> lu(A);
    if (!lu.isInvertible())
        throw NumericalError("conjugate: matrix is singular\n" + format_matrix(A));
    return A * M * lu.inverse();
}

} // namespace isospec
