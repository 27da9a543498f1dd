#include "qchrom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qchrom/error.hpp"

namespace qchrom {

Complex inner(const CVector& u, const CVector& v) {
    if (u.size() != v.size())
        throw InputError("inner: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
    return u.dot(v);  // Eigen conjugates the first argument
}

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError("hs_inner: shape mismatch");
    // Tr(A^dagger B) = sum_ij conj(A_ij) B_ij
    return (a.conjugate().cwiseProduct(b)).sum();
}

bool is_orthonormal_basis(std::span<const CVector> vecs, double tol) {
    if (vecs.empty())
        return false;
    const auto dimension = vecs.front().size();
    if (static_cast<Eigen::Index>(vecs.size()) != dimension)
        return false;
    for (const auto& v : vecs)
        if (v.size() != dimension)
            return false;
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = i; j < vecs.size(); ++j) {
            const Complex expected = i == j ? 1.0 : 0.0;
            if (std::abs(vecs[i].dot(vecs[j]) - expected) > tol)
                return false;
        }
    return true;
}

CMatrix coefficient_matrix(const CVector& state, std::size_t dA, std::size_t dB) {
    if (dA == 0 || dB == 0 || static_cast<std::size_t>(state.size()) != dA * dB)
        throw InputError("state of dimension " + std::to_string(state.size()) +
                         " does not factor as " + std::to_string(dA) + " x " + std::to_string(dB));
    CMatrix m(dA, dB);
    for (std::size_t i = 0; i < dA; ++i)
        for (std::size_t j = 0; j < dB; ++j)
            m(i, j) = state(i * dB + j);
    return m;
}

SchmidtDecomposition schmidt(const CVector& state, std::size_t dA, std::size_t dB,
                             double rank_tol, double tol) {
    const CMatrix m = coefficient_matrix(state, dA, dB);
    const double norm = state.norm();
    if (norm == 0.0)
        throw InputError("schmidt: zero state");
    if (std::abs(norm - 1.0) > tol)
        throw InputError("schmidt: state not normalized (norm " + std::to_string(norm) + ")");

    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();

    SchmidtDecomposition out;
    const auto terms = static_cast<std::size_t>(sigma.size());
    const double largest = terms > 0 ? sigma(0) : 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
        out.coefficients.push_back(sigma(k));
        out.left.push_back(svd.matrixU().col(k));
        out.right.push_back(svd.matrixV().col(k).conjugate());
        if (sigma(k) > rank_tol * largest)
            ++out.rank;
    }
    return out;
}

CMatrix support_projector(const CMatrix& a, double rank_tol, double tol) {
    if (a.rows() != a.cols())
        throw InputError("support_projector: matrix not square");
    if (!is_hermitian(a, tol))
        throw InputError("support_projector: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(a);
    const auto& values = eig.eigenvalues();
    const auto n = a.rows();
    CMatrix p = CMatrix::Zero(n, n);
    if (n == 0)
        return p;
    const double largest = values(n - 1);
    if (values(0) < -tol * std::max(1.0, std::abs(largest)))
        throw InputError("support_projector: negative eigenvalue " + std::to_string(values(0)));
    if (largest <= tol)  // zero within tolerance: relative threshold would amplify round-off
        return p;
    for (Eigen::Index k = 0; k < n; ++k)
        if (values(k) > rank_tol * largest)
            p += eig.eigenvectors().col(k) * eig.eigenvectors().col(k).adjoint();
    return p;
}

CMatrix partial_trace(const CMatrix& m, std::size_t dA, std::size_t dB, Subsystem traced) {
    const auto dim = static_cast<Eigen::Index>(dA * dB);
    if (dA == 0 || dB == 0 || m.rows() != dim || m.cols() != dim)
        throw InputError("partial_trace: matrix is not (dA*dB) x (dA*dB)");
    const auto a = static_cast<Eigen::Index>(dA);
    const auto b = static_cast<Eigen::Index>(dB);
    if (traced == Subsystem::B) {
        CMatrix r = CMatrix::Zero(a, a);
        for (Eigen::Index j = 0; j < b; ++j)
            r += m(Eigen::seqN(j, a, b), Eigen::seqN(j, a, b));
        return r;
    }
    CMatrix r = CMatrix::Zero(b, b);
    for (Eigen::Index i = 0; i < a; ++i)
        r += m.block(i * b, i * b, b, b);
    return r;
}

std::size_t matrix_rank(const CMatrix& a, double rank_tol) {
    if (a.size() == 0)
        return 0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0)
        return 0;
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        if (sigma(k) > rank_tol * sigma(0))
            ++rank;
    return rank;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CVector kron(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

CMatrix outer(const CVector& u, const CVector& v) { return u * v.adjoint(); }

CMatrix projector(const CVector& u) { return u * u.adjoint(); }

CVector basis_vector(std::size_t dimension, std::size_t index) {
    CVector e = CVector::Zero(static_cast<Eigen::Index>(dimension));
    e(static_cast<Eigen::Index>(index)) = 1.0;
    return e;
}

CVector maximally_entangled(std::size_t local_dimension) {
    const auto d = static_cast<Eigen::Index>(local_dimension);
    CVector psi = CVector::Zero(d * d);
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(local_dimension));
    for (Eigen::Index i = 0; i < d; ++i)
        psi(i * d + i) = amplitude;
    return psi;
}

bool is_hermitian(const CMatrix& a, double tol) {
    return a.rows() == a.cols() && max_abs_diff(a, a.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& u, double tol) {
    if (u.rows() != u.cols())
        return false;
    return max_abs_diff(u.adjoint() * u, CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

bool is_projector(const CMatrix& p, double tol) {
    return is_hermitian(p, tol) && max_abs_diff(p * p, p) <= tol;
}

bool is_finite(const CMatrix& m) { return m.allFinite(); }

bool is_finite(const CVector& v) { return v.allFinite(); }

double min_eigenvalue(const CMatrix& a) {
    if (a.size() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(a, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError("max_abs_diff: shape mismatch");
    if (a.size() == 0)
        return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qchrom
