#pragma once

// Dense complex linear algebra used by the verifiers and the strategy
// normalization pipeline. Thin layer over Eigen.
//
// Tensor products follow one global convention: row-major, with the A
// system as the most significant factor, i.e. |i>|j> sits at index
// i * dB + j.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qchrom {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kDefaultRankTol = 1e-7;

enum class Subsystem { A, B };

struct SchmidtDecomposition {
    std::vector<double> coefficients;  // nonincreasing
    std::vector<CVector> left;
    std::vector<CVector> right;
    std::size_t rank = 0;
};

/// <u|v>, conjugate-linear in the first argument.
Complex inner(const CVector& u, const CVector& v);

/// Hilbert-Schmidt inner product Tr(A^dagger B).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

/// True iff `vecs` has exactly `dimension` members and their Gram matrix is
/// the identity within `tol` entrywise.
bool is_orthonormal_basis(std::span<const CVector> vecs, double tol = kDefaultTol);

/// Schmidt decomposition of a bipartite pure state of local dimensions dA, dB.
/// The reported rank counts coefficients above rank_tol * max coefficient;
/// all min(dA, dB) terms are returned so the reconstruction is exact.
SchmidtDecomposition schmidt(const CVector& state, std::size_t dA, std::size_t dB,
                             double rank_tol = kDefaultRankTol, double tol = kDefaultTol);

/// Orthogonal projector onto the span of eigenvectors of a Hermitian PSD
/// matrix with eigenvalue above rank_tol * largest eigenvalue; zero when the
/// largest eigenvalue is at most tol.
CMatrix support_projector(const CMatrix& a, double rank_tol = kDefaultRankTol,
                          double tol = kDefaultTol);

CMatrix partial_trace(const CMatrix& m, std::size_t dA, std::size_t dB, Subsystem traced);

/// Number of singular values above rank_tol * largest singular value.
std::size_t matrix_rank(const CMatrix& a, double rank_tol = kDefaultRankTol);

// Helpers shared by the other modules.

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);
CMatrix outer(const CVector& u, const CVector& v);
CMatrix projector(const CVector& u);
CVector basis_vector(std::size_t dimension, std::size_t index);
CVector maximally_entangled(std::size_t local_dimension);

/// Reshape a bipartite state into its dA x dB coefficient matrix.
CMatrix coefficient_matrix(const CVector& state, std::size_t dA, std::size_t dB);

bool is_hermitian(const CMatrix& a, double tol = kDefaultTol);
bool is_unitary(const CMatrix& u, double tol = kDefaultTol);
bool is_projector(const CMatrix& p, double tol = kDefaultTol);
bool is_finite(const CMatrix& m);
bool is_finite(const CVector& v);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& a);

/// Largest |entry| of a - b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace qchrom
