#pragma once

// Orthogonal representations, matrix representations and quantum colorings
// of graphs, the conversions between them, and certified upper bounds on
// the orthogonal rank and the rank-1 quantum chromatic number.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qchrom/chromatic.hpp"
#include "qchrom/graph.hpp"
#include "qchrom/linalg.hpp"

namespace qchrom {

/// Nonzero vector per vertex in C^dimension, adjacent vertices orthogonal.
struct OrthogonalRepresentation {
    int dimension = 0;
    std::vector<CVector> vectors;
};

/// Unitary per vertex; for every edge (v,w) the diagonal of U_v^dagger U_w
/// vanishes.
struct MatrixRepresentation {
    int dimension = 0;
    std::vector<CMatrix> matrices;
};

/// Projective c-outcome measurement per vertex. Rank 1 colorings store the
/// orthonormal basis {a_{v,alpha}} in `vectors`; higher rank colorings store
/// projectors of dimension rank * colors in `projectors`.
struct QuantumColoring {
    int colors = 0;
    int rank = 1;
    std::vector<std::vector<CVector>> vectors;
    std::vector<std::vector<CMatrix>> projectors;

    int dimension() const { return rank * colors; }
    int vertex_count() const {
        return static_cast<int>(rank == 1 ? vectors.size() : projectors.size());
    }
    /// Projector for (v, alpha), materialized from the basis when rank is 1.
    CMatrix element(Vertex v, int alpha) const;
};

struct PSDWitness {
    CMatrix matrix;  // Hermitian (real symmetric in the usual case)
    int rank = 0;    // claimed rank bound
};

/// Outcome of a verifier: `ok` plus human-readable problems (capped).
struct VerificationReport {
    bool ok = true;
    std::vector<std::string> problems;
    std::size_t problem_count = 0;

    void fail(std::string message);
};

VerificationReport check_orthogonal_representation(const Graph& g,
                                                   const OrthogonalRepresentation& rep,
                                                   double tol = kDefaultTol);
VerificationReport check_matrix_representation(const Graph& g, const MatrixRepresentation& rep,
                                                double tol = kDefaultTol);
VerificationReport check_quantum_coloring(const Graph& g, const QuantumColoring& qc,
                                          double tol = kDefaultTol);

bool verify_orthogonal_representation(const Graph& g, const OrthogonalRepresentation& rep,
                                      double tol = kDefaultTol);
bool verify_matrix_representation(const Graph& g, const MatrixRepresentation& rep,
                                  double tol = kDefaultTol);
bool verify_quantum_coloring(const Graph& g, const QuantumColoring& qc, double tol = kDefaultTol);

/// Rank-1 coloring over the computational basis: a vertex of classical color
/// k measures in the basis a_{v,alpha} = e_{(alpha + k) mod c}.
QuantumColoring quantum_coloring_from_classical(const Graph& g, const ColoringCertificate& cert);

/// Orthogonal representation in dimension c of G [] K_c  ->  matrix
/// representation of G whose i-th column of U_v is a_(v,i) / |a_(v,i)|.
MatrixRepresentation orthrep_to_matrixrep(const Graph& g, int c,
                                          const OrthogonalRepresentation& product_rep,
                                          double tol = kDefaultTol);

/// Inverse direction: vertex (v,i) of G [] K_c gets column i of U_v.
OrthogonalRepresentation matrixrep_to_orthrep(const Graph& g, const MatrixRepresentation& rep,
                                              double tol = kDefaultTol);

MatrixRepresentation matrixrep_from_quantum_coloring(const QuantumColoring& qc);
QuantumColoring quantum_coloring_from_matrixrep(const MatrixRepresentation& rep);

struct SearchOptions {
    std::uint64_t seed = 1;
    int iterations = 400;  // sweeps per restart
    int restarts = 12;
    bool real_only = false;
    double tol = kDefaultTol;
};

struct SearchResult {
    bool found = false;
    OrthogonalRepresentation rep;
    int restart = -1;        // restart index that produced the witness
    double max_overlap = 0;  // largest |<phi_v|phi_w>| over edges of the best attempt
};

/// Numerical search for an orthogonal representation in C^c. A result is
/// reported found only when it passes verify_orthogonal_representation at
/// options.tol; not finding one proves nothing.
SearchResult search_orthogonal_representation(const Graph& g, int c,
                                              const SearchOptions& options = {});

enum class WitnessSource { Search, Classical, Supplied };

std::string to_string(WitnessSource source);

struct XiBounds {
    int lower = 0;
    bool lower_exact = true;  // clique search completed
    int upper = 0;
    OrthogonalRepresentation upper_witness;
    WitnessSource upper_source = WitnessSource::Search;
};

/// lower = clique number; upper = smallest dimension in which a verified
/// representation was found, falling back to the basis vectors of a greedy
/// coloring when the search comes up empty.
XiBounds xi_bounds(const Graph& g, const SearchOptions& options = {}, Budget budget = {});

struct ChiQ1Witness {
    int colors = 0;
    MatrixRepresentation witness;
    WitnessSource source = WitnessSource::Search;
};

/// Smallest c <= c_max with a verified orthogonal representation of
/// G [] K_c in C^c, returned as the induced matrix representation of G.
/// Values of c below the clique number are skipped (provably infeasible).
/// For each c the numerical search runs first; when it fails and G is
/// classically c-colorable the shifted-basis construction supplies the
/// witness. An upper bound only.
std::optional<ChiQ1Witness> chi_q1_upper_via_product(const Graph& g, int c_max,
                                                     const SearchOptions& options = {},
                                                     Budget budget = {});

enum class PSDRejection {
    None,
    NotSquare,
    NotHermitian,
    NotPSD,
    WrongPattern,
    RankTooHigh,
    ZeroGramVector,
    FactorResidual,  // eigenvalues dropped by the rank cutoff spoil orthogonality beyond tol
};

std::string to_string(PSDRejection reason);

struct PSDCheckResult {
    bool ok = false;
    PSDRejection reason = PSDRejection::None;
    std::string detail;
    OrthogonalRepresentation rep;  // Gram factor vectors on accept
};

/// Accepts iff the matrix is PSD, its off-diagonal support is exactly the
/// edge set of complement(g), and its rank is at most the claimed rank; on
/// accept the rows of a rank-r Gram factor form an orthogonal
/// representation of g in C^r.
PSDCheckResult psd_witness_check(const Graph& g, const PSDWitness& w,
                                 double rank_tol = kDefaultRankTol, double tol = kDefaultTol);

/// Rank-1 quantum N-coloring of the Hadamard graph G_N: vertex u gets
/// a_{u,alpha}[j] = (-1)^{u_j} omega^{j alpha} / sqrt(N), omega = e^{2 pi i / N}.
QuantumColoring hadamard_quantum_coloring(int N);

}  // namespace qchrom
