#pragma once

// The graph coloring game: a referee sends vertex v to Alice and w to Bob,
// where v == w or (v,w) is an edge; they answer colors alpha, beta and win
// iff (v == w and alpha == beta) or ((v,w) in E and alpha != beta).
//
// The referee's distribution is a parameter. The default is uniform over the
// diagonal pairs (v,v) and both orientations of every edge; any distribution
// with full support gives the same answer to "does this strategy win with
// certainty".

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qchrom/error.hpp"
#include "qchrom/graph.hpp"
#include "qchrom/linalg.hpp"
#include "qchrom/reps.hpp"

namespace qchrom {

struct QuestionDistribution {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<double> weights;
};

QuestionDistribution uniform_questions(const Graph& g);

/// Throws InputError unless weights are nonnegative, sum to 1 and every
/// pair is legal (diagonal or an edge).
void validate_questions(const Graph& g, const QuestionDistribution& q);

struct ClassicalStrategy {
    int colors = 0;
    std::vector<int> alice;
    std::vector<int> bob;
};

/// Entangled state of local dimensions dA x dB (A most significant) plus a
/// c-outcome POVM per vertex for each player.
struct POVMStrategy {
    int colors = 0;
    int dA = 0;
    int dB = 0;
    CVector state;
    std::vector<std::vector<CMatrix>> alice;  // [vertex][alpha], dA x dA
    std::vector<std::vector<CMatrix>> bob;    // [vertex][beta],  dB x dB
};

/// Throws InputError when the state is not normalized, an element is not
/// PSD or a family does not sum to the identity (all within tol).
void validate_strategy(const POVMStrategy& s, int vertex_count, double tol = kDefaultTol);

/// Rank-1 coloring as a strategy: maximally entangled state of local
/// dimension c, Alice measures |a><a|, Bob the complex conjugate.
POVMStrategy strategy_from_quantum_coloring(const QuantumColoring& qc);

double classical_win_probability(const Graph& g, const ClassicalStrategy& s,
                                 const QuestionDistribution& q);

/// Joint outcome probabilities <psi| E_{v alpha} (x) F_{w beta} |psi>.
Eigen::MatrixXd quantum_outcome_distribution(const POVMStrategy& s, Vertex v, Vertex w);

/// Evaluates outcome probabilities for many (v, w) pairs. Each POVM element
/// is factored once as E = U U^dagger and Alice's factors are pulled
/// through the state, so one probability costs rank(E) * rank(F) * dB.
class OutcomeEvaluator {
public:
    explicit OutcomeEvaluator(const POVMStrategy& s);

    double probability(Vertex v, int alpha, Vertex w, int beta) const;
    Eigen::MatrixXd distribution(Vertex v, Vertex w) const;

private:
    int colors_;
    std::vector<std::vector<CMatrix>> alice_;  // M^dagger U_{v alpha}
    std::vector<std::vector<CMatrix>> bob_;    // V_{w beta}^T
};

double quantum_win_probability(const Graph& g, const POVMStrategy& s, const QuestionDistribution& q);

struct ConsistencyViolation {
    bool same_vertex = false;  // first consistency condition (v == w, alpha != beta)
    Vertex v = 0;
    Vertex w = 0;
    int alpha = 0;
    int beta = 0;
    double probability = 0;
};

struct ConsistencyReport {
    bool ok = true;
    std::vector<ConsistencyViolation> violations;
};

/// Lists every (v, alpha != beta) with nonzero same-vertex probability and
/// every ordered edge (v, w, alpha) with nonzero equal-color probability.
ConsistencyReport check_consistency(const POVMStrategy& s, const Graph& g, double tol = kDefaultTol);

struct NormalizationOptions {
    double tol = kDefaultTol;
    double rank_tol = kDefaultRankTol;
};

struct NormalizationStage {
    std::string name;
    POVMStrategy strategy;
};

struct NormalizationTrace {
    std::vector<double> schmidt_coefficients;  // of the input state, nonincreasing
    int schmidt_rank = 0;
    CMatrix support;  // projector onto Alice's support, input basis
    CMatrix rho;      // reduced state after restriction (diagonal)
    std::vector<NormalizationStage> stages;
};

struct NormalizedStrategy {
    POVMStrategy strategy;
    int rank = 0;  // common projector rank r; local dimension is r * colors
    NormalizationTrace trace;
};

/// Raised when a pipeline stage's post-condition fails or a support
/// decision sits too close to the rank cutoff.
class NormalizationError : public InputError {
public:
    NormalizationError(std::string stage, const std::string& message)
        : InputError(stage + ": " + message), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

/// Transforms a winning strategy into normal form: projective measurements
/// with c projectors of common rank r, maximally entangled state of local
/// dimension r * c, Alice's projectors the complex conjugates of Bob's.
NormalizedStrategy normalize_strategy(const POVMStrategy& s, const Graph& g,
                                      const NormalizationOptions& options = {});

struct NormalFormReport {
    bool projective = false;       // every element a projector of common rank
    int rank = 0;
    bool maximally_entangled = false;  // flat Schmidt spectrum, local dimension rank * colors
    bool conjugate = false;        // E_{v alpha} == conj(F_{v alpha})
    bool edge_orthogonal = false;  // <E_{v alpha}, E_{w alpha}> == 0 on edges
    double win_probability = 0;    // under the uniform distribution

    bool all() const { return projective && maximally_entangled && conjugate && edge_orthogonal; }
};

NormalFormReport check_normal_form(const POVMStrategy& s, const Graph& g, double tol = kDefaultTol);

struct SimulationResult {
    std::uint64_t rounds = 0;
    std::uint64_t wins = 0;
    double rate() const { return rounds ? static_cast<double>(wins) / rounds : 0.0; }
};

SimulationResult simulate_game(const Graph& g, const ClassicalStrategy& s,
                               const QuestionDistribution& q, std::uint64_t rounds,
                               std::uint64_t seed);
SimulationResult simulate_game(const Graph& g, const POVMStrategy& s, const QuestionDistribution& q,
                               std::uint64_t rounds, std::uint64_t seed);

struct ClassicalOptimum {
    std::uint64_t wins = 0;   // best number of won question pairs
    std::uint64_t total = 0;  // number of question pairs (uniform distribution)
    ClassicalStrategy strategy;
};

/// Exhaustive search over all c^n x c^n deterministic strategy pairs under
/// the uniform distribution; exact integer counts. Small graphs only.
ClassicalOptimum optimal_classical_strategy(const Graph& g, int colors);

}  // namespace qchrom
