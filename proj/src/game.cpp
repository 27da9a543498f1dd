#include "qchrom/game.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "qchrom/error.hpp"

namespace qchrom {

QuestionDistribution uniform_questions(const Graph& g) {
    QuestionDistribution q;
    for (int v = 0; v < g.vertex_count(); ++v)
        q.pairs.emplace_back(v, v);
    for (const auto& [v, w] : g.edges()) {
        q.pairs.emplace_back(v, w);
        q.pairs.emplace_back(w, v);
    }
    q.weights.assign(q.pairs.size(), q.pairs.empty() ? 0.0 : 1.0 / static_cast<double>(q.pairs.size()));
    return q;
}

void validate_questions(const Graph& g, const QuestionDistribution& q) {
    if (q.pairs.size() != q.weights.size())
        throw InputError("question distribution: pair and weight counts differ");
    double total = 0.0;
    for (std::size_t k = 0; k < q.pairs.size(); ++k) {
        const auto [v, w] = q.pairs[k];
        if (v < 0 || w < 0 || v >= g.vertex_count() || w >= g.vertex_count())
            throw InputError("question distribution: vertex out of range");
        if (v != w && !g.adjacent(v, w))
            throw InputError("question distribution: pair (" + std::to_string(v) + "," +
                             std::to_string(w) + ") is neither diagonal nor an edge");
        if (!(q.weights[k] >= 0.0))
            throw InputError("question distribution: negative weight");
        total += q.weights[k];
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw InputError("question distribution: weights sum to " + std::to_string(total));
}

void validate_strategy(const POVMStrategy& s, int vertex_count, double tol) {
    if (s.colors < 1 || s.dA < 1 || s.dB < 1)
        throw InputError("strategy: colors and local dimensions must be positive");
    if (s.state.size() != static_cast<Eigen::Index>(s.dA) * s.dB)
        throw InputError("strategy: state dimension does not match dA * dB");
    if (!is_finite(s.state))
        throw InputError("strategy: state has non-finite entries");
    if (std::abs(s.state.norm() - 1.0) > tol)
        throw InputError("strategy: state is not normalized");

    auto check_player = [&](const std::vector<std::vector<CMatrix>>& povms, int dim, const char* who) {
        if (static_cast<int>(povms.size()) != vertex_count)
            throw InputError(std::string("strategy: ") + who + " has " + std::to_string(povms.size()) +
                             " measurements for " + std::to_string(vertex_count) + " vertices");
        const CMatrix identity = CMatrix::Identity(dim, dim);
        for (std::size_t v = 0; v < povms.size(); ++v) {
            const std::string where = std::string(who) + " vertex " + std::to_string(v);
            if (static_cast<int>(povms[v].size()) != s.colors)
                throw InputError("strategy: " + where + " has " + std::to_string(povms[v].size()) +
                                 " elements, expected " + std::to_string(s.colors));
            CMatrix sum = CMatrix::Zero(dim, dim);
            for (const auto& e : povms[v]) {
                if (e.rows() != dim || e.cols() != dim || !is_finite(e))
                    throw InputError("strategy: " + where + " has a malformed element");
                if (!is_hermitian(e, tol))
                    throw InputError("strategy: " + where + " has a non-Hermitian element");
                if (min_eigenvalue(e) < -tol)
                    throw InputError("strategy: " + where + " has a non-PSD element");
                sum += e;
            }
            if (max_abs_diff(sum, identity) > tol)
                throw InputError("strategy: " + where + " does not sum to the identity");
        }
    };
    check_player(s.alice, s.dA, "alice");
    check_player(s.bob, s.dB, "bob");
}

POVMStrategy strategy_from_quantum_coloring(const QuantumColoring& qc) {
    POVMStrategy s;
    s.colors = qc.colors;
    s.dA = s.dB = qc.dimension();
    s.state = maximally_entangled(qc.dimension());
    for (int v = 0; v < qc.vertex_count(); ++v) {
        std::vector<CMatrix> a, b;
        for (int alpha = 0; alpha < qc.colors; ++alpha) {
            CMatrix e = qc.element(v, alpha);
            b.push_back(e.conjugate());
            a.push_back(std::move(e));
        }
        s.alice.push_back(std::move(a));
        s.bob.push_back(std::move(b));
    }
    return s;
}

namespace {

bool wins(Vertex v, Vertex w, int alpha, int beta) { return v == w ? alpha == beta : alpha != beta; }

// E = U U^dagger for PSD E; numerically zero eigenvalues are dropped.
CMatrix psd_factor(const CMatrix& e) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(e);
    const auto& values = eig.eigenvalues();
    const auto n = e.rows();
    const double cutoff = 1e-15 * std::max(1.0, n > 0 ? std::abs(values(n - 1)) : 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < n; ++k)
        if (values(k) > cutoff)
            keep.push_back(k);
    CMatrix u(n, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        u.col(j) = std::sqrt(values(keep[j])) * eig.eigenvectors().col(keep[j]);
    return u;
}

}  // namespace

double classical_win_probability(const Graph& g, const ClassicalStrategy& s,
                                 const QuestionDistribution& q) {
    validate_questions(g, q);
    if (static_cast<int>(s.alice.size()) != g.vertex_count() ||
        static_cast<int>(s.bob.size()) != g.vertex_count())
        throw InputError("classical strategy does not cover the graph");
    double total = 0.0;
    for (std::size_t k = 0; k < q.pairs.size(); ++k) {
        const auto [v, w] = q.pairs[k];
        if (wins(v, w, s.alice[v], s.bob[w]))
            total += q.weights[k];
    }
    return total;
}

OutcomeEvaluator::OutcomeEvaluator(const POVMStrategy& s) : colors_(s.colors) {
    const CMatrix m = coefficient_matrix(s.state, s.dA, s.dB);
    const CMatrix m_adj = m.adjoint();
    alice_.resize(s.alice.size());
    for (std::size_t v = 0; v < s.alice.size(); ++v)
        for (const auto& e : s.alice[v])
            alice_[v].push_back(m_adj * psd_factor(e));
    bob_.resize(s.bob.size());
    for (std::size_t w = 0; w < s.bob.size(); ++w)
        for (const auto& f : s.bob[w])
            bob_[w].push_back(psd_factor(f).transpose());
}

double OutcomeEvaluator::probability(Vertex v, int alpha, Vertex w, int beta) const {
    const auto& x = alice_[v][alpha];
    const auto& y = bob_[w][beta];
    if (x.cols() == 0 || y.rows() == 0)
        return 0.0;
    return (y * x).squaredNorm();
}

Eigen::MatrixXd OutcomeEvaluator::distribution(Vertex v, Vertex w) const {
    Eigen::MatrixXd p(colors_, colors_);
    for (int alpha = 0; alpha < colors_; ++alpha)
        for (int beta = 0; beta < colors_; ++beta)
            p(alpha, beta) = probability(v, alpha, w, beta);
    return p;
}

Eigen::MatrixXd quantum_outcome_distribution(const POVMStrategy& s, Vertex v, Vertex w) {
    validate_strategy(s, static_cast<int>(s.alice.size()));
    if (v < 0 || w < 0 || v >= static_cast<int>(s.alice.size()) || w >= static_cast<int>(s.bob.size()))
        throw InputError("quantum_outcome_distribution: vertex out of range");
    return OutcomeEvaluator(s).distribution(v, w);
}

double quantum_win_probability(const Graph& g, const POVMStrategy& s, const QuestionDistribution& q) {
    validate_questions(g, q);
    validate_strategy(s, g.vertex_count());
    const OutcomeEvaluator eval(s);
    double total = 0.0;
    for (std::size_t k = 0; k < q.pairs.size(); ++k) {
        const auto [v, w] = q.pairs[k];
        double won = 0.0;
        for (int alpha = 0; alpha < s.colors; ++alpha)
            for (int beta = 0; beta < s.colors; ++beta)
                if (wins(v, w, alpha, beta))
                    won += eval.probability(v, alpha, w, beta);
        total += q.weights[k] * won;
    }
    return total;
}

ConsistencyReport check_consistency(const POVMStrategy& s, const Graph& g, double tol) {
    validate_strategy(s, g.vertex_count(), tol);
    const OutcomeEvaluator eval(s);
    ConsistencyReport report;
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int alpha = 0; alpha < s.colors; ++alpha)
            for (int beta = 0; beta < s.colors; ++beta) {
                if (alpha == beta)
                    continue;
                const double p = eval.probability(v, alpha, v, beta);
                if (p > tol)
                    report.violations.push_back({true, v, v, alpha, beta, p});
            }
    for (const auto& [a, b] : g.edges())
        for (const auto& [v, w] : {std::pair{a, b}, std::pair{b, a}})
            for (int alpha = 0; alpha < s.colors; ++alpha) {
                const double p = eval.probability(v, alpha, w, alpha);
                if (p > tol)
                    report.violations.push_back({false, v, w, alpha, alpha, p});
            }
    report.ok = report.violations.empty();
    return report;
}

namespace {

// Relative eigenvalues this close to the rank cutoff make a support decision
// numerically meaningless.
constexpr double kAmbiguityBand = 1e3;

void check_unambiguous(const std::string& stage, const std::vector<double>& values,
                       double rank_tol, double tol) {
    if (values.empty())
        return;
    const double largest = *std::max_element(values.begin(), values.end());
    if (largest <= tol)
        return;
    for (double x : values) {
        const double ratio = x / largest;
        if (ratio > rank_tol / kAmbiguityBand && ratio <= rank_tol * kAmbiguityBand)
            throw NormalizationError(stage, "ambiguous support decision at relative eigenvalue " +
                                                std::to_string(ratio));
    }
}

CMatrix unambiguous_support(const std::string& stage, const CMatrix& a,
                            const NormalizationOptions& options) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(a, Eigen::EigenvaluesOnly);
    std::vector<double> values(eig.eigenvalues().data(),
                               eig.eigenvalues().data() + eig.eigenvalues().size());
    check_unambiguous(stage, values, options.rank_tol, options.tol);
    return support_projector(a, options.rank_tol, options.tol);
}

void require_projective_families(const std::string& stage, const std::vector<std::vector<CMatrix>>& povms,
                                 int dim, double tol) {
    const CMatrix identity = CMatrix::Identity(dim, dim);
    for (std::size_t v = 0; v < povms.size(); ++v) {
        CMatrix sum = CMatrix::Zero(dim, dim);
        for (const auto& p : povms[v]) {
            if (!is_projector(p, tol))
                throw NormalizationError(stage, "vertex " + std::to_string(v) + " element is not a projector");
            sum += p;
        }
        if (max_abs_diff(sum, identity) > tol)
            throw NormalizationError(stage, "vertex " + std::to_string(v) +
                                                " projectors do not sum to the identity");
    }
}

void require_winning(const std::string& stage, const POVMStrategy& s, const Graph& g, double tol) {
    const auto report = check_consistency(s, g, tol);
    if (!report.ok)
        throw NormalizationError(stage, "strategy no longer wins with certainty (" +
                                            std::to_string(report.violations.size()) + " violations)");
}

}  // namespace

NormalizedStrategy normalize_strategy(const POVMStrategy& input, const Graph& g,
                                      const NormalizationOptions& options) {
    const double tol = options.tol;
    validate_strategy(input, g.vertex_count(), tol);
    {
        const auto report = check_consistency(input, g, tol);
        if (!report.ok) {
            std::string list;
            for (std::size_t k = 0; k < report.violations.size() && k < 10; ++k) {
                const auto& x = report.violations[k];
                list += " (" + std::to_string(x.v) + "," + std::to_string(x.w) + "," +
                        std::to_string(x.alpha) + "," + std::to_string(x.beta) + ")";
            }
            throw NormalizationError("precondition", "strategy is not winning; violations" + list);
        }
    }

    NormalizedStrategy out;
    auto& trace = out.trace;
    const int c = input.colors;
    const auto n = input.alice.size();

    // Schmidt restriction: rotate to the Schmidt bases and keep the d
    // nonzero coefficients.
    const auto sd = schmidt(input.state, input.dA, input.dB, options.rank_tol, tol);
    trace.schmidt_coefficients = sd.coefficients;
    check_unambiguous("schmidt restriction", sd.coefficients, options.rank_tol, tol);
    const int d = static_cast<int>(sd.rank);
    trace.schmidt_rank = d;
    CMatrix left(input.dA, d), right(input.dB, d);
    for (int k = 0; k < d; ++k) {
        left.col(k) = sd.left[k];
        right.col(k) = sd.right[k];
    }
    trace.support = left * left.adjoint();

    POVMStrategy restricted;
    restricted.colors = c;
    restricted.dA = restricted.dB = d;
    restricted.state = CVector::Zero(static_cast<Eigen::Index>(d) * d);
    CMatrix rho = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        restricted.state(k * d + k) = sd.coefficients[k];
        rho(k, k) = sd.coefficients[k] * sd.coefficients[k];
    }
    const double norm = restricted.state.norm();
    restricted.state /= norm;
    rho /= norm * norm;
    trace.rho = rho;
    restricted.alice.resize(n);
    restricted.bob.resize(n);
    for (std::size_t v = 0; v < n; ++v)
        for (int alpha = 0; alpha < c; ++alpha) {
            restricted.alice[v].push_back(left.adjoint() * input.alice[v][alpha] * left);
            restricted.bob[v].push_back(right.adjoint() * input.bob[v][alpha] * right);
        }
    require_winning("schmidt restriction", restricted, g, tol);
    trace.stages.push_back({"schmidt restriction", restricted});

    // Support replacement: E'_{v a} = supp Tr_B((I (x) F''_{v a}) |psi''><psi''|)
    // and symmetrically for Bob.
    const CMatrix m = coefficient_matrix(restricted.state, d, d);
    POVMStrategy projective = restricted;
    for (std::size_t v = 0; v < n; ++v)
        for (int alpha = 0; alpha < c; ++alpha) {
            const CMatrix& e = restricted.alice[v][alpha];
            const CMatrix& f = restricted.bob[v][alpha];
            const CMatrix reduced_a = m * f.transpose() * m.adjoint();
            const CMatrix reduced_b = m.transpose() * e.transpose() * m.conjugate();
            projective.alice[v][alpha] = unambiguous_support("support replacement", reduced_a, options);
            projective.bob[v][alpha] = unambiguous_support("support replacement", reduced_b, options);
        }
    require_projective_families("support replacement", projective.alice, d, tol);
    require_projective_families("support replacement", projective.bob, d, tol);
    require_winning("support replacement", projective, g, tol);
    trace.stages.push_back({"support replacement", projective});

    // Conjugation identity: Alice's projectors are the conjugates of Bob's.
    for (std::size_t v = 0; v < n; ++v)
        for (int alpha = 0; alpha < c; ++alpha)
            if (max_abs_diff(projective.alice[v][alpha], projective.bob[v][alpha].conjugate()) > tol)
                throw NormalizationError("conjugation identity",
                                         "E != conj(F) at vertex " + std::to_string(v) + " color " +
                                             std::to_string(alpha));
    trace.stages.push_back({"conjugation identity", projective});

    // Flatten the Schmidt coefficients to 1/sqrt(d).
    POVMStrategy flat = projective;
    flat.state = maximally_entangled(d);
    require_winning("schmidt flattening", flat, g, tol);
    trace.stages.push_back({"schmidt flattening", flat});

    // Pad to common rank d and local dimension d * c:
    // E_{v a} = sum_i E'_{v, a+i mod c} (x) |i><i|.
    POVMStrategy padded;
    padded.colors = c;
    padded.dA = padded.dB = d * c;
    padded.state = maximally_entangled(static_cast<std::size_t>(d) * c);
    padded.alice.resize(n);
    padded.bob.resize(n);
    for (std::size_t v = 0; v < n; ++v)
        for (int alpha = 0; alpha < c; ++alpha) {
            CMatrix e = CMatrix::Zero(d * c, d * c);
            CMatrix f = CMatrix::Zero(d * c, d * c);
            for (int i = 0; i < c; ++i) {
                const CMatrix ket = projector(basis_vector(c, i));
                e += kron(flat.alice[v][(alpha + i) % c], ket);
                f += kron(flat.bob[v][(alpha + i) % c], ket);
            }
            padded.alice[v].push_back(std::move(e));
            padded.bob[v].push_back(std::move(f));
        }
    trace.stages.push_back({"rank padding", padded});

    const auto report = check_normal_form(padded, g, tol);
    if (!report.projective || report.rank != d)
        throw NormalizationError("rank padding", "projectors are not of common rank " + std::to_string(d));
    if (!report.maximally_entangled)
        throw NormalizationError("rank padding", "state is not maximally entangled");
    if (!report.conjugate)
        throw NormalizationError("rank padding", "conjugation identity lost");
    if (!report.edge_orthogonal)
        throw NormalizationError("edge orthogonality", "<E_v,E_w> != 0 on some edge");
    if (std::abs(report.win_probability - 1.0) > tol)
        throw NormalizationError("edge orthogonality", "win probability " +
                                                           std::to_string(report.win_probability));

    out.strategy = std::move(padded);
    out.rank = d;
    return out;
}

NormalFormReport check_normal_form(const POVMStrategy& s, const Graph& g, double tol) {
    validate_strategy(s, g.vertex_count(), tol);
    NormalFormReport r;

    r.projective = true;
    r.rank = -1;
    for (const auto* povms : {&s.alice, &s.bob})
        for (const auto& family : *povms)
            for (const auto& p : family) {
                if (!is_projector(p, tol)) {
                    r.projective = false;
                    continue;
                }
                const double trace = p.trace().real();
                const int rank = static_cast<int>(std::lround(trace));
                if (rank < 1 || std::abs(trace - rank) > tol * p.rows())
                    r.projective = false;
                else if (r.rank < 0)
                    r.rank = rank;
                else if (rank != r.rank)
                    r.projective = false;
            }
    if (!r.projective)
        r.rank = 0;

    if (r.projective && s.dA == s.dB && s.dA == r.rank * s.colors) {
        const auto sd = schmidt(s.state, s.dA, s.dB);
        const double flat = 1.0 / std::sqrt(static_cast<double>(s.dA));
        r.maximally_entangled = std::all_of(sd.coefficients.begin(), sd.coefficients.end(),
                                            [&](double x) { return std::abs(x - flat) <= tol; });
    }

    r.conjugate = s.dA == s.dB;
    for (std::size_t v = 0; r.conjugate && v < s.alice.size(); ++v)
        for (int alpha = 0; alpha < s.colors; ++alpha)
            if (max_abs_diff(s.alice[v][alpha], s.bob[v][alpha].conjugate()) > tol) {
                r.conjugate = false;
                break;
            }

    r.edge_orthogonal = true;
    for (const auto& [v, w] : g.edges())
        for (int alpha = 0; alpha < s.colors && r.edge_orthogonal; ++alpha)
            if (std::abs(hs_inner(s.alice[v][alpha], s.alice[w][alpha])) > tol)
                r.edge_orthogonal = false;

    r.win_probability = quantum_win_probability(g, s, uniform_questions(g));
    return r;
}

SimulationResult simulate_game(const Graph& g, const ClassicalStrategy& s,
                               const QuestionDistribution& q, std::uint64_t rounds,
                               std::uint64_t seed) {
    if (rounds == 0)
        throw InputError("simulate_game: need at least one round");
    validate_questions(g, q);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(q.weights.begin(), q.weights.end());
    SimulationResult result;
    result.rounds = rounds;
    for (std::uint64_t k = 0; k < rounds; ++k) {
        const auto [v, w] = q.pairs[pick(rng)];
        if (wins(v, w, s.alice[v], s.bob[w]))
            ++result.wins;
    }
    return result;
}

SimulationResult simulate_game(const Graph& g, const POVMStrategy& s, const QuestionDistribution& q,
                               std::uint64_t rounds, std::uint64_t seed) {
    if (rounds == 0)
        throw InputError("simulate_game: need at least one round");
    validate_questions(g, q);
    validate_strategy(s, g.vertex_count());
    const OutcomeEvaluator eval(s);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(q.weights.begin(), q.weights.end());
    std::vector<std::optional<std::discrete_distribution<int>>> outcomes(q.pairs.size());
    SimulationResult result;
    result.rounds = rounds;
    for (std::uint64_t k = 0; k < rounds; ++k) {
        const auto index = pick(rng);
        const auto [v, w] = q.pairs[index];
        auto& outcome = outcomes[index];
        if (!outcome) {
            std::vector<double> p;
            for (int alpha = 0; alpha < s.colors; ++alpha)
                for (int beta = 0; beta < s.colors; ++beta)
                    p.push_back(std::max(0.0, eval.probability(v, alpha, w, beta)));
            outcome.emplace(p.begin(), p.end());
        }
        const int drawn = (*outcome)(rng);
        if (wins(v, w, drawn / s.colors, drawn % s.colors))
            ++result.wins;
    }
    return result;
}

ClassicalOptimum optimal_classical_strategy(const Graph& g, int colors) {
    if (colors < 1)
        throw InputError("optimal_classical_strategy: need at least one color");
    const int n = g.vertex_count();
    double space = std::pow(static_cast<double>(colors), 2.0 * n);
    if (space > 2e8)
        throw InputError("optimal_classical_strategy: strategy space too large");
    const auto q = uniform_questions(g);
    std::uint64_t per_player = 1;
    for (int v = 0; v < n; ++v)
        per_player *= static_cast<std::uint64_t>(colors);

    auto decode = [&](std::uint64_t code) {
        std::vector<int> out(n);
        for (int v = 0; v < n; ++v) {
            out[v] = static_cast<int>(code % colors);
            code /= colors;
        }
        return out;
    };

    ClassicalOptimum best;
    best.total = q.pairs.size();
    best.strategy.colors = colors;
    bool first = true;
    for (std::uint64_t a = 0; a < per_player; ++a) {
        const auto alice = decode(a);
        for (std::uint64_t b = 0; b < per_player; ++b) {
            const auto bob = decode(b);
            std::uint64_t won = 0;
            for (const auto& [v, w] : q.pairs)
                if (wins(v, w, alice[v], bob[w]))
                    ++won;
            if (first || won > best.wins) {
                first = false;
                best.wins = won;
                best.strategy.alice = alice;
                best.strategy.bob = bob;
                if (won == best.total)
                    return best;
            }
        }
    }
    return best;
}

}  // namespace qchrom
