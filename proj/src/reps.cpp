#include "qchrom/reps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "qchrom/error.hpp"

namespace qchrom {

namespace {

constexpr std::size_t kMaxReportedProblems = 20;

std::string edge_name(Vertex v, Vertex w) {
    return "(" + std::to_string(v) + "," + std::to_string(w) + ")";
}

}  // namespace

void VerificationReport::fail(std::string message) {
    ok = false;
    ++problem_count;
    if (problems.size() < kMaxReportedProblems)
        problems.push_back(std::move(message));
}

CMatrix QuantumColoring::element(Vertex v, int alpha) const {
    if (rank == 1)
        return projector(vectors[v][alpha]);
    return projectors[v][alpha];
}

VerificationReport check_orthogonal_representation(const Graph& g,
                                                   const OrthogonalRepresentation& rep,
                                                   double tol) {
    if (static_cast<int>(rep.vectors.size()) != g.vertex_count())
        throw InputError("orthogonal representation covers " + std::to_string(rep.vectors.size()) +
                         " of " + std::to_string(g.vertex_count()) + " vertices");
    VerificationReport report;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& phi = rep.vectors[v];
        if (phi.size() != rep.dimension)
            throw InputError("vector of vertex " + std::to_string(v) + " has dimension " +
                             std::to_string(phi.size()) + ", expected " +
                             std::to_string(rep.dimension));
        if (!is_finite(phi))
            throw InputError("vector of vertex " + std::to_string(v) + " is not finite");
        if (phi.norm() <= tol)
            report.fail("vertex " + std::to_string(v) + ": zero vector");
    }
    for (const auto& [v, w] : g.edges()) {
        const double overlap = std::abs(inner(rep.vectors[v], rep.vectors[w]));
        if (overlap > tol)
            report.fail("edge " + edge_name(v, w) + ": |<phi_v|phi_w>| = " + std::to_string(overlap));
    }
    return report;
}

VerificationReport check_matrix_representation(const Graph& g, const MatrixRepresentation& rep,
                                                double tol) {
    if (static_cast<int>(rep.matrices.size()) != g.vertex_count())
        throw InputError("matrix representation covers " + std::to_string(rep.matrices.size()) +
                         " of " + std::to_string(g.vertex_count()) + " vertices");
    VerificationReport report;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& u = rep.matrices[v];
        if (u.rows() != u.cols())
            throw InputError("matrix of vertex " + std::to_string(v) + " is not square");
        if (u.rows() != rep.dimension)
            throw InputError("matrix of vertex " + std::to_string(v) + " has wrong dimension");
        if (!is_unitary(u, tol))
            report.fail("vertex " + std::to_string(v) + ": matrix not unitary");
    }
    for (const auto& [v, w] : g.edges()) {
        const auto& a = rep.matrices[v];
        const auto& b = rep.matrices[w];
        for (int i = 0; i < rep.dimension; ++i) {
            const double entry = std::abs(a.col(i).dot(b.col(i)));
            if (entry > tol)
                report.fail("edge " + edge_name(v, w) + ": diagonal entry " + std::to_string(i) +
                            " = " + std::to_string(entry));
        }
    }
    return report;
}

VerificationReport check_quantum_coloring(const Graph& g, const QuantumColoring& qc, double tol) {
    if (qc.colors < 1 || qc.rank < 1)
        throw InputError("quantum coloring needs at least one color and rank >= 1");
    if (qc.vertex_count() != g.vertex_count())
        throw InputError("quantum coloring covers " + std::to_string(qc.vertex_count()) + " of " +
                         std::to_string(g.vertex_count()) + " vertices");
    const int dim = qc.dimension();
    VerificationReport report;

    if (qc.rank == 1) {
        for (int v = 0; v < g.vertex_count(); ++v) {
            const auto& basis = qc.vectors[v];
            if (static_cast<int>(basis.size()) != qc.colors)
                throw InputError("vertex " + std::to_string(v) + " has " +
                                 std::to_string(basis.size()) + " measurement vectors, expected " +
                                 std::to_string(qc.colors));
            for (const auto& a : basis)
                if (a.size() != dim || !is_finite(a))
                    throw InputError("vertex " + std::to_string(v) + ": malformed measurement vector");
            if (!is_orthonormal_basis(basis, tol))
                report.fail("vertex " + std::to_string(v) + ": measurement is not an orthonormal basis");
        }
        for (const auto& [v, w] : g.edges())
            for (int alpha = 0; alpha < qc.colors; ++alpha) {
                const double overlap = std::abs(qc.vectors[v][alpha].dot(qc.vectors[w][alpha]));
                if (overlap > tol)
                    report.fail("edge " + edge_name(v, w) + " color " + std::to_string(alpha) +
                                ": |<a_v|a_w>| = " + std::to_string(overlap));
            }
        return report;
    }

    const CMatrix identity = CMatrix::Identity(dim, dim);
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& family = qc.projectors[v];
        if (static_cast<int>(family.size()) != qc.colors)
            throw InputError("vertex " + std::to_string(v) + " has " + std::to_string(family.size()) +
                             " projectors, expected " + std::to_string(qc.colors));
        CMatrix sum = CMatrix::Zero(dim, dim);
        for (int alpha = 0; alpha < qc.colors; ++alpha) {
            const auto& p = family[alpha];
            if (p.rows() != dim || p.cols() != dim || !is_finite(p))
                throw InputError("vertex " + std::to_string(v) + ": malformed projector");
            if (!is_projector(p, tol))
                report.fail("vertex " + std::to_string(v) + " color " + std::to_string(alpha) +
                            ": not an orthogonal projector");
            else if (std::abs(p.trace().real() - qc.rank) > tol * dim)
                report.fail("vertex " + std::to_string(v) + " color " + std::to_string(alpha) +
                            ": projector rank differs from " + std::to_string(qc.rank));
            sum += p;
        }
        if (max_abs_diff(sum, identity) > tol)
            report.fail("vertex " + std::to_string(v) + ": projectors do not sum to identity");
    }
    for (const auto& [v, w] : g.edges())
        for (int alpha = 0; alpha < qc.colors; ++alpha) {
            const double overlap = std::abs(hs_inner(qc.projectors[v][alpha], qc.projectors[w][alpha]));
            if (overlap > tol)
                report.fail("edge " + edge_name(v, w) + " color " + std::to_string(alpha) +
                            ": <E_v,E_w> = " + std::to_string(overlap));
        }
    return report;
}

bool verify_orthogonal_representation(const Graph& g, const OrthogonalRepresentation& rep,
                                      double tol) {
    return check_orthogonal_representation(g, rep, tol).ok;
}

bool verify_matrix_representation(const Graph& g, const MatrixRepresentation& rep, double tol) {
    return check_matrix_representation(g, rep, tol).ok;
}

bool verify_quantum_coloring(const Graph& g, const QuantumColoring& qc, double tol) {
    return check_quantum_coloring(g, qc, tol).ok;
}

QuantumColoring quantum_coloring_from_classical(const Graph& g, const ColoringCertificate& cert) {
    if (!verify_coloring(g, cert))
        throw InputError("quantum_coloring_from_classical: coloring is not proper");
    QuantumColoring qc;
    qc.colors = cert.colors;
    qc.rank = 1;
    qc.vectors.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int alpha = 0; alpha < cert.colors; ++alpha)
            qc.vectors[v].push_back(basis_vector(cert.colors, (alpha + cert.color[v]) % cert.colors));
    return qc;
}

MatrixRepresentation orthrep_to_matrixrep(const Graph& g, int c,
                                          const OrthogonalRepresentation& product_rep, double tol) {
    if (c < 1)
        throw InputError("orthrep_to_matrixrep: need c >= 1");
    if (product_rep.dimension != c)
        throw InputError("orthrep_to_matrixrep: representation dimension " +
                         std::to_string(product_rep.dimension) + " differs from c = " +
                         std::to_string(c));
    const Graph product = cartesian_product(g, complete_graph(c));
    const auto report = check_orthogonal_representation(product, product_rep, tol);
    if (!report.ok)
        throw InputError("orthrep_to_matrixrep: not a representation of G [] K_c: " +
                         report.problems.front());

    MatrixRepresentation out;
    out.dimension = c;
    for (int v = 0; v < g.vertex_count(); ++v) {
        CMatrix u(c, c);
        for (int i = 0; i < c; ++i) {
            const auto& a = product_rep.vectors[product_index({v, i}, c)];
            u.col(i) = a / a.norm();
        }
        if (!is_unitary(u, tol * c))
            throw InternalError("orthrep_to_matrixrep: columns of vertex " + std::to_string(v) +
                                " are not orthonormal");
        out.matrices.push_back(std::move(u));
    }
    return out;
}

OrthogonalRepresentation matrixrep_to_orthrep(const Graph& g, const MatrixRepresentation& rep,
                                              double tol) {
    const auto report = check_matrix_representation(g, rep, tol);
    if (!report.ok)
        throw InputError("matrixrep_to_orthrep: invalid matrix representation: " +
                         report.problems.front());
    const int c = rep.dimension;
    OrthogonalRepresentation out;
    out.dimension = c;
    out.vectors.resize(static_cast<std::size_t>(g.vertex_count()) * c);
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int i = 0; i < c; ++i)
            out.vectors[product_index({v, i}, c)] = rep.matrices[v].col(i);
    return out;
}

MatrixRepresentation matrixrep_from_quantum_coloring(const QuantumColoring& qc) {
    if (qc.rank != 1)
        throw InputError("matrix representations come from rank-1 colorings only");
    MatrixRepresentation out;
    out.dimension = qc.colors;
    for (const auto& basis : qc.vectors) {
        CMatrix u(qc.colors, qc.colors);
        for (int alpha = 0; alpha < qc.colors; ++alpha)
            u.col(alpha) = basis[alpha];
        out.matrices.push_back(std::move(u));
    }
    return out;
}

QuantumColoring quantum_coloring_from_matrixrep(const MatrixRepresentation& rep) {
    QuantumColoring qc;
    qc.colors = rep.dimension;
    qc.rank = 1;
    for (const auto& u : rep.matrices) {
        std::vector<CVector> basis;
        for (int alpha = 0; alpha < rep.dimension; ++alpha)
            basis.push_back(u.col(alpha));
        qc.vectors.push_back(std::move(basis));
    }
    return qc;
}

namespace {

// Block coordinate descent on sum_{(v,w) in E} |<phi_v|phi_w>|^2 over unit
// vectors: each update replaces phi_v by the eigenvector of least
// eigenvalue of sum_{w ~ v} |phi_w><phi_w|, the exact minimizer of the
// terms involving v.
class RepresentationSearch {
public:
    RepresentationSearch(const Graph& g, int c, const SearchOptions& options, std::uint64_t seed)
        : g_(g), c_(c), options_(options), rng_(seed), phi_(g.vertex_count()),
          order_(g.vertex_count()) {
        std::normal_distribution<double> normal;
        for (auto& v : phi_) {
            v.resize(c);
            for (int i = 0; i < c; ++i)
                v(i) = options.real_only ? Complex(normal(rng_), 0.0)
                                         : Complex(normal(rng_), normal(rng_));
            v.normalize();
        }
        for (int v = 0; v < g.vertex_count(); ++v)
            order_[v] = v;
    }

    double max_overlap() const {
        double worst = 0.0;
        for (const auto& [v, w] : g_.edges())
            worst = std::max(worst, std::abs(phi_[v].dot(phi_[w])));
        return worst;
    }

    double penalty() const {
        double total = 0.0;
        for (const auto& [v, w] : g_.edges())
            total += std::norm(phi_[v].dot(phi_[w]));
        return total;
    }

    void sweep() {
        std::shuffle(order_.begin(), order_.end(), rng_);
        for (Vertex v : order_)
            update(v);
    }

    // Runs until every edge overlap is below target or progress stalls.
    bool run(double target) {
        double best = penalty();
        int stalled = 0;
        for (int it = 0; it < options_.iterations; ++it) {
            sweep();
            const double current = penalty();
            if (current < target * target && max_overlap() <= target)
                return true;
            if (current < best * 0.999) {
                best = current;
                stalled = 0;
            } else if (++stalled > 50) {
                return false;
            }
        }
        return max_overlap() <= target;
    }

    const std::vector<CVector>& vectors() const { return phi_; }

private:
    void update(Vertex v) {
        const auto& nbrs = g_.neighbors(v);
        if (nbrs.empty())
            return;
        if (options_.real_only) {
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(c_, c_);
            for (Vertex w : nbrs) {
                const Eigen::VectorXd x = phi_[w].real();
                m.noalias() += x * x.transpose();
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
            phi_[v] = eig.eigenvectors().col(0).cast<Complex>();
        } else {
            CMatrix m = CMatrix::Zero(c_, c_);
            for (Vertex w : nbrs)
                m.noalias() += phi_[w] * phi_[w].adjoint();
            Eigen::SelfAdjointEigenSolver<CMatrix> eig(m);
            phi_[v] = eig.eigenvectors().col(0);
        }
        phi_[v].normalize();
    }

    const Graph& g_;
    int c_;
    const SearchOptions& options_;
    std::mt19937_64 rng_;
    std::vector<CVector> phi_;
    std::vector<Vertex> order_;
};

}  // namespace

SearchResult search_orthogonal_representation(const Graph& g, int c, const SearchOptions& options) {
    if (c < 1)
        throw InputError("search_orthogonal_representation: need c >= 1");
    SearchResult result;
    result.max_overlap = std::numeric_limits<double>::infinity();
    const int n = g.vertex_count();
    if (n == 0) {
        result.found = true;
        result.rep.dimension = c;
        result.restart = 0;
        result.max_overlap = 0;
        return result;
    }
    for (int restart = 0; restart < options.restarts; ++restart) {
        const std::uint64_t seed = options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(restart);
        RepresentationSearch search(g, c, options, seed);
        // Converge loosely, then polish well below the acceptance tolerance.
        const bool close = search.run(1e-6);
        if (close)
            search.run(options.tol * 1e-2);
        const double overlap = search.max_overlap();
        result.max_overlap = std::min(result.max_overlap, overlap);
        if (overlap > options.tol)
            continue;
        OrthogonalRepresentation rep{c, search.vectors()};
        if (verify_orthogonal_representation(g, rep, options.tol)) {
            result.found = true;
            result.rep = std::move(rep);
            result.restart = restart;
            result.max_overlap = overlap;
            return result;
        }
    }
    return result;
}

std::string to_string(WitnessSource source) {
    switch (source) {
    case WitnessSource::Search:
        return "search";
    case WitnessSource::Classical:
        return "classical";
    case WitnessSource::Supplied:
        return "supplied";
    }
    return "unknown";
}

XiBounds xi_bounds(const Graph& g, const SearchOptions& options, Budget budget) {
    XiBounds bounds;
    const auto clique = clique_number(g, budget);
    bounds.lower = std::max(clique.size, g.vertex_count() > 0 ? 1 : 0);
    bounds.lower_exact = clique.exact;

    const auto coloring = dsatur_coloring(g);
    const int fallback = std::max(coloring.colors, 1);
    for (int c = std::max(bounds.lower, 1); c < fallback; ++c) {
        auto found = search_orthogonal_representation(g, c, options);
        if (found.found) {
            bounds.upper = c;
            bounds.upper_witness = std::move(found.rep);
            bounds.upper_source = WitnessSource::Search;
            return bounds;
        }
    }
    bounds.upper = fallback;
    bounds.upper_witness.dimension = fallback;
    for (int v = 0; v < g.vertex_count(); ++v)
        bounds.upper_witness.vectors.push_back(basis_vector(fallback, coloring.color[v]));
    bounds.upper_source = WitnessSource::Classical;
    return bounds;
}

std::optional<ChiQ1Witness> chi_q1_upper_via_product(const Graph& g, int c_max,
                                                     const SearchOptions& options, Budget budget) {
    if (c_max < 1)
        throw InputError("chi_q1_upper_via_product: c_max must be at least 1");
    const int omega = clique_number(g, budget).size;
    for (int c = std::max(omega, 1); c <= c_max; ++c) {
        const Graph product = cartesian_product(g, complete_graph(c));
        auto found = search_orthogonal_representation(product, c, options);
        if (found.found)
            return ChiQ1Witness{c, orthrep_to_matrixrep(g, c, found.rep, options.tol),
                                WitnessSource::Search};
        auto classical = is_c_colorable(g, c, budget);
        if (classical.decision == Decision::Yes) {
            const auto qc = quantum_coloring_from_classical(g, *classical.certificate);
            return ChiQ1Witness{c, matrixrep_from_quantum_coloring(qc), WitnessSource::Classical};
        }
    }
    return std::nullopt;
}

std::string to_string(PSDRejection reason) {
    switch (reason) {
    case PSDRejection::None:
        return "none";
    case PSDRejection::NotSquare:
        return "not square";
    case PSDRejection::NotHermitian:
        return "not symmetric";
    case PSDRejection::NotPSD:
        return "not PSD";
    case PSDRejection::WrongPattern:
        return "wrong pattern";
    case PSDRejection::RankTooHigh:
        return "rank too high";
    case PSDRejection::ZeroGramVector:
        return "zero Gram vector";
    case PSDRejection::FactorResidual:
        return "factor residual";
    }
    return "unknown";
}

PSDCheckResult psd_witness_check(const Graph& g, const PSDWitness& w, double rank_tol, double tol) {
    PSDCheckResult result;
    const auto& a = w.matrix;
    const int n = g.vertex_count();
    auto reject = [&](PSDRejection reason, std::string detail) {
        result.ok = false;
        result.reason = reason;
        result.detail = std::move(detail);
        return result;
    };
    if (a.rows() != a.cols())
        return reject(PSDRejection::NotSquare, "matrix is not square");
    if (a.rows() != n)
        throw InputError("psd witness has size " + std::to_string(a.rows()) + " for a graph on " +
                         std::to_string(n) + " vertices");
    if (!is_finite(a))
        throw InputError("psd witness has non-finite entries");
    if (!is_hermitian(a, tol))
        return reject(PSDRejection::NotHermitian, "matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(a);
    const auto& values = eig.eigenvalues();
    const double largest = n > 0 ? values(n - 1) : 0.0;
    if (n > 0 && values(0) < -tol * std::max(1.0, std::abs(largest)))
        return reject(PSDRejection::NotPSD, "eigenvalue " + std::to_string(values(0)));

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool zero = std::abs(a(i, j)) <= tol;
            if (zero != g.adjacent(i, j))
                return reject(PSDRejection::WrongPattern,
                              "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                                  (zero ? "zero on a non-edge" : "nonzero on an edge"));
        }

    const auto rank = matrix_rank(a, rank_tol);
    if (static_cast<int>(rank) > w.rank)
        return reject(PSDRejection::RankTooHigh,
                      "rank " + std::to_string(rank) + " exceeds " + std::to_string(w.rank));

    for (int i = 0; i < n; ++i)
        if (a(i, i).real() <= tol)
            return reject(PSDRejection::ZeroGramVector, "diagonal entry " + std::to_string(i));

    // Gram factor: phi_i[k] = sqrt(lambda_k) conj(u_k[i]) so <phi_i|phi_j> = A_ij.
    OrthogonalRepresentation rep;
    rep.dimension = std::max(w.rank, 1);
    rep.vectors.assign(n, CVector::Zero(rep.dimension));
    int slot = 0;
    for (int k = n - 1; k >= 0 && slot < rep.dimension; --k) {
        if (values(k) <= rank_tol * largest)
            break;
        const double scale = std::sqrt(values(k));
        for (int i = 0; i < n; ++i)
            rep.vectors[i](slot) = scale * std::conj(eig.eigenvectors()(i, k));
        ++slot;
    }
    if (!verify_orthogonal_representation(g, rep, tol))
        return reject(PSDRejection::FactorResidual,
                      "rank-" + std::to_string(w.rank) + " Gram factor misses orthogonality by more than tol");
    result.ok = true;
    result.rep = std::move(rep);
    return result;
}

QuantumColoring hadamard_quantum_coloring(int N) {
    if (N < 2 || N % 2 != 0)
        throw InputError("hadamard_quantum_coloring: N must be even and at least 2");
    if (N > 24)
        throw InputError("hadamard_quantum_coloring: N too large");
    const auto n = std::size_t{1} << N;
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    std::vector<Complex> omega(N);
    for (int k = 0; k < N; ++k)
        omega[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / N);

    QuantumColoring qc;
    qc.colors = N;
    qc.rank = 1;
    qc.vectors.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        auto& basis = qc.vectors[u];
        basis.reserve(N);
        for (int alpha = 0; alpha < N; ++alpha) {
            CVector a(N);
            for (int j = 0; j < N; ++j) {
                const double sign = ((u >> j) & 1U) ? -1.0 : 1.0;
                a(j) = sign * scale * omega[(j * alpha) % N];
            }
            basis.push_back(std::move(a));
        }
    }
    return qc;
}

}  // namespace qchrom
