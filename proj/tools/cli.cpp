#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

#include <CLI11.hpp>

#include "qchrom/chromatic.hpp"
#include "qchrom/error.hpp"
#include "qchrom/game.hpp"
#include "qchrom/graph.hpp"
#include "qchrom/io.hpp"
#include "qchrom/ks.hpp"
#include "qchrom/reps.hpp"

namespace qchrom::cli {

using io::json;

namespace {

struct Context {
    io::Metadata meta;
    std::string cert_path;  // write the certificate here instead of embedding it
    std::vector<std::string> warnings;
    std::string summary;
    json report = json::object();
};

int parse_int(const std::string& text, const std::string& what) {
    int value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw InputError("bad " + what + " '" + text + "'");
    return value;
}

json load_json(const std::string& path) {
    try {
        return json::parse(io::read_file(path));
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

// Graph specs: a DIMACS file, a vector-set .json (its orthogonality graph),
// or builtin:K<n> | builtin:C<n> | builtin:petersen | builtin:hadamard<N>.
Graph load_graph(const std::string& spec, Context& ctx) {
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string name = spec.substr(prefix.size());
        if (name == "petersen")
            return petersen_graph();
        if (name.rfind("hadamard", 0) == 0)
            return hadamard_graph(parse_int(name.substr(8), "hadamard order"));
        if (!name.empty() && name[0] == 'K')
            return complete_graph(parse_int(name.substr(1), "clique size"));
        if (!name.empty() && name[0] == 'C')
            return cycle_graph(parse_int(name.substr(1), "cycle length"));
        throw InputError("unknown builtin graph '" + name + "'");
    }
    if (std::filesystem::path(spec).extension() == ".json")
        return orthogonality_graph(io::parse_vector_set(load_json(spec), ctx.meta.tol).set);
    auto parsed = io::read_dimacs_file(spec);
    for (auto& w : parsed.warnings)
        ctx.warnings.push_back(spec + ": " + w);
    return parsed.graph;
}

// Accepts a certificate, a report embedding one, or (when exactly one kind
// is expected) a bare payload.
json load_certificate(const std::string& path, const std::vector<std::string>& kinds) {
    json j = load_json(path);
    if (j.is_object() && !j.contains("kind") && j.contains("certificate"))
        j = j["certificate"];
    if (j.is_object() && j.contains("kind")) {
        const auto& kind = io::certificate_kind(j);
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
            throw InputError(path + ": unexpected certificate kind '" + kind + "'");
        return j;
    }
    if (kinds.size() != 1)
        throw InputError(path + ": not a certificate (missing 'kind')");
    return {{"kind", kinds.front()}, {"payload", j}};
}

void emit_certificate(Context& ctx, const std::string& kind, json payload) {
    json cert = io::certificate(kind, std::move(payload), ctx.meta);
    if (ctx.cert_path.empty()) {
        ctx.report["certificate"] = std::move(cert);
    } else {
        io::write_file(ctx.cert_path, cert.dump(1) + "\n");
        ctx.report["certificate_file"] = ctx.cert_path;
    }
}

Budget make_budget(const Context& ctx) {
    Budget b;
    b.limit = ctx.meta.budget;
    return b;
}

SearchOptions search_options(const Context& ctx, int restarts, int iterations, bool real_only) {
    SearchOptions o;
    o.seed = ctx.meta.seed;
    o.tol = ctx.meta.tol;
    o.restarts = restarts;
    o.iterations = iterations;
    o.real_only = real_only;
    return o;
}

json report_json(const VerificationReport& r) {
    return {{"ok", r.ok}, {"problem_count", r.problem_count}, {"problems", r.problems}};
}

std::string decision_name(Decision d) {
    switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::BudgetExceeded: return "budget exceeded";
    }
    return "?";
}

// ---- graph commands ----

int cmd_chi(Context& ctx, const std::string& graph) {
    const Graph g = load_graph(graph, ctx);
    Budget budget = make_budget(ctx);
    const auto r = chromatic_number(g, budget);
    auto& rep = ctx.report;
    rep["vertices"] = g.vertex_count();
    rep["edges"] = g.edge_count();
    rep["exact"] = r.exact;
    rep["chi"] = r.exact ? json(r.chromatic) : json(nullptr);
    rep["lower"] = r.lower;
    rep["upper"] = r.upper;
    rep["clique"] = r.clique;
    rep["nodes"] = r.nodes;
    emit_certificate(ctx, "coloring", io::coloring_payload(r.certificate));
    ctx.summary = r.exact ? "chi = " + std::to_string(r.chromatic)
                          : "budget exceeded: " + std::to_string(r.lower) + " <= chi <= " +
                                std::to_string(r.upper);
    return r.exact ? kYes : kBudgetExceeded;
}

int cmd_colorable(Context& ctx, const std::string& graph, int colors) {
    const Graph g = load_graph(graph, ctx);
    if (colors < 0)
        throw InputError("--colors must be nonnegative");
    Budget budget = make_budget(ctx);
    const auto r = is_c_colorable(g, colors, budget);
    ctx.report["colors"] = colors;
    ctx.report["decision"] = decision_name(r.decision);
    ctx.report["nodes"] = r.nodes;
    if (r.certificate)
        emit_certificate(ctx, "coloring", io::coloring_payload(*r.certificate));
    ctx.summary = std::to_string(colors) + "-colorable: " + decision_name(r.decision);
    switch (r.decision) {
    case Decision::Yes: return kYes;
    case Decision::No: return kNo;
    default: return kBudgetExceeded;
    }
}

int cmd_clique(Context& ctx, const std::string& graph) {
    const Graph g = load_graph(graph, ctx);
    Budget budget = make_budget(ctx);
    const auto r = clique_number(g, budget);
    ctx.report["omega"] = r.size;
    ctx.report["clique"] = r.clique;
    ctx.report["exact"] = r.exact;
    ctx.report["nodes"] = r.nodes;
    ctx.summary = (r.exact ? "omega = " : "omega >= ") + std::to_string(r.size);
    return r.exact ? kYes : kBudgetExceeded;
}

int cmd_xi_bounds(Context& ctx, const std::string& graph, const SearchOptions& opts) {
    const Graph g = load_graph(graph, ctx);
    const auto r = xi_bounds(g, opts, make_budget(ctx));
    ctx.report["lower"] = r.lower;
    ctx.report["lower_exact"] = r.lower_exact;
    ctx.report["upper"] = r.upper;
    ctx.report["upper_source"] = to_string(r.upper_source);
    emit_certificate(ctx, "orthrep", io::orthrep_payload(r.upper_witness));
    ctx.summary = std::to_string(r.lower) + " <= xi <= " + std::to_string(r.upper);
    return r.lower_exact ? kYes : kBudgetExceeded;
}

int cmd_chiq1(Context& ctx, const std::string& graph, int c_max, const SearchOptions& opts) {
    const Graph g = load_graph(graph, ctx);
    const auto r = chi_q1_upper_via_product(g, c_max, opts, make_budget(ctx));
    ctx.report["cmax"] = c_max;
    if (!r) {
        ctx.report["found"] = false;
        ctx.summary = "no witness with at most " + std::to_string(c_max) + " colors";
        return kNo;
    }
    ctx.report["found"] = true;
    ctx.report["chi_q1_upper"] = r->colors;
    ctx.report["source"] = to_string(r->source);
    emit_certificate(ctx, "matrixrep", io::matrixrep_payload(r->witness));
    ctx.summary = "chi_q1 <= " + std::to_string(r->colors);
    return kYes;
}

// ---- verification ----

int verify_loaded(Context& ctx, const std::string& target, const json& cert) {
    const std::string kind = io::certificate_kind(cert);
    const json& payload = io::certificate_payload(cert, kind);
    const double tol = ctx.meta.tol;
    ctx.report["kind"] = kind;
    bool ok = false;
    if (kind == "ks-witness") {
        const auto set = io::parse_vector_set(load_json(target), tol).set;
        KSMode mode = KSMode::Strict;
        const auto labels = io::ks_witness_from_payload(payload, set, mode);
        ok = validate_ks_witness(set, labels, mode);
        ctx.report["ok"] = ok;
    } else {
        const Graph g = load_graph(target, ctx);
        if (kind == "coloring") {
            const auto c = io::coloring_from_payload(payload);
            ok = verify_coloring(g, c);
            json conflicts = json::array();
            for (const auto& [u, v] : g.edges())
                if (c.color[u] == c.color[v])
                    conflicts.push_back({u, v});
            ctx.report["ok"] = ok;
            ctx.report["colors"] = c.colors;
            ctx.report["conflicts"] = conflicts;
        } else if (kind == "orthrep") {
            const auto r = check_orthogonal_representation(g, io::orthrep_from_payload(payload), tol);
            ok = r.ok;
            ctx.report.update(report_json(r));
        } else if (kind == "matrixrep") {
            const auto r = check_matrix_representation(g, io::matrixrep_from_payload(payload), tol);
            ok = r.ok;
            ctx.report.update(report_json(r));
        } else if (kind == "qcoloring") {
            const auto r = check_quantum_coloring(g, io::qcoloring_from_payload(payload), tol);
            ok = r.ok;
            ctx.report.update(report_json(r));
        } else if (kind == "psd-witness") {
            const auto r = psd_witness_check(g, io::psd_witness_from_payload(payload),
                                             ctx.meta.rank_tol, tol);
            ok = r.ok;
            ctx.report["ok"] = ok;
            ctx.report["reason"] = to_string(r.reason);
            ctx.report["detail"] = r.detail;
            if (ok)
                emit_certificate(ctx, "orthrep", io::orthrep_payload(r.rep));
        } else {
            throw InputError("unknown certificate kind '" + kind + "'");
        }
    }
    ctx.summary = kind + (ok ? ": accepted" : ": rejected");
    return ok ? kYes : kNo;
}

int cmd_verify(Context& ctx, const std::string& target, const std::string& cert_path,
               const std::vector<std::string>& kinds) {
    return verify_loaded(ctx, target, load_certificate(cert_path, kinds));
}

int cmd_hadamard(Context& ctx, int N, bool verify) {
    const auto qc = hadamard_quantum_coloring(N);
    ctx.report["N"] = N;
    ctx.report["vertices"] = qc.vertex_count();
    ctx.report["colors"] = qc.colors;
    bool ok = true;
    if (verify) {
        const auto r = check_quantum_coloring(hadamard_graph(N), qc, ctx.meta.tol);
        ok = r.ok;
        ctx.report["verification"] = report_json(r);
    }
    emit_certificate(ctx, "qcoloring", io::qcoloring_payload(qc));
    ctx.summary = "quantum " + std::to_string(N) + "-coloring of G_" + std::to_string(N) +
                  (verify ? (ok ? " (verified)" : " (FAILED verification)") : "");
    return ok ? kYes : kNo;
}

// ---- Kochen-Specker ----

int cmd_ks_check(Context& ctx, const std::string& path, bool weak, bool oracle) {
    const auto parsed = io::parse_vector_set(load_json(path), ctx.meta.tol);
    const auto& set = parsed.set;
    const auto d = weak ? weak_ks_check(set) : ks_check(set);
    auto& rep = ctx.report;
    rep["dimension"] = set.dimension;
    rep["rays"] = set.size();
    rep["merged"] = parsed.merged;
    rep["bases"] = d.bases;
    rep["orthogonal_pairs"] = orthogonality_graph(set).edge_count();
    rep["is_ks"] = d.is_ks;
    rep["is_weak_ks"] = d.is_weak_ks;
    rep["method"] = "backtracking";
    rep["nodes"] = d.nodes;
    if (oracle) {
        const auto o = brute_force_ks(set, weak ? KSMode::Weak : KSMode::Strict);
        const bool agree = o.is_ks == d.is_ks && o.is_weak_ks == d.is_weak_ks;
        rep["oracle"] = {{"method", "brute-force"}, {"is_ks", o.is_ks}, {"is_weak_ks", o.is_weak_ks},
                         {"agrees", agree}};
        if (!agree)
            throw InternalError("backtracking and brute force disagree on " + path);
    }
    if (d.witness) {
        if (!validate_ks_witness(set, *d.witness, d.witness_mode))
            throw InternalError("labeling search produced an invalid witness");
        emit_certificate(ctx, "ks-witness", io::ks_witness_payload(set, *d.witness, d.witness_mode));
    }
    const bool holds = weak ? d.is_weak_ks : d.is_ks;
    ctx.summary = std::to_string(set.size()) + " rays in C^" + std::to_string(set.dimension) + ": " +
                  (d.is_ks ? "KS" : "not KS") + ", " + (d.is_weak_ks ? "weak KS" : "not weak KS");
    return holds ? kYes : kNo;
}

// ---- game ----

void check_vertex_count(const io::StrategyFile& s, const Graph& g) {
    const std::size_t n = s.quantum ? s.povm.alice.size() : s.classical.alice.size();
    if (n != static_cast<std::size_t>(g.vertex_count()))
        throw InputError("strategy covers " + std::to_string(n) + " vertices, graph has " +
                         std::to_string(g.vertex_count()));
}

io::StrategyFile load_strategy(const std::string& path, const Graph& g) {
    auto s = io::parse_strategy(load_json(path));
    check_vertex_count(s, g);
    return s;
}

bool near_one(double p, double tol) { return std::abs(p - 1.0) <= tol; }

int cmd_game_exact(Context& ctx, const std::string& graph, const std::string& strategy) {
    const Graph g = load_graph(graph, ctx);
    const auto s = load_strategy(strategy, g);
    const auto q = uniform_questions(g);
    const double p = s.quantum ? quantum_win_probability(g, s.povm, q)
                               : classical_win_probability(g, s.classical, q);
    ctx.report["type"] = s.quantum ? "quantum" : "classical";
    ctx.report["win_probability"] = p;
    ctx.report["question_pairs"] = q.pairs.size();
    const bool wins = near_one(p, ctx.meta.tol);
    ctx.summary = "win probability " + std::to_string(p);
    return wins ? kYes : kNo;
}

int cmd_game_simulate(Context& ctx, const std::string& graph, const std::string& strategy,
                      std::uint64_t rounds) {
    const Graph g = load_graph(graph, ctx);
    const auto s = load_strategy(strategy, g);
    const auto q = uniform_questions(g);
    const auto r = s.quantum ? simulate_game(g, s.povm, q, rounds, ctx.meta.seed)
                             : simulate_game(g, s.classical, q, rounds, ctx.meta.seed);
    ctx.report["rounds"] = r.rounds;
    ctx.report["wins"] = r.wins;
    ctx.report["rate"] = r.rate();
    ctx.summary = std::to_string(r.wins) + "/" + std::to_string(r.rounds) + " rounds won";
    return r.wins == r.rounds ? kYes : kNo;
}

int cmd_game_check(Context& ctx, const std::string& graph, const std::string& strategy) {
    const Graph g = load_graph(graph, ctx);
    const auto s = load_strategy(strategy, g);
    json violations = json::array();
    bool ok = true;
    if (s.quantum) {
        const auto r = check_consistency(s.povm, g, ctx.meta.tol);
        ok = r.ok;
        for (const auto& v : r.violations)
            violations.push_back({{"condition", v.same_vertex ? "same-vertex" : "edge"},
                                  {"v", v.v}, {"w", v.w}, {"alpha", v.alpha}, {"beta", v.beta},
                                  {"probability", v.probability}});
    } else {
        const auto& c = s.classical;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (c.alice[v] != c.bob[v]) {
                ok = false;
                violations.push_back({{"condition", "same-vertex"}, {"v", v}, {"w", v},
                                      {"alpha", c.alice[v]}, {"beta", c.bob[v]}, {"probability", 1.0}});
            }
        for (const auto& [u, v] : g.edges())
            for (const auto& [a, b] : {std::pair{u, v}, std::pair{v, u}})
                if (c.alice[a] == c.bob[b]) {
                    ok = false;
                    violations.push_back({{"condition", "edge"}, {"v", a}, {"w", b},
                                          {"alpha", c.alice[a]}, {"beta", c.bob[b]},
                                          {"probability", 1.0}});
                }
    }
    ctx.report["consistent"] = ok;
    ctx.report["violations"] = violations;
    ctx.summary = ok ? "consistent" : std::to_string(violations.size()) + " violations";
    return ok ? kYes : kNo;
}

int cmd_game_normalize(Context& ctx, const std::string& graph, const std::string& strategy) {
    const Graph g = load_graph(graph, ctx);
    const auto s = load_strategy(strategy, g);
    if (!s.quantum)
        throw InputError("normalize expects a quantum strategy");
    NormalizationOptions opts;
    opts.tol = ctx.meta.tol;
    opts.rank_tol = ctx.meta.rank_tol;
    try {
        const auto n = normalize_strategy(s.povm, g, opts);
        const auto check = check_normal_form(n.strategy, g, ctx.meta.tol);
        json stages = json::array();
        for (const auto& st : n.trace.stages)
            stages.push_back(st.name);
        ctx.report["rank"] = n.rank;
        ctx.report["local_dimension"] = n.strategy.dA;
        ctx.report["schmidt_rank"] = n.trace.schmidt_rank;
        ctx.report["schmidt_coefficients"] = n.trace.schmidt_coefficients;
        ctx.report["stages"] = stages;
        ctx.report["normal_form"] = {{"projective", check.projective},
                                     {"maximally_entangled", check.maximally_entangled},
                                     {"conjugate", check.conjugate},
                                     {"edge_orthogonal", check.edge_orthogonal},
                                     {"win_probability", check.win_probability}};
        const json out = io::strategy_to_json(n.strategy);
        if (ctx.cert_path.empty()) {
            ctx.report["strategy"] = out;
        } else {
            io::write_file(ctx.cert_path, out.dump(1) + "\n");
            ctx.report["strategy_file"] = ctx.cert_path;
        }
        ctx.summary = "normal form of rank " + std::to_string(n.rank) + ", local dimension " +
                      std::to_string(n.strategy.dA);
        return check.all() ? kYes : kNo;
    } catch (const NormalizationError& e) {
        ctx.report["failed_stage"] = e.stage();
        ctx.report["reason"] = e.what();
        ctx.summary = std::string("normalization failed: ") + e.what();
        return kNo;
    }
}

int cmd_game_from_coloring(Context& ctx, const std::string& graph, const std::string& cert_path) {
    const Graph g = load_graph(graph, ctx);
    const json cert = load_certificate(cert_path, {"qcoloring", "coloring"});
    QuantumColoring qc;
    if (io::certificate_kind(cert) == "coloring") {
        const auto c = io::coloring_from_payload(io::certificate_payload(cert, "coloring"));
        if (!verify_coloring(g, c))
            throw InputError("coloring is not proper");
        qc = quantum_coloring_from_classical(g, c);
    } else {
        qc = io::qcoloring_from_payload(io::certificate_payload(cert, "qcoloring"));
    }
    const auto r = check_quantum_coloring(g, qc, ctx.meta.tol);
    if (!r.ok)
        throw InputError("quantum coloring does not verify: " +
                         (r.problems.empty() ? std::string() : r.problems.front()));
    if (qc.rank != 1)
        throw InputError("from-coloring expects a rank-1 coloring");
    const json out = io::strategy_to_json(strategy_from_quantum_coloring(qc));
    if (ctx.cert_path.empty()) {
        ctx.report["strategy"] = out;
    } else {
        io::write_file(ctx.cert_path, out.dump(1) + "\n");
        ctx.report["strategy_file"] = ctx.cert_path;
    }
    ctx.summary = "strategy with " + std::to_string(qc.colors) + " colors";
    return kYes;
}

int cmd_game_classical(Context& ctx, const std::string& graph, int colors) {
    const Graph g = load_graph(graph, ctx);
    const auto r = optimal_classical_strategy(g, colors);
    const auto div = std::gcd(r.wins, r.total);
    ctx.report["colors"] = colors;
    ctx.report["wins"] = r.wins;
    ctx.report["total"] = r.total;
    ctx.report["max_win_probability"] =
        std::to_string(r.wins / (div ? div : 1)) + "/" + std::to_string(r.total / (div ? div : 1));
    ctx.report["strategy"] = io::strategy_to_json(r.strategy);
    ctx.summary = "best classical strategy wins " + std::to_string(r.wins) + " of " +
                  std::to_string(r.total) + " question pairs";
    return r.wins == r.total ? kYes : kNo;
}

// ---- make-graph ----

int cmd_make_graph(Context& ctx, const std::string& kind, int n, const std::vector<std::string>& inputs,
                   const std::string& output) {
    auto need = [&](std::size_t count) {
        if (inputs.size() != count)
            throw InputError("make-graph " + kind + " takes " + std::to_string(count) + " input(s)");
    };
    Graph g;
    if (kind == "complete") {
        g = complete_graph(n);
    } else if (kind == "cycle") {
        g = cycle_graph(n);
    } else if (kind == "petersen") {
        g = petersen_graph();
    } else if (kind == "hadamard") {
        g = hadamard_graph(n);
    } else if (kind == "product") {
        need(2);
        g = cartesian_product(load_graph(inputs[0], ctx), load_graph(inputs[1], ctx));
    } else if (kind == "complement") {
        need(1);
        g = complement(load_graph(inputs[0], ctx));
    } else if (kind == "orthogonality") {
        need(1);
        g = orthogonality_graph(io::parse_vector_set(load_json(inputs[0]), ctx.meta.tol).set);
    } else {
        throw InputError("unknown graph kind '" + kind + "'");
    }
    const std::string text = io::write_dimacs(g);
    ctx.report["vertices"] = g.vertex_count();
    ctx.report["edges"] = g.edge_count();
    if (output.empty()) {
        ctx.report["dimacs"] = text;
    } else {
        io::write_file(output, text);
        ctx.report["file"] = output;
    }
    ctx.summary = kind + " graph: " + std::to_string(g.vertex_count()) + " vertices, " +
                  std::to_string(g.edge_count()) + " edges";
    return kYes;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum chromatic numbers, orthogonal representations and Kochen-Specker sets",
                 io::kToolName};
    app.fallthrough();
    app.require_subcommand(1);

    Context ctx;
    ctx.meta.budget = Budget{}.limit;
    app.add_option("--tol", ctx.meta.tol, "absolute tolerance")->capture_default_str();
    app.add_option("--rank-tol", ctx.meta.rank_tol, "relative rank tolerance")->capture_default_str();
    app.add_option("--seed", ctx.meta.seed, "random seed")->capture_default_str();
    app.add_option("--budget", ctx.meta.budget, "search node budget")->capture_default_str();
    app.add_option("--cert", ctx.cert_path, "write the certificate to this file");

    std::string graph, second, kind, output;
    std::vector<std::string> inputs;
    int colors = 0, cmax = 0, N = 0, n = 0;
    int restarts = SearchOptions{}.restarts, iterations = SearchOptions{}.iterations;
    bool real_only = false, weak = false, oracle = false, no_verify = false;
    std::uint64_t rounds = 10000;
    std::function<int()> action;

    auto add_search_flags = [&](CLI::App* sub) {
        sub->add_option("--restarts", restarts, "search restarts per dimension")->capture_default_str();
        sub->add_option("--iterations", iterations, "sweeps per restart")->capture_default_str();
        sub->add_flag("--real", real_only, "search real vectors only");
    };

    auto* chi = app.add_subcommand("chi", "exact chromatic number");
    chi->add_option("graph", graph)->required();
    chi->callback([&] { action = [&] { return cmd_chi(ctx, graph); }; });

    auto* col = app.add_subcommand("colorable", "decide c-colorability");
    col->add_option("graph", graph)->required();
    col->add_option("--colors,-c", colors)->required();
    col->callback([&] { action = [&] { return cmd_colorable(ctx, graph, colors); }; });

    auto* clq = app.add_subcommand("clique", "exact clique number");
    clq->add_option("graph", graph)->required();
    clq->callback([&] { action = [&] { return cmd_clique(ctx, graph); }; });

    auto* xi = app.add_subcommand("xi-bounds", "bounds on the orthogonal rank");
    xi->add_option("graph", graph)->required();
    add_search_flags(xi);
    xi->callback([&] {
        action = [&] {
            return cmd_xi_bounds(ctx, graph, search_options(ctx, restarts, iterations, real_only));
        };
    });

    auto* cq = app.add_subcommand("chiq1", "upper bound on the rank-1 quantum chromatic number");
    cq->add_option("graph", graph)->required();
    cq->add_option("--cmax", cmax)->required();
    add_search_flags(cq);
    cq->callback([&] {
        action = [&] {
            return cmd_chiq1(ctx, graph, cmax, search_options(ctx, restarts, iterations, real_only));
        };
    });

    auto* ver = app.add_subcommand("verify", "re-verify any certificate");
    ver->add_option("target", graph, "graph, or vector set for ks-witness")->required();
    ver->add_option("certificate", second)->required();
    ver->callback([&] {
        action = [&] {
            return cmd_verify(ctx, graph, second,
                              {"coloring", "orthrep", "matrixrep", "qcoloring", "ks-witness", "psd-witness"});
        };
    });

    auto* vrep = app.add_subcommand("verify-rep", "verify an orthogonal or matrix representation");
    vrep->add_option("graph", graph)->required();
    vrep->add_option("certificate", second)->required();
    vrep->callback([&] { action = [&] { return cmd_verify(ctx, graph, second, {"orthrep", "matrixrep"}); }; });

    auto* vqc = app.add_subcommand("verify-qcoloring", "verify a quantum coloring");
    vqc->add_option("graph", graph)->required();
    vqc->add_option("certificate", second)->required();
    vqc->callback([&] { action = [&] { return cmd_verify(ctx, graph, second, {"qcoloring"}); }; });

    auto* psd = app.add_subcommand("psd-witness", "check a PSD minimum-rank witness");
    psd->add_option("graph", graph)->required();
    psd->add_option("witness", second)->required();
    psd->callback([&] { action = [&] { return cmd_verify(ctx, graph, second, {"psd-witness"}); }; });

    auto* had = app.add_subcommand("hadamard-coloring", "quantum N-coloring of the Hadamard graph");
    had->add_option("-N", N)->required();
    had->add_flag("--no-verify", no_verify, "skip verification against G_N");
    had->callback([&] { action = [&] { return cmd_hadamard(ctx, N, !no_verify); }; });

    auto* ks = app.add_subcommand("ks-check", "decide the Kochen-Specker property of a vector set");
    ks->add_option("vectors", graph)->required();
    ks->add_flag("--weak", weak, "exit status reflects the weak property");
    ks->add_flag("--oracle", oracle, "cross-check by brute force (at most 25 rays)");
    ks->callback([&] { action = [&] { return cmd_ks_check(ctx, graph, weak, oracle); }; });

    auto* game = app.add_subcommand("game", "the graph coloring game");
    game->require_subcommand(1);
    auto* gexact = game->add_subcommand("exact", "exact win probability");
    gexact->add_option("graph", graph)->required();
    gexact->add_option("strategy", second)->required();
    gexact->callback([&] { action = [&] { return cmd_game_exact(ctx, graph, second); }; });
    auto* gsim = game->add_subcommand("simulate", "Monte Carlo play");
    gsim->add_option("graph", graph)->required();
    gsim->add_option("strategy", second)->required();
    gsim->add_option("--rounds", rounds)->capture_default_str();
    gsim->callback([&] { action = [&] { return cmd_game_simulate(ctx, graph, second, rounds); }; });
    auto* gcheck = game->add_subcommand("check", "consistency conditions");
    gcheck->add_option("graph", graph)->required();
    gcheck->add_option("strategy", second)->required();
    gcheck->callback([&] { action = [&] { return cmd_game_check(ctx, graph, second); }; });
    auto* gnorm = game->add_subcommand("normalize", "normal form of a winning strategy");
    gnorm->add_option("graph", graph)->required();
    gnorm->add_option("strategy", second)->required();
    gnorm->callback([&] { action = [&] { return cmd_game_normalize(ctx, graph, second); }; });
    auto* gfrom = game->add_subcommand("from-coloring", "strategy from a (quantum) coloring");
    gfrom->add_option("graph", graph)->required();
    gfrom->add_option("coloring", second)->required();
    gfrom->callback([&] { action = [&] { return cmd_game_from_coloring(ctx, graph, second); }; });
    auto* gclass = game->add_subcommand("classical-optimum", "exhaustive best classical strategy");
    gclass->add_option("graph", graph)->required();
    gclass->add_option("--colors,-c", colors)->required();
    gclass->callback([&] { action = [&] { return cmd_game_classical(ctx, graph, colors); }; });

    auto* mk = app.add_subcommand("make-graph", "write a DIMACS graph");
    mk->add_option("kind", kind, "complete | cycle | petersen | hadamard | product | complement | orthogonality")
        ->required();
    mk->add_option("inputs", inputs, "input graphs or vector set");
    mk->add_option("-n", n, "size parameter");
    mk->add_option("-o,--output", output, "output file");
    mk->callback([&] { action = [&] { return cmd_make_graph(ctx, kind, n, inputs, output); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, err, err);
        if (code == 0)
            return kYes;
        out << json{{"error", e.what()}}.dump(2) << "\n";
        return kInputError;
    }

    std::string command;
    for (const auto* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        command += (command.empty() ? "" : " ") + sub->get_name();
    }

    int code = kInputError;
    try {
        if (!(ctx.meta.tol > 0) || !(ctx.meta.rank_tol > 0))
            throw InputError("tolerances must be positive");
        code = action();
    } catch (const InternalError& e) {
        ctx.report["error"] = std::string("internal: ") + e.what();
        ctx.summary = std::string("internal error: ") + e.what();
    } catch (const std::exception& e) {
        ctx.report["error"] = e.what();
        ctx.summary = std::string("error: ") + e.what();
    }
    json report = {{"command", command}, {"exit_code", code}};
    report.update(ctx.report);
    if (!ctx.warnings.empty())
        report["warnings"] = ctx.warnings;
    report["metadata"] = io::metadata_to_json(ctx.meta);
    out << report.dump(2) << "\n";
    err << command << ": " << ctx.summary << "\n";
    for (const auto& w : ctx.warnings)
        err << "warning: " << w << "\n";
    return code;
}

}  // namespace qchrom::cli
