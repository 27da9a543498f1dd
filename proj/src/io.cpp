#include "qchrom/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qchrom/error.hpp"

namespace qchrom::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object())
        throw InputError(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(std::string("missing field '") + key + "'");
    return *it;
}

int int_field(const json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer())
        throw InputError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

double finite_number(const json& j) {
    if (!j.is_number())
        throw InputError("expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x))
        throw InputError("non-finite number");
    return x;
}

const json& array_of(const json& j, std::size_t size, const char* what) {
    if (!j.is_array())
        throw InputError(std::string(what) + " must be an array");
    if (size != static_cast<std::size_t>(-1) && j.size() != size)
        throw InputError(std::string(what) + " has length " + std::to_string(j.size()) +
                         ", expected " + std::to_string(size));
    return j;
}

}  // namespace

DimacsGraph parse_dimacs(std::string_view text) {
    DimacsGraph out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int n = -1;
    long declared_edges = -1;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    auto fail = [&](const std::string& msg) {
        throw InputError("DIMACS line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c")
            continue;
        if (tag == "p") {
            std::string format;
            if (n >= 0)
                fail("second problem line");
            if (!(ls >> format >> n >> declared_edges) || (format != "edge" && format != "col"))
                fail("expected 'p edge <n> <m>'");
            if (n < 0 || declared_edges < 0)
                fail("negative counts in problem line");
        } else if (tag == "e") {
            if (n < 0)
                fail("edge before problem line");
            long u = 0, v = 0;
            if (!(ls >> u >> v))
                fail("expected 'e <u> <v>'");
            if (u < 1 || v < 1 || u > n || v > n)
                fail("vertex out of range 1.." + std::to_string(n) + " (DIMACS is 1-indexed)");
            if (u == v)
                fail("self-loop");
            Edge e{static_cast<Vertex>(std::min(u, v) - 1), static_cast<Vertex>(std::max(u, v) - 1)};
            if (!seen.insert(e).second) {
                out.warnings.push_back("line " + std::to_string(line_no) + ": duplicate edge dropped");
                continue;
            }
            edges.push_back(e);
        } else {
            fail("unknown line type '" + tag + "'");
        }
    }
    if (n < 0)
        throw InputError("DIMACS: missing problem line");
    if (static_cast<long>(edges.size()) != declared_edges)
        out.warnings.push_back("header declares " + std::to_string(declared_edges) + " edges, found " +
                               std::to_string(edges.size()));
    out.graph = Graph(n, edges);
    return out;
}

std::string write_dimacs(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (const auto& [u, v] : g.edges())
        out << "e " << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << contents;
}

DimacsGraph read_dimacs_file(const std::filesystem::path& path) { return parse_dimacs(read_file(path)); }

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InputError("complex numbers are [re, im] pairs");
    return {finite_number(j[0]), finite_number(j[1])};
}

json vector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(complex_to_json(v(i)));
    return out;
}

CVector vector_from_json(const json& j, int dimension) {
    array_of(j, dimension < 0 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(dimension),
             "coordinate list");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

json matrix_to_json(const CMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            out.push_back(complex_to_json(m(i, k)));
    return out;
}

CMatrix matrix_from_json(const json& j, int rows, int cols) {
    array_of(j, static_cast<std::size_t>(rows) * cols, "matrix");
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k)
            m(i, k) = complex_from_json(j[static_cast<std::size_t>(i) * cols + k]);
    return m;
}

CanonicalizeReport parse_vector_set(const json& j, double default_tol) {
    const int d = int_field(j, "dimension");
    if (d < 1)
        throw InputError("vector set dimension must be positive");
    double tol = default_tol;
    if (j.contains("tolerance"))
        tol = finite_number(j["tolerance"]);
    const auto& list = array_of(field(j, "vectors"), static_cast<std::size_t>(-1), "vectors");
    std::vector<RawVector> raw;
    for (const auto& item : list) {
        const auto& id = field(item, "id");
        if (!id.is_string())
            throw InputError("vector id must be a string");
        const auto& coords = field(item, "coords");
        if (!coords.is_array() || static_cast<int>(coords.size()) != d)
            throw InputError("vector '" + id.get<std::string>() + "' has " +
                             std::to_string(coords.is_array() ? coords.size() : 0) +
                             " coordinates, expected " + std::to_string(d));
        raw.push_back({id.get<std::string>(), vector_from_json(coords, d)});
    }
    auto report = canonicalize(raw, tol);
    report.set.dimension = d;
    return report;
}

json vector_set_to_json(const VectorSet& s) {
    json vectors = json::array();
    for (const auto& r : s.rays)
        vectors.push_back({{"id", r.ids.front()}, {"coords", vector_to_json(r.vector)}});
    return {{"dimension", s.dimension}, {"tolerance", s.tol}, {"vectors", vectors}};
}

namespace {

std::vector<std::vector<CMatrix>> povms_from_json(const json& j, int colors, int dim, const char* who) {
    std::vector<std::vector<CMatrix>> out;
    for (const auto& family : array_of(j, static_cast<std::size_t>(-1), who)) {
        array_of(family, colors, "measurement");
        std::vector<CMatrix> elements;
        for (const auto& e : family)
            elements.push_back(matrix_from_json(e, dim, dim));
        out.push_back(std::move(elements));
    }
    return out;
}

json povms_to_json(const std::vector<std::vector<CMatrix>>& povms) {
    json out = json::array();
    for (const auto& family : povms) {
        json f = json::array();
        for (const auto& e : family)
            f.push_back(matrix_to_json(e));
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<int> int_list(const json& j, const char* what) {
    std::vector<int> out;
    for (const auto& x : array_of(j, static_cast<std::size_t>(-1), what)) {
        if (!x.is_number_integer())
            throw InputError(std::string(what) + " must hold integers");
        out.push_back(x.get<int>());
    }
    return out;
}

}  // namespace

StrategyFile parse_strategy(const json& j) {
    StrategyFile out;
    const std::string type = j.contains("type") ? field(j, "type").get<std::string>() : "quantum";
    const int colors = int_field(j, "colors");
    if (colors < 1)
        throw InputError("strategy needs at least one color");
    if (type == "classical") {
        out.quantum = false;
        out.classical.colors = colors;
        out.classical.alice = int_list(field(j, "alice"), "alice");
        out.classical.bob = int_list(field(j, "bob"), "bob");
        if (out.classical.alice.size() != out.classical.bob.size())
            throw InputError("classical strategy: alice and bob cover different vertex counts");
        for (const auto* side : {&out.classical.alice, &out.classical.bob})
            for (int k : *side)
                if (k < 0 || k >= colors)
                    throw InputError("classical strategy: color out of range");
        return out;
    }
    if (type != "quantum")
        throw InputError("strategy type must be 'quantum' or 'classical'");
    auto& s = out.povm;
    s.colors = colors;
    s.dA = int_field(j, "dA");
    s.dB = int_field(j, "dB");
    if (s.dA < 1 || s.dB < 1)
        throw InputError("strategy local dimensions must be positive");
    s.state = vector_from_json(field(j, "state"), s.dA * s.dB);
    s.alice = povms_from_json(field(j, "alice"), colors, s.dA, "alice");
    s.bob = povms_from_json(field(j, "bob"), colors, s.dB, "bob");
    if (s.alice.size() != s.bob.size())
        throw InputError("strategy: alice and bob cover different vertex counts");
    validate_strategy(s, static_cast<int>(s.alice.size()));
    return out;
}

json strategy_to_json(const POVMStrategy& s) {
    return {{"type", "quantum"}, {"colors", s.colors},           {"dA", s.dA},
            {"dB", s.dB},        {"state", vector_to_json(s.state)}, {"alice", povms_to_json(s.alice)},
            {"bob", povms_to_json(s.bob)}};
}

json strategy_to_json(const ClassicalStrategy& s) {
    return {{"type", "classical"}, {"colors", s.colors}, {"alice", s.alice}, {"bob", s.bob}};
}

json metadata_to_json(const Metadata& m) {
    return {{"tool", kToolName}, {"version", kToolVersion}, {"tol", m.tol},
            {"rank_tol", m.rank_tol}, {"seed", m.seed}, {"budget", m.budget}};
}

json certificate(const std::string& kind, json payload, const Metadata& m) {
    return {{"kind", kind}, {"payload", std::move(payload)}, {"metadata", metadata_to_json(m)}};
}

const std::string& certificate_kind(const json& cert) {
    const auto& kind = field(cert, "kind");
    if (!kind.is_string())
        throw InputError("certificate kind must be a string");
    return kind.get_ref<const std::string&>();
}

const json& certificate_payload(const json& cert, const std::string& expected_kind) {
    const auto& kind = certificate_kind(cert);
    if (kind != expected_kind)
        throw InputError("expected a '" + expected_kind + "' certificate, got '" + kind + "'");
    return field(cert, "payload");
}

json coloring_payload(const ColoringCertificate& c) { return {{"colors", c.colors}, {"color", c.color}}; }

ColoringCertificate coloring_from_payload(const json& p) {
    return {int_field(p, "colors"), int_list(field(p, "color"), "color")};
}

json orthrep_payload(const OrthogonalRepresentation& r) {
    json vectors = json::array();
    for (const auto& v : r.vectors)
        vectors.push_back(vector_to_json(v));
    return {{"dimension", r.dimension}, {"vectors", vectors}};
}

OrthogonalRepresentation orthrep_from_payload(const json& p) {
    OrthogonalRepresentation r;
    r.dimension = int_field(p, "dimension");
    for (const auto& v : array_of(field(p, "vectors"), static_cast<std::size_t>(-1), "vectors"))
        r.vectors.push_back(vector_from_json(v, r.dimension));
    return r;
}

json matrixrep_payload(const MatrixRepresentation& r) {
    json matrices = json::array();
    for (const auto& m : r.matrices)
        matrices.push_back(matrix_to_json(m));
    return {{"dimension", r.dimension}, {"matrices", matrices}};
}

MatrixRepresentation matrixrep_from_payload(const json& p) {
    MatrixRepresentation r;
    r.dimension = int_field(p, "dimension");
    for (const auto& m : array_of(field(p, "matrices"), static_cast<std::size_t>(-1), "matrices"))
        r.matrices.push_back(matrix_from_json(m, r.dimension, r.dimension));
    return r;
}

json qcoloring_payload(const QuantumColoring& qc) {
    json out = {{"colors", qc.colors}, {"rank", qc.rank}};
    if (qc.rank == 1) {
        json vectors = json::array();
        for (const auto& basis : qc.vectors) {
            json b = json::array();
            for (const auto& a : basis)
                b.push_back(vector_to_json(a));
            vectors.push_back(std::move(b));
        }
        out["vectors"] = std::move(vectors);
    } else {
        out["projectors"] = povms_to_json(qc.projectors);
    }
    return out;
}

QuantumColoring qcoloring_from_payload(const json& p) {
    QuantumColoring qc;
    qc.colors = int_field(p, "colors");
    qc.rank = int_field(p, "rank");
    if (qc.colors < 1 || qc.rank < 1)
        throw InputError("quantum coloring needs colors >= 1 and rank >= 1");
    if (qc.rank == 1) {
        for (const auto& basis : array_of(field(p, "vectors"), static_cast<std::size_t>(-1), "vectors")) {
            std::vector<CVector> b;
            for (const auto& a : array_of(basis, qc.colors, "basis"))
                b.push_back(vector_from_json(a, qc.colors));
            qc.vectors.push_back(std::move(b));
        }
    } else {
        qc.projectors = povms_from_json(field(p, "projectors"), qc.colors, qc.dimension(), "projectors");
    }
    return qc;
}

json ks_witness_payload(const VectorSet& s, const std::vector<int>& labels, KSMode mode) {
    json list = json::array();
    for (std::size_t r = 0; r < s.size(); ++r)
        list.push_back({{"id", s.rays[r].ids.front()}, {"value", labels[r]}});
    return {{"mode", mode == KSMode::Weak ? "weak" : "strict"}, {"labels", list}};
}

std::vector<int> ks_witness_from_payload(const json& p, const VectorSet& s, KSMode& mode) {
    const auto m = field(p, "mode").get<std::string>();
    if (m != "strict" && m != "weak")
        throw InputError("ks witness mode must be 'strict' or 'weak'");
    mode = m == "weak" ? KSMode::Weak : KSMode::Strict;
    std::map<std::string, int> by_id;
    for (const auto& item : array_of(field(p, "labels"), static_cast<std::size_t>(-1), "labels"))
        by_id[field(item, "id").get<std::string>()] = int_field(item, "value");
    std::vector<int> labels;
    for (const auto& r : s.rays) {
        auto it = by_id.find(r.ids.front());
        if (it == by_id.end())
            throw InputError("ks witness has no label for ray '" + r.ids.front() + "'");
        labels.push_back(it->second);
    }
    return labels;
}

json psd_witness_payload(const PSDWitness& w) {
    return {{"size", w.matrix.rows()}, {"rank", w.rank}, {"matrix", matrix_to_json(w.matrix)}};
}

PSDWitness psd_witness_from_payload(const json& p) {
    PSDWitness w;
    const int n = int_field(p, "size");
    if (n < 0)
        throw InputError("psd witness size must be nonnegative");
    w.rank = int_field(p, "rank");
    w.matrix = matrix_from_json(field(p, "matrix"), n, n);
    return w;
}

}  // namespace qchrom::io
