#include "qchrom/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "qchrom/error.hpp"

namespace qchrom {

namespace {

std::string edge_text(Edge e) {
    return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

std::vector<std::string> index_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int v = 0; v < n; ++v)
        labels.push_back(std::to_string(v));
    return labels;
}

}  // namespace

Graph::Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels) : n_(n) {
    if (n < 0)
        throw InputError("graph: negative vertex count");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw InputError("graph: label count does not match vertex count");
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.first == e.second)
            throw InputError("graph: self-loop " + edge_text(e));
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
            throw InputError("graph: endpoint out of range " + edge_text(e));
        edges_.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
        throw InputError("graph: duplicate edge " + edge_text(*dup));

    adjacency_.assign(n, {});
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& list : adjacency_)
        std::sort(list.begin(), list.end());
    labels_ = labels.empty() ? index_labels(n) : std::move(labels);
}

Graph::Graph(Trusted, int n, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
    adjacency_.assign(n, {});
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& list : adjacency_)
        std::sort(list.begin(), list.end());
    if (labels_.empty())
        labels_ = index_labels(n);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

Graph make_graph(int n, std::span<const Edge> edges) { return Graph(n, edges); }

Graph complete_graph(int c) {
    if (c < 1)
        throw InputError("complete_graph: need at least one vertex");
    std::vector<Edge> edges;
    for (int u = 0; u < c; ++u)
        for (int v = u + 1; v < c; ++v)
            edges.emplace_back(u, v);
    return Graph(c, edges);
}

Graph cycle_graph(int n) {
    if (n < 3)
        throw InputError("cycle_graph: need at least three vertices");
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return Graph(n, edges);
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);          // outer cycle
        edges.emplace_back(i, i + 5);                // spokes
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    }
    return Graph(10, edges);
}

Graph cartesian_product(const Graph& g, const Graph& h) {
    const int ng = g.vertex_count();
    const int nh = h.vertex_count();
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(ng) * h.edge_count() +
                  static_cast<std::size_t>(nh) * g.edge_count());
    for (int v = 0; v < ng; ++v)
        for (const auto& [i, j] : h.edges())
            edges.emplace_back(product_index({v, i}, nh), product_index({v, j}, nh));
    for (const auto& [v, w] : g.edges())
        for (int i = 0; i < nh; ++i)
            edges.emplace_back(product_index({v, i}, nh), product_index({w, i}, nh));
    std::sort(edges.begin(), edges.end());

    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(ng) * nh);
    for (int v = 0; v < ng; ++v)
        for (int i = 0; i < nh; ++i)
            labels.push_back("(" + g.label(v) + "," + h.label(i) + ")");
    return Graph(Graph::Trusted{}, ng * nh, std::move(edges), std::move(labels));
}

Graph hadamard_graph(int N) {
    if (N < 2)
        throw InputError("hadamard_graph: N must be at least 2");
    if (N % 2 != 0)
        throw InputError("hadamard_graph: N must be even so that N/2 is an integer distance");
    if (N > 24)
        throw InputError("hadamard_graph: N too large");
    const auto n = std::uint32_t{1} << N;
    const int half = N / 2;
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (std::popcount(u ^ v) == half)
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));

    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        std::string bits(N, '0');
        for (int j = 0; j < N; ++j)
            if ((u >> j) & 1U)
                bits[j] = '1';
        labels.push_back(std::move(bits));
    }
    return Graph(Graph::Trusted{}, static_cast<int>(n), std::move(edges), std::move(labels));
}

Graph orthogonality_graph(std::span<const CVector> vectors, std::span<const std::string> labels,
                          double tol) {
    if (vectors.empty())
        throw InputError("orthogonality_graph: empty vector set");
    if (!labels.empty() && labels.size() != vectors.size())
        throw InputError("orthogonality_graph: label count does not match vector count");
    const int n = static_cast<int>(vectors.size());
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (std::abs(inner(vectors[u], vectors[v])) <= tol)
                edges.emplace_back(u, v);
    return Graph(Graph::Trusted{}, n, std::move(edges),
                 std::vector<std::string>(labels.begin(), labels.end()));
}

Graph complement(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v))
                edges.emplace_back(u, v);
    return Graph(Graph::Trusted{}, n, std::move(edges), g.labels());
}

}  // namespace qchrom
