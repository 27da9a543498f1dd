#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qchrom/linalg.hpp"

namespace qchrom {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
///
/// Edges are stored once with u < v, sorted; neighbor lists are sorted so
/// iteration order is deterministic. Labels are advisory: two graphs are
/// equal when their vertex counts and edge sets agree.
class Graph {
public:
    Graph() = default;

    /// Validating constructor. Rejects self-loops, out-of-range endpoints
    /// and duplicate edges (after normalizing orientation).
    Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels = {});

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
    bool adjacent(Vertex u, Vertex v) const;

    const std::string& label(Vertex v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    struct Trusted {};
    // Skips validation; edges must already be normalized, sorted and unique.
    Graph(Trusted, int n, std::vector<Edge> edges, std::vector<std::string> labels);

    friend Graph cartesian_product(const Graph&, const Graph&);
    friend Graph hadamard_graph(int);
    friend Graph complement(const Graph&);
    friend Graph orthogonality_graph(std::span<const CVector>, std::span<const std::string>, double);

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::string> labels_;
};

Graph make_graph(int n, std::span<const Edge> edges);

Graph complete_graph(int c);
Graph cycle_graph(int n);
Graph petersen_graph();

/// Cartesian product G [] H. Vertex (v, i) has index v * |V(H)| + i and
/// label "(label_v,label_i)".
Graph cartesian_product(const Graph& g, const Graph& h);

struct ProductVertex {
    Vertex left;
    Vertex right;
};

inline Vertex product_index(ProductVertex p, int right_count) {
    return p.left * right_count + p.right;
}

inline ProductVertex product_split(Vertex v, int right_count) {
    return {v / right_count, v % right_count};
}

/// Vertices {0,1}^N (bit j of the index is coordinate j), adjacent iff
/// Hamming distance is exactly N/2. N must be even and >= 2.
Graph hadamard_graph(int N);

/// One vertex per vector, edge iff |<u|v>| <= tol.
Graph orthogonality_graph(std::span<const CVector> vectors, std::span<const std::string> labels,
                          double tol = kDefaultTol);

Graph complement(const Graph& g);

}  // namespace qchrom
