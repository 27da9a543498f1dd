#pragma once

// Independent reference implementations and random instance generators
// shared by the unit and acceptance tests. Deliberately naive.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qchrom/game.hpp"
#include "qchrom/graph.hpp"
#include "qchrom/ks.hpp"
#include "qchrom/linalg.hpp"

namespace oracle {

using qchrom::CMatrix;
using qchrom::Complex;
using qchrom::CVector;
using qchrom::Graph;

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<qchrom::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.emplace_back(u, v);
    return Graph(n, edges);
}

inline bool proper(const Graph& g, const std::vector<int>& color) {
    for (const auto& [u, v] : g.edges())
        if (color[u] == color[v])
            return false;
    return true;
}

// Smallest c admitting a proper coloring among all c^n assignments.
inline int chromatic_number(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0)
        return 0;
    for (int c = 1;; ++c) {
        std::vector<int> color(n, 0);
        while (true) {
            if (proper(g, color))
                return c;
            int i = 0;
            while (i < n && ++color[i] == c)
                color[i++] = 0;
            if (i == n)
                break;
        }
    }
}

inline int clique_number(const Graph& g) {
    const int n = g.vertex_count();
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool clique = true;
        for (int u = 0; u < n && clique; ++u)
            for (int v = u + 1; v < n && clique; ++v)
                if ((mask >> u & 1) && (mask >> v & 1) && !g.adjacent(u, v))
                    clique = false;
        if (clique)
            best = std::max(best, std::popcount(mask));
    }
    return best;
}

inline CMatrix partial_trace(const CMatrix& m, int dA, int dB, qchrom::Subsystem traced) {
    if (traced == qchrom::Subsystem::B) {
        CMatrix out = CMatrix::Zero(dA, dA);
        for (int i = 0; i < dA; ++i)
            for (int k = 0; k < dA; ++k)
                for (int j = 0; j < dB; ++j)
                    out(i, k) += m(i * dB + j, k * dB + j);
        return out;
    }
    CMatrix out = CMatrix::Zero(dB, dB);
    for (int j = 0; j < dB; ++j)
        for (int l = 0; l < dB; ++l)
            for (int i = 0; i < dA; ++i)
                out(j, l) += m(i * dB + j, i * dB + l);
    return out;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// <psi| E (x) F |psi> by explicit Kronecker product.
inline double outcome(const qchrom::POVMStrategy& s, int v, int alpha, int w, int beta) {
    const CMatrix op = kron(s.alice[v][alpha], s.bob[w][beta]);
    return (s.state.adjoint() * op * s.state)(0, 0).real();
}

inline CVector random_vector(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CVector v(d);
    for (int i = 0; i < d; ++i)
        v(i) = Complex(g(rng), g(rng));
    return v;
}

inline CVector random_state(int d, std::mt19937_64& rng) { return random_vector(d, rng).normalized(); }

inline CMatrix random_matrix(int r, int c, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = Complex(g(rng), g(rng));
    return m;
}

inline CMatrix random_unitary(int d, std::mt19937_64& rng) {
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(d, d, rng));
    return qr.householderQ() * CMatrix::Identity(d, d);
}

inline CMatrix random_psd(int d, int rank, std::mt19937_64& rng) {
    const CMatrix f = random_matrix(d, rank, rng);
    return f * f.adjoint();
}

// Random POVM with c full-rank elements on C^d: A_k = S^{-1/2} B_k S^{-1/2}.
inline std::vector<CMatrix> random_povm(int d, int c, std::mt19937_64& rng) {
    std::vector<CMatrix> parts;
    CMatrix sum = CMatrix::Zero(d, d);
    for (int k = 0; k < c; ++k) {
        parts.push_back(random_psd(d, d, rng));
        sum += parts.back();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sum);
    const CMatrix inv_sqrt = es.eigenvectors() *
                             es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                             es.eigenvectors().adjoint();
    for (auto& p : parts)
        p = inv_sqrt * p * inv_sqrt;
    return parts;
}

inline qchrom::POVMStrategy random_strategy(int n, int c, int dA, int dB, std::mt19937_64& rng) {
    qchrom::POVMStrategy s;
    s.colors = c;
    s.dA = dA;
    s.dB = dB;
    s.state = random_state(dA * dB, rng);
    for (int v = 0; v < n; ++v) {
        s.alice.push_back(random_povm(dA, c, rng));
        s.bob.push_back(random_povm(dB, c, rng));
    }
    return s;
}

// Winning strategy with non-uniform Schmidt coefficients: the direct sum of
// two maximally entangled rank-1 strategies built from `color` (shifted
// bases, each block rotated by its own unitary) with weights p and 1 - p,
// plus `extra` local dimensions outside the support. When `zero_color` is
// set an additional color is appended whose elements vanish on the support.
// Finally both players' spaces are rotated by random unitaries.
inline qchrom::POVMStrategy winning_strategy(const Graph& g, int c, const std::vector<int>& color,
                                             std::mt19937_64& rng, int extra, bool zero_color) {
    std::uniform_real_distribution<double> weight(0.15, 0.85);
    const double p = weight(rng);
    const int D = 2 * c + extra;
    const int colors = c + (zero_color ? 1 : 0);
    const CMatrix u1 = random_unitary(c, rng), u2 = random_unitary(c, rng);
    std::vector<int> perm(c);
    for (int i = 0; i < c; ++i)
        perm[i] = (i + 1) % c;

    qchrom::POVMStrategy s;
    s.colors = colors;
    s.dA = s.dB = D;
    CVector psi = CVector::Zero(D * D);
    for (int k = 0; k < c; ++k) {
        psi(k * D + k) = std::sqrt(p / c);
        psi((c + k) * D + (c + k)) = std::sqrt((1 - p) / c);
    }
    const CMatrix wa = random_unitary(D, rng), wb = random_unitary(D, rng);
    s.state = kron(wa, wb) * psi;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<CMatrix> alice, bob;
        for (int a = 0; a < colors; ++a) {
            CMatrix e = CMatrix::Zero(D, D);
            if (a < c) {
                const CVector x = u1.col((a + color[v]) % c);
                const CVector y = u2.col((a + perm[color[v]]) % c);
                e.block(0, 0, c, c) = x * x.adjoint();
                e.block(c, c, c, c) = y * y.adjoint();
            }
            if (extra > 0 && a == colors - 1)
                e.block(2 * c, 2 * c, extra, extra) = CMatrix::Identity(extra, extra);
            alice.push_back(wa * e * wa.adjoint());
            bob.push_back(wb * e.conjugate() * wb.adjoint());
        }
        s.alice.push_back(std::move(alice));
        s.bob.push_back(std::move(bob));
    }
    return s;
}

// Lovasz umbrella for C_5: unit vectors with handles i and i+1 orthogonal.
inline std::vector<CVector> umbrella() {
    const double c = std::pow(5.0, -0.25);
    const double r = std::sqrt(1.0 - c * c);
    std::vector<CVector> out;
    for (int i = 0; i < 5; ++i) {
        const double t = 4.0 * std::numbers::pi * i / 5.0;  // step 2 around the pentagon
        CVector v(3);
        v << Complex(r * std::cos(t)), Complex(r * std::sin(t)), Complex(c);
        out.push_back(v);
    }
    return out;
}

inline qchrom::VectorSet vector_set(int d, const std::vector<std::vector<double>>& coords) {
    std::vector<qchrom::RawVector> raw;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        CVector v(d);
        for (int k = 0; k < d; ++k)
            v(k) = coords[i][k];
        raw.push_back({"v" + std::to_string(i), v});
    }
    return qchrom::canonicalize(raw).set;
}

}  // namespace oracle
