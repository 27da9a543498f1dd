#include "qchrom/ks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qchrom/error.hpp"

namespace qchrom {

std::vector<CVector> VectorSet::vectors() const {
    std::vector<CVector> out;
    out.reserve(rays.size());
    for (const auto& r : rays)
        out.push_back(r.vector);
    return out;
}

std::vector<std::string> VectorSet::names() const {
    std::vector<std::string> out;
    out.reserve(rays.size());
    for (const auto& r : rays)
        out.push_back(r.ids.front());
    return out;
}

CanonicalizeReport canonicalize(const std::vector<RawVector>& raw, double tol) {
    CanonicalizeReport report;
    auto& set = report.set;
    set.tol = tol;
    set.dimension = raw.empty() ? 0 : static_cast<int>(raw.front().coords.size());
    for (const auto& item : raw) {
        if (item.coords.size() != set.dimension)
            throw InputError("vector '" + item.id + "' has dimension " +
                             std::to_string(item.coords.size()) + ", expected " +
                             std::to_string(set.dimension));
        if (!is_finite(item.coords))
            throw InputError("vector '" + item.id + "' has non-finite coordinates");
        const double norm = item.coords.norm();
        if (norm <= tol)
            throw InputError("vector '" + item.id + "' is zero");
        CVector v = item.coords / norm;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (std::abs(v(i)) > tol) {
                v *= std::conj(v(i)) / std::abs(v(i));
                v(i) = std::abs(v(i));
                break;
            }

        auto same = std::find_if(set.rays.begin(), set.rays.end(), [&](const Ray& r) {
            return std::abs(r.vector.dot(v)) >= 1.0 - tol;
        });
        if (same != set.rays.end())
            same->ids.push_back(item.id);
        else
            set.rays.push_back(Ray{{item.id}, std::move(v)});
    }
    for (const auto& r : set.rays)
        if (r.ids.size() > 1)
            report.merged.push_back(r.ids);
    return report;
}

Graph orthogonality_graph(const VectorSet& s) {
    const auto vectors = s.vectors();
    const auto names = s.names();
    return orthogonality_graph(vectors, names, s.tol);
}

namespace {

void extend_cliques(const Graph& g, int size, std::vector<int>& current,
                    const std::vector<int>& candidates, BasisList& out) {
    if (static_cast<int>(current.size()) == size) {
        out.push_back(current);
        return;
    }
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (current.size() + (candidates.size() - k) < static_cast<std::size_t>(size))
            return;
        const int v = candidates[k];
        std::vector<int> next;
        for (std::size_t j = k + 1; j < candidates.size(); ++j)
            if (g.adjacent(v, candidates[j]))
                next.push_back(candidates[j]);
        current.push_back(v);
        extend_cliques(g, size, current, next, out);
        current.pop_back();
    }
}

BasisList bases_of(const Graph& g, int dimension) {
    BasisList out;
    if (dimension < 1 || g.vertex_count() == 0)
        return out;
    std::vector<int> all(g.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> current;
    extend_cliques(g, dimension, current, all, out);
    return out;
}

// Exactly-one-per-basis search with unit propagation; in weak mode a ray
// labeled 1 also forces every orthogonal ray to 0. Rays are branched in
// decreasing basis-membership order, label 0 before 1.
class LabelingSearch {
public:
    LabelingSearch(const Graph& g, const BasisList& bases, bool weak)
        : g_(g), bases_(bases), weak_(weak), label_(g.vertex_count(), -1),
          member_of_(g.vertex_count()) {
        for (std::size_t b = 0; b < bases.size(); ++b)
            for (int r : bases[b])
                member_of_[r].push_back(static_cast<int>(b));
        order_.resize(g.vertex_count());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            return member_of_[a].size() > member_of_[b].size();
        });
    }

    bool run() { return search(0); }
    const std::vector<int>& labels() const { return label_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool set(int ray, int value) {
        if (label_[ray] >= 0)
            return label_[ray] == value;
        label_[ray] = value;
        trail_.push_back(ray);
        queue_.push_back(ray);
        return true;
    }

    bool propagate() {
        while (!queue_.empty()) {
            const int ray = queue_.back();
            queue_.pop_back();
            if (weak_ && label_[ray] == 1)
                for (int u : g_.neighbors(ray))
                    if (!set(u, 0))
                        return false;
            for (int b : member_of_[ray]) {
                int ones = 0;
                int open = 0;
                int last_open = -1;
                for (int r : bases_[b]) {
                    if (label_[r] == 1)
                        ++ones;
                    else if (label_[r] < 0) {
                        ++open;
                        last_open = r;
                    }
                }
                if (ones > 1 || (ones == 0 && open == 0))
                    return false;
                if (ones == 1) {
                    for (int r : bases_[b])
                        if (label_[r] < 0 && !set(r, 0))
                            return false;
                } else if (open == 1 && !set(last_open, 1)) {
                    return false;
                }
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            label_[trail_.back()] = -1;
            trail_.pop_back();
        }
        queue_.clear();
    }

    bool search(std::size_t position) {
        while (position < order_.size() && label_[order_[position]] >= 0)
            ++position;
        if (position == order_.size())
            return true;
        ++nodes_;
        const int ray = order_[position];
        for (int value : {0, 1}) {
            const auto mark = trail_.size();
            if (set(ray, value) && propagate() && search(position + 1))
                return true;
            undo(mark);
        }
        return false;
    }

    const Graph& g_;
    const BasisList& bases_;
    bool weak_;
    std::vector<int> label_;
    std::vector<std::vector<int>> member_of_;
    std::vector<int> order_;
    std::vector<int> trail_;
    std::vector<int> queue_;
    std::uint64_t nodes_ = 0;
};

struct Outcome {
    bool consistent = false;  // a labeling exists
    std::vector<int> labels;
    std::uint64_t nodes = 0;
};

Outcome find_labeling(const Graph& g, const BasisList& bases, bool weak) {
    LabelingSearch search(g, bases, weak);
    Outcome out;
    out.consistent = search.run();
    out.nodes = search.nodes();
    if (out.consistent)
        out.labels = search.labels();
    return out;
}

KSDecision decide(const VectorSet& s, KSMode witness_mode) {
    const Graph g = orthogonality_graph(s);
    const BasisList bases = bases_of(g, s.dimension);
    KSDecision d;
    d.witness_mode = witness_mode;
    d.method = KSMethod::Backtracking;
    d.bases = bases.size();

    const Outcome weak = find_labeling(g, bases, true);
    d.nodes += weak.nodes;
    d.is_weak_ks = !weak.consistent;
    if (weak.consistent) {
        // A weak witness is basis-consistent, so the set is not KS either.
        d.is_ks = false;
        d.witness = weak.labels;
        if (witness_mode == KSMode::Strict) {
            const Outcome strict = find_labeling(g, bases, false);
            d.nodes += strict.nodes;
            d.witness = strict.labels;
        }
        return d;
    }
    const Outcome strict = find_labeling(g, bases, false);
    d.nodes += strict.nodes;
    d.is_ks = !strict.consistent;
    if (strict.consistent && witness_mode == KSMode::Strict)
        d.witness = strict.labels;
    return d;
}

}  // namespace

BasisList enumerate_bases(const VectorSet& s) { return bases_of(orthogonality_graph(s), s.dimension); }

KSDecision ks_check(const VectorSet& s) { return decide(s, KSMode::Strict); }

KSDecision weak_ks_check(const VectorSet& s) { return decide(s, KSMode::Weak); }

bool validate_ks_witness(const VectorSet& s, const std::vector<int>& labels, KSMode mode) {
    if (labels.size() != s.size())
        return false;
    if (std::any_of(labels.begin(), labels.end(), [](int x) { return x != 0 && x != 1; }))
        return false;
    const Graph g = orthogonality_graph(s);
    for (const auto& basis : bases_of(g, s.dimension)) {
        int ones = 0;
        for (int r : basis)
            ones += labels[r];
        if (ones != 1)
            return false;
    }
    if (mode == KSMode::Weak)
        for (const auto& [u, v] : g.edges())
            if (labels[u] == 1 && labels[v] == 1)
                return false;
    return true;
}

KSDecision brute_force_ks(const VectorSet& s, KSMode mode) {
    const std::size_t n = s.size();
    if (n > kBruteForceLimit)
        throw InputError("brute_force_ks: " + std::to_string(n) + " rays exceed the limit of " +
                         std::to_string(kBruteForceLimit));
    const Graph g = orthogonality_graph(s);
    const BasisList bases = bases_of(g, s.dimension);

    std::vector<std::uint32_t> basis_masks;
    for (const auto& b : bases) {
        std::uint32_t m = 0;
        for (int r : b)
            m |= std::uint32_t{1} << r;
        basis_masks.push_back(m);
    }
    std::vector<std::uint32_t> edge_masks;
    for (const auto& [u, v] : g.edges())
        edge_masks.push_back((std::uint32_t{1} << u) | (std::uint32_t{1} << v));

    KSDecision d;
    d.method = KSMethod::BruteForce;
    d.witness_mode = mode;
    d.bases = bases.size();
    std::optional<std::uint32_t> strict_witness;
    std::optional<std::uint32_t> weak_witness;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < total; ++x) {
        ++d.nodes;
        const auto f = static_cast<std::uint32_t>(x);
        const bool basis_ok = std::all_of(basis_masks.begin(), basis_masks.end(),
                                          [&](std::uint32_t m) { return std::popcount(f & m) == 1; });
        if (!basis_ok)
            continue;
        if (!strict_witness)
            strict_witness = f;
        const bool pairs_ok = std::none_of(edge_masks.begin(), edge_masks.end(),
                                           [&](std::uint32_t m) { return (f & m) == m; });
        if (pairs_ok) {
            weak_witness = f;
            break;  // a weak witness settles both questions
        }
    }
    d.is_ks = !strict_witness.has_value();
    d.is_weak_ks = !weak_witness.has_value();
    const auto chosen = mode == KSMode::Strict ? strict_witness : weak_witness;
    if (chosen) {
        std::vector<int> labels(n);
        for (std::size_t r = 0; r < n; ++r)
            labels[r] = static_cast<int>((*chosen >> r) & 1U);
        d.witness = std::move(labels);
    }
    return d;
}

}  // namespace qchrom
