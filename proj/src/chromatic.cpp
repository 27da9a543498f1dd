#include "qchrom/chromatic.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qchrom/error.hpp"

namespace qchrom {

bool verify_coloring(const Graph& g, const ColoringCertificate& cert) {
    if (static_cast<int>(cert.color.size()) != g.vertex_count())
        throw InputError("coloring covers " + std::to_string(cert.color.size()) + " of " +
                         std::to_string(g.vertex_count()) + " vertices");
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int k = cert.color[v];
        if (k < 0)
            throw InputError("vertex " + std::to_string(v) + " is uncolored");
        if (k >= cert.colors)
            throw InputError("vertex " + std::to_string(v) + " has color " + std::to_string(k) +
                             " outside [0," + std::to_string(cert.colors) + ")");
    }
    return std::none_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
        return cert.color[e.first] == cert.color[e.second];
    });
}

std::vector<Vertex> greedy_clique(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0)
        return {};
    std::vector<Vertex> starts(n);
    std::iota(starts.begin(), starts.end(), 0);
    std::stable_sort(starts.begin(), starts.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    if (n > 512)
        starts.resize(64);

    std::vector<Vertex> best;
    for (Vertex s : starts) {
        if (g.degree(s) + 1 <= static_cast<int>(best.size()))
            continue;
        std::vector<Vertex> clique{s};
        std::vector<Vertex> candidates = g.neighbors(s);
        while (!candidates.empty()) {
            Vertex pick = candidates.front();
            int pick_score = -1;
            for (Vertex u : candidates) {
                int score = 0;
                for (Vertex w : candidates)
                    if (w != u && g.adjacent(u, w))
                        ++score;
                if (score > pick_score) {
                    pick_score = score;
                    pick = u;
                }
            }
            clique.push_back(pick);
            std::erase_if(candidates, [&](Vertex u) { return u == pick || !g.adjacent(pick, u); });
        }
        if (clique.size() > best.size())
            best = std::move(clique);
    }
    std::sort(best.begin(), best.end());
    return best;
}

ColoringCertificate dsatur_coloring(const Graph& g) {
    const int n = g.vertex_count();
    ColoringCertificate cert;
    cert.color.assign(n, -1);
    std::vector<std::vector<char>> seen(n);
    std::vector<int> saturation(n, 0);
    for (int step = 0; step < n; ++step) {
        Vertex pick = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (cert.color[v] >= 0)
                continue;
            if (pick < 0 || saturation[v] > saturation[pick] ||
                (saturation[v] == saturation[pick] && g.degree(v) > g.degree(pick)))
                pick = v;
        }
        int k = 0;
        while (k < static_cast<int>(seen[pick].size()) && seen[pick][k])
            ++k;
        cert.color[pick] = k;
        cert.colors = std::max(cert.colors, k + 1);
        for (Vertex u : g.neighbors(pick)) {
            if (static_cast<int>(seen[u].size()) <= k)
                seen[u].resize(k + 1, 0);
            if (!seen[u][k]) {
                seen[u][k] = 1;
                ++saturation[u];
            }
        }
    }
    return cert;
}

namespace {

// Backtracking c-colorability search. Vertices are chosen by maximum
// saturation, lowest id on ties; a new color is only ever opened as the
// lowest unused one.
class ColoringSearch {
public:
    ColoringSearch(const Graph& g, int c, Budget& budget)
        : g_(g), c_(c), budget_(budget), color_(g.vertex_count(), -1),
          conflicts_(static_cast<std::size_t>(g.vertex_count()) * c, 0),
          saturation_(g.vertex_count(), 0) {}

    void precolor(const std::vector<Vertex>& clique) {
        for (std::size_t i = 0; i < clique.size(); ++i)
            assign(clique[i], static_cast<int>(i));
        used_ = static_cast<int>(clique.size());
        remaining_ = g_.vertex_count() - static_cast<int>(clique.size());
    }

    Decision run() {
        out_of_budget_ = false;
        const bool found = search();
        if (found)
            return Decision::Yes;
        return out_of_budget_ ? Decision::BudgetExceeded : Decision::No;
    }

    const std::vector<int>& colors() const { return color_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    int& conflict(Vertex v, int k) { return conflicts_[static_cast<std::size_t>(v) * c_ + k]; }

    void assign(Vertex v, int k) {
        color_[v] = k;
        for (Vertex u : g_.neighbors(v))
            if (conflict(u, k)++ == 0)
                ++saturation_[u];
    }

    void unassign(Vertex v) {
        const int k = color_[v];
        color_[v] = -1;
        for (Vertex u : g_.neighbors(v))
            if (--conflict(u, k) == 0)
                --saturation_[u];
    }

    bool search() {
        if (remaining_ == 0)
            return true;
        if (budget_.exhausted()) {
            out_of_budget_ = true;
            return false;
        }
        ++budget_.used;
        ++nodes_;

        Vertex pick = -1;
        for (Vertex v = 0; v < g_.vertex_count(); ++v)
            if (color_[v] < 0 && (pick < 0 || saturation_[v] > saturation_[pick]))
                pick = v;
        if (saturation_[pick] >= c_)
            return false;

        const int limit = std::min(c_, used_ + 1);
        for (int k = 0; k < limit; ++k) {
            if (conflict(pick, k) != 0)
                continue;
            const int saved_used = used_;
            used_ = std::max(used_, k + 1);
            assign(pick, k);
            --remaining_;
            if (search())
                return true;
            ++remaining_;
            unassign(pick);
            used_ = saved_used;
            if (out_of_budget_)
                return false;
        }
        return false;
    }

    const Graph& g_;
    int c_;
    Budget& budget_;
    std::vector<int> color_;
    std::vector<int> conflicts_;
    std::vector<int> saturation_;
    int used_ = 0;
    int remaining_ = 0;
    std::uint64_t nodes_ = 0;
    bool out_of_budget_ = false;
};

}  // namespace

ColorabilityResult is_c_colorable(const Graph& g, int c, Budget& budget) {
    if (c < 1)
        throw InputError("is_c_colorable: need at least one color");
    ColorabilityResult result;
    if (g.vertex_count() == 0) {
        result.decision = Decision::Yes;
        result.certificate = ColoringCertificate{c, {}};
        return result;
    }
    const auto clique = greedy_clique(g);
    if (static_cast<int>(clique.size()) > c) {
        result.decision = Decision::No;
        return result;
    }
    ColoringSearch search(g, c, budget);
    search.precolor(clique);
    result.decision = search.run();
    result.nodes = search.nodes();
    if (result.decision == Decision::Yes) {
        result.certificate = ColoringCertificate{c, search.colors()};
        if (!verify_coloring(g, *result.certificate))
            throw InternalError("is_c_colorable produced an improper coloring");
    }
    return result;
}

namespace {

std::vector<Vertex> degeneracy_order(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v)
        degree[v] = g.degree(v);
    std::vector<char> removed(n, 0);
    std::vector<Vertex> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        Vertex pick = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!removed[v] && (pick < 0 || degree[v] < degree[pick]))
                pick = v;
        removed[pick] = 1;
        order.push_back(pick);
        for (Vertex u : g.neighbors(pick))
            if (!removed[u])
                --degree[u];
    }
    std::reverse(order.begin(), order.end());
    return order;
}

class CliqueSearch {
public:
    CliqueSearch(const Graph& g, Budget& budget) : g_(g), budget_(budget) {}

    void seed(std::vector<Vertex> clique) { best_ = std::move(clique); }

    void run(const std::vector<Vertex>& order) {
        std::vector<Vertex> current;
        expand(current, order);
    }

    const std::vector<Vertex>& best() const { return best_; }
    bool exhausted() const { return out_of_budget_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    // Greedy coloring of the candidates; returns them ordered by color with
    // the color bound for each prefix.
    void color_sort(const std::vector<Vertex>& candidates, std::vector<Vertex>& ordered,
                    std::vector<int>& bounds) const {
        std::vector<std::vector<Vertex>> classes;
        for (Vertex v : candidates) {
            std::size_t k = 0;
            for (; k < classes.size(); ++k)
                if (std::none_of(classes[k].begin(), classes[k].end(),
                                 [&](Vertex u) { return g_.adjacent(u, v); }))
                    break;
            if (k == classes.size())
                classes.emplace_back();
            classes[k].push_back(v);
        }
        ordered.clear();
        bounds.clear();
        for (std::size_t k = 0; k < classes.size(); ++k)
            for (Vertex v : classes[k]) {
                ordered.push_back(v);
                bounds.push_back(static_cast<int>(k) + 1);
            }
    }

    void expand(std::vector<Vertex>& current, const std::vector<Vertex>& candidates) {
        if (budget_.exhausted()) {
            out_of_budget_ = true;
            return;
        }
        ++budget_.used;
        ++nodes_;

        std::vector<Vertex> ordered;
        std::vector<int> bounds;
        color_sort(candidates, ordered, bounds);
        std::vector<char> dropped(ordered.size(), 0);
        for (std::size_t idx = ordered.size(); idx-- > 0;) {
            if (current.size() + bounds[idx] <= best_.size())
                return;
            const Vertex v = ordered[idx];
            current.push_back(v);
            std::vector<Vertex> next;
            for (std::size_t j = 0; j < idx; ++j)
                if (!dropped[j] && g_.adjacent(v, ordered[j]))
                    next.push_back(ordered[j]);
            if (next.empty()) {
                if (current.size() > best_.size())
                    best_ = current;
            } else {
                expand(current, next);
            }
            current.pop_back();
            dropped[idx] = 1;
            if (out_of_budget_)
                return;
        }
    }

    const Graph& g_;
    Budget& budget_;
    std::vector<Vertex> best_;
    std::uint64_t nodes_ = 0;
    bool out_of_budget_ = false;
};

}  // namespace

CliqueResult clique_number(const Graph& g, Budget& budget) {
    CliqueResult result;
    if (g.vertex_count() == 0)
        return result;
    CliqueSearch search(g, budget);
    search.seed(greedy_clique(g));
    search.run(degeneracy_order(g));
    result.clique = search.best();
    std::sort(result.clique.begin(), result.clique.end());
    result.size = static_cast<int>(result.clique.size());
    result.exact = !search.exhausted();
    result.nodes = search.nodes();
    return result;
}

ChromaticResult chromatic_number(const Graph& g, Budget& budget) {
    ChromaticResult result;
    if (g.vertex_count() == 0) {
        result.exact = true;
        return result;
    }
    const auto start = budget.used;
    const auto clique = clique_number(g, budget);
    result.clique = clique.clique;
    result.lower = clique.size;
    result.certificate = dsatur_coloring(g);
    result.upper = result.certificate.colors;

    while (result.lower < result.upper && !budget.exhausted()) {
        const int c = result.lower;
        auto attempt = is_c_colorable(g, c, budget);
        if (attempt.decision == Decision::Yes) {
            result.upper = c;
            result.certificate = std::move(*attempt.certificate);
        } else if (attempt.decision == Decision::No) {
            result.lower = c + 1;
        } else {
            break;
        }
    }
    result.exact = result.lower == result.upper;
    result.chromatic = result.exact ? result.upper : 0;
    result.nodes = budget.used - start;
    return result;
}

}  // namespace qchrom
