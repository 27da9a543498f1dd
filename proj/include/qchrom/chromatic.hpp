#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qchrom/graph.hpp"

namespace qchrom {

struct ColoringCertificate {
    int colors = 0;
    std::vector<int> color;  // indexed by vertex, values in [0, colors)
};

/// True iff `cert` is a proper coloring of `g`. Throws InputError when a
/// vertex is uncolored or a color is out of range.
bool verify_coloring(const Graph& g, const ColoringCertificate& cert);

/// Node-expansion budget shared across the calls it is passed to.
struct Budget {
    std::uint64_t limit = 50'000'000;
    std::uint64_t used = 0;

    bool exhausted() const { return used >= limit; }
    std::uint64_t remaining() const { return exhausted() ? 0 : limit - used; }
};

enum class Decision { Yes, No, BudgetExceeded };

struct ColorabilityResult {
    Decision decision = Decision::No;
    std::optional<ColoringCertificate> certificate;  // set when Yes
    std::uint64_t nodes = 0;
};

/// Exact c-colorability. A "No" answer is exhaustive.
ColorabilityResult is_c_colorable(const Graph& g, int c, Budget& budget);

struct CliqueResult {
    int size = 0;                 // best clique found (exact unless budget ran out)
    std::vector<Vertex> clique;
    bool exact = true;
    std::uint64_t nodes = 0;
};

CliqueResult clique_number(const Graph& g, Budget& budget);

/// Greedy clique used for lower bounds and symmetry breaking.
std::vector<Vertex> greedy_clique(const Graph& g);

/// Greedy DSATUR coloring (not optimal); an upper bound on chi.
ColoringCertificate dsatur_coloring(const Graph& g);

struct ChromaticResult {
    bool exact = false;  // false when the budget ran out before closing the gap
    int chromatic = 0;   // chi when exact
    int lower = 0;       // best proven lower bound
    int upper = 0;       // best known upper bound
    ColoringCertificate certificate;  // proper coloring with `upper` colors
    std::vector<Vertex> clique;       // clique used for the initial lower bound
    std::uint64_t nodes = 0;
};

ChromaticResult chromatic_number(const Graph& g, Budget& budget);

}  // namespace qchrom
