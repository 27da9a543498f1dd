#pragma once

// Kochen-Specker style decision procedures on finite sets of rays.
//
// A labeling f: rays -> {0,1} is "basis-consistent" when every orthonormal
// basis contained in the set has exactly one ray labeled 1. A set is KS
// when no basis-consistent labeling exists, and weak KS when every
// basis-consistent labeling puts 1 on some orthogonal pair. The pair
// constraint ranges over all orthogonal pairs of the set, including rays
// that belong to no basis.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qchrom/graph.hpp"
#include "qchrom/linalg.hpp"

namespace qchrom {

struct Ray {
    std::vector<std::string> ids;  // input ids merged into this ray, in input order
    CVector vector;                // unit norm, first nonzero coordinate real positive
};

struct VectorSet {
    int dimension = 0;
    double tol = kDefaultTol;
    std::vector<Ray> rays;

    std::size_t size() const { return rays.size(); }
    std::vector<CVector> vectors() const;
    std::vector<std::string> names() const;  // first id of each ray
};

struct RawVector {
    std::string id;
    CVector coords;
};

struct CanonicalizeReport {
    VectorSet set;
    std::vector<std::vector<std::string>> merged;  // id groups collapsed into one ray
};

/// Normalizes, fixes the global phase and merges vectors equal up to a
/// unit-modulus scalar. Throws InputError on zero vectors or mismatched
/// dimensions.
CanonicalizeReport canonicalize(const std::vector<RawVector>& raw, double tol = kDefaultTol);

Graph orthogonality_graph(const VectorSet& s);

/// Every orthonormal basis inside the set, as sorted ray indices, in
/// lexicographic order.
using BasisList = std::vector<std::vector<int>>;
BasisList enumerate_bases(const VectorSet& s);

enum class KSMode { Strict, Weak };
enum class KSMethod { Backtracking, BruteForce };

/// Both flags are always decided; is_ks implies is_weak_ks. The witness
/// (when present) refutes the property named by `witness_mode`: it is
/// basis-consistent, and in weak mode also free of orthogonal 1-1 pairs.
struct KSDecision {
    bool is_ks = false;
    bool is_weak_ks = false;
    std::optional<std::vector<int>> witness;
    KSMode witness_mode = KSMode::Strict;
    KSMethod method = KSMethod::Backtracking;
    std::size_t bases = 0;
    std::uint64_t nodes = 0;
};

KSDecision ks_check(const VectorSet& s);
KSDecision weak_ks_check(const VectorSet& s);

inline constexpr std::size_t kBruteForceLimit = 25;

/// Exhaustive enumeration of all 2^n labelings; test oracle for the two
/// checks above. Throws InputError beyond kBruteForceLimit rays.
KSDecision brute_force_ks(const VectorSet& s, KSMode mode);

/// Mechanical validation of a witness labeling against the set's bases and
/// (weak mode) its orthogonality graph.
bool validate_ks_witness(const VectorSet& s, const std::vector<int>& labels, KSMode mode);

}  // namespace qchrom
