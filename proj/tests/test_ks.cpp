#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qchrom/chromatic.hpp"
#include "qchrom/error.hpp"
#include "qchrom/io.hpp"
#include "qchrom/ks.hpp"

using namespace qchrom;
using namespace std::complex_literals;

namespace {

VectorSet bundled(const std::string& name) {
    return io::parse_vector_set(io::json::parse(io::read_file(std::string(QCHROM_DATA_DIR) + "/" + name)))
        .set;
}

VectorSet basis_set(int d) {
    std::vector<std::vector<double>> coords;
    for (int i = 0; i < d; ++i) {
        coords.emplace_back(d, 0.0);
        coords.back()[i] = 1;
    }
    return oracle::vector_set(d, coords);
}

// Union of random Fourier-type bases U F_d, U random unitary shared by a
// few bases so some rays coincide up to phase. Small enough for brute force.
VectorSet random_fourier_set(std::mt19937_64& rng, int d, int bases) {
    std::vector<RawVector> raw;
    const Complex w = std::polar(1.0, 2 * std::numbers::pi / d);
    std::uniform_int_distribution<int> pick(0, 3);
    CMatrix frames[4];
    frames[0] = CMatrix::Identity(d, d);
    for (int f = 1; f < 4; ++f)
        frames[f] = oracle::random_unitary(d, rng);
    for (int b = 0; b < bases; ++b) {
        const CMatrix& u = frames[pick(rng)];
        const bool fourier = b % 2 == 1;
        for (int k = 0; k < d; ++k) {
            CVector v(d);
            for (int j = 0; j < d; ++j)
                v(j) = fourier ? std::pow(w, j * k) / std::sqrt(double(d)) : (j == k ? 1.0 : 0.0);
            raw.push_back({"b" + std::to_string(b) + "_" + std::to_string(k), u * v});
        }
    }
    return canonicalize(raw).set;
}

}  // namespace

TEST(Canonicalize, Examples) {
    const auto r1 = canonicalize({{"a", basis_vector(2, 0)}, {"b", CVector(-basis_vector(2, 0))}});
    EXPECT_EQ(r1.set.size(), 1u);
    ASSERT_EQ(r1.merged.size(), 1u);
    EXPECT_EQ(r1.merged[0], (std::vector<std::string>{"a", "b"}));

    const auto r2 = canonicalize(
        {{"a", basis_vector(2, 0)}, {"b", CVector(1i * basis_vector(2, 0))}, {"c", basis_vector(2, 1)}});
    EXPECT_EQ(r2.set.size(), 2u);

    CVector ones(2);
    ones << 1, 1;
    const auto r3 = canonicalize({{"a", ones}});
    EXPECT_NEAR(r3.set.rays[0].vector.norm(), 1, 1e-15);
    EXPECT_NEAR(r3.set.rays[0].vector(0).real(), 1 / std::sqrt(2), 1e-15);
}

TEST(Canonicalize, PhaseFixedAndErrors) {
    CVector v(2);
    v << 1i, 1;
    const auto r = canonicalize({{"a", v}});
    EXPECT_NEAR(r.set.rays[0].vector(0).imag(), 0, 1e-15);
    EXPECT_GT(r.set.rays[0].vector(0).real(), 0);
    EXPECT_THROW(canonicalize({{"z", CVector::Zero(3)}}), InputError);
    EXPECT_THROW(canonicalize({{"a", basis_vector(2, 0)}, {"b", basis_vector(3, 0)}}), InputError);
}

TEST(Bases, Examples) {
    EXPECT_EQ(enumerate_bases(basis_set(3)).size(), 1u);
    const auto two = oracle::vector_set(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}});
    EXPECT_EQ(enumerate_bases(two).size(), 2u);
    const auto cab = bundled("cabello-18.json");
    EXPECT_EQ(enumerate_bases(cab).size(), 9u);
}

TEST(Bases, CabelloEveryRayInABasis) {
    const auto cab = bundled("cabello-18.json");
    const auto bases = enumerate_bases(cab);
    std::vector<int> count(cab.size(), 0);
    for (const auto& b : bases) {
        std::vector<CVector> vs;
        for (int r : b) {
            ++count[r];
            vs.push_back(cab.rays[r].vector);
        }
        EXPECT_TRUE(is_orthonormal_basis(vs));
    }
    // Each of the 18 rays lies in exactly two of the nine bases.
    for (int c : count)
        EXPECT_EQ(c, 2);
}

TEST(KS, SingleBasis) {
    const auto d = ks_check(basis_set(3));
    EXPECT_FALSE(d.is_ks);
    EXPECT_FALSE(d.is_weak_ks);
    ASSERT_TRUE(d.witness);
    EXPECT_TRUE(validate_ks_witness(basis_set(3), *d.witness, KSMode::Strict));
    const auto w = weak_ks_check(basis_set(4));
    ASSERT_TRUE(w.witness);
    EXPECT_EQ(std::count(w.witness->begin(), w.witness->end(), 1), 1);
}

TEST(KS, BundledSets) {
    const auto cab = ks_check(bundled("cabello-18.json"));
    EXPECT_TRUE(cab.is_ks);
    EXPECT_TRUE(cab.is_weak_ks);
    EXPECT_FALSE(cab.witness);

    const auto yo_set = bundled("yu-oh-13.json");
    const auto yo = ks_check(yo_set);
    EXPECT_FALSE(yo.is_ks);
    ASSERT_TRUE(yo.witness);
    EXPECT_TRUE(validate_ks_witness(yo_set, *yo.witness, KSMode::Strict));

    const auto peres57 = ks_check(bundled("peres-57.json"));
    EXPECT_TRUE(peres57.is_ks);
}

TEST(KS, Peres33IsWeakKSButAdmitsABasisLabeling) {
    const auto set = bundled("peres-33.json");
    EXPECT_EQ(set.size(), 33u);
    EXPECT_EQ(enumerate_bases(set).size(), 16u);
    const auto d = weak_ks_check(set);
    EXPECT_TRUE(d.is_weak_ks);
    EXPECT_FALSE(d.is_ks);
    EXPECT_FALSE(d.witness);
    const auto strict = ks_check(set);
    EXPECT_FALSE(strict.is_ks);
    ASSERT_TRUE(strict.witness);  // basis-consistent labeling with an orthogonal 1-1 pair
    EXPECT_TRUE(validate_ks_witness(set, *strict.witness, KSMode::Strict));
    EXPECT_FALSE(validate_ks_witness(set, *strict.witness, KSMode::Weak));
}

TEST(KS, WeakExamples) {
    const auto cab = weak_ks_check(bundled("cabello-18.json"));
    EXPECT_TRUE(cab.is_weak_ks);

    const auto two = oracle::vector_set(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}});
    const auto d = weak_ks_check(two);
    EXPECT_FALSE(d.is_weak_ks);
    ASSERT_TRUE(d.witness);
    EXPECT_TRUE(validate_ks_witness(two, *d.witness, KSMode::Weak));
    const auto oracle = brute_force_ks(two, KSMode::Weak);
    EXPECT_FALSE(oracle.is_weak_ks);
}

TEST(KS, NoBasesDecidedFalseWithAllZeroWitness) {
    const auto set = oracle::vector_set(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
    const auto d = ks_check(set);
    EXPECT_EQ(d.bases, 0u);
    EXPECT_FALSE(d.is_ks);
    EXPECT_FALSE(d.is_weak_ks);
    ASSERT_TRUE(d.witness);
    EXPECT_EQ(std::count(d.witness->begin(), d.witness->end(), 1), 0);
}

TEST(KS, NonBasisRaysJoinPairConstraint) {
    // (0,1,1) lies in no basis of the set but is orthogonal to e1.
    const auto set = oracle::vector_set(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}});
    ASSERT_EQ(enumerate_bases(set).size(), 1u);
    const std::vector<int> labels{1, 0, 0, 1};
    EXPECT_TRUE(validate_ks_witness(set, labels, KSMode::Strict));
    EXPECT_FALSE(validate_ks_witness(set, labels, KSMode::Weak));
    const auto d = weak_ks_check(set);
    ASSERT_TRUE(d.witness);
    EXPECT_TRUE(validate_ks_witness(set, *d.witness, KSMode::Weak));
    EXPECT_LE((*d.witness)[0] + (*d.witness)[3], 1);
}

TEST(KS, BruteForceAgreesOnBundledSmallSets) {
    for (const char* name : {"cabello-18.json", "yu-oh-13.json"}) {
        const auto set = bundled(name);
        for (auto mode : {KSMode::Strict, KSMode::Weak}) {
            const auto o = brute_force_ks(set, mode);
            const auto b = mode == KSMode::Strict ? ks_check(set) : weak_ks_check(set);
            EXPECT_EQ(o.is_ks, b.is_ks) << name;
            EXPECT_EQ(o.is_weak_ks, b.is_weak_ks) << name;
            if (o.witness)
                EXPECT_TRUE(validate_ks_witness(set, *o.witness, mode));
        }
    }
    EXPECT_THROW(brute_force_ks(bundled("peres-33.json"), KSMode::Strict), InputError);
}

TEST(KS, BruteForceAgreesOnRandomSets) {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        const int d = 2 + t % 3;
        const auto set = random_fourier_set(rng, d, 2 + t % 5);
        if (set.size() > kBruteForceLimit || set.size() == 0)
            continue;
        ++checked;
        for (auto mode : {KSMode::Strict, KSMode::Weak}) {
            const auto o = brute_force_ks(set, mode);
            const auto b = mode == KSMode::Strict ? ks_check(set) : weak_ks_check(set);
            EXPECT_EQ(o.is_ks, b.is_ks);
            EXPECT_EQ(o.is_weak_ks, b.is_weak_ks);
            EXPECT_TRUE(!b.is_ks || b.is_weak_ks);
            if (b.witness)
                EXPECT_TRUE(validate_ks_witness(set, *b.witness, b.witness_mode));
        }
    }
    EXPECT_GT(checked, 30);
}

TEST(KS, ExactlyOneArgumentOnColorings) {
    Budget b;
    // KS in dimension 3 => not 3-colorable; Cabello-18 at 4 colors likewise.
    const auto p57 = bundled("peres-57.json");
    EXPECT_TRUE(ks_check(p57).is_ks);
    EXPECT_EQ(is_c_colorable(orthogonality_graph(p57), 3, b).decision, Decision::No);
    EXPECT_EQ(is_c_colorable(orthogonality_graph(bundled("cabello-18.json")), 4, b).decision, Decision::No);
}

TEST(KS, WitnessValidationRejectsGarbage) {
    const auto set = basis_set(3);
    EXPECT_FALSE(validate_ks_witness(set, {1, 1, 0}, KSMode::Strict));
    EXPECT_FALSE(validate_ks_witness(set, {0, 0, 0}, KSMode::Strict));
    EXPECT_FALSE(validate_ks_witness(set, {1, 0}, KSMode::Strict));
    EXPECT_FALSE(validate_ks_witness(set, {2, 0, 0}, KSMode::Strict));
    EXPECT_TRUE(validate_ks_witness(set, {0, 0, 1}, KSMode::Weak));
}

TEST(KS, OrthogonalityGraphPhaseInvariance) {
    const auto cab = bundled("cabello-18.json");
    const Graph g = orthogonality_graph(cab);
    std::vector<RawVector> raw;
    for (std::size_t i = 0; i < cab.size(); ++i)
        raw.push_back({cab.rays[i].ids.front(), CVector(std::polar(1.0, 0.3 * i) * cab.rays[i].vector)});
    EXPECT_EQ(orthogonality_graph(canonicalize(raw).set), g);
}
