#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qchrom/error.hpp"
#include "qchrom/reps.hpp"

using namespace qchrom;

namespace {

OrthogonalRepresentation rep_of(int d, std::vector<CVector> vs) { return {d, std::move(vs)}; }

CMatrix shift(int c) {
    CMatrix s = CMatrix::Zero(c, c);
    for (int i = 0; i < c; ++i)
        s((i + 1) % c, i) = 1;
    return s;
}

Graph edgeless(int n) { return Graph(n, std::vector<Edge>{}); }

}  // namespace

TEST(VerifyOrthrep, Examples) {
    const Graph k3 = complete_graph(3);
    EXPECT_TRUE(verify_orthogonal_representation(
        k3, rep_of(3, {basis_vector(3, 0), basis_vector(3, 1), basis_vector(3, 2)})));
    EXPECT_FALSE(verify_orthogonal_representation(
        k3, rep_of(3, {basis_vector(3, 0), basis_vector(3, 0), basis_vector(3, 1)})));
    EXPECT_TRUE(verify_orthogonal_representation(cycle_graph(5), rep_of(3, oracle::umbrella())));
}

TEST(VerifyOrthrep, ZeroVectorAndMissingVertex) {
    const Graph k2 = complete_graph(2);
    EXPECT_FALSE(verify_orthogonal_representation(k2, rep_of(2, {basis_vector(2, 0), CVector::Zero(2)})));
    EXPECT_THROW(verify_orthogonal_representation(k2, rep_of(2, {basis_vector(2, 0)})), InputError);
    EXPECT_THROW(verify_orthogonal_representation(k2, rep_of(2, {basis_vector(2, 0), basis_vector(3, 1)})),
                 InputError);
}

TEST(VerifyMatrixRep, Examples) {
    const Graph k2 = complete_graph(2);
    const CMatrix I = CMatrix::Identity(2, 2);
    EXPECT_TRUE(verify_matrix_representation(k2, {2, {I, shift(2)}}));
    EXPECT_FALSE(verify_matrix_representation(k2, {2, {I, I}}));
    std::mt19937_64 rng(1);
    EXPECT_TRUE(verify_matrix_representation(
        edgeless(3), {3, {oracle::random_unitary(3, rng), oracle::random_unitary(3, rng),
                          oracle::random_unitary(3, rng)}}));
    EXPECT_FALSE(verify_matrix_representation(k2, {2, {2.0 * I, shift(2)}}));
    EXPECT_THROW(verify_matrix_representation(k2, {2, {I, CMatrix::Identity(2, 3)}}), InputError);
    EXPECT_THROW(verify_matrix_representation(k2, {2, {I}}), InputError);
}

TEST(VerifyQuantumColoring, Examples) {
    const Graph k2 = complete_graph(2);
    const CVector e1 = basis_vector(2, 0), e2 = basis_vector(2, 1);
    QuantumColoring good{2, 1, {{e1, e2}, {e2, e1}}, {}};
    EXPECT_TRUE(verify_quantum_coloring(k2, good));
    QuantumColoring same{2, 1, {{e1, e2}, {e1, e2}}, {}};
    EXPECT_FALSE(verify_quantum_coloring(k2, same));
    QuantumColoring not_basis{2, 1, {{e1, e1}, {e2, e1}}, {}};
    EXPECT_FALSE(verify_quantum_coloring(k2, not_basis));
    QuantumColoring malformed{2, 1, {{e1}, {e2, e1}}, {}};
    EXPECT_THROW(verify_quantum_coloring(k2, malformed), InputError);
}

TEST(VerifyQuantumColoring, HigherRank) {
    // Rank-2 coloring of K_2 with 2 colors on C^4.
    const Graph k2 = complete_graph(2);
    CMatrix p0 = CMatrix::Zero(4, 4), p1 = CMatrix::Zero(4, 4);
    p0(0, 0) = p0(1, 1) = 1;
    p1(2, 2) = p1(3, 3) = 1;
    QuantumColoring qc;
    qc.colors = 2;
    qc.rank = 2;
    qc.projectors = {{p0, p1}, {p1, p0}};
    EXPECT_TRUE(verify_quantum_coloring(k2, qc));
    qc.projectors = {{p0, p1}, {p0, p1}};
    EXPECT_FALSE(verify_quantum_coloring(k2, qc));
}

TEST(FromClassical, ExamplesAndComputationalBasisUnion) {
    const Graph k2 = complete_graph(2);
    const auto qc = quantum_coloring_from_classical(k2, {2, {0, 1}});
    EXPECT_LE((qc.vectors[0][0] - basis_vector(2, 0)).norm(), 0);
    EXPECT_LE((qc.vectors[1][0] - basis_vector(2, 1)).norm(), 0);
    EXPECT_TRUE(verify_quantum_coloring(k2, qc));

    const auto c5 = quantum_coloring_from_classical(cycle_graph(5), {3, {0, 1, 0, 1, 2}});
    EXPECT_TRUE(verify_quantum_coloring(cycle_graph(5), c5));

    const auto single = quantum_coloring_from_classical(complete_graph(1), {1, {0}});
    EXPECT_TRUE(verify_quantum_coloring(complete_graph(1), single));

    EXPECT_THROW(quantum_coloring_from_classical(k2, {2, {0, 0}}), InputError);
}

TEST(FromClassical, PropertyOnRandomGraphs) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        const Graph g = oracle::random_graph(2 + t % 9, 0.5, rng);
        const auto cert = dsatur_coloring(g);
        const auto qc = quantum_coloring_from_classical(g, cert);
        EXPECT_TRUE(verify_quantum_coloring(g, qc));
        for (const auto& basis : qc.vectors)
            for (const auto& a : basis)
                EXPECT_EQ((a.array().abs() > 0.5).count(), 1);  // a computational basis vector
    }
}

TEST(Bijection, K1AndK2) {
    const auto m = orthrep_to_matrixrep(complete_graph(1), 2, rep_of(2, {basis_vector(2, 0), basis_vector(2, 1)}));
    EXPECT_LE(max_abs_diff(m.matrices[0], CMatrix::Identity(2, 2)), 1e-15);

    const Graph k2 = complete_graph(2);
    const auto qc = quantum_coloring_from_classical(k2, {2, {0, 1}});
    const auto mr = matrixrep_from_quantum_coloring(qc);
    EXPECT_TRUE(verify_matrix_representation(k2, mr));
    const auto orth = matrixrep_to_orthrep(k2, mr);
    EXPECT_TRUE(verify_orthogonal_representation(cartesian_product(k2, complete_graph(2)), orth));
    const auto back = orthrep_to_matrixrep(k2, 2, orth);
    for (int v = 0; v < 2; ++v)
        EXPECT_LE(max_abs_diff(back.matrices[v], mr.matrices[v]), 1e-15);
    EXPECT_LE(max_abs_diff(mr.matrices[1], shift(2)), 1e-15);
}

TEST(Bijection, EdgelessArbitraryUnitaries) {
    std::mt19937_64 rng(5);
    const Graph g = edgeless(3);
    MatrixRepresentation mr{3, {}};
    for (int v = 0; v < 3; ++v)
        mr.matrices.push_back(oracle::random_unitary(3, rng));
    const auto orth = matrixrep_to_orthrep(g, mr);
    EXPECT_TRUE(verify_orthogonal_representation(cartesian_product(g, complete_graph(3)), orth));
}

TEST(Bijection, ReverseRoundTripUpToScaling) {
    const Graph k2 = complete_graph(2);
    const auto mr = matrixrep_from_quantum_coloring(quantum_coloring_from_classical(k2, {2, {1, 0}}));
    auto orth = matrixrep_to_orthrep(k2, mr);
    for (std::size_t i = 0; i < orth.vectors.size(); ++i)
        orth.vectors[i] *= 0.5 + static_cast<double>(i);
    const auto back = orthrep_to_matrixrep(k2, 2, orth);
    const auto again = matrixrep_to_orthrep(k2, back);
    for (std::size_t i = 0; i < orth.vectors.size(); ++i)
        EXPECT_LE((again.vectors[i] * orth.vectors[i].norm() - orth.vectors[i]).norm(), 1e-12);
}

TEST(Bijection, RejectsInvalidInput) {
    const Graph k2 = complete_graph(2);
    EXPECT_THROW(orthrep_to_matrixrep(k2, 2, rep_of(2, {basis_vector(2, 0), basis_vector(2, 0),
                                                        basis_vector(2, 1), basis_vector(2, 1)})),
                 InputError);
    EXPECT_THROW(matrixrep_to_orthrep(k2, {2, {CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}}),
                 InputError);
}

TEST(Search, Examples) {
    EXPECT_TRUE(search_orthogonal_representation(complete_graph(3), 3).found);
    EXPECT_FALSE(search_orthogonal_representation(complete_graph(3), 2).found);
    const auto r = search_orthogonal_representation(cycle_graph(5), 3);
    ASSERT_TRUE(r.found);
    EXPECT_TRUE(verify_orthogonal_representation(cycle_graph(5), r.rep, 1e-9));
}

TEST(Search, FoundAlwaysVerifies) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 12; ++t) {
        const Graph g = oracle::random_graph(4 + t % 5, 0.5, rng);
        SearchOptions o;
        o.seed = t;
        o.restarts = 3;
        for (int c = 1; c <= 4; ++c) {
            const auto r = search_orthogonal_representation(g, c, o);
            if (r.found)
                EXPECT_TRUE(verify_orthogonal_representation(g, r.rep, o.tol));
        }
    }
}

TEST(Search, DeterministicGivenSeed) {
    SearchOptions o;
    o.seed = 42;
    const auto a = search_orthogonal_representation(petersen_graph(), 3, o);
    const auto b = search_orthogonal_representation(petersen_graph(), 3, o);
    ASSERT_EQ(a.found, b.found);
    ASSERT_EQ(a.rep.vectors.size(), b.rep.vectors.size());
    for (std::size_t i = 0; i < a.rep.vectors.size(); ++i)
        EXPECT_EQ(a.rep.vectors[i], b.rep.vectors[i]);
}

TEST(Search, RealOnly) {
    SearchOptions o;
    o.real_only = true;
    const auto r = search_orthogonal_representation(cycle_graph(5), 3, o);
    ASSERT_TRUE(r.found);
    for (const auto& v : r.rep.vectors)
        EXPECT_LE(v.imag().cwiseAbs().maxCoeff(), 0.0);
}

TEST(XiBounds, Examples) {
    const auto k4 = xi_bounds(complete_graph(4));
    EXPECT_EQ(k4.lower, 4);
    EXPECT_EQ(k4.upper, 4);
    EXPECT_TRUE(verify_orthogonal_representation(complete_graph(4), k4.upper_witness));

    const auto c5 = xi_bounds(cycle_graph(5));
    EXPECT_EQ(c5.lower, 2);
    EXPECT_EQ(c5.upper, 3);
    EXPECT_TRUE(verify_orthogonal_representation(cycle_graph(5), c5.upper_witness));
    EXPECT_EQ(c5.upper_witness.dimension, 3);
}

TEST(ChiQ1, Examples) {
    const auto k3 = chi_q1_upper_via_product(complete_graph(3), 5);
    ASSERT_TRUE(k3);
    EXPECT_EQ(k3->colors, 3);
    EXPECT_TRUE(verify_matrix_representation(complete_graph(3), k3->witness));

    const auto c5 = chi_q1_upper_via_product(cycle_graph(5), 5);
    ASSERT_TRUE(c5);
    EXPECT_EQ(c5->colors, 3);
    EXPECT_TRUE(verify_matrix_representation(cycle_graph(5), c5->witness));

    EXPECT_FALSE(chi_q1_upper_via_product(complete_graph(4), 3));
    EXPECT_THROW(chi_q1_upper_via_product(complete_graph(2), 0), InputError);
}

TEST(ChiQ1, AtMostClassicalColors) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 8; ++t) {
        const Graph g = oracle::random_graph(4 + t % 4, 0.5, rng);
        const int chi = oracle::chromatic_number(g);
        SearchOptions o;
        o.restarts = 2;
        const auto w = chi_q1_upper_via_product(g, chi, o);
        ASSERT_TRUE(w);
        EXPECT_LE(w->colors, chi);
        EXPECT_TRUE(verify_matrix_representation(g, w->witness));
    }
}

TEST(PSDWitness, Examples) {
    const auto kn = psd_witness_check(complete_graph(4), {CMatrix::Identity(4, 4), 4});
    ASSERT_TRUE(kn.ok);
    EXPECT_TRUE(verify_orthogonal_representation(complete_graph(4), kn.rep));

    const auto ones = psd_witness_check(edgeless(2), {CMatrix::Ones(2, 2), 1});
    ASSERT_TRUE(ones.ok);
    EXPECT_EQ(ones.rep.dimension, 1);

    const auto u = oracle::umbrella();
    CMatrix gram(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            gram(i, j) = inner(u[i], u[j]);
    const auto c5 = psd_witness_check(cycle_graph(5), {gram, 3});
    ASSERT_TRUE(c5.ok) << c5.detail;
    EXPECT_TRUE(verify_orthogonal_representation(cycle_graph(5), c5.rep));
    EXPECT_EQ(c5.rep.dimension, 3);
}

TEST(PSDWitness, Rejections) {
    CMatrix neg = CMatrix::Identity(2, 2);
    neg(1, 1) = -1;
    EXPECT_EQ(psd_witness_check(complete_graph(2), {neg, 2}).reason, PSDRejection::NotPSD);
    EXPECT_EQ(psd_witness_check(complete_graph(2), {CMatrix::Ones(2, 2), 2}).reason,
              PSDRejection::WrongPattern);
    EXPECT_EQ(psd_witness_check(complete_graph(3), {CMatrix::Identity(3, 3), 2}).reason,
              PSDRejection::RankTooHigh);
    CMatrix zero_diag = CMatrix::Identity(2, 2);
    zero_diag(1, 1) = 0;
    EXPECT_EQ(psd_witness_check(complete_graph(2), {zero_diag, 2}).reason, PSDRejection::ZeroGramVector);
    CMatrix asym = CMatrix::Identity(2, 2);
    asym(0, 1) = 0.5;
    EXPECT_EQ(psd_witness_check(edgeless(2), {asym, 2}).reason, PSDRejection::NotHermitian);
    EXPECT_THROW(psd_witness_check(complete_graph(3), {CMatrix::Identity(2, 2), 2}), InputError);
}

TEST(PSDWitness, AcceptanceImpliesRepresentation) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const Graph g = oracle::random_graph(5, 0.4, rng);
        // Gram matrix of the classical representation (basis vector per color).
        const auto cert = dsatur_coloring(g);
        CMatrix gram = CMatrix::Zero(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                gram(i, j) = cert.color[i] == cert.color[j] ? 1.0 : 0.0;
        const auto r = psd_witness_check(g, {gram, cert.colors});
        if (r.ok)
            EXPECT_TRUE(verify_orthogonal_representation(g, r.rep));
    }
}

TEST(Hadamard, SmallOrders) {
    for (int N : {2, 4, 6}) {
        const auto qc = hadamard_quantum_coloring(N);
        EXPECT_EQ(qc.colors, N);
        EXPECT_EQ(qc.vertex_count(), 1 << N);
        EXPECT_TRUE(verify_quantum_coloring(hadamard_graph(N), qc, 1e-9)) << N;
    }
    EXPECT_THROW(hadamard_quantum_coloring(5), InputError);
}

TEST(Hadamard, MatrixRepAndProductRoundTrip) {
    const Graph g = hadamard_graph(4);
    const auto mr = matrixrep_from_quantum_coloring(hadamard_quantum_coloring(4));
    EXPECT_TRUE(verify_matrix_representation(g, mr));
    const auto orth = matrixrep_to_orthrep(g, mr);
    EXPECT_TRUE(verify_orthogonal_representation(cartesian_product(g, complete_graph(4)), orth));
    const auto qc = quantum_coloring_from_matrixrep(mr);
    EXPECT_TRUE(verify_quantum_coloring(g, qc));
}
