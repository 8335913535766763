#include "entdex/statecore.hpp"

#include <numeric>

#include "gtest/gtest.h"

#include "test_support.hpp"

using namespace entdex;
using entdex::testing::bell;
using entdex::testing::expect_amplitudes;
using entdex::testing::expect_matrix;
using entdex::testing::kInvSqrt2;
using entdex::testing::random_state;

namespace {

const Matrix2 kX{0.0, 1.0, 1.0, 0.0};
const Matrix2 kH{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};

PureState ket(int n, std::size_t index) {
    std::vector<Complex> a(dimension_of(n), 0.0);
    a[index] = 1.0;
    return PureState(n, std::move(a));
}

const PureState kGhz3(3, {kInvSqrt2, 0, 0, 0, 0, 0, 0, kInvSqrt2});

}  // namespace

TEST(statecore, qubit_set_validation) {
    EXPECT_THROW(QubitSet({1, 0}), InvalidInput);
    EXPECT_THROW(QubitSet({0, 0}), InvalidInput);
    EXPECT_THROW(QubitSet({-1}), InvalidInput);
    QubitSet s({0, 2});
    EXPECT_NO_THROW(s.check_within(3));
    EXPECT_THROW(s.check_within(2), InvalidInput);
    EXPECT_EQ(s.complement(4), QubitSet({1, 3}));
    EXPECT_EQ(to_string(s), "{0,2}");
}

TEST(statecore, pure_state_validation) {
    EXPECT_THROW(PureState(2, {1.0, 0.0, 0.0}), InvalidInput);
    EXPECT_THROW(PureState(1, {1.0, 1.0}), InvalidInput);
    EXPECT_THROW(PureState(1, {std::nan(""), 0.0}), InvalidInput);
    EXPECT_THROW(PureState(0, {1.0}), InvalidInput);
    EXPECT_THROW(PureState::normalized(1, {0.0, 0.0}), InvalidInput);
    EXPECT_NEAR(PureState::normalized(1, {3.0, 4.0})[1].real(), 0.8, 1e-15);
}

TEST(statecore, tensor_examples) {
    expect_amplitudes(tensor(ket(1, 0), ket(1, 0)), {1, 0, 0, 0});
    expect_amplitudes(tensor(bell(), ket(1, 0)), {kInvSqrt2, 0, 0, 0, 0, 0, kInvSqrt2, 0});
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto p = tensor(random_state(2, seed), random_state(3, seed + 100));
        EXPECT_NEAR(p.norm(), 1.0, 1e-12);
        EXPECT_EQ(p.n_qubits(), 5);
    }
}

TEST(statecore, tensor_respects_cap) {
    EXPECT_THROW(tensor(bell(), bell(), Limits{3, 40}), CapExceeded);
    EXPECT_NO_THROW(tensor(bell(), bell(), Limits{4, 40}));
}

TEST(statecore, to_density_examples) {
    expect_matrix(to_density(ket(1, 0)), {1, 0, 0, 0});
    std::vector<Complex> bell_rho(16, 0.0);
    for (std::size_t i : {0, 3, 12, 15}) bell_rho[i] = 0.5;
    expect_matrix(to_density(bell()), bell_rho);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        EXPECT_NEAR(to_density(random_state(3, seed)).trace(), 1.0, 1e-12);
    }
}

TEST(statecore, density_matrix_validation) {
    EXPECT_THROW(DensityMatrix(1, {0.5, 0.1, 0.2, 0.5}), InvalidInput);  // not Hermitian
    EXPECT_THROW(DensityMatrix(1, {0.6, 0.0, 0.0, 0.6}), InvalidInput);  // trace
    EXPECT_THROW(DensityMatrix(1, {1.0, 0.0, 0.0}), InvalidInput);
    EXPECT_THROW(to_density(random_state(13, 1)), CapExceeded);
}

TEST(statecore, partial_trace_examples) {
    expect_matrix(partial_trace(to_density(ket(2, 0)), QubitSet({0})), {1, 0, 0, 0});
    expect_matrix(partial_trace(to_density(bell()), QubitSet({0})), {0.5, 0, 0, 0.5});
    std::vector<Complex> ghz_pair(16, 0.0);
    ghz_pair[0] = 0.5;
    ghz_pair[15] = 0.5;
    expect_matrix(partial_trace(to_density(kGhz3), QubitSet({0, 1})), ghz_pair);
    // Amplitude route gives the same marginals.
    expect_matrix(partial_trace(kGhz3, QubitSet({0, 1})), ghz_pair);
    expect_matrix(partial_trace(bell(), QubitSet({1})), {0.5, 0, 0, 0.5});
}

TEST(statecore, partial_trace_errors) {
    EXPECT_THROW(partial_trace(to_density(bell()), QubitSet()), InvalidInput);
    EXPECT_THROW(partial_trace(to_density(bell()), QubitSet({2})), InvalidInput);
    EXPECT_THROW(partial_trace(bell(), QubitSet()), InvalidInput);
    EXPECT_THROW(partial_trace(bell(), QubitSet({0, 5})), InvalidInput);
}

TEST(statecore, purity_examples) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) EXPECT_NEAR(purity(to_density(random_state(3, seed))), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(purity(DensityMatrix::maximally_mixed(1)), 0.5);
    EXPECT_NEAR(purity(partial_trace(kGhz3, QubitSet({0, 1}))), 0.5, 1e-12);
}

TEST(statecore, frobenius_distance_examples) {
    const auto rho = to_density(random_state(2, 3));
    const auto sigma = to_density(random_state(2, 4));
    EXPECT_EQ(frobenius_distance(rho, rho), 0.0);
    EXPECT_NEAR(frobenius_distance(to_density(ket(1, 0)), to_density(ket(1, 1))), std::sqrt(2.0), 1e-15);
    EXPECT_DOUBLE_EQ(frobenius_distance(rho, sigma), frobenius_distance(sigma, rho));
    EXPECT_THROW(frobenius_distance(rho, DensityMatrix::maximally_mixed(1)), InvalidInput);
}

TEST(statecore, local_unitary_examples) {
    const auto psi = random_state(3, 9);
    expect_amplitudes(apply_local_unitary(psi, LocalUnitary::identity(3)),
                      std::vector<Complex>(psi.amplitudes().begin(), psi.amplitudes().end()));
    expect_amplitudes(apply_local_unitary(ket(2, 0), LocalUnitary({kX, identity2()})), {0, 0, 1, 0});
    const auto dressed = apply_local_unitary(bell(), LocalUnitary({identity2(), kH}));
    EXPECT_NEAR(dressed.norm(), 1.0, 1e-12);
    EXPECT_NEAR(purity(partial_trace(dressed, QubitSet({0}))), 0.5, 1e-12);
}

TEST(statecore, local_unitary_errors) {
    EXPECT_THROW(apply_local_unitary(bell(), LocalUnitary::identity(3)), InvalidInput);
    EXPECT_THROW(LocalUnitary({Matrix2{1.0, 1.0, 0.0, 1.0}}), InvalidInput);
    EXPECT_FALSE(is_unitary(Matrix2{2.0, 0.0, 0.0, 0.5}));
    EXPECT_TRUE(is_unitary(kH));
}

TEST(statecore, permute_examples) {
    const auto psi = random_state(3, 17);
    const std::vector<int> identity{0, 1, 2};
    EXPECT_EQ(state_distance(permute_qubits(psi, identity), psi), 0.0);
    expect_amplitudes(permute_qubits(ket(2, 1), std::vector<int>{1, 0}), {0, 0, 1, 0});
    const std::vector<int> swap02{2, 1, 0};
    EXPECT_LT(state_distance(permute_qubits(permute_qubits(psi, swap02), swap02), psi), 1e-12);
    EXPECT_THROW(permute_qubits(psi, std::vector<int>{0, 0, 1}), InvalidInput);
    EXPECT_THROW(permute_qubits(psi, std::vector<int>{0, 1}), InvalidInput);
}

TEST(statecore, permute_moves_qubit_to_position) {
    // qubit 0 in |1> moves to position 2: |100> -> |001>
    expect_amplitudes(permute_qubits(ket(3, 4), std::vector<int>{2, 0, 1}), {0, 1, 0, 0, 0, 0, 0, 0});
}

TEST(statecore, density_tensor_and_embedding) {
    const auto a = to_density(bell());
    const auto b = DensityMatrix::maximally_mixed(1);
    const auto ab = tensor(a, b);
    EXPECT_EQ(ab.n_qubits(), 3);
    EXPECT_NEAR(frobenius_distance(partial_trace(ab, QubitSet({0, 1})), a), 0.0, 1e-15);
    // Embedding on {0,2} x {1} equals the contiguous product with qubits 1,2 swapped.
    const auto psi = tensor(bell(), ket(1, 1));
    const auto swapped = permute_qubits(psi, std::vector<int>{0, 2, 1});
    const auto embedded = embed_product(a, QubitSet({0, 2}), to_density(ket(1, 1)), QubitSet({1}));
    EXPECT_NEAR(frobenius_distance(embedded, to_density(swapped)), 0.0, 1e-15);
    EXPECT_THROW(embed_product(a, QubitSet({0, 1}), b, QubitSet({1})), InvalidInput);
}

// Randomized invariants over seeded 4-qubit states.

TEST(statecore_properties, partial_trace_chain_consistency) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto psi = random_state(4, seed);
        const auto rho = to_density(psi);
        const QubitSet s({1});
        const QubitSet st({1, 3});
        const auto chained = partial_trace(partial_trace(rho, st), QubitSet({0}));
        const auto direct = partial_trace(rho, s);
        EXPECT_LT(frobenius_distance(chained, direct), 1e-9);
        EXPECT_LT(frobenius_distance(partial_trace(psi, st), partial_trace(rho, st)), 1e-9);
    }
}

TEST(statecore_properties, marginal_purity_matches_density_route) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto psi = random_state(5, seed);
        for (const auto &s : entdex::testing::all_subsets(5)) {
            const double via_density = purity(partial_trace(psi, s));
            EXPECT_NEAR(marginal_purity(psi, s), via_density, 1e-12) << to_string(s);
            EXPECT_GE(via_density, 1.0 / static_cast<double>(dimension_of(s.size())) - 1e-9);
            EXPECT_LE(via_density, 1.0 + 1e-9);
        }
    }
}

TEST(statecore_properties, unitary_maps_preserve_norm) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto psi = random_state(4, seed);
        const auto u = random_local_unitary(4, seed + 1000);
        EXPECT_NEAR(apply_local_unitary(psi, u).norm(), 1.0, 1e-9);
        SeededRng rng(seed);
        EXPECT_NEAR(permute_qubits(psi, rng.permutation(4)).norm(), 1.0, 1e-9);
    }
}

TEST(statecore_properties, tensor_factors_have_pure_marginals) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto psi = tensor(random_state(2, seed), random_state(3, seed + 7));
        EXPECT_NEAR(marginal_purity(psi, QubitSet({0, 1})), 1.0, 1e-9);
        EXPECT_NEAR(marginal_purity(psi, QubitSet({2, 3, 4})), 1.0, 1e-9);
    }
}
