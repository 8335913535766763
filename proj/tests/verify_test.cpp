#include "entdex/verify.hpp"

#include "gtest/gtest.h"

#include "entdex/construct.hpp"
#include "test_support.hpp"

using namespace entdex;
using entdex::testing::expect_amplitudes;
using entdex::testing::random_state;

TEST(measure, ghz3_z_basis) {
    const auto out = measure_qubit(ghz(3), 2, Basis::Z);
    ASSERT_EQ(out.size(), 2U);
    EXPECT_NEAR(out[0].probability, 0.5, 1e-12);
    EXPECT_NEAR(out[1].probability, 0.5, 1e-12);
    expect_amplitudes(out[0].post_state, {1, 0, 0, 0, 0, 0, 0, 0});
    expect_amplitudes(out[1].post_state, {0, 0, 0, 0, 0, 0, 0, 1});
}

TEST(measure, ghz3_x_basis) {
    const auto out = measure_qubit(ghz(3), 2, Basis::X);
    ASSERT_EQ(out.size(), 2U);
    for (const auto &o : out) {
        EXPECT_NEAR(o.probability, 0.5, 1e-12);
        const auto r = classify(o.post_state);
        EXPECT_EQ(r.blocks, SetPartition({QubitSet({0, 1}), QubitSet({2})}, 3));
        EXPECT_EQ(r.index.value, 1);
    }
    // outcome +: (|00> + |11>)/sqrt2 (x) |+>
    const double h = 0.5;
    expect_amplitudes(out[0].post_state, {h, h, 0, 0, 0, 0, h, h});
    // outcome -: (|00> - |11>)/sqrt2 (x) |->
    expect_amplitudes(out[1].post_state, {h, -h, 0, 0, 0, 0, -h, h});
}

TEST(measure, eigenstate_has_single_outcome) {
    const auto out = measure_qubit(basis_state({0, 0}), 0, Basis::Z);
    ASSERT_EQ(out.size(), 1U);
    EXPECT_DOUBLE_EQ(out[0].probability, 1.0);
    expect_amplitudes(out[0].post_state, {1, 0, 0, 0});
}

TEST(measure, basis_tags) {
    EXPECT_EQ(parse_basis("Z"), Basis::Z);
    EXPECT_EQ(parse_basis("X"), Basis::X);
    EXPECT_THROW(parse_basis("Y"), InvalidInput);
    EXPECT_THROW(parse_basis(""), InvalidInput);
    EXPECT_THROW(measure_qubit(ghz(2), 2, Basis::Z), InvalidInput);
}

TEST(measure, outcome_completeness) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto psi = random_state(4, seed);
        for (Basis b : {Basis::Z, Basis::X}) {
            double total = 0.0;
            for (const auto &o : measure_qubit(psi, static_cast<int>(seed % 4), b)) {
                total += o.probability;
                EXPECT_NEAR(o.post_state.norm(), 1.0, 1e-9);
            }
            EXPECT_NEAR(total, 1.0, 1e-9);
        }
    }
}

TEST(measure, measured_qubit_becomes_singleton) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto psi = random_state(3, seed);
        for (Basis b : {Basis::Z, Basis::X}) {
            for (const auto &o : measure_qubit(psi, 1, b)) {
                EXPECT_EQ(minimal_pure_subset(o.post_state, 1), QubitSet({1}));
            }
        }
    }
}

TEST(expected_index, ghz_examples) {
    for (int n = 2; n <= 7; ++n) {
        for (int q = 0; q < n; ++q) {
            EXPECT_NEAR(expected_index_after(ghz(n), q, Basis::Z), 0.0, 1e-12);
            EXPECT_NEAR(expected_index_after(ghz(n), q, Basis::X), n - 2, 1e-12);
        }
    }
    EXPECT_EQ(expected_index_after(basis_state({0, 0, 0}), 1, Basis::X), 0.0);
    EXPECT_EQ(expected_index_after(basis_state({0, 0, 0}), 1, Basis::Z), 0.0);
}

TEST(property_suite, examples) {
    SuiteConfig cfg;
    cfg.max_n = 6;
    cfg.trials = 100;
    const auto p1 = run_property_suite(1, cfg);
    EXPECT_EQ(p1.cases_run, 100);
    EXPECT_TRUE(p1.failures.empty());

    cfg.max_n = 4;
    const auto p4 = run_property_suite(4, cfg);
    EXPECT_TRUE(p4.failures.empty());
    EXPECT_EQ(p4.max_deviation, 0.0);

    // Property 3 on GHZ_4 over both bases.
    EXPECT_NEAR(expected_index_after(ghz(4), 0, Basis::Z), 0.0, 1e-12);
    EXPECT_NEAR(expected_index_after(ghz(4), 0, Basis::X), 2.0, 1e-12);
}

TEST(property_suite, all_properties_hold) {
    for (int id = 1; id <= 4; ++id) {
        SuiteConfig cfg;
        cfg.max_n = 5;
        cfg.trials = 30;
        cfg.seed = 11;
        const auto r = run_property_suite(id, cfg);
        EXPECT_TRUE(r.failures.empty()) << "property " << id << ": " << (r.failures.empty() ? "" : r.failures[0]);
        EXPECT_LE(r.max_deviation, 1e-9);
    }
}

TEST(property_suite, deterministic) {
    SuiteConfig cfg;
    cfg.max_n = 5;
    cfg.trials = 20;
    cfg.seed = 3;
    for (int id = 1; id <= 4; ++id) {
        const auto a = run_property_suite(id, cfg);
        const auto b = run_property_suite(id, cfg);
        EXPECT_EQ(a.cases_run, b.cases_run);
        EXPECT_EQ(a.failures, b.failures);
        EXPECT_EQ(a.max_deviation, b.max_deviation);
    }
}

TEST(property_suite, argument_validation) {
    SuiteConfig cfg;
    EXPECT_THROW(run_property_suite(0, cfg), InvalidInput);
    EXPECT_THROW(run_property_suite(5, cfg), InvalidInput);
    cfg.max_n = 1;
    EXPECT_THROW(run_property_suite(1, cfg), InvalidInput);
    cfg.max_n = 15;
    EXPECT_THROW(run_property_suite(1, cfg), InvalidInput);
}

TEST(ghz_epr, examples) {
    const auto r = ghz_epr_arithmetic(8);
    EXPECT_TRUE(r.ok);
    ASSERT_EQ(r.rows.size(), 7U);
    EXPECT_EQ(r.rows[0].m, 2);
    EXPECT_EQ(r.rows[0].index, 1);
    EXPECT_EQ(r.rows[3].m, 5);
    EXPECT_EQ(r.rows[3].index, 4);
    EXPECT_EQ(r.rows[3].expected, 4);
    EXPECT_EQ(r.rows[6].index, 7);
    EXPECT_THROW(ghz_epr_arithmetic(1), InvalidInput);
}
