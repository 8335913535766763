#pragma once

// Executable checks of the four entanglement-measure properties:
//   1. zero on fully separable states
//   2. invariance under local unitaries
//   3. expected index does not increase under local measurement
//   4. additivity over tensor products
// Property 3 is only spot-checked with single-qubit projective measurements.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "entdex/classify.hpp"
#include "entdex/statecore.hpp"

namespace entdex {

enum class Basis { Z, X };

/// "Z" or "X"; anything else throws InvalidInput.
Basis parse_basis(std::string_view tag);
std::string_view to_string(Basis basis);

struct MeasurementOutcome {
    double probability;
    PureState post_state;  // measured qubit collapsed to the outcome eigenstate
};

/// Projective measurement of one qubit. Outcomes with probability below
/// 1e-12 are dropped; outcome 0 (|0> or |+>) comes first.
std::vector<MeasurementOutcome> measure_qubit(const PureState &psi, int qubit, Basis basis);

/// sum_k p_k E(post_state_k).
double expected_index_after(const PureState &psi, int qubit, Basis basis, double tol = kDefaultTolerance);

struct PropertyReport {
    int property_id = 0;
    int cases_run = 0;
    std::vector<std::string> failures;
    double max_deviation = 0.0;
};

struct SuiteConfig {
    int max_n = 6;
    int trials = 100;
    std::uint64_t seed = 1;
    double tol = kDefaultTolerance;
    Limits limits{};
};

/// Seeded random cases for one property; deterministic in (id, config).
/// Deviation per case is the amount by which the property is violated, so
/// an empty failure list goes with max_deviation == 0 (or, for property 3,
/// no positive excess beyond 1e-9).
PropertyReport run_property_suite(int property_id, const SuiteConfig &config);

struct GhzEprRow {
    int m;
    int index;     // E(ghz(m))
    int expected;  // (m - 1) * E(ghz(2))
};

struct GhzEprReport {
    bool ok = true;
    std::vector<GhzEprRow> rows;
};

/// Checks E(ghz(m)) == (m - 1) E(ghz(2)) for m = 2..max_m.
GhzEprReport ghz_epr_arithmetic(int max_m, double tol = kDefaultTolerance, const Limits &limits = {});

}  // namespace entdex
