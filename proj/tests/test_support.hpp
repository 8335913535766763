#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

#include "entdex/construct.hpp"
#include "entdex/statecore.hpp"

namespace entdex::testing {

inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

/// Gaussian amplitudes, normalized: Haar-distributed over the sphere.
inline PureState random_state(int n, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<Complex> a(dimension_of(n));
    for (auto &x : a) {
        const double r = std::sqrt(-2.0 * std::log(1.0 - rng.uniform01()));
        const double t = 2.0 * std::numbers::pi * rng.uniform01();
        x = std::polar(r, t);
    }
    return PureState::normalized(n, std::move(a));
}

inline void expect_amplitudes(const PureState &psi, const std::vector<Complex> &expected, double tol = 1e-12) {
    ASSERT_EQ(psi.dimension(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(std::abs(psi[i] - expected[i]), 0.0, tol) << "index " << i;
    }
}

inline void expect_matrix(const DensityMatrix &rho, const std::vector<Complex> &expected, double tol = 1e-12) {
    ASSERT_EQ(rho.entries().size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(std::abs(rho.entries()[i] - expected[i]), 0.0, tol) << "entry " << i;
    }
}

/// Every nonempty subset of [0, n) as a QubitSet (bitmask order).
inline std::vector<QubitSet> all_subsets(int n) {
    std::vector<QubitSet> out;
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
        std::vector<int> m;
        for (int q = 0; q < n; ++q) {
            if (mask & (1U << q)) m.push_back(q);
        }
        out.emplace_back(std::move(m));
    }
    return out;
}

inline PureState bell() { return PureState(2, {kInvSqrt2, 0.0, 0.0, kInvSqrt2}); }

}  // namespace entdex::testing
