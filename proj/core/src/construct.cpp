#include "entdex/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace entdex {

int SeededRng::uniform_int(int lo, int hi) {
    if (hi < lo) throw InvalidInput("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
}

std::vector<int> SeededRng::permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(uniform_int(0, i))]);
    }
    return p;
}

Matrix2 u3(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {Complex(c, 0.0), -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s,
            std::polar(1.0, phi + lambda) * c};
}

Matrix2 haar_unitary_from_draws(double u, double v, double w) {
    const double theta = 2.0 * std::acos(std::sqrt(u));
    return u3(theta, 2.0 * std::numbers::pi * v, 2.0 * std::numbers::pi * w);
}

LocalUnitary random_local_unitary(int n, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("random_local_unitary needs n >= 1");
    SeededRng rng(seed);
    std::vector<Matrix2> per_qubit;
    per_qubit.reserve(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        const double u = rng.uniform01();
        const double v = rng.uniform01();
        const double w = rng.uniform01();
        per_qubit.push_back(haar_unitary_from_draws(u, v, w));
    }
    return LocalUnitary(std::move(per_qubit));
}

PureState ghz(int n, const Limits &limits) {
    if (n < 1) throw InvalidInput("ghz width must be >= 1");
    if (n > limits.max_qubits) {
        throw CapExceeded("ghz width " + std::to_string(n) + " exceeds cap " + std::to_string(limits.max_qubits));
    }
    std::vector<Complex> a(dimension_of(n), 0.0);
    if (n == 1) {
        a[0] = 1.0;
    } else {
        a.front() = std::numbers::sqrt2 / 2;
        a.back() = std::numbers::sqrt2 / 2;
    }
    return PureState(n, std::move(a));
}

PureState basis_state(const std::vector<int> &bits, const Limits &limits) {
    if (bits.empty()) throw InvalidInput("basis_state needs at least one bit");
    const int n = static_cast<int>(bits.size());
    if (n > limits.max_qubits) throw CapExceeded("basis state exceeds qubit cap");
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw InvalidInput("basis bits must be 0 or 1");
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    std::vector<Complex> a(dimension_of(n), 0.0);
    a[index] = 1.0;
    return PureState(n, std::move(a));
}

GhzProduct ghz_product(const DressedProductSpec &spec, const Limits &limits) {
    const auto &parts = spec.shape.parts();
    const int n = spec.shape.total();
    if (n > limits.max_qubits) {
        throw CapExceeded("product of " + std::to_string(n) + " qubits exceeds cap " +
                          std::to_string(limits.max_qubits));
    }

    PureState state = ghz(parts.front(), limits);
    for (std::size_t j = 1; j < parts.size(); ++j) state = tensor(state, ghz(parts[j], limits), limits);

    std::vector<QubitSet> blocks;
    std::vector<int> place(static_cast<std::size_t>(n));
    std::iota(place.begin(), place.end(), 0);
    if (spec.assignment) {
        if (spec.assignment->n_qubits() != n || !(shape_of(*spec.assignment) == spec.shape)) {
            throw InvalidInput("assignment " + to_string(*spec.assignment) + " does not have shape " +
                               to_string(spec.shape));
        }
        std::vector<QubitSet> by_size = spec.assignment->blocks();
        std::stable_sort(by_size.begin(), by_size.end(),
                         [](const QubitSet &a, const QubitSet &b) { return a.size() > b.size(); });
        std::size_t offset = 0;
        for (const auto &block : by_size) {
            for (int q : block) place[offset++] = q;
        }
        state = permute_qubits(state, place);
        blocks = spec.assignment->blocks();
    } else {
        int offset = 0;
        for (int part : parts) {
            std::vector<int> m(static_cast<std::size_t>(part));
            std::iota(m.begin(), m.end(), offset);
            blocks.emplace_back(std::move(m));
            offset += part;
        }
    }
    SetPartition truth(std::move(blocks), n);

    if (spec.perm) {
        state = permute_qubits(state, *spec.perm);
        truth = relabel(truth, *spec.perm);
    }
    if (spec.lu_seed) state = apply_local_unitary(state, random_local_unitary(n, *spec.lu_seed));
    return {std::move(state), std::move(truth)};
}

GhzProduct ghz_product(const IntegerPartition &shape, const Limits &limits) {
    return ghz_product(DressedProductSpec{shape, std::nullopt, std::nullopt, std::nullopt}, limits);
}

}  // namespace entdex
