#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "entdex/partitions.hpp"
#include "entdex/statecore.hpp"

namespace entdex {

/// Deterministic generator passed around by value. Draws are derived from
/// std::mt19937_64 with hand-rolled mappings so output is identical across
/// standard library implementations.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer on [lo, hi].
    int uniform_int(int lo, int hi);
    /// Uniformly random permutation of [0, n).
    std::vector<int> permutation(int n);

  private:
    std::mt19937_64 engine_;
};

/// U(theta, phi, lambda) =
///   [[cos(theta/2),            -e^{i lambda} sin(theta/2)],
///    [e^{i phi} sin(theta/2),  e^{i(phi+lambda)} cos(theta/2)]]
Matrix2 u3(double theta, double phi, double lambda);

/// Haar-distributed single-qubit unitary from three uniform [0,1) draws:
/// theta = 2 acos(sqrt(u)), phi = 2 pi v, lambda = 2 pi w.
Matrix2 haar_unitary_from_draws(double u, double v, double w);

/// n independent Haar single-qubit unitaries; same seed, same bits.
LocalUnitary random_local_unitary(int n, std::uint64_t seed);

/// (|0...0> + |1...1>)/sqrt(2) for n >= 2, |0> for n == 1.
PureState ghz(int n, const Limits &limits = {});

/// Computational basis state; bits[0] is qubit 0.
PureState basis_state(const std::vector<int> &bits, const Limits &limits = {});

struct DressedProductSpec {
    IntegerPartition shape;
    /// Which qubits hold each block. Blocks are matched to parts by size
    /// (largest first, canonical order among equal sizes). Contiguous
    /// layout in shape order when absent.
    std::optional<SetPartition> assignment;
    std::optional<std::uint64_t> lu_seed;
    /// Applied after assignment: qubit i moves to position perm[i].
    std::optional<std::vector<int>> perm;
};

struct GhzProduct {
    PureState state;
    SetPartition blocks;  // ground truth after permutation
};

/// Tensor product of ghz(n_j) blocks, placed per assignment, then permuted,
/// then dressed with random_local_unitary(N, lu_seed).
GhzProduct ghz_product(const DressedProductSpec &spec, const Limits &limits = {});

/// Contiguous GHZ blocks in shape order, no dressing.
GhzProduct ghz_product(const IntegerPartition &shape, const Limits &limits = {});

}  // namespace entdex
