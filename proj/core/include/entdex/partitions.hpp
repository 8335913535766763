#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "entdex/statecore.hpp"

namespace entdex {

/// Non-increasing sequence of positive parts n1 >= n2 >= ... >= np >= 1.
class IntegerPartition {
  public:
    explicit IntegerPartition(std::vector<int> parts);

    const std::vector<int> &parts() const { return parts_; }
    int total() const { return total_; }                              // N
    int num_parts() const { return static_cast<int>(parts_.size()); }  // p

    friend bool operator==(const IntegerPartition &, const IntegerPartition &) = default;

  private:
    std::vector<int> parts_;
    int total_ = 0;
};

std::string to_string(const IntegerPartition &partition);  // "[3,2]"

/// Entanglement index E; always in [0, N-1] for a partition of N.
struct IndexValue {
    int value = 0;
    friend auto operator<=>(const IndexValue &, const IndexValue &) = default;
};

/// Disjoint nonempty blocks covering [0, N), kept in canonical order
/// (blocks sorted by smallest member).
class SetPartition {
  public:
    SetPartition(std::vector<QubitSet> blocks, int n_qubits);

    const std::vector<QubitSet> &blocks() const { return blocks_; }
    int n_qubits() const { return n_qubits_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    /// Block containing qubit q.
    const QubitSet &block_of(int q) const;

    friend bool operator==(const SetPartition &, const SetPartition &) = default;

  private:
    std::vector<QubitSet> blocks_;
    int n_qubits_;
};

std::string to_string(const SetPartition &sp);  // "{0,1},{2}"

/// Image of every block under qubit i -> perm[i], re-canonicalized.
SetPartition relabel(const SetPartition &sp, std::span<const int> perm);

/// All partitions of n in reverse-lexicographic order, [n] first and
/// [1,...,1] last. Requires 1 <= n <= limits.max_partition_n.
std::vector<IntegerPartition> enumerate_partitions(int n, const Limits &limits = {});

/// p(n) by Euler's pentagonal-number recurrence.
std::uint64_t partition_count(int n, const Limits &limits = {});

IntegerPartition shape_of(const SetPartition &sp);

/// E = sum_j (n_j - 1) = N - p.
IndexValue index_of(const IntegerPartition &partition);

/// Distinct index values over all partitions of n, ascending.
std::vector<IndexValue> class_spectrum(int n, const Limits &limits = {});

}  // namespace entdex
