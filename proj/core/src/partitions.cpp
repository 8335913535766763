#include "entdex/partitions.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace entdex {

namespace {

void check_partition_n(int n, const Limits &limits) {
    if (n < 1 || n > limits.max_partition_n) {
        throw InvalidInput("n = " + std::to_string(n) + " outside [1, " +
                           std::to_string(limits.max_partition_n) + "]");
    }
}

}  // namespace

IntegerPartition::IntegerPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidInput("partition needs at least one part");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw InvalidInput("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidInput("partition parts must be non-increasing");
        total_ += parts_[i];
    }
}

std::string to_string(const IntegerPartition &partition) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < partition.parts().size(); ++i) {
        if (i) os << ',';
        os << partition.parts()[i];
    }
    os << ']';
    return os.str();
}

SetPartition::SetPartition(std::vector<QubitSet> blocks, int n_qubits)
    : blocks_(std::move(blocks)), n_qubits_(n_qubits) {
    std::vector<int> owner(static_cast<std::size_t>(std::max(n_qubits, 0)), -1);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (blocks_[b].empty()) throw InvalidInput("set partition has an empty block");
        blocks_[b].check_within(n_qubits);
        for (int q : blocks_[b]) {
            if (owner[static_cast<std::size_t>(q)] != -1) {
                throw InvalidInput("qubit " + std::to_string(q) + " appears in two blocks");
            }
            owner[static_cast<std::size_t>(q)] = static_cast<int>(b);
        }
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
        throw InvalidInput("set partition does not cover every qubit");
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const QubitSet &a, const QubitSet &b) { return a.front() < b.front(); });
}

const QubitSet &SetPartition::block_of(int q) const {
    for (const auto &b : blocks_) {
        if (b.contains(q)) return b;
    }
    throw InvalidInput("qubit " + std::to_string(q) + " not in set partition");
}

std::string to_string(const SetPartition &sp) {
    std::string out;
    for (std::size_t i = 0; i < sp.blocks().size(); ++i) {
        if (i) out += ',';
        out += to_string(sp.blocks()[i]);
    }
    return out;
}

SetPartition relabel(const SetPartition &sp, std::span<const int> perm) {
    check_permutation(perm, sp.n_qubits());
    std::vector<QubitSet> blocks;
    for (const auto &b : sp.blocks()) {
        std::vector<int> m;
        for (int q : b) m.push_back(perm[static_cast<std::size_t>(q)]);
        std::sort(m.begin(), m.end());
        blocks.emplace_back(std::move(m));
    }
    return SetPartition(std::move(blocks), sp.n_qubits());
}

std::vector<IntegerPartition> enumerate_partitions(int n, const Limits &limits) {
    check_partition_n(n, limits);
    // Iterative successor in reverse-lexicographic order: strip trailing 1s,
    // decrement the last part > 1, and refill with copies of the new value.
    std::vector<IntegerPartition> out;
    std::vector<int> a{n};
    while (true) {
        out.emplace_back(a);
        int ones = 0;
        while (!a.empty() && a.back() == 1) {
            a.pop_back();
            ++ones;
        }
        if (a.empty()) break;
        const int v = --a.back();
        int remaining = ones + 1;
        while (remaining > v) {
            a.push_back(v);
            remaining -= v;
        }
        if (remaining > 0) a.push_back(remaining);
    }
    return out;
}

std::uint64_t partition_count(int n, const Limits &limits) {
    check_partition_n(n, limits);
    // p(m) = sum_{k>=1} (-1)^{k+1} [p(m - k(3k-1)/2) + p(m - k(3k+1)/2)]
    std::vector<std::int64_t> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        std::int64_t sum = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2;
            if (g1 > m) break;
            const int sign = (k % 2 == 1) ? 1 : -1;
            sum += sign * p[static_cast<std::size_t>(m - g1)];
            const int g2 = k * (3 * k + 1) / 2;
            if (g2 <= m) sum += sign * p[static_cast<std::size_t>(m - g2)];
        }
        p[static_cast<std::size_t>(m)] = sum;
    }
    return static_cast<std::uint64_t>(p[static_cast<std::size_t>(n)]);
}

IntegerPartition shape_of(const SetPartition &sp) {
    std::vector<int> sizes;
    for (const auto &b : sp.blocks()) sizes.push_back(b.size());
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return IntegerPartition(std::move(sizes));
}

IndexValue index_of(const IntegerPartition &partition) {
    int per_block = 0;
    for (int part : partition.parts()) per_block += part - 1;
    const int global = partition.total() - partition.num_parts();
    if (per_block != global) throw std::logic_error("index formulas disagree for " + to_string(partition));
    return IndexValue{per_block};
}

std::vector<IndexValue> class_spectrum(int n, const Limits &limits) {
    std::set<IndexValue> seen;
    for (const auto &p : enumerate_partitions(n, limits)) seen.insert(index_of(p));
    return {seen.begin(), seen.end()};
}

}  // namespace entdex
