#include "entdex/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <type_traits>

namespace entdex {

namespace {

// Calls `visit` on every size-k combination of `pool` (sorted) in
// lexicographic order; stops early when `visit` returns true.
bool for_each_combination(const std::vector<int> &pool, int k,
                          const std::function<bool(const std::vector<int> &)> &visit) {
    const int m = static_cast<int>(pool.size());
    if (k > m) return false;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> pick(static_cast<std::size_t>(k));
    while (true) {
        for (int j = 0; j < k; ++j) pick[static_cast<std::size_t>(j)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        if (visit(pick)) return true;
        int j = k - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == m - k + j) --j;
        if (j < 0) return false;
        ++idx[static_cast<std::size_t>(j)];
        for (int t = j + 1; t < k; ++t) idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
    }
}

QubitSet scan_minimal_pure(const PureState &psi, int qubit, double tol, std::set<std::string> *near_misses) {
    const int n = psi.n_qubits();
    if (qubit < 0 || qubit >= n) throw InvalidInput("qubit index out of range");
    std::vector<int> others;
    for (int q = 0; q < n; ++q) {
        if (q != qubit) others.push_back(q);
    }
    // Inserting `qubit` into each combination of the others preserves
    // lexicographic order of the resulting sorted lists.
    for (int k = 0; k < n; ++k) {
        std::optional<QubitSet> found;
        for_each_combination(others, k, [&](const std::vector<int> &pick) {
            std::vector<int> members = pick;
            members.insert(std::lower_bound(members.begin(), members.end(), qubit), qubit);
            QubitSet candidate(std::move(members));
            const double defect = 1.0 - marginal_purity(psi, candidate);
            if (defect <= tol) {
                found = std::move(candidate);
                return true;
            }
            if (near_misses && defect <= 10 * tol) {
                near_misses->insert("purity defect " + std::to_string(defect) + " on " + to_string(candidate) +
                                    " is within 10x tolerance");
            }
            return false;
        });
        if (found) return *found;
    }
    return QubitSet::range(n);  // unreachable: the full set is pure
}

SetPartition factorize(const PureState &psi, double tol, std::set<std::string> *near_misses) {
    const int n = psi.n_qubits();
    std::vector<QubitSet> minimal;
    for (int q = 0; q < n; ++q) {
        auto s = scan_minimal_pure(psi, q, tol, near_misses);
        if (std::find(minimal.begin(), minimal.end(), s) == minimal.end()) minimal.push_back(std::move(s));
    }
    auto subset_of = [](const QubitSet &a, const QubitSet &b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    // Nested subsets collapse into the larger one; partial overlap is fatal.
    std::vector<QubitSet> blocks;
    for (const auto &s : minimal) {
        bool swallowed = false;
        for (const auto &t : minimal) {
            if (!(s == t) && subset_of(s, t)) swallowed = true;
        }
        if (!swallowed) blocks.push_back(s);
    }
    for (std::size_t a = 0; a < blocks.size(); ++a) {
        for (std::size_t b = a + 1; b < blocks.size(); ++b) {
            std::vector<int> common;
            std::set_intersection(blocks[a].begin(), blocks[a].end(), blocks[b].begin(), blocks[b].end(),
                                  std::back_inserter(common));
            if (!common.empty()) {
                throw FactorizationError("minimal pure subsets " + to_string(blocks[a]) + " and " +
                                         to_string(blocks[b]) + " overlap without nesting at tol " +
                                         std::to_string(tol));
            }
        }
    }
    return SetPartition(std::move(blocks), n);
}

}  // namespace

std::string class_label(IndexValue index) {
    return index.value == 0 ? "fully separable" : "entangled class E=" + std::to_string(index.value);
}

QubitSet minimal_pure_subset(const PureState &psi, int qubit, double tol) {
    return scan_minimal_pure(psi, qubit, tol, nullptr);
}

SetPartition finest_factorization(const PureState &psi, double tol) { return factorize(psi, tol, nullptr); }

IndexValue entanglement_index(const PureState &psi, double tol) {
    const auto sp = finest_factorization(psi, tol);
    return IndexValue{psi.n_qubits() - sp.num_blocks()};
}

ClassReport classify(const PureState &psi, double tol) {
    std::set<std::string> near_misses;
    SetPartition blocks = factorize(psi, tol, &near_misses);
    IntegerPartition shape = shape_of(blocks);
    const IndexValue index = index_of(shape);
    return ClassReport{std::move(blocks), std::move(shape), index, class_label(index), tol,
                       {near_misses.begin(), near_misses.end()}};
}

Factorization extract_factors(const PureState &psi, const QubitSet &part) {
    const int n = psi.n_qubits();
    part.check_within(n);
    if (part.empty() || part.size() == n) throw InvalidInput("factor extraction needs a proper nonempty subset");
    const QubitSet rest = part.complement(n);
    const auto m = bipartite_matrix(psi, part);
    const std::size_t rows = dimension_of(part.size());
    const std::size_t cols = dimension_of(rest.size());

    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += std::norm(m[r * cols + c]);
        if (s > best_norm) {
            best_norm = s;
            best = c;
        }
    }
    std::vector<Complex> a(rows);
    for (std::size_t r = 0; r < rows; ++r) a[r] = m[r * cols + best];
    PureState part_state = PureState::normalized(part.size(), std::move(a));

    std::vector<Complex> b(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) b[c] += std::conj(part_state[r]) * m[r * cols + c];
    }
    PureState rest_state = PureState::normalized(rest.size(), std::move(b));

    double residual = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) residual += std::norm(m[r * cols + c] - part_state[r] * rest_state[c]);
    }
    return {part, rest, std::move(part_state), std::move(rest_state), std::sqrt(residual)};
}

PureState join_factors(const PureState &part_state, const QubitSet &part, const PureState &rest_state,
                       const QubitSet &rest, const Limits &limits) {
    if (part_state.n_qubits() != part.size() || rest_state.n_qubits() != rest.size()) {
        throw InvalidInput("join_factors: qubit labels do not match factor sizes");
    }
    std::vector<int> perm(part.begin(), part.end());
    perm.insert(perm.end(), rest.begin(), rest.end());
    return permute_qubits(tensor(part_state, rest_state, limits), perm);
}

// ---------------------------------------------------------------------------
// Ensembles

Ensemble::Ensemble(int n_qubits, std::vector<EnsembleTerm> terms, double tol)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
    if (n_qubits_ < 1) throw InvalidInput("ensemble needs n >= 1");
    if (terms_.empty()) throw InvalidInput("ensemble needs at least one term");
    double total = 0.0;
    for (const auto &t : terms_) {
        if (!(t.probability > 0.0 && t.probability <= 1.0 + tol)) {
            throw InvalidInput("ensemble probability " + std::to_string(t.probability) + " outside (0, 1]");
        }
        total += t.probability;
        const int payload_n = std::visit(
            [](const auto &p) {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>, IntegerPartition>) {
                    return p.total();
                } else {
                    return p.n_qubits();
                }
            },
            t.payload);
        if (payload_n != n_qubits_) {
            throw InvalidInput("ensemble term describes " + std::to_string(payload_n) + " qubits, expected " +
                               std::to_string(n_qubits_));
        }
    }
    if (std::abs(total - 1.0) > tol) {
        throw InvalidInput("ensemble probabilities sum to " + std::to_string(total));
    }
}

Ensemble concatenate(const Ensemble &a, const Ensemble &b, double w) {
    if (!(w > 0.0 && w < 1.0)) throw InvalidInput("concatenation weight must lie in (0, 1)");
    if (a.n_qubits() != b.n_qubits()) throw InvalidInput("cannot concatenate ensembles of different sizes");
    std::vector<EnsembleTerm> terms;
    for (const auto &t : a.terms()) terms.push_back({w * t.probability, t.payload});
    for (const auto &t : b.terms()) terms.push_back({(1.0 - w) * t.probability, t.payload});
    return Ensemble(a.n_qubits(), std::move(terms));
}

double ensemble_index(const Ensemble &ensemble, double tol) {
    double total = 0.0;
    for (const auto &t : ensemble.terms()) {
        const IndexValue e = std::visit(
            [tol](const auto &p) {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>, IntegerPartition>) {
                    return index_of(p);
                } else {
                    return entanglement_index(p, tol);
                }
            },
            t.payload);
        total += t.probability * e.value;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Mixed-state product structure

namespace {

void split_recursive(const DensityMatrix &rho, const std::vector<int> &labels, double tol,
                     std::vector<QubitSet> &out) {
    const int m = rho.n_qubits();
    std::vector<int> local(static_cast<std::size_t>(m));
    std::iota(local.begin(), local.end(), 0);
    for (int k = 1; k <= m / 2; ++k) {
        bool split = false;
        for_each_combination(local, k, [&](const std::vector<int> &pick) {
            const QubitSet s(pick);
            const QubitSet t = s.complement(m);
            const auto rho_s = partial_trace(rho, s);
            const auto rho_t = partial_trace(rho, t);
            if (frobenius_distance(rho, embed_product(rho_s, s, rho_t, t)) > tol) return false;
            std::vector<int> s_labels, t_labels;
            for (int q : s) s_labels.push_back(labels[static_cast<std::size_t>(q)]);
            for (int q : t) t_labels.push_back(labels[static_cast<std::size_t>(q)]);
            split_recursive(rho_s, s_labels, tol, out);
            split_recursive(rho_t, t_labels, tol, out);
            split = true;
            return true;
        });
        if (split) return;
    }
    out.emplace_back(labels);
}

}  // namespace

SetPartition mixed_product_split(const DensityMatrix &rho, double tol) {
    std::vector<int> labels(static_cast<std::size_t>(rho.n_qubits()));
    std::iota(labels.begin(), labels.end(), 0);
    std::vector<QubitSet> blocks;
    split_recursive(rho, labels, tol, blocks);
    return SetPartition(std::move(blocks), rho.n_qubits());
}

}  // namespace entdex
