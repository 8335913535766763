#include "entdex/statecore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace entdex {

namespace {

bool finite(const Complex &c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void check_qubit_count(int n) {
    if (n < 1 || n > kHardQubitCeiling) {
        throw InvalidInput("qubit count " + std::to_string(n) + " outside [1, " +
                           std::to_string(kHardQubitCeiling) + "]");
    }
}

// Global basis index (in an n-qubit register) for each local index of `qubits`.
std::vector<std::size_t> scatter_table(const std::vector<int> &qubits, int n) {
    const int k = static_cast<int>(qubits.size());
    std::vector<std::size_t> table(dimension_of(k), 0);
    for (std::size_t local = 0; local < table.size(); ++local) {
        std::size_t global = 0;
        for (int j = 0; j < k; ++j) {
            if ((local >> (k - 1 - j)) & 1U) {
                global |= std::size_t{1} << (n - 1 - qubits[static_cast<std::size_t>(j)]);
            }
        }
        table[local] = global;
    }
    return table;
}

// psi reshaped to a (2^|rows|) x (2^|cols|) row-major matrix.
std::vector<Complex> reshape(const PureState &psi, const std::vector<int> &rows,
                             const std::vector<int> &cols) {
    const int n = psi.n_qubits();
    const auto row_map = scatter_table(rows, n);
    const auto col_map = scatter_table(cols, n);
    std::vector<Complex> m(row_map.size() * col_map.size());
    for (std::size_t r = 0; r < row_map.size(); ++r) {
        for (std::size_t c = 0; c < col_map.size(); ++c) {
            m[r * col_map.size() + c] = psi[row_map[r] | col_map[c]];
        }
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// QubitSet

QubitSet::QubitSet(std::vector<int> members) : members_(std::move(members)) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] < 0) {
            throw InvalidInput("negative qubit index in " + to_string(*this));
        }
        if (i > 0 && members_[i] <= members_[i - 1]) {
            throw InvalidInput("qubit set must be strictly increasing: " + to_string(*this));
        }
    }
}

QubitSet QubitSet::range(int n) {
    std::vector<int> m(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(m.begin(), m.end(), 0);
    return QubitSet(std::move(m));
}

bool QubitSet::contains(int q) const { return std::binary_search(members_.begin(), members_.end(), q); }

void QubitSet::check_within(int n) const {
    if (!members_.empty() && members_.back() >= n) {
        throw InvalidInput("qubit index " + std::to_string(members_.back()) +
                           " out of range for " + std::to_string(n) + " qubits");
    }
}

QubitSet QubitSet::complement(int n) const {
    std::vector<int> out;
    for (int q = 0; q < n; ++q) {
        if (!contains(q)) out.push_back(q);
    }
    return QubitSet(std::move(out));
}

std::string to_string(const QubitSet &set) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < set.members().size(); ++i) {
        if (i) os << ',';
        os << set.members()[i];
    }
    os << '}';
    return os.str();
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(int n_qubits, std::vector<Complex> amplitudes, double tol)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(n_qubits_);
    if (amplitudes_.size() != dimension_of(n_qubits_)) {
        throw InvalidInput("amplitude count " + std::to_string(amplitudes_.size()) +
                           " does not match 2^" + std::to_string(n_qubits_));
    }
    if (!std::all_of(amplitudes_.begin(), amplitudes_.end(), finite)) {
        throw InvalidInput("non-finite amplitude");
    }
    double sq = 0.0;
    for (const auto &a : amplitudes_) sq += std::norm(a);
    if (std::abs(sq - 1.0) > tol) {
        throw InvalidInput("state not normalized: squared norm " + std::to_string(sq));
    }
}

PureState PureState::normalized(int n_qubits, std::vector<Complex> amplitudes) {
    double sq = 0.0;
    for (const auto &a : amplitudes) sq += std::norm(a);
    if (!(sq > 0.0) || !std::isfinite(sq)) throw InvalidInput("cannot normalize a zero or non-finite vector");
    const double scale = 1.0 / std::sqrt(sq);
    for (auto &a : amplitudes) a *= scale;
    return PureState(n_qubits, std::move(amplitudes));
}

double PureState::norm() const {
    double sq = 0.0;
    for (const auto &a : amplitudes_) sq += std::norm(a);
    return std::sqrt(sq);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(int n_qubits, std::vector<Complex> entries, double tol)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
    check_qubit_count(n_qubits_);
    if (n_qubits_ > kMaxDensityQubits) {
        throw CapExceeded("density matrix on " + std::to_string(n_qubits_) + " qubits exceeds " +
                          std::to_string(kMaxDensityQubits));
    }
    const std::size_t d = dimension();
    if (entries_.size() != d * d) throw InvalidInput("density matrix has wrong entry count");
    if (!std::all_of(entries_.begin(), entries_.end(), finite)) {
        throw InvalidInput("non-finite density matrix entry");
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                throw InvalidInput("density matrix not Hermitian");
            }
        }
    }
    if (std::abs(trace() - 1.0) > tol) {
        throw InvalidInput("density matrix trace " + std::to_string(trace()) + " != 1");
    }
    const double p = purity(*this);
    if (p < 1.0 / static_cast<double>(d) - tol || p > 1.0 + tol) {
        throw InvalidInput("density matrix purity " + std::to_string(p) + " out of bounds");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    check_qubit_count(n_qubits);
    const std::size_t d = dimension_of(n_qubits);
    std::vector<Complex> e(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) e[i * d + i] = 1.0 / static_cast<double>(d);
    return DensityMatrix(n_qubits, std::move(e));
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dimension(); ++i) t += (*this)(i, i).real();
    return t;
}

// ---------------------------------------------------------------------------
// LocalUnitary

bool is_unitary(const Matrix2 &m, double tol) {
    // (M^dagger M)_{ij} = sum_k conj(M_ki) M_kj
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Complex s = std::conj(m[static_cast<std::size_t>(i)]) * m[static_cast<std::size_t>(j)] +
                        std::conj(m[static_cast<std::size_t>(2 + i)]) * m[static_cast<std::size_t>(2 + j)];
            const double expected = (i == j) ? 1.0 : 0.0;
            if (!finite(s) || std::abs(s - expected) > tol) return false;
        }
    }
    return true;
}

LocalUnitary::LocalUnitary(std::vector<Matrix2> per_qubit, double tol) : per_qubit_(std::move(per_qubit)) {
    if (per_qubit_.empty()) throw InvalidInput("local unitary needs at least one qubit");
    for (std::size_t q = 0; q < per_qubit_.size(); ++q) {
        if (!is_unitary(per_qubit_[q], tol)) {
            throw InvalidInput("matrix for qubit " + std::to_string(q) + " is not unitary");
        }
    }
}

LocalUnitary LocalUnitary::identity(int n) {
    return LocalUnitary(std::vector<Matrix2>(static_cast<std::size_t>(n), identity2()));
}

// ---------------------------------------------------------------------------
// Operations

PureState tensor(const PureState &a, const PureState &b, const Limits &limits) {
    const int n = a.n_qubits() + b.n_qubits();
    if (n > limits.max_qubits) {
        throw CapExceeded("tensor product of " + std::to_string(n) + " qubits exceeds cap " +
                          std::to_string(limits.max_qubits));
    }
    std::vector<Complex> out(a.dimension() * b.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        for (std::size_t j = 0; j < b.dimension(); ++j) {
            out[i * b.dimension() + j] = a[i] * b[j];
        }
    }
    return PureState(n, std::move(out));
}

DensityMatrix to_density(const PureState &psi) {
    if (psi.n_qubits() > kMaxDensityQubits) {
        throw CapExceeded("refusing to materialize a " + std::to_string(psi.n_qubits()) +
                          "-qubit density matrix");
    }
    const std::size_t d = psi.dimension();
    std::vector<Complex> e(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) e[i * d + j] = psi[i] * std::conj(psi[j]);
    }
    return DensityMatrix(psi.n_qubits(), std::move(e));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const QubitSet &keep) {
    const int n = rho.n_qubits();
    if (keep.empty()) throw InvalidInput("partial trace needs a nonempty keep-set");
    keep.check_within(n);
    const auto rest = keep.complement(n);
    const auto keep_map = scatter_table(keep.members(), n);
    const auto rest_map = scatter_table(rest.members(), n);
    const std::size_t dk = keep_map.size();
    std::vector<Complex> e(dk * dk, 0.0);
    for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = 0; b < dk; ++b) {
            Complex s = 0.0;
            for (const std::size_t r : rest_map) s += rho(keep_map[a] | r, keep_map[b] | r);
            e[a * dk + b] = s;
        }
    }
    return DensityMatrix(keep.size(), std::move(e));
}

DensityMatrix partial_trace(const PureState &psi, const QubitSet &keep) {
    const int n = psi.n_qubits();
    if (keep.empty()) throw InvalidInput("partial trace needs a nonempty keep-set");
    keep.check_within(n);
    if (keep.size() > kMaxDensityQubits) {
        throw CapExceeded("refusing to materialize a " + std::to_string(keep.size()) +
                          "-qubit marginal");
    }
    const auto rest = keep.complement(n);
    const auto m = reshape(psi, keep.members(), rest.members());
    const std::size_t rows = dimension_of(keep.size());
    const std::size_t cols = dimension_of(rest.size());
    std::vector<Complex> e(rows * rows, 0.0);
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = a; b < rows; ++b) {
            Complex s = 0.0;
            for (std::size_t c = 0; c < cols; ++c) s += m[a * cols + c] * std::conj(m[b * cols + c]);
            e[a * rows + b] = s;
            e[b * rows + a] = std::conj(s);
        }
    }
    return DensityMatrix(keep.size(), std::move(e));
}

double purity(const DensityMatrix &rho) {
    double s = 0.0;
    for (const auto &x : rho.entries()) s += std::norm(x);
    return s;
}

double marginal_purity(const PureState &psi, const QubitSet &subset) {
    const int n = psi.n_qubits();
    if (subset.empty()) throw InvalidInput("marginal needs a nonempty subset");
    subset.check_within(n);
    const auto rest = subset.complement(n);
    if (rest.empty()) return 1.0;
    // tr((M M^dagger)^2) == tr((M^dagger M)^2); use the smaller Gram matrix.
    const bool subset_rows = subset.size() <= rest.size();
    const auto &row_q = subset_rows ? subset.members() : rest.members();
    const auto &col_q = subset_rows ? rest.members() : subset.members();
    const auto m = reshape(psi, row_q, col_q);
    const std::size_t rows = dimension_of(static_cast<int>(row_q.size()));
    const std::size_t cols = dimension_of(static_cast<int>(col_q.size()));
    double total = 0.0;
    for (std::size_t a = 0; a < rows; ++a) {
        const Complex *ra = &m[a * cols];
        for (std::size_t b = a; b < rows; ++b) {
            const Complex *rb = &m[b * cols];
            Complex s = 0.0;
            for (std::size_t c = 0; c < cols; ++c) s += ra[c] * std::conj(rb[c]);
            total += (a == b ? 1.0 : 2.0) * std::norm(s);
        }
    }
    return total;
}

std::vector<Complex> bipartite_matrix(const PureState &psi, const QubitSet &rows) {
    rows.check_within(psi.n_qubits());
    return reshape(psi, rows.members(), rows.complement(psi.n_qubits()).members());
}

double frobenius_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.n_qubits() != sigma.n_qubits()) {
        throw InvalidInput("frobenius_distance: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < rho.entries().size(); ++i) {
        s += std::norm(rho.entries()[i] - sigma.entries()[i]);
    }
    return std::sqrt(s);
}

DensityMatrix embed_product(const DensityMatrix &a, const QubitSet &a_qubits, const DensityMatrix &b,
                            const QubitSet &b_qubits) {
    if (a_qubits.size() != a.n_qubits() || b_qubits.size() != b.n_qubits()) {
        throw InvalidInput("embed_product: qubit labels do not match operator sizes");
    }
    std::vector<int> all(a_qubits.begin(), a_qubits.end());
    all.insert(all.end(), b_qubits.begin(), b_qubits.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw InvalidInput("embed_product: qubit sets overlap");
    }
    const int m = static_cast<int>(all.size());
    auto position_in_union = [&](const QubitSet &qs) {
        std::vector<int> pos;
        for (int q : qs) {
            pos.push_back(static_cast<int>(std::lower_bound(all.begin(), all.end(), q) - all.begin()));
        }
        return pos;
    };
    const auto a_map = scatter_table(position_in_union(a_qubits), m);
    const auto b_map = scatter_table(position_in_union(b_qubits), m);
    const std::size_t d = dimension_of(m);
    std::vector<std::size_t> a_of(d), b_of(d);
    for (std::size_t i = 0; i < a_map.size(); ++i) {
        for (std::size_t j = 0; j < b_map.size(); ++j) {
            a_of[a_map[i] | b_map[j]] = i;
            b_of[a_map[i] | b_map[j]] = j;
        }
    }
    std::vector<Complex> e(d * d);
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) e[x * d + y] = a(a_of[x], a_of[y]) * b(b_of[x], b_of[y]);
    }
    return DensityMatrix(m, std::move(e));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    std::vector<int> upper(static_cast<std::size_t>(b.n_qubits()));
    std::iota(upper.begin(), upper.end(), a.n_qubits());
    return embed_product(a, QubitSet::range(a.n_qubits()), b, QubitSet(std::move(upper)));
}

PureState apply_single(const PureState &psi, int q, const Matrix2 &m) {
    const int n = psi.n_qubits();
    if (q < 0 || q >= n) throw InvalidInput("qubit index out of range");
    std::vector<Complex> out(psi.amplitudes().begin(), psi.amplitudes().end());
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    for (std::size_t x = 0; x < out.size(); ++x) {
        if (x & stride) continue;
        const Complex a0 = out[x];
        const Complex a1 = out[x | stride];
        out[x] = m[0] * a0 + m[1] * a1;
        out[x | stride] = m[2] * a0 + m[3] * a1;
    }
    return PureState(n, std::move(out));
}

PureState apply_local_unitary(const PureState &psi, const LocalUnitary &u) {
    if (u.n_qubits() != psi.n_qubits()) {
        throw InvalidInput("local unitary has " + std::to_string(u.n_qubits()) + " factors for " +
                           std::to_string(psi.n_qubits()) + " qubits");
    }
    PureState out = psi;
    for (int q = 0; q < psi.n_qubits(); ++q) out = apply_single(out, q, u[q]);
    return out;
}

void check_permutation(std::span<const int> perm, int n) {
    if (static_cast<int>(perm.size()) != n) throw InvalidInput("permutation has wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
            throw InvalidInput("mapping is not a bijection on [0, " + std::to_string(n) + ")");
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
}

PureState permute_qubits(const PureState &psi, std::span<const int> perm) {
    const int n = psi.n_qubits();
    check_permutation(perm, n);
    std::vector<Complex> out(psi.dimension());
    for (std::size_t x = 0; x < psi.dimension(); ++x) {
        std::size_t y = 0;
        for (int i = 0; i < n; ++i) {
            if (qubit_bit(x, i, n)) y |= std::size_t{1} << (n - 1 - perm[static_cast<std::size_t>(i)]);
        }
        out[y] = psi[x];
    }
    return PureState(n, std::move(out));
}

double state_distance(const PureState &a, const PureState &b) {
    if (a.n_qubits() != b.n_qubits()) throw InvalidInput("state_distance: qubit count mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace entdex
