#pragma once

// Dense complex linear algebra over N-qubit pure states and density matrices.
//
// Bit ordering: qubit 0 is the most significant bit of a basis index, i.e.
// basis index b = sum_i bit_i * 2^(N-1-i).

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace entdex {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kDefaultMaxQubits = 14;
inline constexpr int kDefaultMaxPartitionN = 40;
// Upper bound for any configured qubit cap.
inline constexpr int kHardQubitCeiling = 20;
// Density matrices are never materialized above this many qubits.
inline constexpr int kMaxDensityQubits = 12;

/// Size caps applied by operations that create or grow states.
struct Limits {
    int max_qubits = kDefaultMaxQubits;
    int max_partition_n = kDefaultMaxPartitionN;
};

/// Thrown when an operation would exceed a configured size cap.
class CapExceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Thrown when an input violates a type invariant or precondition.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline std::size_t dimension_of(int n_qubits) { return std::size_t{1} << n_qubits; }

/// Bit of `index` that holds qubit `q` in an `n`-qubit register.
inline int qubit_bit(std::size_t index, int q, int n) {
    return static_cast<int>((index >> (n - 1 - q)) & 1U);
}

/// Sorted, duplicate-free list of qubit indices.
class QubitSet {
  public:
    QubitSet() = default;
    explicit QubitSet(std::vector<int> members);

    static QubitSet range(int n);  // {0, ..., n-1}

    const std::vector<int> &members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    bool contains(int q) const;
    int front() const { return members_.front(); }

    /// Throws InvalidInput unless every member is < n.
    void check_within(int n) const;
    /// Members of [0, n) not in this set.
    QubitSet complement(int n) const;

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    friend bool operator==(const QubitSet &, const QubitSet &) = default;
    friend auto operator<=>(const QubitSet &, const QubitSet &) = default;

  private:
    std::vector<int> members_;
};

std::string to_string(const QubitSet &set);

/// Normalized amplitude vector over N qubits. Immutable after construction.
class PureState {
  public:
    /// Validates length 2^n, finiteness and unit norm within `tol`.
    PureState(int n_qubits, std::vector<Complex> amplitudes, double tol = kDefaultTolerance);

    /// Rescales `amplitudes` to unit norm first. Throws on a zero vector.
    static PureState normalized(int n_qubits, std::vector<Complex> amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[index]; }
    double norm() const;

  private:
    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Hermitian trace-one operator on n qubits, stored row-major.
class DensityMatrix {
  public:
    /// Validates shape, finiteness, Hermiticity, unit trace and purity bounds.
    DensityMatrix(int n_qubits, std::vector<Complex> entries, double tol = kDefaultTolerance);

    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return dimension_of(n_qubits_); }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dimension() + col];
    }
    std::span<const Complex> entries() const { return entries_; }
    double trace() const;

  private:
    int n_qubits_;
    std::vector<Complex> entries_;
};

using Matrix2 = std::array<Complex, 4>;  // row-major [[m0, m1], [m2, m3]]

inline Matrix2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }
bool is_unitary(const Matrix2 &m, double tol = kDefaultTolerance);

/// One 2x2 unitary per qubit; applied as U_0 (x) ... (x) U_{N-1}.
class LocalUnitary {
  public:
    explicit LocalUnitary(std::vector<Matrix2> per_qubit, double tol = kDefaultTolerance);

    static LocalUnitary identity(int n);

    int n_qubits() const { return static_cast<int>(per_qubit_.size()); }
    const Matrix2 &operator[](int q) const { return per_qubit_[static_cast<std::size_t>(q)]; }
    const std::vector<Matrix2> &matrices() const { return per_qubit_; }

  private:
    std::vector<Matrix2> per_qubit_;
};

/// a (x) b with a's qubits first. Throws CapExceeded past limits.max_qubits.
PureState tensor(const PureState &a, const PureState &b, const Limits &limits = {});

/// |psi><psi|. Throws CapExceeded above kMaxDensityQubits.
DensityMatrix to_density(const PureState &psi);

/// Reduced operator on `keep`, kept qubits ordered as in `keep`.
DensityMatrix partial_trace(const DensityMatrix &rho, const QubitSet &keep);

/// Reduced operator on `keep` computed straight from amplitudes, without the
/// full 4^N density matrix.
DensityMatrix partial_trace(const PureState &psi, const QubitSet &keep);

/// tr(rho^2).
double purity(const DensityMatrix &rho);

/// tr(rho_S^2) for the marginal of a pure state on `subset`, computed on the
/// smaller side of the bipartition.
double marginal_purity(const PureState &psi, const QubitSet &subset);

/// psi as a 2^|rows| x 2^(N-|rows|) row-major matrix. Column qubits are the
/// complement of `rows`, ascending.
std::vector<Complex> bipartite_matrix(const PureState &psi, const QubitSet &rows);

double frobenius_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// rho_a (x) rho_b laid out on the union of two disjoint qubit sets, with
/// qubits ordered by index within the union.
DensityMatrix embed_product(const DensityMatrix &a, const QubitSet &a_qubits,
                            const DensityMatrix &b, const QubitSet &b_qubits);

PureState apply_local_unitary(const PureState &psi, const LocalUnitary &u);

/// Single-qubit gate on qubit q.
PureState apply_single(const PureState &psi, int q, const Matrix2 &m);

/// Moves qubit i to position perm[i]. Throws InvalidInput unless perm is a
/// bijection on [0, N).
PureState permute_qubits(const PureState &psi, std::span<const int> perm);

/// Throws InvalidInput unless perm is a bijection on [0, n).
void check_permutation(std::span<const int> perm, int n);

/// Euclidean distance between amplitude vectors of equal length.
double state_distance(const PureState &a, const PureState &b);

}  // namespace entdex
