#pragma once

// Recovery of the finest tensor factorization of a pure state and the
// entanglement index E = N - p it implies.
//
// A subset S of qubits of a pure state is a tensor factor exactly when the
// marginal on S is pure. The block containing qubit i is the smallest such S
// that contains i; blocks are searched by size, then lexicographically.

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "entdex/partitions.hpp"
#include "entdex/statecore.hpp"

namespace entdex {

/// Minimal pure subsets overlapped without nesting. Cannot happen in exact
/// arithmetic; signals a tolerance that is too loose or too tight.
class FactorizationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ClassReport {
    SetPartition blocks;
    IntegerPartition shape;
    IndexValue index;
    std::string label;  // "fully separable" or "entangled class E=k"
    double tolerance_used = kDefaultTolerance;
    /// Subsets whose purity defect fell in [tol, 10 tol].
    std::vector<std::string> warnings;
};

std::string class_label(IndexValue index);

QubitSet minimal_pure_subset(const PureState &psi, int qubit, double tol = kDefaultTolerance);

/// Throws FactorizationError on inconsistent minimal subsets.
SetPartition finest_factorization(const PureState &psi, double tol = kDefaultTolerance);

IndexValue entanglement_index(const PureState &psi, double tol = kDefaultTolerance);

ClassReport classify(const PureState &psi, double tol = kDefaultTolerance);

/// psi approximated as part_state (x) rest_state across (part, complement).
/// The part factor is the normalized dominant column of the bipartite
/// matrix; the rest factor is its projection onto that column.
struct Factorization {
    QubitSet part;
    QubitSet rest;
    PureState part_state;
    PureState rest_state;
    double residual;  // || psi - part_state (x) rest_state ||
};

Factorization extract_factors(const PureState &psi, const QubitSet &part);

/// Inverse of extract_factors: places the two factors back on their qubits.
PureState join_factors(const PureState &part_state, const QubitSet &part, const PureState &rest_state,
                       const QubitSet &rest, const Limits &limits = {});

// ---------------------------------------------------------------------------
// Ensembles

struct EnsembleTerm {
    double probability;
    std::variant<IntegerPartition, PureState> payload;
};

/// Probability-weighted list of partition-structured terms over N qubits.
class Ensemble {
  public:
    /// Probabilities must lie in (0, 1] and sum to 1 within `tol`; payloads
    /// must all describe N qubits.
    Ensemble(int n_qubits, std::vector<EnsembleTerm> terms, double tol = kDefaultTolerance);

    int n_qubits() const { return n_qubits_; }
    const std::vector<EnsembleTerm> &terms() const { return terms_; }

  private:
    int n_qubits_;
    std::vector<EnsembleTerm> terms_;
};

/// Terms of `a` scaled by w followed by terms of `b` scaled by (1 - w).
Ensemble concatenate(const Ensemble &a, const Ensemble &b, double w);

/// sum_k P_k E_k, each E_k from index_of (partition payload) or
/// entanglement_index (state payload).
double ensemble_index(const Ensemble &ensemble, double tol = kDefaultTolerance);

/// Coarse product structure of a density matrix: recursively splits across
/// the first bipartition (smallest side, then lexicographic) whose marginal
/// product lies within `tol` in Frobenius norm. Says nothing about the
/// entanglement inside each block.
SetPartition mixed_product_split(const DensityMatrix &rho, double tol = kDefaultTolerance);

}  // namespace entdex
