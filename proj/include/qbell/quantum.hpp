#pragma once

#include <map>
#include <string>
#include <vector>

#include "qbell/linalg.hpp"

namespace qbell {

/// Pure state on 1, 2 or 3 qubits. Construction validates the dimension
/// and normalization (sum of |amplitude|^2 = 1 within 1e-12).
struct StateVector {
    explicit StateVector(CVec amps);

    std::size_t dim() const { return amplitudes.size(); }
    std::size_t qubits() const;

    CVec amplitudes;
};

/// Labeled Hermitian matrix (Hermiticity validated within 1e-12).
struct Observable {
    Observable(std::string label, Matrix matrix);

    std::size_t dim() const { return matrix.rows(); }

    std::string label;
    Matrix matrix;
};

/// Joint ±1 outcome tuple, ordered like the observables that produced it.
using Outcomes = std::vector<int>;

/// Normalized distribution over ±1 outcome tuples. Entries in
/// [-1e-14, 0) are clamped to zero before the normalization check.
struct OutcomeDistribution {
    explicit OutcomeDistribution(std::map<Outcomes, double> probs);

    double prob(const Outcomes& o) const;
    std::size_t arity() const;

    std::map<Outcomes, double> entries;
};

/// Commuting observables with their simultaneous eigenbasis. The
/// eigenvalue tuples are pairwise distinct (the set is a CSCO) and the
/// eigenvectors orthonormal; both are validated on construction.
struct MeasurementContext {
    MeasurementContext(std::vector<Observable> obs,
                       std::vector<std::pair<Outcomes, CVec>> basis);

    std::size_t dim() const { return observables.front().dim(); }

    std::vector<Observable> observables;
    std::vector<std::pair<Outcomes, CVec>> eigenbasis;
};

/// Tensor word of I, X, Y, Z on 1-3 qubits, e.g. "XYY".
Observable pauli_word(const std::string& label);

/// Largest entry magnitude of AB - BA; < 1e-10 means commuting.
double commutator_norm(const Observable& a, const Observable& b);
bool is_commuting(const Observable& a, const Observable& b);

/// Simultaneous eigenbasis of mutually commuting involutions, built from
/// projector products (I ± O)/2. Throws DegeneracyError with the full
/// multiplicity report if the eigenvalue tuples do not label a basis.
/// Eigenvector phases are fixed by making the first non-negligible
/// amplitude real-positive.
MeasurementContext joint_eigenbasis(const std::vector<Observable>& observables);

/// Born rule: probability of each eigenvalue tuple is |<v|state>|^2.
OutcomeDistribution measure(const StateVector& state, const MeasurementContext& context);

/// ±1 distribution of a single involutory observable via projector
/// expectation values; works for degenerate spectra too.
OutcomeDistribution outcome_sign_distribution(const StateVector& state,
                                              const Observable& obs);

/// cos(theta)·X + sin(theta)·Y on one qubit.
Observable spin_observable(double theta);

/// (|01> - |10>)/sqrt(2).
StateVector singlet_state();

/// The three-qubit simultaneous (+1,+1,+1) eigenvector of XYY, YXY, YYX
/// (and a -1 eigenvector of XXX), built from its defining eigenbasis.
/// Equals (|000> - |111>)/sqrt(2) under the phase convention.
StateVector ghz_state();

}  // namespace qbell
