#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbell {

/// Base class for every error raised by the library. The message always
/// starts with "<operation>: " so callers can attribute failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands have incompatible dimensions.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// A symbolic label (Pauli character, agent, symbol, setting) is not recognised.
struct LabelError : Error {
    explicit LabelError(const std::string& msg) : Error(msg) {}
};

/// Observables that were required to commute do not.
struct CommutationError : Error {
    explicit CommutationError(const std::string& msg) : Error(msg) {}
};

/// A joint eigenbasis request produced degenerate eigenvalue tuples.
/// Carries the multiplicity of every tuple so the failure is inspectable.
struct DegeneracyError : Error {
    DegeneracyError(const std::string& msg,
                    std::vector<std::pair<std::vector<int>, int>> mult)
        : Error(msg), multiplicities(std::move(mult)) {}

    std::vector<std::pair<std::vector<int>, int>> multiplicities;
};

/// A (lambda, settings) entry or a setting pair is missing from a table.
struct TableError : Error {
    explicit TableError(const std::string& msg) : Error(msg) {}
};

/// Probabilities are malformed: negative beyond tolerance, non-normalized
/// weights, or conditioning on a zero-probability event.
struct ProbabilityError : Error {
    explicit ProbabilityError(const std::string& msg) : Error(msg) {}
};

/// A model was handed the wrong quantum state.
struct StateError : Error {
    explicit StateError(const std::string& msg) : Error(msg) {}
};

/// User-facing configuration is invalid (CLI flags, model files).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// An internal consistency check failed; indicates a bug, not bad input.
struct InvariantError : Error {
    explicit InvariantError(const std::string& msg) : Error(msg) {}
};

}  // namespace qbell
