#pragma once

namespace qbell::tol {

// Scalar identities (probabilities, eigenvalues, closed forms). Double
// precision with at most three 8x8 matrix products stays well inside this.
inline constexpr double scalar = 1e-12;

// Structural checks that accumulate rounding over matrix products:
// commutation, orthonormality, involution.
inline constexpr double structure = 1e-10;

// Floating-point underflow floor: probabilities in [prob_clamp, 0) are
// clamped to 0 before normalization checks.
inline constexpr double prob_clamp = -1e-14;

// Conditioning operations treat events with probability <= zero_prob as
// zero-probability events (|<v|psi>|^2 of an exact zero lands near 1e-33).
inline constexpr double zero_prob = 1e-12;

// Default ConditionReport tolerance; separates rounding noise (<=1e-12)
// from genuine violations (>=1e-2 in every case of interest).
inline constexpr double report = 1e-9;

// Lightlike classification window for |dt^2 - dpos^2|, sized so that
// classifications survive Lorentz boosts at the geometry scales used here.
inline constexpr double interval = 1e-9;

}  // namespace qbell::tol
