#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qbell/inference.hpp"
#include "qbell/quantum.hpp"

namespace qbell {

/// Quantum source: a pure state plus, per party, the settings that party
/// may choose. A setting with angle theta measures cos(theta)·X +
/// sin(theta)·Y on that party's qubit.
struct QuantumModel {
    QuantumModel(StateVector state_, std::vector<std::vector<Setting>> settings);

    StateVector state;
    std::vector<std::vector<Setting>> party_settings;
};

/// One deterministic local response: outcome ±1 per (party, setting).
struct DeterministicStrategy {
    std::vector<std::map<std::string, int>> outcome_by_setting;  // per party
};

/// Weighted lambda space with per-lambda stochastic local responses
/// P(+1 | own setting, lambda) per party.
struct LhvLambda {
    std::string label;
    double weight = 1.0;
    std::vector<std::map<std::string, double>> response_plus;  // per party
};

struct LocalHVModel {
    LocalHVModel(std::size_t parties,
                 std::vector<std::vector<std::string>> setting_labels,
                 std::vector<LhvLambda> lambdas,
                 std::vector<std::vector<double>> setting_angles = {});

    std::size_t parties;
    std::vector<std::vector<std::string>> setting_labels;  // per party, fixed order
    std::vector<LhvLambda> lambdas;
    std::vector<std::vector<double>> setting_angles;  // identifiers; index when absent
};

inline constexpr double kClassicalBound = 2.0;
inline constexpr double kQuantumBound = 2.0 * std::numbers::sqrt2;  // Tsirelson

/// Four correlations and the CHSH combination S = E11 + E12 + E21 - E22,
/// plus the maximum of |S| over the four sign placements so a convention
/// mismatch cannot mask a violation.
struct BellResult {
    BellResult(std::array<std::string, 2> x_labels, std::array<std::string, 2> y_labels,
               double e11, double e12, double e21, double e22);

    std::array<std::string, 2> x_labels;
    std::array<std::string, 2> y_labels;
    double e11, e12, e21, e22;
    double s;                 // fixed combination E11 + E12 + E21 - E22
    double s_best;            // max |S| over the four sign placements
    std::size_t flipped_term; // index (0..3) of the negated term in the best placement
};

// --- table generators -------------------------------------------------------

/// Singleton-lambda table filled by Born-rule measurement of the joint
/// context of one-party observables, per setting tuple.
ConditionalTable table_from_quantum(const QuantumModel& model);

/// Per-lambda product of local response distributions. The resulting
/// table passes EL, PC and factorization by construction; this is
/// asserted before returning.
ConditionalTable table_from_lhv(const LocalHVModel& model);

LocalHVModel lhv_from_strategies(
    const std::vector<std::vector<std::string>>& setting_labels,
    const std::vector<std::pair<double, DeterministicStrategy>>& weighted);

// --- canonical models -------------------------------------------------------

inline constexpr std::array<double, 4> kCanonicalChshAngles = {
    0.0, std::numbers::pi / 2, std::numbers::pi / 4, -std::numbers::pi / 4};

QuantumModel singlet_model(double x1, double x2, double y1, double y2);
QuantumModel singlet_model(std::vector<Setting> alice, std::vector<Setting> bob);

/// GHZ model on psi_in with settings X (angle 0) and Y (angle pi/2) per party.
QuantumModel ghz_model();

// --- evaluators -------------------------------------------------------------

/// CHSH over the lambda-averaged table; x1/x2 index Alice's settings and
/// y1/y2 Bob's.
BellResult chsh(const ConditionalTable& table, std::size_t x1, std::size_t x2,
                std::size_t y1, std::size_t y2);

struct DeterministicChshEntry {
    DeterministicStrategy strategy;
    double s;
};

struct DeterministicChshReport {
    std::vector<DeterministicChshEntry> strategies;  // all 16
    double max_abs_s;                                // = 2
};

DeterministicChshReport enumerate_deterministic_chsh();

/// Parity bookkeeping for the GHZ argument: measured abc-products under
/// the XYY/YXY/YYX/XXX settings, versus the brute-force scan of all 64
/// deterministic ±1 assignments.
struct GhzParityLine {
    std::string word;       // "XYY", ...
    double p_product_plus;  // probability that the outcome product is +1
    int certain_product;    // +1 / -1 when certain within tolerance, else 0
};

struct GhzParityReport {
    std::vector<GhzParityLine> lines;
    bool quantum_certainties;             // +1,+1,+1 and -1 all certain
    std::size_t consistent_assignments;   // assignments with xyy=yxy=yyx=+1
    bool all_force_xxx_plus;              // every such assignment gives xxx=+1
    bool contradiction;                   // both of the above
};

/// Table variant: requires a 3-party table whose parties each expose
/// settings labeled "X" and "Y".
GhzParityReport ghz_parity_check(const ConditionalTable& table,
                                 double tolerance = tol::scalar);
/// Model variant: additionally validates that the state is psi_in.
GhzParityReport ghz_parity_check(const QuantumModel& model,
                                 double tolerance = tol::scalar);

/// Conditional ladder of a 3-party table: unconditioned and
/// single-conditioned marginals against 1/2, doubly-conditioned ones
/// against (1 - abc·cos(u+v+w))/2. strict mode throws when a deviation
/// exceeds 1e-12.
struct GhzLadderRow {
    SettingTuple settings;
    std::vector<double> angles;
    double cos_sum;       // cos(u+v+w)
    bool extrapolation;   // any angle outside {0, pi/2}
    double dev_unconditioned;
    double dev_single;
    double dev_double;
};

struct GhzLadderReport {
    std::vector<GhzLadderRow> rows;
    double max_dev_unconditioned;
    double max_dev_single;
    double max_dev_double;
};

GhzLadderReport ghz_conditional_ladder(const ConditionalTable& table, bool strict = true);
GhzLadderReport ghz_conditional_ladder(const QuantumModel& model, bool strict = true);

// --- finite statistics and sweeps -------------------------------------------

/// Finite-shot resampling of every cell; deterministic given the seed
/// (per-cell streams are derived from it, so results do not depend on
/// evaluation order).
ConditionalTable sample_table(const ConditionalTable& exact, std::uint64_t shots,
                              std::uint64_t seed);

struct ChshSweepPoint {
    double phi;
    BellResult bell;
};

/// Singlet CHSH along the one-parameter family (x1,x2,y1,y2) =
/// (0, 2·phi, phi, -phi); phi = pi/4 is the Tsirelson point.
std::vector<ChshSweepPoint> chsh_phi_sweep(double from, double to, std::size_t steps);

struct OptimalAngles {
    double phi;
    double s_abs;
};

/// Grid search (step pi/180) plus golden-section refinement to 1e-10
/// over the family above.
OptimalAngles optimal_chsh_angles();

/// Max |S| (best sign placement) over n random setting quadruples of the
/// singlet, evaluated through the full table pipeline.
double max_abs_s_random_sweep(std::size_t n, std::uint64_t seed);

/// PC max_violation of the singlet versus the setting difference delta.
std::vector<std::pair<double, double>> pc_violation_sweep(double from, double to,
                                                          std::size_t steps);

}  // namespace qbell
