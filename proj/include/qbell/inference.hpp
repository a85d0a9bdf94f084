#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbell/quantum.hpp"
#include "qbell/tolerances.hpp"

namespace qbell {

struct Setting {
    std::string label;
    double angle = 0.0;  // radians; identifier only for response-based models
};

struct LambdaEntry {
    std::string label;
    double weight = 1.0;
};

/// Measurement scenario: who measures, which settings they may choose,
/// and the weighted hidden-variable space. Weights are independent of
/// the setting choices by construction (freedom of choice).
struct ScenarioSpec {
    ScenarioSpec(std::size_t parties,
                 std::vector<std::vector<Setting>> settings,
                 std::vector<LambdaEntry> lambdas);

    std::size_t setting_index(std::size_t party, const std::string& label) const;
    std::size_t lambda_index(const std::string& label) const;

    /// All setting tuples in lexicographic order (party 0 outermost).
    std::vector<std::vector<std::size_t>> setting_tuples() const;

    std::size_t parties;
    std::vector<std::vector<Setting>> settings_per_party;
    std::vector<LambdaEntry> lambda_space;
};

/// Index of one table cell: a hidden-variable value plus one setting
/// choice per party.
using SettingTuple = std::vector<std::size_t>;

/// The central object P(outcomes | settings, lambda): one normalized
/// OutcomeDistribution per (lambda, setting tuple) cell, full coverage
/// validated on construction.
struct ConditionalTable {
    ConditionalTable(ScenarioSpec scenario_,
                     std::map<std::pair<std::size_t, SettingTuple>, OutcomeDistribution> cells);

    const OutcomeDistribution& entry(std::size_t lambda, const SettingTuple& settings) const;

    /// P(outcomes | settings), averaging the cells with the lambda weights.
    OutcomeDistribution averaged(const SettingTuple& settings) const;

    std::vector<std::string> setting_labels(const SettingTuple& settings) const;
    std::vector<double> setting_angles(const SettingTuple& settings) const;

    ScenarioSpec scenario;
    std::map<std::pair<std::size_t, SettingTuple>, OutcomeDistribution> table;
};

enum class Condition { EL, PC, Factorization, FreedomOfChoice };

std::string condition_name(Condition c);

struct Witness {
    std::string lambda;
    std::vector<std::string> settings;
    std::vector<int> outcomes;  // ±1 where an outcome participates, 0 elsewhere
    std::string detail;
};

/// Result of a condition check. holds <=> max_violation < tolerance, and
/// a witness is present whenever the condition fails.
struct ConditionReport {
    ConditionReport(Condition condition, double max_violation, double tolerance,
                    std::optional<Witness> witness);

    Condition condition;
    bool holds;
    double max_violation;
    double tolerance;
    std::optional<Witness> witness;
};

// --- distribution helpers -------------------------------------------------

std::vector<Outcomes> all_outcome_tuples(std::size_t parties);

/// Sum out every party not in `keep` (sorted indices into the tuple).
OutcomeDistribution marginal_of(const OutcomeDistribution& dist,
                                const std::vector<std::size_t>& keep);

/// P(remaining outcomes | given); throws ProbabilityError when the
/// conditioning event has probability <= 1e-12 (never returns NaN).
OutcomeDistribution conditional_of(const OutcomeDistribution& dist,
                                   const std::map<std::size_t, int>& given);

double linf_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

double shannon_entropy_bits(const OutcomeDistribution& dist);

// --- operations -----------------------------------------------------------

OutcomeDistribution marginal(const ConditionalTable& table, std::size_t lambda,
                             const SettingTuple& settings,
                             const std::vector<std::size_t>& keep);

OutcomeDistribution condition_on(const ConditionalTable& table, std::size_t lambda,
                                 const SettingTuple& settings,
                                 const std::map<std::size_t, int>& given);

/// Max residual of the chain-rule decompositions of one cell: both
/// orderings for two parties, all six orderings for three. Factors with
/// zero-probability prefixes are skipped (0 times undefined is 0).
double verify_chain_rule(const ConditionalTable& table, std::size_t lambda,
                         const SettingTuple& settings);

/// Max chain-rule residual over every cell of the table.
double verify_chain_rule(const ConditionalTable& table);

/// Elementary locality: each party's marginal, at fixed lambda and own
/// setting, is independent of the other parties' setting choices.
ConditionReport check_EL(const ConditionalTable& table, double tolerance = tol::report);

/// Predictive completeness: conditioning on any non-empty proper subset
/// of the other parties' outcomes (with positive probability) leaves a
/// party's distribution unchanged, at fixed lambda and settings.
ConditionReport check_PC(const ConditionalTable& table, double tolerance = tol::report);

/// Local-realist factorization P(joint) = product of per-party marginals
/// per cell. Also asserts the implication EL ∧ PC ⇒ factorization within
/// the derived product bound (parties - 1) · tolerance.
ConditionReport check_factorization(const ConditionalTable& table,
                                    double tolerance = tol::report);

/// Freedom of choice holds by construction: ScenarioSpec carries a single
/// weight vector that cannot depend on the setting choices.
ConditionReport check_freedom_of_choice(const ConditionalTable& table,
                                        double tolerance = tol::report);

/// Global sample space over random settings and outcomes,
/// P(x,a,y,b) = P(ab|xy,lambda)·P(x)·P(y), for a two-party, two-setting,
/// single-lambda table. The returned tuples are (x, a, y, b) with settings
/// encoded +1 for the first setting and -1 for the second.
OutcomeDistribution sixteen_outcome_space(const ConditionalTable& table,
                                          const std::vector<double>& weights_x,
                                          const std::vector<double>& weights_y);

}  // namespace qbell
