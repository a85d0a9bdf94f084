#include "qbell/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "qbell/errors.hpp"

namespace qbell {

namespace {

std::string tuple_to_string(const SettingTuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

std::string outcomes_to_string(const std::vector<int>& o) {
    std::string s;
    for (int v : o) s += v == 0 ? "._" : (v > 0 ? "+1" : "-1");
    return s;
}

const char* party_name(std::size_t p) {
    static const char* names[] = {"a", "b", "c"};
    return p < 3 ? names[p] : "?";
}

ConditionReport make_report(Condition c, double max_violation, double tolerance,
                            Witness witness) {
    if (max_violation < tolerance)
        return ConditionReport(c, max_violation, tolerance, std::nullopt);
    return ConditionReport(c, max_violation, tolerance, std::move(witness));
}

}  // namespace

ScenarioSpec::ScenarioSpec(std::size_t n, std::vector<std::vector<Setting>> settings,
                           std::vector<LambdaEntry> lambdas)
    : parties(n),
      settings_per_party(std::move(settings)),
      lambda_space(std::move(lambdas)) {
    if (parties != 2 && parties != 3)
        throw ValidationError("ScenarioSpec: parties must be 2 or 3, got " +
                              std::to_string(parties));
    if (settings_per_party.size() != parties)
        throw ValidationError("ScenarioSpec: settings for " +
                              std::to_string(settings_per_party.size()) + " parties, expected " +
                              std::to_string(parties));
    for (std::size_t p = 0; p < parties; ++p) {
        if (settings_per_party[p].empty())
            throw ValidationError("ScenarioSpec: party " + std::string(party_name(p)) +
                                  " has no settings");
        std::set<std::string> seen;
        for (const Setting& s : settings_per_party[p])
            if (!seen.insert(s.label).second)
                throw ValidationError("ScenarioSpec: duplicate setting label '" + s.label +
                                      "' for party " + party_name(p));
    }
    if (lambda_space.empty())
        throw ValidationError("ScenarioSpec: empty lambda space");
    double sum = 0.0;
    std::set<std::string> seen;
    for (const LambdaEntry& l : lambda_space) {
        if (l.weight < 0.0)
            throw ProbabilityError("ScenarioSpec: negative weight for lambda '" + l.label + "'");
        if (!seen.insert(l.label).second)
            throw ValidationError("ScenarioSpec: duplicate lambda label '" + l.label + "'");
        sum += l.weight;
    }
    if (std::abs(sum - 1.0) > tol::scalar)
        throw ProbabilityError("ScenarioSpec: lambda weights sum to " + std::to_string(sum) +
                               ", expected 1 within 1e-12");
}

std::size_t ScenarioSpec::setting_index(std::size_t party, const std::string& label) const {
    if (party >= parties)
        throw LabelError("ScenarioSpec: no party " + std::to_string(party));
    const auto& list = settings_per_party[party];
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i].label == label) return i;
    throw LabelError("ScenarioSpec: party " + std::string(party_name(party)) +
                     " has no setting '" + label + "'");
}

std::size_t ScenarioSpec::lambda_index(const std::string& label) const {
    for (std::size_t i = 0; i < lambda_space.size(); ++i)
        if (lambda_space[i].label == label) return i;
    throw LabelError("ScenarioSpec: no lambda '" + label + "'");
}

std::vector<SettingTuple> ScenarioSpec::setting_tuples() const {
    std::vector<SettingTuple> out{{}};
    for (std::size_t p = 0; p < parties; ++p) {
        std::vector<SettingTuple> next;
        for (const SettingTuple& prefix : out)
            for (std::size_t i = 0; i < settings_per_party[p].size(); ++i) {
                SettingTuple t = prefix;
                t.push_back(i);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

ConditionalTable::ConditionalTable(
    ScenarioSpec scenario_,
    std::map<std::pair<std::size_t, SettingTuple>, OutcomeDistribution> cells)
    : scenario(std::move(scenario_)), table(std::move(cells)) {
    for (std::size_t l = 0; l < scenario.lambda_space.size(); ++l)
        for (const SettingTuple& st : scenario.setting_tuples()) {
            auto it = table.find({l, st});
            if (it == table.end())
                throw TableError("ConditionalTable: missing entry for lambda '" +
                                 scenario.lambda_space[l].label + "', settings " +
                                 tuple_to_string(st));
            if (it->second.arity() != scenario.parties)
                throw TableError("ConditionalTable: outcome arity " +
                                 std::to_string(it->second.arity()) + " at lambda '" +
                                 scenario.lambda_space[l].label + "', expected " +
                                 std::to_string(scenario.parties));
        }
}

const OutcomeDistribution& ConditionalTable::entry(std::size_t lambda,
                                                   const SettingTuple& settings) const {
    auto it = table.find({lambda, settings});
    if (it == table.end())
        throw TableError("ConditionalTable: no entry for lambda index " +
                         std::to_string(lambda) + ", settings " + tuple_to_string(settings));
    return it->second;
}

OutcomeDistribution ConditionalTable::averaged(const SettingTuple& settings) const {
    std::map<Outcomes, double> probs;
    for (const Outcomes& o : all_outcome_tuples(scenario.parties)) probs[o] = 0.0;
    for (std::size_t l = 0; l < scenario.lambda_space.size(); ++l) {
        const OutcomeDistribution& d = entry(l, settings);
        for (auto& [o, p] : probs) p += scenario.lambda_space[l].weight * d.prob(o);
    }
    return OutcomeDistribution(std::move(probs));
}

std::vector<std::string> ConditionalTable::setting_labels(const SettingTuple& settings) const {
    std::vector<std::string> out;
    for (std::size_t p = 0; p < settings.size(); ++p)
        out.push_back(scenario.settings_per_party[p][settings[p]].label);
    return out;
}

std::vector<double> ConditionalTable::setting_angles(const SettingTuple& settings) const {
    std::vector<double> out;
    for (std::size_t p = 0; p < settings.size(); ++p)
        out.push_back(scenario.settings_per_party[p][settings[p]].angle);
    return out;
}

std::string condition_name(Condition c) {
    switch (c) {
        case Condition::EL: return "EL";
        case Condition::PC: return "PC";
        case Condition::Factorization: return "FACTORIZATION";
        case Condition::FreedomOfChoice: return "FREEDOM_OF_CHOICE";
    }
    return "?";
}

ConditionReport::ConditionReport(Condition c, double violation, double tolerance_,
                                 std::optional<Witness> w)
    : condition(c),
      holds(violation < tolerance_),
      max_violation(violation),
      tolerance(tolerance_),
      witness(std::move(w)) {
    if (!holds && !witness)
        throw InvariantError("ConditionReport: failing report without witness");
}

std::vector<Outcomes> all_outcome_tuples(std::size_t parties) {
    std::vector<Outcomes> out{{}};
    for (std::size_t p = 0; p < parties; ++p) {
        std::vector<Outcomes> next;
        for (const Outcomes& prefix : out)
            for (int v : {+1, -1}) {
                Outcomes o = prefix;
                o.push_back(v);
                next.push_back(std::move(o));
            }
        out = std::move(next);
    }
    return out;
}

OutcomeDistribution marginal_of(const OutcomeDistribution& dist,
                                const std::vector<std::size_t>& keep) {
    if (keep.empty())
        throw ValidationError("marginal: empty party subset");
    for (std::size_t k : keep)
        if (k >= dist.arity())
            throw ValidationError("marginal: party index " + std::to_string(k) +
                                  " out of range");
    std::map<Outcomes, double> probs;
    for (const auto& [o, p] : dist.entries) {
        Outcomes kept;
        for (std::size_t k : keep) kept.push_back(o[k]);
        probs[kept] += p;
    }
    return OutcomeDistribution(std::move(probs));
}

OutcomeDistribution conditional_of(const OutcomeDistribution& dist,
                                   const std::map<std::size_t, int>& given) {
    if (given.empty())
        throw ValidationError("conditional: empty conditioning assignment");
    for (const auto& [k, v] : given) {
        if (k >= dist.arity())
            throw ValidationError("conditional: party index " + std::to_string(k) +
                                  " out of range");
        if (v != 1 && v != -1)
            throw ValidationError("conditional: outcomes must be ±1");
    }
    double p_given = 0.0;
    std::map<Outcomes, double> joint;
    for (const auto& [o, p] : dist.entries) {
        bool match = true;
        for (const auto& [k, v] : given)
            if (o[k] != v) { match = false; break; }
        if (!match) continue;
        p_given += p;
        Outcomes rest;
        for (std::size_t i = 0; i < o.size(); ++i)
            if (!given.count(i)) rest.push_back(o[i]);
        joint[rest] += p;
    }
    if (p_given <= tol::zero_prob) {
        std::vector<int> shown(dist.arity(), 0);
        for (const auto& [k, v] : given) shown[k] = v;
        throw ProbabilityError("conditional: conditioning event " + outcomes_to_string(shown) +
                               " has probability " + std::to_string(p_given) +
                               " (treated as zero)");
    }
    for (auto& [o, p] : joint) p /= p_given;
    return OutcomeDistribution(std::move(joint));
}

double linf_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    if (a.arity() != b.arity())
        throw DimensionError("linf_distance: arity mismatch");
    double m = 0.0;
    for (const Outcomes& o : all_outcome_tuples(a.arity()))
        m = std::max(m, std::abs(a.prob(o) - b.prob(o)));
    return m;
}

double shannon_entropy_bits(const OutcomeDistribution& dist) {
    double h = 0.0;
    for (const auto& [o, p] : dist.entries)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

OutcomeDistribution marginal(const ConditionalTable& table, std::size_t lambda,
                             const SettingTuple& settings,
                             const std::vector<std::size_t>& keep) {
    return marginal_of(table.entry(lambda, settings), keep);
}

OutcomeDistribution condition_on(const ConditionalTable& table, std::size_t lambda,
                                 const SettingTuple& settings,
                                 const std::map<std::size_t, int>& given) {
    return conditional_of(table.entry(lambda, settings), given);
}

double verify_chain_rule(const ConditionalTable& table, std::size_t lambda,
                         const SettingTuple& settings) {
    const OutcomeDistribution& dist = table.entry(lambda, settings);
    const std::size_t n = table.scenario.parties;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    double max_resid = 0.0;
    do {
        for (const Outcomes& o : all_outcome_tuples(n)) {
            const double lhs = dist.prob(o);
            double rhs = 1.0;
            bool skip = false;
            for (std::size_t k = 0; k < n; ++k) {
                // Factor P(o_{order[k]} | o_{order[0..k-1]}), all conditionals
                // evaluated at this cell's full setting tuple.
                std::vector<std::size_t> prefix(order.begin(), order.begin() + k);
                double p_prefix = 1.0;
                if (!prefix.empty()) {
                    std::sort(prefix.begin(), prefix.end());
                    Outcomes po;
                    for (std::size_t i : prefix) po.push_back(o[i]);
                    p_prefix = marginal_of(dist, prefix).prob(po);
                }
                std::vector<std::size_t> with = prefix;
                with.push_back(order[k]);
                std::sort(with.begin(), with.end());
                Outcomes wo;
                for (std::size_t i : with) wo.push_back(o[i]);
                const double p_with = marginal_of(dist, with).prob(wo);
                if (p_prefix <= tol::zero_prob) { skip = true; break; }
                rhs *= p_with / p_prefix;
            }
            if (!skip) max_resid = std::max(max_resid, std::abs(lhs - rhs));
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return max_resid;
}

double verify_chain_rule(const ConditionalTable& table) {
    double m = 0.0;
    for (const auto& [key, dist] : table.table)
        m = std::max(m, verify_chain_rule(table, key.first, key.second));
    return m;
}

ConditionReport check_EL(const ConditionalTable& table, double tolerance) {
    const ScenarioSpec& sc = table.scenario;
    double max_violation = 0.0;
    Witness witness;

    for (std::size_t p = 0; p < sc.parties; ++p) {
        for (std::size_t l = 0; l < sc.lambda_space.size(); ++l) {
            for (std::size_t own = 0; own < sc.settings_per_party[p].size(); ++own) {
                // Marginals of party p over every choice of the other
                // parties' settings; under EL they all coincide.
                std::vector<std::pair<SettingTuple, OutcomeDistribution>> ms;
                for (const SettingTuple& st : sc.setting_tuples()) {
                    if (st[p] != own) continue;
                    ms.emplace_back(st, marginal_of(table.entry(l, st), {p}));
                }
                for (std::size_t i = 0; i < ms.size(); ++i)
                    for (std::size_t j = i + 1; j < ms.size(); ++j) {
                        const double d = linf_distance(ms[i].second, ms[j].second);
                        if (d > max_violation) {
                            max_violation = d;
                            int worst = +1;
                            double worst_dev = -1.0;
                            for (int v : {+1, -1}) {
                                const double dev = std::abs(ms[i].second.prob({v}) -
                                                            ms[j].second.prob({v}));
                                if (dev > worst_dev) { worst_dev = dev; worst = v; }
                            }
                            std::vector<int> shown(sc.parties, 0);
                            shown[p] = worst;
                            witness = Witness{
                                sc.lambda_space[l].label, table.setting_labels(ms[j].first),
                                shown,
                                std::string("P(") + party_name(p) + "=" +
                                    (worst > 0 ? "+1" : "-1") + " | " +
                                    party_name(p) + "'s setting '" +
                                    sc.settings_per_party[p][own].label +
                                    "') shifts when remote settings change from " +
                                    tuple_to_string(ms[i].first) + " to " +
                                    tuple_to_string(ms[j].first)};
                        }
                    }
            }
        }
    }
    return make_report(Condition::EL, max_violation, tolerance, std::move(witness));
}

ConditionReport check_PC(const ConditionalTable& table, double tolerance) {
    const ScenarioSpec& sc = table.scenario;
    double max_violation = 0.0;
    Witness witness;

    for (std::size_t l = 0; l < sc.lambda_space.size(); ++l) {
        for (const SettingTuple& st : sc.setting_tuples()) {
            const OutcomeDistribution& dist = table.entry(l, st);
            for (std::size_t p = 0; p < sc.parties; ++p) {
                const OutcomeDistribution m0 = marginal_of(dist, {p});
                std::vector<std::size_t> others;
                for (std::size_t q = 0; q < sc.parties; ++q)
                    if (q != p) others.push_back(q);
                // Every non-empty subset of the other parties (the full
                // conditioning ladder: single- and two-party conditioners).
                for (std::size_t mask = 1; mask < (std::size_t{1} << others.size()); ++mask) {
                    std::vector<std::size_t> subset;
                    for (std::size_t i = 0; i < others.size(); ++i)
                        if (mask & (std::size_t{1} << i)) subset.push_back(others[i]);
                    const OutcomeDistribution msub = marginal_of(dist, subset);
                    for (const Outcomes& assignment : all_outcome_tuples(subset.size())) {
                        if (msub.prob(assignment) <= tol::zero_prob) continue;
                        std::map<std::size_t, int> given;
                        for (std::size_t i = 0; i < subset.size(); ++i)
                            given[subset[i]] = assignment[i];
                        // Position of p among the non-conditioned parties.
                        std::size_t pos = 0;
                        for (std::size_t q = 0; q < p; ++q)
                            if (!given.count(q)) ++pos;
                        const OutcomeDistribution m1 =
                            marginal_of(conditional_of(dist, given), {pos});
                        const double d = linf_distance(m1, m0);
                        if (d > max_violation) {
                            max_violation = d;
                            int worst = +1;
                            double worst_dev = -1.0;
                            for (int v : {+1, -1}) {
                                const double dev = std::abs(m1.prob({v}) - m0.prob({v}));
                                if (dev > worst_dev) { worst_dev = dev; worst = v; }
                            }
                            std::vector<int> shown(sc.parties, 0);
                            shown[p] = worst;
                            std::string cond;
                            for (std::size_t i = 0; i < subset.size(); ++i)
                                cond += std::string(i ? "," : "") + party_name(subset[i]) +
                                        "=" + (assignment[i] > 0 ? "+1" : "-1");
                            for (const auto& [q, v] : given) shown[q] = v;
                            witness = Witness{
                                sc.lambda_space[l].label, table.setting_labels(st), shown,
                                std::string("P(") + party_name(p) + "=" +
                                    (worst > 0 ? "+1" : "-1") + ") shifts by " +
                                    std::to_string(d) + " when conditioned on " + cond};
                        }
                    }
                }
            }
        }
    }
    return make_report(Condition::PC, max_violation, tolerance, std::move(witness));
}

ConditionReport check_factorization(const ConditionalTable& table, double tolerance) {
    const ScenarioSpec& sc = table.scenario;
    double max_violation = 0.0;
    Witness witness;

    for (std::size_t l = 0; l < sc.lambda_space.size(); ++l) {
        for (const SettingTuple& st : sc.setting_tuples()) {
            const OutcomeDistribution& dist = table.entry(l, st);
            std::vector<OutcomeDistribution> marginals;
            for (std::size_t p = 0; p < sc.parties; ++p)
                marginals.push_back(marginal_of(dist, {p}));
            for (const Outcomes& o : all_outcome_tuples(sc.parties)) {
                double prod = 1.0;
                for (std::size_t p = 0; p < sc.parties; ++p)
                    prod *= marginals[p].prob({o[p]});
                const double d = std::abs(dist.prob(o) - prod);
                if (d > max_violation) {
                    max_violation = d;
                    witness = Witness{sc.lambda_space[l].label, table.setting_labels(st), o,
                                      "joint probability " + std::to_string(dist.prob(o)) +
                                          " vs product of marginals " + std::to_string(prod)};
                }
            }
        }
    }

    // EL ∧ PC within tolerance forces factorization within the chained
    // product bound (parties - 1) · tolerance; anything else is a bug.
    const ConditionReport el = check_EL(table, tolerance);
    const ConditionReport pc = check_PC(table, tolerance);
    if (el.holds && pc.holds &&
        max_violation > static_cast<double>(sc.parties - 1) * tolerance)
        throw InvariantError("check_factorization: EL and PC hold but factorization "
                             "deviates by " + std::to_string(max_violation));

    return make_report(Condition::Factorization, max_violation, tolerance, std::move(witness));
}

ConditionReport check_freedom_of_choice(const ConditionalTable& table, double tolerance) {
    (void)table;  // a ScenarioSpec cannot express P(lambda|settings) != P(lambda)
    return ConditionReport(Condition::FreedomOfChoice, 0.0, tolerance, std::nullopt);
}

OutcomeDistribution sixteen_outcome_space(const ConditionalTable& table,
                                          const std::vector<double>& weights_x,
                                          const std::vector<double>& weights_y) {
    const ScenarioSpec& sc = table.scenario;
    if (sc.parties != 2 || sc.settings_per_party[0].size() != 2 ||
        sc.settings_per_party[1].size() != 2 || sc.lambda_space.size() != 1)
        throw ValidationError("sixteen_outcome_space: requires a two-party, two-setting, "
                              "single-lambda table");
    for (const std::vector<double>* w : {&weights_x, &weights_y}) {
        if (w->size() != 2)
            throw ProbabilityError("sixteen_outcome_space: need one weight per setting");
        if ((*w)[0] < 0.0 || (*w)[1] < 0.0 ||
            std::abs((*w)[0] + (*w)[1] - 1.0) > tol::scalar)
            throw ProbabilityError("sixteen_outcome_space: setting weights must be "
                                   "non-negative and sum to 1 within 1e-12");
    }
    std::map<Outcomes, double> probs;
    for (std::size_t ix = 0; ix < 2; ++ix)
        for (std::size_t iy = 0; iy < 2; ++iy) {
            const OutcomeDistribution& d = table.entry(0, {ix, iy});
            for (int a : {+1, -1})
                for (int b : {+1, -1}) {
                    const int xs = ix == 0 ? +1 : -1;
                    const int ys = iy == 0 ? +1 : -1;
                    probs[{xs, a, ys, b}] =
                        d.prob({a, b}) * weights_x[ix] * weights_y[iy];
                }
        }
    return OutcomeDistribution(std::move(probs));
}

}  // namespace qbell
