#include "qbell/theories.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qbell/errors.hpp"

namespace qbell {

namespace {

const char* party_name(std::size_t p) {
    static const char* names[] = {"a", "b", "c"};
    return p < 3 ? names[p] : "?";
}

Observable embed_on_party(const Observable& single, std::size_t party, std::size_t parties) {
    Matrix m = party == 0 ? single.matrix : Matrix::identity(2);
    for (std::size_t q = 1; q < parties; ++q)
        m = kron(m, q == party ? single.matrix : Matrix::identity(2));
    return Observable(std::string(party_name(party)) + ":" + single.label, std::move(m));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double expectation_product(const OutcomeDistribution& dist) {
    double e = 0.0;
    for (const auto& [o, p] : dist.entries) {
        int prod = 1;
        for (int v : o) prod *= v;
        e += prod * p;
    }
    return e;
}

double product_plus_probability(const OutcomeDistribution& dist) {
    double s = 0.0;
    for (const auto& [o, p] : dist.entries) {
        int prod = 1;
        for (int v : o) prod *= v;
        if (prod > 0) s += p;
    }
    return s;
}

}  // namespace

QuantumModel::QuantumModel(StateVector state_, std::vector<std::vector<Setting>> settings)
    : state(std::move(state_)), party_settings(std::move(settings)) {
    if (party_settings.size() != state.qubits())
        throw ValidationError("QuantumModel: " + std::to_string(party_settings.size()) +
                              " parties declared for a " + std::to_string(state.qubits()) +
                              "-qubit state");
    for (const auto& list : party_settings)
        if (list.empty())
            throw ValidationError("QuantumModel: every party needs at least one setting");
}

LocalHVModel::LocalHVModel(std::size_t n, std::vector<std::vector<std::string>> labels,
                           std::vector<LhvLambda> ls, std::vector<std::vector<double>> angles)
    : parties(n),
      setting_labels(std::move(labels)),
      lambdas(std::move(ls)),
      setting_angles(std::move(angles)) {
    if (setting_labels.size() != parties)
        throw ValidationError("LocalHVModel: setting labels for " +
                              std::to_string(setting_labels.size()) + " parties, expected " +
                              std::to_string(parties));
    if (setting_angles.empty()) {
        // Synthetic identifier angles: the setting's index within its party.
        for (const auto& list : setting_labels) {
            std::vector<double> a(list.size());
            for (std::size_t i = 0; i < list.size(); ++i) a[i] = static_cast<double>(i);
            setting_angles.push_back(std::move(a));
        }
    }
    for (std::size_t p = 0; p < parties; ++p)
        if (setting_angles[p].size() != setting_labels[p].size())
            throw ValidationError("LocalHVModel: angle count mismatch for party " +
                                  std::string(party_name(p)));
    if (lambdas.empty())
        throw ValidationError("LocalHVModel: empty lambda space");
    double sum = 0.0;
    for (const LhvLambda& l : lambdas) {
        if (l.weight < 0.0)
            throw ProbabilityError("LocalHVModel: negative weight for lambda '" + l.label + "'");
        sum += l.weight;
        if (l.response_plus.size() != parties)
            throw ValidationError("LocalHVModel: lambda '" + l.label + "' has responses for " +
                                  std::to_string(l.response_plus.size()) +
                                  " parties, expected " + std::to_string(parties));
        for (std::size_t p = 0; p < parties; ++p)
            for (const std::string& s : setting_labels[p]) {
                auto it = l.response_plus[p].find(s);
                if (it == l.response_plus[p].end())
                    throw ValidationError("LocalHVModel: lambda '" + l.label + "' party " +
                                          party_name(p) + " missing response for setting '" +
                                          s + "'");
                if (it->second < -tol::scalar || it->second > 1.0 + tol::scalar)
                    throw ProbabilityError("LocalHVModel: lambda '" + l.label + "' party " +
                                           std::string(party_name(p)) + " setting '" + s +
                                           "': P(+1) = " + std::to_string(it->second) +
                                           " outside [0,1]");
            }
    }
    if (std::abs(sum - 1.0) > tol::scalar)
        throw ProbabilityError("LocalHVModel: weights sum to " + std::to_string(sum) +
                               ", expected 1 within 1e-12");
}

BellResult::BellResult(std::array<std::string, 2> xl, std::array<std::string, 2> yl,
                       double e11_, double e12_, double e21_, double e22_)
    : x_labels(std::move(xl)),
      y_labels(std::move(yl)),
      e11(e11_), e12(e12_), e21(e21_), e22(e22_),
      s(e11_ + e12_ + e21_ - e22_),
      s_best(0.0),
      flipped_term(3) {
    for (double e : {e11, e12, e21, e22})
        if (std::abs(e) > 1.0 + tol::scalar)
            throw InvariantError("BellResult: |E| = " + std::to_string(std::abs(e)) +
                                 " exceeds 1");
    const double total = e11 + e12 + e21 + e22;
    const std::array<double, 4> terms = {e11, e12, e21, e22};
    for (std::size_t k = 0; k < 4; ++k) {
        const double sk = total - 2.0 * terms[k];
        if (std::abs(sk) > std::abs(s_best)) {
            s_best = sk;
            flipped_term = k;
        }
    }
}

ConditionalTable table_from_quantum(const QuantumModel& model) {
    const std::size_t n = model.state.qubits();
    if (n < 2)
        throw ValidationError("table_from_quantum: need at least two parties");
    ScenarioSpec scenario(n, model.party_settings, {{"psi", 1.0}});

    std::map<std::pair<std::size_t, SettingTuple>, OutcomeDistribution> cells;
    for (const SettingTuple& st : scenario.setting_tuples()) {
        std::vector<Observable> obs;
        for (std::size_t p = 0; p < n; ++p)
            obs.push_back(embed_on_party(
                spin_observable(model.party_settings[p][st[p]].angle), p, n));
        cells.emplace(std::make_pair(std::size_t{0}, st),
                      measure(model.state, joint_eigenbasis(obs)));
    }
    return ConditionalTable(std::move(scenario), std::move(cells));
}

ConditionalTable table_from_lhv(const LocalHVModel& model) {
    std::vector<std::vector<Setting>> settings(model.parties);
    for (std::size_t p = 0; p < model.parties; ++p)
        for (std::size_t i = 0; i < model.setting_labels[p].size(); ++i)
            settings[p].push_back({model.setting_labels[p][i], model.setting_angles[p][i]});
    std::vector<LambdaEntry> lambda_space;
    for (const LhvLambda& l : model.lambdas) lambda_space.push_back({l.label, l.weight});
    ScenarioSpec scenario(model.parties, std::move(settings), std::move(lambda_space));

    std::map<std::pair<std::size_t, SettingTuple>, OutcomeDistribution> cells;
    for (std::size_t li = 0; li < model.lambdas.size(); ++li) {
        const LhvLambda& l = model.lambdas[li];
        for (const SettingTuple& st : scenario.setting_tuples()) {
            std::map<Outcomes, double> probs;
            for (const Outcomes& o : all_outcome_tuples(model.parties)) {
                double p = 1.0;
                for (std::size_t q = 0; q < model.parties; ++q) {
                    const double plus =
                        l.response_plus[q].at(model.setting_labels[q][st[q]]);
                    p *= o[q] > 0 ? plus : 1.0 - plus;
                }
                probs[o] = p;
            }
            cells.emplace(std::make_pair(li, st), OutcomeDistribution(std::move(probs)));
        }
    }
    ConditionalTable table(std::move(scenario), std::move(cells));

    // Factorizing by construction; a failure here is a bug, not bad input.
    for (const ConditionReport& r :
         {check_EL(table), check_PC(table), check_factorization(table)})
        if (!r.holds)
            throw InvariantError("table_from_lhv: built table violates " +
                                 condition_name(r.condition) + " by " +
                                 std::to_string(r.max_violation));
    return table;
}

LocalHVModel lhv_from_strategies(
    const std::vector<std::vector<std::string>>& setting_labels,
    const std::vector<std::pair<double, DeterministicStrategy>>& weighted) {
    std::vector<LhvLambda> lambdas;
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        LhvLambda l;
        l.label = "s" + std::to_string(i);
        l.weight = weighted[i].first;
        const DeterministicStrategy& strat = weighted[i].second;
        if (strat.outcome_by_setting.size() != setting_labels.size())
            throw ValidationError("lhv_from_strategies: strategy " + std::to_string(i) +
                                  " covers " + std::to_string(strat.outcome_by_setting.size()) +
                                  " parties, expected " +
                                  std::to_string(setting_labels.size()));
        for (std::size_t p = 0; p < setting_labels.size(); ++p) {
            std::map<std::string, double> resp;
            for (const std::string& s : setting_labels[p]) {
                auto it = strat.outcome_by_setting[p].find(s);
                if (it == strat.outcome_by_setting[p].end())
                    throw ValidationError("lhv_from_strategies: strategy " + std::to_string(i) +
                                          " party " + party_name(p) +
                                          " missing outcome for setting '" + s + "'");
                if (it->second != 1 && it->second != -1)
                    throw ValidationError("lhv_from_strategies: outcomes must be ±1");
                resp[s] = it->second > 0 ? 1.0 : 0.0;
            }
            l.response_plus.push_back(std::move(resp));
        }
        lambdas.push_back(std::move(l));
    }
    return LocalHVModel(setting_labels.size(), setting_labels, std::move(lambdas));
}

QuantumModel singlet_model(double x1, double x2, double y1, double y2) {
    return singlet_model({{"x1", x1}, {"x2", x2}}, {{"y1", y1}, {"y2", y2}});
}

QuantumModel singlet_model(std::vector<Setting> alice, std::vector<Setting> bob) {
    return QuantumModel(singlet_state(), {std::move(alice), std::move(bob)});
}

QuantumModel ghz_model() {
    const std::vector<Setting> xy = {{"X", 0.0}, {"Y", std::numbers::pi / 2}};
    return QuantumModel(ghz_state(), {xy, xy, xy});
}

BellResult chsh(const ConditionalTable& table, std::size_t x1, std::size_t x2,
                std::size_t y1, std::size_t y2) {
    const ScenarioSpec& sc = table.scenario;
    if (sc.parties != 2)
        throw ValidationError("chsh: requires a two-party table");
    for (std::size_t x : {x1, x2})
        if (x >= sc.settings_per_party[0].size())
            throw TableError("chsh: Alice has no setting index " + std::to_string(x));
    for (std::size_t y : {y1, y2})
        if (y >= sc.settings_per_party[1].size())
            throw TableError("chsh: Bob has no setting index " + std::to_string(y));

    auto correlation = [&](std::size_t x, std::size_t y) {
        return expectation_product(table.averaged({x, y}));
    };
    return BellResult({sc.settings_per_party[0][x1].label, sc.settings_per_party[0][x2].label},
                      {sc.settings_per_party[1][y1].label, sc.settings_per_party[1][y2].label},
                      correlation(x1, y1), correlation(x1, y2), correlation(x2, y1),
                      correlation(x2, y2));
}

DeterministicChshReport enumerate_deterministic_chsh() {
    DeterministicChshReport report;
    report.max_abs_s = 0.0;
    for (int a1 : {+1, -1})
        for (int a2 : {+1, -1})
            for (int b1 : {+1, -1})
                for (int b2 : {+1, -1}) {
                    DeterministicStrategy strat;
                    strat.outcome_by_setting = {{{"x1", a1}, {"x2", a2}},
                                                {{"y1", b1}, {"y2", b2}}};
                    const double s = double(a1 * b1) + double(a1 * b2) + double(a2 * b1) -
                                     double(a2 * b2);
                    report.max_abs_s = std::max(report.max_abs_s, std::abs(s));
                    report.strategies.push_back({std::move(strat), s});
                }
    return report;
}

GhzParityReport ghz_parity_check(const ConditionalTable& table, double tolerance) {
    const ScenarioSpec& sc = table.scenario;
    if (sc.parties != 3)
        throw ValidationError("ghz_parity_check: requires a three-party table");
    SettingTuple x_idx(3), y_idx(3);
    for (std::size_t p = 0; p < 3; ++p) {
        x_idx[p] = sc.setting_index(p, "X");
        y_idx[p] = sc.setting_index(p, "Y");
    }

    const std::vector<std::pair<std::string, SettingTuple>> words = {
        {"XYY", {x_idx[0], y_idx[1], y_idx[2]}},
        {"YXY", {y_idx[0], x_idx[1], y_idx[2]}},
        {"YYX", {y_idx[0], y_idx[1], x_idx[2]}},
        {"XXX", {x_idx[0], x_idx[1], x_idx[2]}},
    };

    GhzParityReport report;
    for (const auto& [word, st] : words) {
        const double p_plus = product_plus_probability(table.averaged(st));
        int certain = 0;
        if (p_plus >= 1.0 - tolerance) certain = +1;
        if (p_plus <= tolerance) certain = -1;
        report.lines.push_back({word, p_plus, certain});
    }
    report.quantum_certainties =
        report.lines[0].certain_product == +1 && report.lines[1].certain_product == +1 &&
        report.lines[2].certain_product == +1 && report.lines[3].certain_product == -1;

    // Exhaustive scan: every deterministic ±1 assignment (x, y per party)
    // consistent with xyy = yxy = yyx = +1 forces xxx = +1.
    report.consistent_assignments = 0;
    report.all_force_xxx_plus = true;
    for (std::size_t bits = 0; bits < 64; ++bits) {
        const int xa = bits & 1 ? -1 : +1, ya = bits & 2 ? -1 : +1;
        const int xb = bits & 4 ? -1 : +1, yb = bits & 8 ? -1 : +1;
        const int xc = bits & 16 ? -1 : +1, yc = bits & 32 ? -1 : +1;
        if (xa * yb * yc != 1 || ya * xb * yc != 1 || ya * yb * xc != 1) continue;
        ++report.consistent_assignments;
        if (xa * xb * xc != 1) report.all_force_xxx_plus = false;
    }
    report.contradiction = report.quantum_certainties && report.all_force_xxx_plus;
    return report;
}

GhzParityReport ghz_parity_check(const QuantumModel& model, double tolerance) {
    const StateVector psi_in = ghz_state();
    if (model.state.dim() != 8)
        throw StateError("ghz_parity_check: state is not a three-qubit state");
    const double overlap = std::norm(inner(psi_in.amplitudes, model.state.amplitudes));
    if (std::abs(overlap - 1.0) > tol::scalar)
        throw StateError("ghz_parity_check: state is not psi_in (|overlap|^2 = " +
                         std::to_string(overlap) + ")");
    return ghz_parity_check(table_from_quantum(model), tolerance);
}

GhzLadderReport ghz_conditional_ladder(const ConditionalTable& table, bool strict) {
    const ScenarioSpec& sc = table.scenario;
    if (sc.parties != 3)
        throw ValidationError("ghz_conditional_ladder: requires a three-party table");
    if (sc.lambda_space.size() != 1)
        throw ValidationError("ghz_conditional_ladder: requires a single-lambda table");

    GhzLadderReport report{{}, 0.0, 0.0, 0.0};
    for (const SettingTuple& st : sc.setting_tuples()) {
        const OutcomeDistribution& dist = table.entry(0, st);
        const std::vector<double> angles = table.setting_angles(st);
        const double cs = std::cos(angles[0] + angles[1] + angles[2]);
        bool extrapolation = false;
        for (double a : angles)
            if (std::abs(a) > tol::scalar && std::abs(a - std::numbers::pi / 2) > tol::scalar)
                extrapolation = true;

        GhzLadderRow row{st, angles, cs, extrapolation, 0.0, 0.0, 0.0};
        for (std::size_t p = 0; p < 3; ++p) {
            const OutcomeDistribution m0 = marginal_of(dist, {p});
            for (int v : {+1, -1})
                row.dev_unconditioned =
                    std::max(row.dev_unconditioned, std::abs(m0.prob({v}) - 0.5));

            std::vector<std::size_t> others;
            for (std::size_t q = 0; q < 3; ++q)
                if (q != p) others.push_back(q);

            for (std::size_t q : others)
                for (int w : {+1, -1}) {
                    if (marginal_of(dist, {q}).prob({w}) <= tol::zero_prob) continue;
                    std::size_t pos = 0;  // p's slot among the non-conditioned parties
                    for (std::size_t r = 0; r < p; ++r)
                        if (r != q) ++pos;
                    const OutcomeDistribution m1 =
                        marginal_of(conditional_of(dist, {{q, w}}), {pos});
                    for (int v : {+1, -1})
                        row.dev_single =
                            std::max(row.dev_single, std::abs(m1.prob({v}) - 0.5));
                }

            for (int w0 : {+1, -1})
                for (int w1 : {+1, -1}) {
                    if (marginal_of(dist, others).prob({w0, w1}) <= tol::zero_prob) continue;
                    const OutcomeDistribution m2 =
                        conditional_of(dist, {{others[0], w0}, {others[1], w1}});
                    for (int v : {+1, -1}) {
                        const double expected = (1.0 - v * w0 * w1 * cs) / 2.0;
                        row.dev_double =
                            std::max(row.dev_double, std::abs(m2.prob({v}) - expected));
                    }
                }
        }
        report.max_dev_unconditioned =
            std::max(report.max_dev_unconditioned, row.dev_unconditioned);
        report.max_dev_single = std::max(report.max_dev_single, row.dev_single);
        report.max_dev_double = std::max(report.max_dev_double, row.dev_double);
        report.rows.push_back(std::move(row));
    }
    if (strict && (report.max_dev_unconditioned > tol::scalar ||
                   report.max_dev_single > tol::scalar ||
                   report.max_dev_double > tol::scalar))
        throw InvariantError("ghz_conditional_ladder: deviations exceed 1e-12 "
                             "(unconditioned " + std::to_string(report.max_dev_unconditioned) +
                             ", single " + std::to_string(report.max_dev_single) +
                             ", double " + std::to_string(report.max_dev_double) + ")");
    return report;
}

GhzLadderReport ghz_conditional_ladder(const QuantumModel& model, bool strict) {
    return ghz_conditional_ladder(table_from_quantum(model), strict);
}

ConditionalTable sample_table(const ConditionalTable& exact, std::uint64_t shots,
                              std::uint64_t seed) {
    if (shots == 0)
        throw ValidationError("sample_table: shots must be positive");
    std::map<std::pair<std::size_t, SettingTuple>, OutcomeDistribution> cells;
    std::uint64_t cell_index = 0;
    for (const auto& [key, dist] : exact.table) {
        // Per-cell counter-mode stream so results are independent of
        // evaluation order and the sequence has full period.
        const std::uint64_t base = splitmix64(seed ^ splitmix64(cell_index + 1));
        ++cell_index;
        std::map<Outcomes, std::uint64_t> counts;
        for (const auto& [o, p] : dist.entries) counts[o] = 0;
        for (std::uint64_t shot = 0; shot < shots; ++shot) {
            const double u =
                static_cast<double>(splitmix64(base + shot) >> 11) * 0x1.0p-53;
            double acc = 0.0;
            auto chosen = std::prev(counts.end());
            for (auto it = dist.entries.begin(); it != dist.entries.end(); ++it) {
                acc += it->second;
                if (u < acc) {
                    chosen = counts.find(it->first);
                    break;
                }
            }
            ++chosen->second;
        }
        std::map<Outcomes, double> probs;
        for (const auto& [o, c] : counts)
            probs[o] = static_cast<double>(c) / static_cast<double>(shots);
        cells.emplace(key, OutcomeDistribution(std::move(probs)));
    }
    return ConditionalTable(exact.scenario, std::move(cells));
}

namespace {

BellResult singlet_chsh_at(double phi) {
    const ConditionalTable table =
        table_from_quantum(singlet_model(0.0, 2.0 * phi, phi, -phi));
    return chsh(table, 0, 1, 0, 1);
}

}  // namespace

std::vector<ChshSweepPoint> chsh_phi_sweep(double from, double to, std::size_t steps) {
    if (steps < 2 || !(to > from))
        throw ValidationError("chsh_phi_sweep: need to > from and at least 2 steps");
    std::vector<ChshSweepPoint> out;
    for (std::size_t i = 0; i < steps; ++i) {
        const double phi = from + (to - from) * static_cast<double>(i) /
                                      static_cast<double>(steps - 1);
        out.push_back({phi, singlet_chsh_at(phi)});
    }
    return out;
}

OptimalAngles optimal_chsh_angles() {
    const double step = std::numbers::pi / 180.0;
    double best_phi = step, best = 0.0;
    for (double phi = step; phi < std::numbers::pi / 2; phi += step) {
        const double s = std::abs(singlet_chsh_at(phi).s);
        if (s > best) { best = s; best_phi = phi; }
    }
    // Golden-section refinement of |S(phi)| around the grid optimum.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_phi - step, hi = best_phi + step;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = std::abs(singlet_chsh_at(c).s), fd = std::abs(singlet_chsh_at(d).s);
    while (hi - lo > 1e-10) {
        if (fc > fd) {
            hi = d; d = c; fd = fc;
            c = hi - gr * (hi - lo);
            fc = std::abs(singlet_chsh_at(c).s);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + gr * (hi - lo);
            fd = std::abs(singlet_chsh_at(d).s);
        }
    }
    const double phi = (lo + hi) / 2.0;
    return {phi, std::abs(singlet_chsh_at(phi).s)};
}

double max_abs_s_random_sweep(std::size_t n, std::uint64_t seed) {
    std::uint64_t stream = splitmix64(seed);
    auto uniform_angle = [&stream]() {
        stream = splitmix64(stream);
        return (static_cast<double>(stream >> 11) * 0x1.0p-53 * 2.0 - 1.0) * std::numbers::pi;
    };
    double max_s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x1 = uniform_angle(), x2 = uniform_angle();
        const double y1 = uniform_angle(), y2 = uniform_angle();
        const ConditionalTable table = table_from_quantum(singlet_model(x1, x2, y1, y2));
        max_s = std::max(max_s, std::abs(chsh(table, 0, 1, 0, 1).s_best));
    }
    return max_s;
}

std::vector<std::pair<double, double>> pc_violation_sweep(double from, double to,
                                                          std::size_t steps) {
    if (steps < 2 || !(to > from))
        throw ValidationError("pc_violation_sweep: need to > from and at least 2 steps");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < steps; ++i) {
        const double delta = from + (to - from) * static_cast<double>(i) /
                                        static_cast<double>(steps - 1);
        const ConditionalTable table =
            table_from_quantum(QuantumModel(singlet_state(), {{{"x", delta}}, {{"y", 0.0}}}));
        out.emplace_back(delta, check_PC(table).max_violation);
    }
    return out;
}

}  // namespace qbell
