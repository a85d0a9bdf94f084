#include "qbell/serialize.hpp"

#include <fstream>
#include <sstream>

#include "qbell/errors.hpp"

namespace qbell {

namespace {

json complex_to_json(const cxd& z) { return json::array({z.real(), z.imag()}); }

cxd complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(where + ": expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

const char* party_key(std::size_t p) {
    static const char* keys[] = {"a", "b", "c"};
    return p < 3 ? keys[p] : "?";
}

}  // namespace

std::string outcome_key(const Outcomes& o) {
    std::string s;
    for (int v : o) s += v > 0 ? "+1" : "-1";
    return s;
}

Outcomes outcomes_from_key(const std::string& key) {
    if (key.size() % 2 != 0 || key.empty())
        throw ValidationError("outcomes_from_key: malformed key '" + key + "'");
    Outcomes o;
    for (std::size_t i = 0; i < key.size(); i += 2) {
        const std::string tok = key.substr(i, 2);
        if (tok == "+1") o.push_back(+1);
        else if (tok == "-1") o.push_back(-1);
        else throw ValidationError("outcomes_from_key: malformed key '" + key + "'");
    }
    return o;
}

json to_json(const StateVector& state) {
    json amps = json::array();
    for (const cxd& a : state.amplitudes) amps.push_back(complex_to_json(a));
    return json{{"dim", state.dim()}, {"amplitudes", amps}};
}

StateVector state_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("amplitudes"))
        throw ValidationError("state_from_json: missing 'dim' or 'amplitudes'");
    CVec amps;
    std::size_t i = 0;
    for (const json& a : j.at("amplitudes"))
        amps.push_back(complex_from_json(a, "amplitudes[" + std::to_string(i++) + "]"));
    if (amps.size() != j.at("dim").get<std::size_t>())
        throw ValidationError("state_from_json: 'dim' disagrees with amplitude count");
    return StateVector(std::move(amps));
}

json to_json(const Observable& obs) {
    json entries = json::array();
    for (std::size_t i = 0; i < obs.dim(); ++i)
        for (std::size_t k = 0; k < obs.dim(); ++k)
            entries.push_back(complex_to_json(obs.matrix.at(i, k)));
    return json{{"label", obs.label}, {"dim", obs.dim()}, {"entries", entries}};
}

Observable observable_from_json(const json& j) {
    for (const char* key : {"label", "dim", "entries"})
        if (!j.contains(key))
            throw ValidationError(std::string("observable_from_json: missing '") + key + "'");
    const std::size_t d = j.at("dim").get<std::size_t>();
    const json& entries = j.at("entries");
    if (entries.size() != d * d)
        throw ValidationError("observable_from_json: expected " + std::to_string(d * d) +
                              " entries, got " + std::to_string(entries.size()));
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            m.at(i, k) = complex_from_json(entries[i * d + k],
                                           "entries[" + std::to_string(i * d + k) + "]");
    return Observable(j.at("label").get<std::string>(), std::move(m));
}

json to_json(const OutcomeDistribution& dist) {
    json out = json::object();
    for (const auto& [o, p] : dist.entries) out[outcome_key(o)] = p;
    return out;
}

json to_json(const ScenarioSpec& scenario) {
    json settings = json::array();
    for (const auto& list : scenario.settings_per_party) {
        json party = json::array();
        for (const Setting& s : list)
            party.push_back(json{{"label", s.label}, {"angle", s.angle}});
        settings.push_back(party);
    }
    json lambdas = json::array();
    for (const LambdaEntry& l : scenario.lambda_space)
        lambdas.push_back(json{{"label", l.label}, {"weight", l.weight}});
    return json{{"parties", scenario.parties},
                {"settings_per_party", settings},
                {"lambda_space", lambdas}};
}

ScenarioSpec scenario_from_json(const json& j) {
    for (const char* key : {"parties", "settings_per_party", "lambda_space"})
        if (!j.contains(key))
            throw ValidationError(std::string("scenario_from_json: missing '") + key + "'");
    std::vector<std::vector<Setting>> settings;
    for (const json& party : j.at("settings_per_party")) {
        std::vector<Setting> list;
        for (const json& s : party)
            list.push_back({s.at("label").get<std::string>(), s.at("angle").get<double>()});
        settings.push_back(std::move(list));
    }
    std::vector<LambdaEntry> lambdas;
    for (const json& l : j.at("lambda_space"))
        lambdas.push_back({l.at("label").get<std::string>(), l.at("weight").get<double>()});
    return ScenarioSpec(j.at("parties").get<std::size_t>(), std::move(settings),
                        std::move(lambdas));
}

json to_json(const ConditionalTable& table) {
    json rows = json::array();
    for (const auto& [key, dist] : table.table) {
        rows.push_back(json{{"lambda", table.scenario.lambda_space[key.first].label},
                            {"settings", table.setting_angles(key.second)},
                            {"outcomes", to_json(dist)}});
    }
    return json{{"scenario", to_json(table.scenario)}, {"rows", rows}};
}

ConditionalTable table_from_json(const json& j) {
    if (!j.contains("scenario") || !j.contains("rows"))
        throw ValidationError("table_from_json: missing 'scenario' or 'rows'");
    ScenarioSpec scenario = scenario_from_json(j.at("scenario"));

    // Rows identify settings by their angle values, matched back to indices.
    auto settings_from_angles = [&scenario](const json& angles) {
        SettingTuple st;
        for (std::size_t p = 0; p < scenario.parties; ++p) {
            const double angle = angles.at(p).get<double>();
            const auto& list = scenario.settings_per_party[p];
            bool found = false;
            for (std::size_t i = 0; i < list.size(); ++i)
                if (list[i].angle == angle) { st.push_back(i); found = true; break; }
            if (!found)
                throw ValidationError("table_from_json: row settings angle " +
                                      std::to_string(angle) + " unknown for party " +
                                      std::to_string(p));
        }
        return st;
    };

    std::map<std::pair<std::size_t, SettingTuple>, OutcomeDistribution> cells;
    for (const json& row : j.at("rows")) {
        const std::size_t l = scenario.lambda_index(row.at("lambda").get<std::string>());
        const SettingTuple st = settings_from_angles(row.at("settings"));
        std::map<Outcomes, double> probs;
        for (const auto& [key, p] : row.at("outcomes").items())
            probs[outcomes_from_key(key)] = p.get<double>();
        cells.emplace(std::make_pair(l, st), OutcomeDistribution(std::move(probs)));
    }
    return ConditionalTable(std::move(scenario), std::move(cells));
}

json to_json(const ConditionReport& report) {
    json out{{"condition", condition_name(report.condition)},
             {"holds", report.holds},
             {"max_violation", report.max_violation},
             {"tolerance", report.tolerance}};
    if (report.witness) {
        out["witness"] = json{{"lambda", report.witness->lambda},
                              {"settings", report.witness->settings},
                              {"outcomes", report.witness->outcomes},
                              {"detail", report.witness->detail}};
    }
    return out;
}

json to_json(const BellResult& bell) {
    json correlations = json::array();
    const std::array<std::pair<std::size_t, std::size_t>, 4> pairs = {
        {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    const std::array<double, 4> es = {bell.e11, bell.e12, bell.e21, bell.e22};
    for (std::size_t k = 0; k < 4; ++k)
        correlations.push_back(json{{"x", bell.x_labels[pairs[k].first]},
                                    {"y", bell.y_labels[pairs[k].second]},
                                    {"E", es[k]}});
    return json{{"correlations", correlations},
                {"S", bell.s},
                {"S_best_sign_placement", bell.s_best},
                {"flipped_term", bell.flipped_term},
                {"bound_classical", kClassicalBound},
                {"bound_quantum", kQuantumBound}};
}

json to_json(const GhzParityReport& report) {
    json lines = json::array();
    for (const GhzParityLine& l : report.lines)
        lines.push_back(json{{"word", l.word},
                             {"p_product_plus", l.p_product_plus},
                             {"certain_product", l.certain_product}});
    return json{{"parity", lines},
                {"quantum_certainties", report.quantum_certainties},
                {"consistent_assignments", report.consistent_assignments},
                {"all_force_xxx_plus", report.all_force_xxx_plus},
                {"contradiction", report.contradiction}};
}

json to_json(const GhzLadderReport& report) {
    json rows = json::array();
    for (const GhzLadderRow& r : report.rows)
        rows.push_back(json{{"angles", r.angles},
                            {"cos_sum", r.cos_sum},
                            {"extrapolation", r.extrapolation},
                            {"dev_unconditioned", r.dev_unconditioned},
                            {"dev_single", r.dev_single},
                            {"dev_double", r.dev_double}});
    return json{{"rows", rows},
                {"max_dev_unconditioned", report.max_dev_unconditioned},
                {"max_dev_single", report.max_dev_single},
                {"max_dev_double", report.max_dev_double}};
}

json to_json(const Geometry& geometry) {
    json events = json::array();
    for (const SpacetimeEvent& e : geometry.events) {
        json payload = json::array();
        for (Symbol s : e.payload) payload.push_back(symbol_name(s));
        events.push_back(json{{"label", event_label_name(e.label)},
                              {"t", e.t},
                              {"pos", e.pos},
                              {"payload", payload}});
    }
    return json{{"events", events}};
}

json to_json(const KnowledgeSet& knowledge) {
    json known = json::array();
    for (Symbol s : knowledge.known) known.push_back(symbol_name(s));
    return json{{"agent", agent_name(knowledge.agent)},
                {"at", event_label_name(knowledge.at.label)},
                {"known", known}};
}

json to_json(const AvailabilityReport& report) {
    json given = json::array();
    for (Symbol s : report.descriptor.given) given.push_back(symbol_name(s));
    auto stop = [](const std::optional<EventLabel>& e) {
        return e ? json(event_label_name(*e)) : json("UNAVAILABLE");
    };
    return json{{"agent", agent_name(report.descriptor.agent)},
                {"target", symbol_name(report.descriptor.target)},
                {"given", given},
                {"family", stop(report.family)},
                {"specific", stop(report.specific)},
                {"cross_check", stop(report.cross_check)}};
}

std::string geometry_csv(const Geometry& geometry) {
    std::ostringstream out;
    out << "label,t,pos\n";
    for (const SpacetimeEvent& e : geometry.events)
        out << event_label_name(e.label) << "," << e.t << "," << e.pos << "\n";
    return out.str();
}

LocalHVModel lhv_model_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw ValidationError("lhv model: expected a non-empty JSON list of "
                              "{weight, responses} entries");

    // First pass: discover parties and setting labels; they must agree
    // across entries.
    std::size_t parties = 0;
    std::vector<std::vector<std::string>> labels;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& entry = j[i];
        const std::string at = "lhv model entry " + std::to_string(i);
        if (!entry.contains("weight") || !entry.contains("responses"))
            throw ValidationError(at + ": missing 'weight' or 'responses'");
        const json& responses = entry.at("responses");
        std::size_t n = 0;
        while (n < 3 && responses.contains(party_key(n))) ++n;
        if (n < 2 || responses.size() != n)
            throw ValidationError(at + ": responses must be keyed by parties a, b (and c)");
        if (parties == 0) {
            parties = n;
            labels.resize(parties);
            for (std::size_t p = 0; p < parties; ++p) {
                for (const auto& [setting, unused] : responses.at(party_key(p)).items()) {
                    (void)unused;
                    labels[p].push_back(setting);
                }
                std::sort(labels[p].begin(), labels[p].end());
            }
        } else if (n != parties) {
            throw ValidationError(at + ": has " + std::to_string(n) +
                                  " parties, previous entries have " + std::to_string(parties));
        }
    }

    std::vector<LhvLambda> lambdas;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& entry = j[i];
        const std::string at = "lhv model entry " + std::to_string(i);
        LhvLambda l;
        l.label = entry.contains("label") ? entry.at("label").get<std::string>()
                                          : "l" + std::to_string(i);
        if (!entry.at("weight").is_number())
            throw ValidationError(at + ".weight: expected a number");
        l.weight = entry.at("weight").get<double>();
        for (std::size_t p = 0; p < parties; ++p) {
            const json& party = entry.at("responses").at(party_key(p));
            std::map<std::string, double> resp;
            for (const std::string& setting : labels[p]) {
                if (!party.contains(setting))
                    throw ValidationError(at + ".responses." + party_key(p) +
                                          ": missing setting '" + setting + "'");
                const json& cell = party.at(setting);
                double plus;
                if (cell.contains("+1")) {
                    plus = cell.at("+1").get<double>();
                    if (cell.contains("-1") &&
                        std::abs(plus + cell.at("-1").get<double>() - 1.0) > tol::scalar)
                        throw ValidationError(at + ".responses." + party_key(p) + "." +
                                              setting + ": '+1' and '-1' must sum to 1");
                } else if (cell.contains("-1")) {
                    plus = 1.0 - cell.at("-1").get<double>();
                } else {
                    throw ValidationError(at + ".responses." + party_key(p) + "." + setting +
                                          ": expected {\"+1\": p} (and optionally \"-1\")");
                }
                resp[setting] = plus;
            }
            l.response_plus.push_back(std::move(resp));
        }
        lambdas.push_back(std::move(l));
    }
    return LocalHVModel(parties, std::move(labels), std::move(lambdas));
}

LocalHVModel load_lhv_model(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("load_lhv_model: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("load_lhv_model: " + path + ": " + e.what());
    }
    return lhv_model_from_json(j);
}

}  // namespace qbell
