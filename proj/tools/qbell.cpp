// Command-line front end: wires the table generators, condition checkers
// and evaluators into reproducible experiments with text/JSON/CSV output.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbell/errors.hpp"
#include "qbell/serialize.hpp"
#include "qbell/spacetime.hpp"
#include "qbell/theories.hpp"
#include "qbell/version.hpp"

namespace {

using qbell::json;

struct Options {
    std::string command;
    std::string model = "quantum-singlet";
    std::vector<double> angles;
    bool degrees = false;
    std::uint64_t seed = 12345;
    std::uint64_t shots = 0;  // 0 = exact mode
    std::string output = "text";
    double tolerance = qbell::tol::report;
    std::string out_path;

    // spacetime
    double separation = 2.0;
    std::size_t boosts = 100;
    std::string descriptor;
    std::string agent = "alice";

    // sweep
    std::string quantity = "s";
    double from = 0.0;
    double to = std::numbers::pi / 2;
    std::size_t steps = 91;
};

double to_radians(double value, bool degrees) {
    return degrees ? value * std::numbers::pi / 180.0 : value;
}

void normalize_angles(Options& opt) {
    if (opt.degrees) {
        for (double& a : opt.angles) a = to_radians(a, true);
        opt.from = to_radians(opt.from, true);
        opt.to = to_radians(opt.to, true);
        opt.degrees = false;  // everything below works in radians
    }
}

json config_json(const Options& opt) {
    json cfg{{"command", opt.command}, {"model", opt.model},
             {"seed", opt.seed},       {"shots", opt.shots},
             {"output", opt.output},   {"tolerance", opt.tolerance}};
    if (!opt.angles.empty()) cfg["angles"] = opt.angles;
    if (opt.command == "spacetime") {
        cfg["separation"] = opt.separation;
        cfg["boosts"] = opt.boosts;
        if (!opt.descriptor.empty()) {
            cfg["descriptor"] = opt.descriptor;
            cfg["agent"] = opt.agent;
        }
    }
    if (opt.command == "sweep") {
        cfg["quantity"] = opt.quantity;
        cfg["from"] = opt.from;
        cfg["to"] = opt.to;
        cfg["steps"] = opt.steps;
    }
    return cfg;
}

void emit(const Options& opt, const std::string& payload) {
    if (opt.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::string path = opt.out_path;
    if (const char* dir = std::getenv("QBELL_OUT_DIR");
        dir && !path.empty() && path.front() != '/')
        path = std::string(dir) + "/" + path;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw qbell::ValidationError("cannot open output file '" + path + "'");
    out << payload;
}

std::string json_report(const Options& opt, json result) {
    const json report{{"artifact", qbell::kArtifactName},
                      {"version", qbell::kVersion},
                      {"config", config_json(opt)},
                      {"result", std::move(result)}};
    return report.dump(2) + "\n";
}

std::string text_header(const Options& opt) {
    std::ostringstream s;
    s << qbell::kArtifactName << " " << qbell::kVersion << " — " << opt.command << "\n";
    if (opt.command == "spacetime") {
        s << "seed: " << opt.seed << "  tolerance: " << opt.tolerance << "\n";
        return s.str();
    }
    s << "model: " << opt.model << "  seed: " << opt.seed << "  shots: "
      << (opt.shots == 0 ? std::string("exact") : std::to_string(opt.shots))
      << "  tolerance: " << opt.tolerance << "\n";
    if (!opt.angles.empty()) {
        s << "angles (radians):";
        for (double a : opt.angles) s << " " << a;
        s << "\n";
    }
    return s.str();
}

// --- model construction -----------------------------------------------------

struct ModelSpec {
    enum Kind { QuantumSinglet, QuantumGhz, LhvFile, Deterministic } kind;
    std::string arg;
};

ModelSpec parse_model(const std::string& text) {
    if (text == "quantum-singlet") return {ModelSpec::QuantumSinglet, ""};
    if (text == "quantum-ghz") return {ModelSpec::QuantumGhz, ""};
    if (text.rfind("lhv:", 0) == 0) return {ModelSpec::LhvFile, text.substr(4)};
    if (text.rfind("deterministic:", 0) == 0)
        return {ModelSpec::Deterministic, text.substr(14)};
    throw qbell::ValidationError(
        "unknown model '" + text +
        "' (expected quantum-singlet, quantum-ghz, lhv:<file> or deterministic:<spec>)");
}

/// Grammar: comma-separated `a=+1` (all of a party's settings) or
/// `a.x2=-1` (one setting). Two-party scenario over x1,x2 / y1,y2.
qbell::LocalHVModel parse_deterministic(const std::string& spec) {
    const std::vector<std::vector<std::string>> labels = {{"x1", "x2"}, {"y1", "y2"}};
    std::vector<std::map<std::string, int>> outcomes(2);

    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string tok = spec.substr(pos, comma - pos);
        pos = comma + 1;
        if (tok.empty()) continue;
        const std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw qbell::ValidationError("deterministic spec token '" + tok +
                                         "': expected party[.setting]=±1");
        const std::string lhs = tok.substr(0, eq);
        const std::string rhs = tok.substr(eq + 1);
        int value;
        if (rhs == "+1" || rhs == "1") value = +1;
        else if (rhs == "-1") value = -1;
        else
            throw qbell::ValidationError("deterministic spec token '" + tok +
                                         "': outcome must be +1 or -1");
        const std::size_t dot = lhs.find('.');
        const std::string party = lhs.substr(0, dot);
        std::size_t p;
        if (party == "a") p = 0;
        else if (party == "b") p = 1;
        else
            throw qbell::ValidationError("deterministic spec token '" + tok +
                                         "': party must be a or b");
        if (dot == std::string::npos) {
            for (const std::string& s : labels[p]) outcomes[p][s] = value;
        } else {
            const std::string setting = lhs.substr(dot + 1);
            bool known = false;
            for (const std::string& s : labels[p]) known |= (s == setting);
            if (!known)
                throw qbell::ValidationError("deterministic spec token '" + tok +
                                             "': unknown setting '" + setting + "'");
            outcomes[p][setting] = value;
        }
    }
    for (std::size_t p = 0; p < 2; ++p)
        for (const std::string& s : labels[p])
            if (!outcomes[p].count(s))
                throw qbell::ValidationError("deterministic spec: no outcome for party " +
                                             std::string(p == 0 ? "a" : "b") + " setting '" +
                                             s + "'");
    qbell::DeterministicStrategy strat{outcomes};
    return qbell::lhv_from_strategies(labels, {{1.0, strat}});
}

qbell::ConditionalTable build_table(const Options& opt, const ModelSpec& model) {
    std::optional<qbell::ConditionalTable> table;
    switch (model.kind) {
        case ModelSpec::QuantumSinglet: {
            std::vector<double> a = opt.angles;
            if (a.empty())
                a.assign(qbell::kCanonicalChshAngles.begin(),
                         qbell::kCanonicalChshAngles.end());
            if (a.size() == 2) {
                table = qbell::table_from_quantum(qbell::QuantumModel(
                    qbell::singlet_state(), {{{"x1", a[0]}}, {{"y1", a[1]}}}));
            } else if (a.size() == 4) {
                table = qbell::table_from_quantum(
                    qbell::singlet_model(a[0], a[1], a[2], a[3]));
            } else {
                throw qbell::ValidationError(
                    "quantum-singlet expects 2 angles (x y) or 4 angles (x1 x2 y1 y2), got " +
                    std::to_string(a.size()));
            }
            break;
        }
        case ModelSpec::QuantumGhz:
            if (!opt.angles.empty())
                throw qbell::ValidationError(
                    "quantum-ghz uses the fixed settings X (0) and Y (pi/2); "
                    "--angles does not apply");
            table = qbell::table_from_quantum(qbell::ghz_model());
            break;
        case ModelSpec::LhvFile:
            table = qbell::table_from_lhv(qbell::load_lhv_model(model.arg));
            break;
        case ModelSpec::Deterministic:
            table = qbell::table_from_lhv(parse_deterministic(model.arg));
            break;
    }
    if (opt.shots > 0) return qbell::sample_table(*table, opt.shots, opt.seed);
    return std::move(*table);
}

// --- commands ---------------------------------------------------------------

int run_chsh(Options& opt) {
    const ModelSpec model = parse_model(opt.model);
    if (model.kind == ModelSpec::QuantumGhz)
        throw qbell::ValidationError("chsh needs a two-party model");
    const qbell::ConditionalTable table = build_table(opt, model);
    if (table.scenario.parties != 2 || table.scenario.settings_per_party[0].size() < 2 ||
        table.scenario.settings_per_party[1].size() < 2)
        throw qbell::ValidationError("chsh needs two settings per party");
    const qbell::BellResult bell = qbell::chsh(table, 0, 1, 0, 1);

    const bool beats_classical = std::abs(bell.s) > qbell::kClassicalBound + opt.tolerance;
    const bool beats_quantum = std::abs(bell.s) > qbell::kQuantumBound + opt.tolerance;

    // Global sample space over uniformly random settings and outcomes.
    std::optional<double> global_entropy;
    if (table.scenario.lambda_space.size() == 1 &&
        table.scenario.settings_per_party[0].size() == 2 &&
        table.scenario.settings_per_party[1].size() == 2)
        global_entropy = qbell::shannon_entropy_bits(
            qbell::sixteen_outcome_space(table, {0.5, 0.5}, {0.5, 0.5}));

    if (opt.output == "json") {
        json result = qbell::to_json(bell);
        result["exceeds_classical_bound"] = beats_classical;
        result["exceeds_quantum_bound"] = beats_quantum;
        if (global_entropy)
            result["sixteen_outcome_entropy_bits"] = *global_entropy;
        emit(opt, json_report(opt, std::move(result)));
        return 0;
    }
    if (opt.output == "csv") {
        std::ostringstream csv;
        csv << "x,y,E,S_running\n" << std::setprecision(17);
        const double running[4] = {bell.e11, bell.e11 + bell.e12,
                                   bell.e11 + bell.e12 + bell.e21, bell.s};
        const std::string xs[4] = {bell.x_labels[0], bell.x_labels[0], bell.x_labels[1],
                                   bell.x_labels[1]};
        const std::string ys[4] = {bell.y_labels[0], bell.y_labels[1], bell.y_labels[0],
                                   bell.y_labels[1]};
        const double es[4] = {bell.e11, bell.e12, bell.e21, bell.e22};
        for (int k = 0; k < 4; ++k)
            csv << xs[k] << "," << ys[k] << "," << es[k] << "," << running[k] << "\n";
        emit(opt, csv.str());
        return 0;
    }

    std::ostringstream out;
    out << text_header(opt) << std::fixed << std::setprecision(6);
    out << "E(" << bell.x_labels[0] << "," << bell.y_labels[0] << ") = " << bell.e11 << "\n"
        << "E(" << bell.x_labels[0] << "," << bell.y_labels[1] << ") = " << bell.e12 << "\n"
        << "E(" << bell.x_labels[1] << "," << bell.y_labels[0] << ") = " << bell.e21 << "\n"
        << "E(" << bell.x_labels[1] << "," << bell.y_labels[1] << ") = " << bell.e22 << "\n"
        << "S = E11 + E12 + E21 - E22 = " << bell.s << "  (|S| = " << std::abs(bell.s)
        << ")\n"
        << "best sign placement: |S| = " << std::abs(bell.s_best) << " (term "
        << bell.flipped_term + 1 << " negated)\n";
    out << "classical bound " << qbell::kClassicalBound << ": "
        << (beats_classical ? "|S| exceeds classical bound 2 [violated]"
                            : "|S| within classical bound [satisfied]")
        << "\n";
    out << "quantum bound " << qbell::kQuantumBound << ": "
        << (beats_quantum ? "|S| exceeds quantum bound [violated]"
                          : "|S| within quantum bound [satisfied]")
        << "\n";
    if (global_entropy)
        out << "sixteen-outcome sample space (uniform settings): entropy = "
            << *global_entropy << " bits of 4\n";
    emit(opt, out.str());
    return 0;
}

int run_ghz(Options& opt) {
    const ModelSpec model = parse_model(opt.model);
    std::optional<qbell::ConditionalTable> table;
    if (model.kind == ModelSpec::QuantumGhz) {
        // Validates the state is psi_in before building anything.
        qbell::ghz_parity_check(qbell::ghz_model(), opt.tolerance);
        table = build_table(opt, model);
    } else if (model.kind == ModelSpec::LhvFile) {
        table = build_table(opt, model);
        if (table->scenario.parties != 3)
            throw qbell::ValidationError("ghz needs a three-party model");
    } else {
        throw qbell::ValidationError("ghz supports quantum-ghz or lhv:<file> models");
    }
    const qbell::GhzParityReport parity =
        qbell::ghz_parity_check(*table, opt.shots > 0 ? opt.tolerance : qbell::tol::scalar);
    const qbell::GhzLadderReport ladder =
        qbell::ghz_conditional_ladder(*table, /*strict=*/false);

    if (opt.output == "json") {
        json result{{"parity", qbell::to_json(parity)}, {"ladder", qbell::to_json(ladder)}};
        emit(opt, json_report(opt, std::move(result)));
        return 0;
    }
    if (opt.output == "csv") {
        std::ostringstream csv;
        csv << "word,p_product_plus,certain_product\n" << std::setprecision(17);
        for (const qbell::GhzParityLine& l : parity.lines)
            csv << l.word << "," << l.p_product_plus << "," << l.certain_product << "\n";
        emit(opt, csv.str());
        return 0;
    }

    std::ostringstream out;
    out << text_header(opt) << std::fixed << std::setprecision(6);
    out << "parity of the outcome product abc:\n";
    for (const qbell::GhzParityLine& l : parity.lines) {
        out << "  " << l.word << ": P(product = +1) = " << l.p_product_plus;
        if (l.certain_product != 0)
            out << "  -> product " << (l.certain_product > 0 ? "+1" : "-1") << " certain";
        out << "\n";
    }
    out << "deterministic scan: " << parity.consistent_assignments
        << "/64 assignments satisfy xyy = yxy = yyx = +1; "
        << (parity.all_force_xxx_plus ? "all force xxx = +1" : "some give xxx = -1") << "\n";
    out << "contradiction flag: " << (parity.contradiction ? "TRUE" : "FALSE") << "\n\n";
    out << "conditional ladder (deviations from 1/2, 1/2, (1 - abc*cos(u+v+w))/2):\n";
    out << "  u      v      w      cos(u+v+w)  dev(uncond)  dev(single)  dev(double)\n";
    for (const qbell::GhzLadderRow& r : ladder.rows) {
        out << "  " << std::setw(5) << r.angles[0] << "  " << std::setw(5) << r.angles[1]
            << "  " << std::setw(5) << r.angles[2] << "  " << std::setw(10) << r.cos_sum
            << "  " << std::scientific << std::setprecision(2) << r.dev_unconditioned
            << "     " << r.dev_single << "     " << r.dev_double << std::fixed
            << std::setprecision(6) << (r.extrapolation ? "  [extrapolation]" : "") << "\n";
    }
    emit(opt, out.str());
    return 0;
}

int run_conditions(Options& opt) {
    const ModelSpec model = parse_model(opt.model);
    const qbell::ConditionalTable table = build_table(opt, model);

    const std::vector<qbell::ConditionReport> reports = {
        qbell::check_EL(table, opt.tolerance),
        qbell::check_PC(table, opt.tolerance),
        qbell::check_factorization(table, opt.tolerance),
    };

    if (opt.output == "json") {
        json result = json::array();
        for (const qbell::ConditionReport& r : reports) result.push_back(qbell::to_json(r));
        emit(opt, json_report(opt, std::move(result)));
        return 0;
    }
    if (opt.output == "csv") {
        std::ostringstream csv;
        csv << "condition,holds,max_violation\n" << std::setprecision(17);
        for (const qbell::ConditionReport& r : reports)
            csv << qbell::condition_name(r.condition) << "," << (r.holds ? 1 : 0) << ","
                << r.max_violation << "\n";
        emit(opt, csv.str());
        return 0;
    }

    std::ostringstream out;
    out << text_header(opt);
    for (const qbell::ConditionReport& r : reports) {
        out << std::left << std::setw(14) << qbell::condition_name(r.condition)
            << (r.holds ? "PASS" : "FAIL") << "  max_violation = " << std::scientific
            << std::setprecision(6) << r.max_violation << "\n";
        if (r.witness)
            out << "              witness: lambda = " << r.witness->lambda << ", "
                << r.witness->detail << "\n";
    }
    emit(opt, out.str());
    return 0;
}

int run_spacetime(Options& opt) {
    const qbell::Geometry geometry = qbell::default_epr_geometry(opt.separation);

    if (opt.output == "csv") {
        emit(opt, qbell::geometry_csv(geometry));
        return 0;
    }

    const qbell::CausalityAudit audit = qbell::causality_audit(geometry);

    // Boost invariance of every pairwise classification.
    std::uint64_t stream = opt.seed;
    auto next_velocity = [&stream]() {
        stream = stream * 6364136223846793005ULL + 1442695040888963407ULL;
        return (static_cast<double>(stream >> 11) * 0x1.0p-53 * 2.0 - 1.0) * 0.99;
    };
    bool boosts_ok = true;
    for (std::size_t i = 0; i < opt.boosts && boosts_ok; ++i) {
        const qbell::Geometry b = qbell::boosted(geometry, next_velocity());
        for (std::size_t e1 = 0; e1 < geometry.events.size(); ++e1)
            for (std::size_t e2 = 0; e2 < geometry.events.size(); ++e2)
                if (qbell::interval(geometry.events[e1], geometry.events[e2]) !=
                    qbell::interval(b.events[e1], b.events[e2]))
                    boosts_ok = false;
    }

    std::vector<qbell::KnowledgeSet> knowledge;
    for (qbell::Agent agent :
         {qbell::Agent::Alice, qbell::Agent::Bob, qbell::Agent::Verifier})
        for (qbell::EventLabel stop : qbell::worldline(agent))
            knowledge.push_back(qbell::knowledge_at(agent, geometry.at(stop), geometry));

    std::vector<qbell::AvailabilityReport> availability;
    if (!opt.descriptor.empty()) {
        availability.push_back(qbell::inference_availability(
            geometry,
            qbell::parse_descriptor(qbell::agent_from_name(opt.agent), opt.descriptor)));
    } else {
        availability.push_back(qbell::inference_availability(
            geometry, qbell::parse_descriptor(qbell::Agent::Alice, "b|y,lambda,x,a")));
        availability.push_back(qbell::inference_availability(
            geometry, qbell::parse_descriptor(qbell::Agent::Bob, "a|x,lambda,y,b")));
    }

    if (opt.output == "json") {
        json ks = json::array();
        for (const qbell::KnowledgeSet& k : knowledge) ks.push_back(qbell::to_json(k));
        json av = json::array();
        for (const qbell::AvailabilityReport& r : availability)
            av.push_back(qbell::to_json(r));
        json result{{"geometry", qbell::to_json(geometry)},
                    {"audit_pass", audit.pass},
                    {"audit_detail", audit.detail},
                    {"boost_invariance_pass", boosts_ok},
                    {"knowledge", ks},
                    {"availability", av}};
        emit(opt, json_report(opt, std::move(result)));
        return 0;
    }

    std::ostringstream out;
    out << text_header(opt);
    out << "events (separation d = " << opt.separation << "):\n";
    for (const qbell::SpacetimeEvent& e : geometry.events) {
        out << "  " << std::left << std::setw(10) << qbell::event_label_name(e.label)
            << " t = " << std::setw(6) << e.t << " pos = " << std::setw(6) << e.pos
            << " carries {";
        bool first = true;
        for (qbell::Symbol s : e.payload) {
            out << (first ? "" : ", ") << qbell::symbol_name(s);
            first = false;
        }
        out << "}\n";
    }
    out << "causality audit: " << (audit.pass ? "PASS" : "FAIL — " + audit.detail) << "\n";
    out << "boost invariance (" << opt.boosts
        << " random boosts): " << (boosts_ok ? "PASS" : "FAIL") << "\n";
    out << "knowledge sets:\n";
    for (const qbell::KnowledgeSet& k : knowledge) {
        out << "  " << std::left << std::setw(9) << qbell::agent_name(k.agent) << " at "
            << std::setw(10) << qbell::event_label_name(k.at.label) << " knows {";
        bool first = true;
        for (qbell::Symbol s : k.known) {
            out << (first ? "" : ", ") << qbell::symbol_name(s);
            first = false;
        }
        out << "}\n";
    }
    out << "inference availability:\n";
    for (const qbell::AvailabilityReport& r : availability) {
        auto stop = [](const std::optional<qbell::EventLabel>& e) {
            return e ? qbell::event_label_name(*e) : std::string("UNAVAILABLE");
        };
        out << "  " << qbell::agent_name(r.descriptor.agent) << " P("
            << qbell::symbol_name(r.descriptor.target) << " | ";
        bool first = true;
        for (qbell::Symbol s : r.descriptor.given) {
            out << (first ? "" : ",") << qbell::symbol_name(s);
            first = false;
        }
        out << "): as a family over remote settings at " << stop(r.family)
            << "; for specific values at " << stop(r.specific) << "; cross-check at "
            << stop(r.cross_check) << "\n";
    }
    emit(opt, out.str());
    return 0;
}

int run_sweep(Options& opt) {
    if (opt.shots > 0)
        throw qbell::ValidationError("sweep runs in exact mode; drop --shots");
    std::ostringstream csv;
    csv << std::setprecision(17);
    if (opt.quantity == "s") {
        csv << "x,y,E,S_running\n";
        for (const qbell::ChshSweepPoint& pt :
             qbell::chsh_phi_sweep(opt.from, opt.to, opt.steps)) {
            const qbell::BellResult& b = pt.bell;
            const double xs[4] = {0.0, 0.0, 2 * pt.phi, 2 * pt.phi};
            const double ys[4] = {pt.phi, -pt.phi, pt.phi, -pt.phi};
            const double es[4] = {b.e11, b.e12, b.e21, b.e22};
            const double running[4] = {b.e11, b.e11 + b.e12, b.e11 + b.e12 + b.e21, b.s};
            for (int k = 0; k < 4; ++k)
                csv << xs[k] << "," << ys[k] << "," << es[k] << "," << running[k] << "\n";
        }
    } else if (opt.quantity == "pc") {
        csv << "delta,max_violation\n";
        for (const auto& [delta, v] :
             qbell::pc_violation_sweep(opt.from, opt.to, opt.steps))
            csv << delta << "," << v << "\n";
    } else {
        throw qbell::ValidationError("sweep quantity must be 's' or 'pc', got '" +
                                     opt.quantity + "'");
    }
    if (opt.output == "json") {
        emit(opt, json_report(opt, json{{"csv", csv.str()}}));
        return 0;
    }
    emit(opt, csv.str());
    return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool with_model, bool with_angles) {
    if (with_model)
        cmd->add_option("--model", opt.model,
                        "quantum-singlet | quantum-ghz | lhv:<file> | deterministic:<spec>");
    if (with_angles)
        cmd->add_option("--angles", opt.angles, "measurement angles in radians");
    cmd->add_flag("--degrees", opt.degrees, "interpret angles in degrees");
    cmd->add_option("--seed", opt.seed, "PRNG seed for sampled mode");
    cmd->add_option("--shots", opt.shots, "samples per table cell (0 = exact mode)");
    cmd->add_option("--output", opt.output, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--tolerance", opt.tolerance, "condition-report tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", opt.out_path,
                    "write the report to this file (relative paths resolve under "
                    "$QBELL_OUT_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conditional-probability experiments for Bell and GHZ scenarios"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* chsh_cmd =
        app.add_subcommand("chsh", "four correlations, S, and both bounds");
    add_common(chsh_cmd, opt, true, true);

    CLI::App* ghz_cmd =
        app.add_subcommand("ghz", "parity table, contradiction flag, conditional ladder");
    add_common(ghz_cmd, opt, true, false);

    CLI::App* cond_cmd =
        app.add_subcommand("conditions", "EL / PC / factorization reports for a model");
    add_common(cond_cmd, opt, true, true);

    CLI::App* st_cmd =
        app.add_subcommand("spacetime", "light-cone audit and inference availability");
    st_cmd->add_option("--separation", opt.separation, "detector separation d (d > 0)");
    st_cmd->add_option("--boosts", opt.boosts, "random boosts for the invariance check");
    st_cmd->add_option("--descriptor", opt.descriptor,
                       "conditional to locate, e.g. b|y,lambda,x,a");
    st_cmd->add_option("--agent", opt.agent, "agent for --descriptor (alice|bob|verifier)");
    add_common(st_cmd, opt, false, false);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "CSV of S (or PC max_violation) versus angle");
    sweep_cmd->add_option("--quantity", opt.quantity, "s | pc");
    sweep_cmd->add_option("--from", opt.from, "sweep start (radians)");
    sweep_cmd->add_option("--to", opt.to, "sweep end (radians)");
    sweep_cmd->add_option("--steps", opt.steps, "number of sweep points");
    add_common(sweep_cmd, opt, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    try {
        normalize_angles(opt);
        if (ghz_cmd->parsed() && ghz_cmd->get_option("--model")->count() == 0)
            opt.model = "quantum-ghz";
        if (chsh_cmd->parsed()) { opt.command = "chsh"; return run_chsh(opt); }
        if (ghz_cmd->parsed()) { opt.command = "ghz"; return run_ghz(opt); }
        if (cond_cmd->parsed()) { opt.command = "conditions"; return run_conditions(opt); }
        if (st_cmd->parsed()) { opt.command = "spacetime"; return run_spacetime(opt); }
        if (sweep_cmd->parsed()) { opt.command = "sweep"; return run_sweep(opt); }
        return 1;
    } catch (const qbell::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const qbell::LabelError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const qbell::ProbabilityError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const qbell::TableError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const qbell::StateError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const qbell::DimensionError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const qbell::Error& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
