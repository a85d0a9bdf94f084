#include "qbell/spacetime.hpp"

#include <algorithm>
#include <cmath>

#include "qbell/errors.hpp"

namespace qbell {

namespace {

std::set<Symbol> payload_for(EventLabel label) {
    switch (label) {
        case EventLabel::Source: return {Symbol::Lambda};
        case EventLabel::SettingA: return {Symbol::X};
        case EventLabel::SettingB: return {Symbol::Y};
        case EventLabel::ResultA: return {Symbol::A};
        case EventLabel::ResultB: return {Symbol::B};
        case EventLabel::Verify: return {};
    }
    return {};
}

/// Remote settings are function arguments for this agent's inferences.
std::set<Symbol> remote_settings(Agent agent) {
    switch (agent) {
        case Agent::Alice: return {Symbol::Y};
        case Agent::Bob: return {Symbol::X};
        case Agent::Verifier: return {};
    }
    return {};
}

bool in_closed_past_cone(const SpacetimeEvent& carrier, const SpacetimeEvent& vantage,
                         double tolerance) {
    if (carrier.t > vantage.t + tolerance) return false;
    return interval(carrier, vantage, tolerance) != IntervalKind::Spacelike;
}

}  // namespace

std::string event_label_name(EventLabel l) {
    switch (l) {
        case EventLabel::Source: return "SOURCE";
        case EventLabel::SettingA: return "SETTING_A";
        case EventLabel::SettingB: return "SETTING_B";
        case EventLabel::ResultA: return "RESULT_A";
        case EventLabel::ResultB: return "RESULT_B";
        case EventLabel::Verify: return "VERIFY";
    }
    return "?";
}

std::string symbol_name(Symbol s) {
    switch (s) {
        case Symbol::Lambda: return "lambda";
        case Symbol::X: return "x";
        case Symbol::Y: return "y";
        case Symbol::A: return "a";
        case Symbol::B: return "b";
    }
    return "?";
}

Symbol symbol_from_name(const std::string& name) {
    if (name == "lambda") return Symbol::Lambda;
    if (name == "x") return Symbol::X;
    if (name == "y") return Symbol::Y;
    if (name == "a") return Symbol::A;
    if (name == "b") return Symbol::B;
    throw LabelError("symbol_from_name: unknown symbol '" + name +
                     "' (expected lambda, x, y, a or b)");
}

std::string agent_name(Agent a) {
    switch (a) {
        case Agent::Alice: return "ALICE";
        case Agent::Bob: return "BOB";
        case Agent::Verifier: return "VERIFIER";
    }
    return "?";
}

Agent agent_from_name(const std::string& name) {
    if (name == "alice" || name == "ALICE") return Agent::Alice;
    if (name == "bob" || name == "BOB") return Agent::Bob;
    if (name == "verifier" || name == "VERIFIER") return Agent::Verifier;
    throw LabelError("agent_from_name: unknown agent '" + name + "'");
}

std::string interval_name(IntervalKind k) {
    switch (k) {
        case IntervalKind::Spacelike: return "SPACELIKE";
        case IntervalKind::Timelike: return "TIMELIKE";
        case IntervalKind::Lightlike: return "LIGHTLIKE";
    }
    return "?";
}

SpacetimeEvent::SpacetimeEvent(double t_, double pos_, EventLabel label_)
    : t(t_), pos(pos_), label(label_), payload(payload_for(label_)) {}

Geometry::Geometry(std::vector<SpacetimeEvent> events_) : events(std::move(events_)) {
    if (events.empty()) throw ValidationError("Geometry: no events");
}

const SpacetimeEvent& Geometry::at(EventLabel label) const {
    for (const SpacetimeEvent& e : events)
        if (e.label == label) return e;
    throw LabelError("Geometry: no event labeled " + event_label_name(label));
}

IntervalKind interval(const SpacetimeEvent& e1, const SpacetimeEvent& e2, double tolerance) {
    const double dt = e1.t - e2.t;
    const double dx = e1.pos - e2.pos;
    const double q = dt * dt - dx * dx;
    if (std::abs(q) <= tolerance) return IntervalKind::Lightlike;
    return q > 0.0 ? IntervalKind::Timelike : IntervalKind::Spacelike;
}

Geometry default_epr_geometry(double separation) {
    if (!(separation > 0.0))
        throw ValidationError("default_epr_geometry: separation must be positive, got " +
                              std::to_string(separation));
    const double d = separation;
    return Geometry({
        SpacetimeEvent(0.0, 0.0, EventLabel::Source),
        SpacetimeEvent(0.0, -d, EventLabel::SettingA),
        SpacetimeEvent(0.0, +d, EventLabel::SettingB),
        SpacetimeEvent(d / 2, -d / 2, EventLabel::ResultA),
        SpacetimeEvent(d / 2, +d / 2, EventLabel::ResultB),
        SpacetimeEvent(d, 0.0, EventLabel::Verify),  // earliest common future
    });
}

KnowledgeSet knowledge_at(Agent agent, const SpacetimeEvent& event, const Geometry& geometry) {
    std::set<Symbol> known;
    for (const SpacetimeEvent& carrier : geometry.events)
        if (in_closed_past_cone(carrier, event, tol::interval))
            known.insert(carrier.payload.begin(), carrier.payload.end());
    return {agent, event, std::move(known)};
}

std::vector<EventLabel> worldline(Agent agent) {
    switch (agent) {
        case Agent::Alice:
            return {EventLabel::SettingA, EventLabel::ResultA, EventLabel::Verify};
        case Agent::Bob:
            return {EventLabel::SettingB, EventLabel::ResultB, EventLabel::Verify};
        case Agent::Verifier:
            return {EventLabel::Source, EventLabel::Verify};
    }
    throw LabelError("worldline: unknown agent");
}

InferenceDescriptor parse_descriptor(Agent agent, const std::string& text) {
    const auto bar = text.find('|');
    if (bar == std::string::npos || bar == 0)
        throw ValidationError("parse_descriptor: expected 'target|sym,sym,...', got '" +
                              text + "'");
    InferenceDescriptor d;
    d.agent = agent;
    d.target = symbol_from_name(text.substr(0, bar));
    std::string rest = text.substr(bar + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        std::size_t comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string tok = rest.substr(pos, comma - pos);
        if (!tok.empty()) d.given.insert(symbol_from_name(tok));
        pos = comma + 1;
    }
    if (d.given.empty())
        throw ValidationError("parse_descriptor: no conditioning symbols in '" + text + "'");
    if (d.given.count(d.target))
        throw ValidationError("parse_descriptor: target '" + symbol_name(d.target) +
                              "' also appears as a conditioner");
    return d;
}

AvailabilityReport inference_availability(const Geometry& geometry,
                                          const InferenceDescriptor& descriptor) {
    const std::set<Symbol> parametric = remote_settings(descriptor.agent);

    auto earliest_with = [&](const std::set<Symbol>& needed) -> std::optional<EventLabel> {
        for (EventLabel stop : worldline(descriptor.agent)) {
            const KnowledgeSet k = knowledge_at(descriptor.agent, geometry.at(stop), geometry);
            if (std::includes(k.known.begin(), k.known.end(), needed.begin(), needed.end()))
                return stop;
        }
        return std::nullopt;
    };

    std::set<Symbol> family_needed;
    for (Symbol s : descriptor.given)
        if (!parametric.count(s)) family_needed.insert(s);
    std::set<Symbol> cross_needed = descriptor.given;
    cross_needed.insert(descriptor.target);

    return {descriptor, earliest_with(family_needed), earliest_with(descriptor.given),
            earliest_with(cross_needed)};
}

SpacetimeEvent boosted(const SpacetimeEvent& e, double v) {
    if (!(std::abs(v) < 1.0))
        throw ValidationError("boosted: |v| must be < 1, got " + std::to_string(v));
    const double gamma = 1.0 / std::sqrt(1.0 - v * v);
    SpacetimeEvent out = e;
    out.t = gamma * (e.t - v * e.pos);
    out.pos = gamma * (e.pos - v * e.t);
    return out;
}

Geometry boosted(const Geometry& g, double v) {
    std::vector<SpacetimeEvent> events;
    events.reserve(g.events.size());
    for (const SpacetimeEvent& e : g.events) events.push_back(boosted(e, v));
    return Geometry(std::move(events));
}

CausalityAudit causality_audit(const Geometry& geometry) {
    for (Agent agent : {Agent::Alice, Agent::Bob, Agent::Verifier}) {
        for (const SpacetimeEvent& vantage : geometry.events) {
            const KnowledgeSet k = knowledge_at(agent, vantage, geometry);
            for (Symbol s : {Symbol::Lambda, Symbol::X, Symbol::Y, Symbol::A, Symbol::B}) {
                bool reachable = false;
                for (const SpacetimeEvent& carrier : geometry.events)
                    if (carrier.payload.count(s) &&
                        in_closed_past_cone(carrier, vantage, tol::interval))
                        reachable = true;
                if (k.known.count(s) && !reachable)
                    return {false, agent_name(agent) + " at " +
                                       event_label_name(vantage.label) + " knows '" +
                                       symbol_name(s) +
                                       "' although every carrying event is spacelike"};
                if (!k.known.count(s) && reachable)
                    return {false, agent_name(agent) + " at " +
                                       event_label_name(vantage.label) + " misses '" +
                                       symbol_name(s) + "' despite a past-cone carrier"};
            }
        }
    }
    return {true, ""};
}

}  // namespace qbell
