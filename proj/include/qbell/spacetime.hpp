#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qbell/tolerances.hpp"

namespace qbell {

enum class EventLabel { Source, SettingA, SettingB, ResultA, ResultB, Verify };
enum class Symbol { Lambda, X, Y, A, B };
enum class Agent { Alice, Bob, Verifier };
enum class IntervalKind { Spacelike, Timelike, Lightlike };

std::string event_label_name(EventLabel l);
std::string symbol_name(Symbol s);
Symbol symbol_from_name(const std::string& name);
std::string agent_name(Agent a);
Agent agent_from_name(const std::string& name);
std::string interval_name(IntervalKind k);

/// Point in 1+1D Minkowski space (units with c = 1) carrying the symbols
/// produced there. The payload must match the label (SOURCE carries
/// lambda, RESULT_A carries a, ...); validated on construction.
struct SpacetimeEvent {
    SpacetimeEvent(double t, double pos, EventLabel label);

    double t;
    double pos;
    EventLabel label;
    std::set<Symbol> payload;
};

struct Geometry {
    explicit Geometry(std::vector<SpacetimeEvent> events_);

    const SpacetimeEvent& at(EventLabel label) const;

    std::vector<SpacetimeEvent> events;
};

/// Sign of (dt)^2 - (dpos)^2 classifies the pair; |dt^2 - dpos^2| within
/// the tolerance (including coincident events) is LIGHTLIKE.
IntervalKind interval(const SpacetimeEvent& e1, const SpacetimeEvent& e2,
                      double tolerance = tol::interval);

/// The standard two-wing arrangement: source at the origin, settings
/// chosen at t = 0 at the detector positions ±d (spacelike from the
/// source), results at the light-cone intersections (d/2, ±d/2), and the
/// verification zone at the earliest point of the common future, (d, 0).
Geometry default_epr_geometry(double separation);

struct KnowledgeSet {
    Agent agent;
    SpacetimeEvent at;
    std::set<Symbol> known;
};

/// Symbols whose carrying events lie in the closed past light cone of
/// `event`. The vantage point may be any coordinate pair, not only a
/// geometry event.
KnowledgeSet knowledge_at(Agent agent, const SpacetimeEvent& event,
                          const Geometry& geometry);

/// Events each agent visits, in time order: Alice runs along
/// SETTING_A → RESULT_A → VERIFY, Bob mirrors her, the verifier goes
/// SOURCE → VERIFY.
std::vector<EventLabel> worldline(Agent agent);

/// A conditional probability P(target | given) evaluated by an agent.
struct InferenceDescriptor {
    Agent agent;
    Symbol target;
    std::set<Symbol> given;
};

/// Parse "b|y,lambda,x,a" style descriptors.
InferenceDescriptor parse_descriptor(Agent agent, const std::string& text);

/// Where along the agent's worldline the inference becomes available.
/// `family`: the conditional as a function of the remote settings (they
/// are arguments, not data, so the agent does not need their values).
/// `specific`: every conditioning symbol, remote settings included, is
/// known. `cross_check`: the target outcome itself is also known, so the
/// prediction can be compared against the record.
struct AvailabilityReport {
    InferenceDescriptor descriptor;
    std::optional<EventLabel> family;
    std::optional<EventLabel> specific;
    std::optional<EventLabel> cross_check;
};

AvailabilityReport inference_availability(const Geometry& geometry,
                                          const InferenceDescriptor& descriptor);

/// Lorentz boost with velocity v (|v| < 1) applied to every event.
SpacetimeEvent boosted(const SpacetimeEvent& e, double v);
Geometry boosted(const Geometry& g, double v);

struct CausalityAudit {
    bool pass;
    std::string detail;  // empty when pass
};

/// Exhaustive check over (agent, vantage event) pairs: a symbol is known
/// exactly when some carrying event lies in the closed past light cone.
CausalityAudit causality_audit(const Geometry& geometry);

}  // namespace qbell
