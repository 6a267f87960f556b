#pragma once

#include "ccps/lts.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ccps {

/// A control term, an actuator valuation and a box of admissible states.
/// The distinguished Deadlock state stands for every state violating the invariant.
struct AbstractState {
    bool deadlock = false;
    ProcPtr control;
    /// canonical_key(control); empty for Deadlock.
    std::string controlKey;
    std::vector<Value> actuators;
    std::vector<Interval> box;

    static AbstractState makeDeadlock();
    /// Control key plus actuator valuation.
    std::string location() const;
    /// Box-sensitive identity.
    std::string key() const;
    std::string str(const Plant& plant) const;
};

struct AbstractStep {
    Action action;
    Cause cause;
    AbstractState target;
};

/// Successors of a non-deadlock state over a plant, mirroring the system
/// rules: reads split the sensed interval at the guard thresholds, ticks
/// translate the box and clip it to the invariant. Throws AbstractionError
/// when a sensed value reaches anything other than a guard.
std::vector<AbstractStep> abstract_successors(const AbstractState& s, const Plant& plant,
                                              const InputAlphabet& inputs = {});

/// The abstract state of a concrete system (point box).
AbstractState abstract_initial(const Cps& m);

struct LtsEdge {
    std::size_t src = 0;
    Action action;
    std::size_t dst = 0;
    bool operator==(const LtsEdge& other) const
    {
        return src == other.src && dst == other.dst && action == other.action;
    }
};

/// Explicit finite LTS. The annotation vectors are empty for imported LTSs.
struct FiniteLts {
    std::size_t numStates = 0;
    std::size_t initial = 0;
    std::vector<LtsEdge> edges;

    std::vector<AbstractState> states;
    /// Parallel to edges.
    std::vector<Cause> causes;
    /// Number of ticks on the path that discovered each state (exact policy).
    std::vector<std::size_t> tickDepth;
    std::optional<std::size_t> deadlock;
    std::vector<std::string> variables;
    std::vector<std::string> actuators;
    std::shared_ptr<const Plant> plant;
    bool widened = false;
    /// True when the exploration stopped at the tick-depth bound.
    bool truncated = false;

    std::vector<std::vector<std::size_t>> successors() const;
    std::size_t countEdges(Action::Kind kind) const;
};

enum class WideningPolicy { Hull, Exact };

struct AbstractionConfig {
    std::size_t maxStates = 100000;
    WideningPolicy policy = WideningPolicy::Hull;
    /// Exact policy only: states discovered after this many ticks are not expanded.
    std::optional<std::size_t> maxTicks;
    InputAlphabet inputs;
};

/// Throws StateBudgetExceeded when more than maxStates states (or, for the
/// hull policy, more than maxStates box updates) are needed.
FiniteLts build_abstract_lts(const Cps& m, const AbstractionConfig& config = {});

/// Line format: "states N", "initial I", then "src action dst" per edge.
std::string export_lts(const FiniteLts& lts);
/// Throws std::invalid_argument on malformed input.
FiniteLts import_lts(const std::string& text);

/// Conjunction of location conditions over an abstract LTS:
///   turn_on | turn_off          an actuator is about to be switched on / off
///   ACT=VALUE                   actuator valuation
///   last=tick | last=tau | last=read S | last=write A | last=out(c,v)
///   ticks_after(turn_on)=N      the N-th tick after a switch-on
/// Conditions are joined with "&&". The turn_on/turn_off forms accept an
/// optional actuator argument, e.g. turn_on(cool_l).
class LocationQuery {
public:
    static LocationQuery parse(const std::string& text);

    /// Indices of the selected non-deadlock states.
    std::vector<std::size_t> select(const FiniteLts& lts) const;
    const std::string& text() const { return text_; }

    struct Condition {
        enum class Kind { TurnOn, TurnOff, Actuator, Last, TicksAfter };
        Kind kind = Kind::TurnOn;
        std::string actuator;
        Value value;
        std::string last;
        /// For TicksAfter: the anchor event (TurnOn or TurnOff) and count.
        Kind anchor = Kind::TurnOn;
        std::size_t count = 0;
    };

private:
    std::string text_;
    std::vector<Condition> conditions_;
};

/// Interval hull per variable of the selected states. Throws EmptySelection.
std::map<std::string, Interval> reach_envelope(const FiniteLts& lts, const LocationQuery& query);

} // namespace ccps
