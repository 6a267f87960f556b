#pragma once

#include "ccps/cps.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ccps {

/// One transition of a closed process term.
struct ProcStep {
    enum class Kind { Tau, Tick, Out, In, Write, Read };

    Kind kind = Kind::Tau;
    /// Channel (Out/In), actuator (Write) or sensor (Read).
    std::string device;
    /// Payload of Out and Write.
    Value value;
    /// Variable bound by In/Read; empty for a pure receive.
    std::string binder;
    /// Derivative. For In/Read it is open in `binder`.
    ProcPtr target;

    /// The derivative after the bound variable receives `v`.
    ProcPtr resume(const Value& v) const;
    /// "tau", "tick", "out c<v>", "in c(x)", "write v(a)", "read s(x)".
    std::string label() const;
};

/// Derivatives of a closed term under the process rules. Receives and
/// reads are returned symbolically; at most one Tick step is returned.
std::vector<ProcStep> process_steps(const ProcPtr& p);

/// A system-level action.
struct Action {
    enum class Kind { Tau, Tick, Out, In };

    Kind kind = Kind::Tau;
    std::string channel;
    Value value;

    static Action tau() { return {}; }
    static Action tick() { return Action{Kind::Tick, {}, {}}; }
    static Action out(std::string c, Value v = Unit{}) { return Action{Kind::Out, std::move(c), std::move(v)}; }
    static Action in(std::string c, Value v = Unit{}) { return Action{Kind::In, std::move(c), std::move(v)}; }

    bool visible() const { return kind != Kind::Tau; }

    /// tau, tick, out(c,v), in(c,v); pure synchronisations print as out(c) / in(c).
    std::string str() const;

    bool operator==(const Action& other) const;
    bool operator!=(const Action& other) const { return !(*this == other); }
    /// Lexicographic order on str().
    bool operator<(const Action& other) const { return str() < other.str(); }
};

/// Inverse of Action::str(). Bare words such as L or on denote names and
/// switches; numerals denote rationals. Throws std::invalid_argument.
Action parse_action(std::string_view text);

/// Values admitted on system-level input actions.
using InputAlphabet = std::vector<std::pair<std::string, Value>>;

/// Points chosen while resolving the continuous nondeterminism of a step.
struct Resolution {
    /// Sensor and the measured value of a read.
    std::optional<std::pair<std::string, Rational>> sensed;
    /// Per variable (plant order): the chosen successor minus the drift centre.
    std::vector<Rational> disturbance;
};

/// The process-level rule behind a system step.
struct Cause {
    enum class Kind { Tau, SensRead, ActWrite, Out, In, Time };
    Kind kind = Kind::Tau;
    std::string device;
    Value value;
    /// Abstract reads only: the measurements leading to this branch.
    Interval sensed;

    std::string str() const;
};

struct SysStep {
    Action action;
    Cps successor;
    Resolution resolution;
    Cause cause;
};

/// Resolves the choice of a successor state and of sensor readings.
class DisturbanceResolver {
public:
    virtual ~DisturbanceResolver() = default;
    /// A measurement inside `range`.
    virtual Rational sense(const PhysicalEnv& env, const std::string& sensor, const Interval& range) = 0;
    /// One point per variable, inside the corresponding interval of `box`.
    virtual std::vector<Rational> evolve(const PhysicalEnv& env, const std::vector<Interval>& box) = 0;
    /// Called by run_trace once a step has been chosen.
    virtual void onStepTaken(const SysStep&) {}
};

/// Measurements are exact and every variable follows its drift.
class ZeroNoise : public DisturbanceResolver {
public:
    Rational sense(const PhysicalEnv& env, const std::string& sensor, const Interval& range) override;
    std::vector<Rational> evolve(const PhysicalEnv& env, const std::vector<Interval>& box) override;
};

/// Uniform choice on a rational grid of `grid` equal cells per interval.
class SeededSampler : public DisturbanceResolver {
public:
    explicit SeededSampler(std::uint64_t seed, unsigned grid = 1000);
    Rational sense(const PhysicalEnv& env, const std::string& sensor, const Interval& range) override;
    std::vector<Rational> evolve(const PhysicalEnv& env, const std::vector<Interval>& box) override;

    /// Uniform point of `range` on the grid, respecting open endpoints.
    Rational sample(const Interval& range);
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    unsigned grid_;
};

/// Replays queued choices: per tick a disturbance per variable, per read a
/// measurement noise added to the true value. The queues advance only when
/// run_trace takes a tick or a read; exhausted queues fall back to zero.
class Scripted : public DisturbanceResolver {
public:
    Scripted(std::vector<std::map<std::string, Rational>> tickDisturbances,
             std::vector<Rational> sensorNoise);
    Rational sense(const PhysicalEnv& env, const std::string& sensor, const Interval& range) override;
    std::vector<Rational> evolve(const PhysicalEnv& env, const std::vector<Interval>& box) override;
    void onStepTaken(const SysStep& step) override;

    const std::vector<std::map<std::string, Rational>>& tickDisturbances() const { return ticks_; }
    const std::vector<Rational>& sensorNoise() const { return noise_; }

private:
    std::vector<std::map<std::string, Rational>> ticks_;
    std::vector<Rational> noise_;
    std::size_t nextTick_ = 0;
    std::size_t nextRead_ = 0;
};

/// Delegates every choice to caller-supplied callbacks.
class Adversarial : public DisturbanceResolver {
public:
    using SenseFn = std::function<Rational(const PhysicalEnv&, const std::string&, const Interval&)>;
    using EvolveFn = std::function<std::vector<Rational>(const PhysicalEnv&, const std::vector<Interval>&)>;

    Adversarial(SenseFn sense, EvolveFn evolve);
    Rational sense(const PhysicalEnv& env, const std::string& sensor, const Interval& range) override;
    std::vector<Rational> evolve(const PhysicalEnv& env, const std::vector<Interval>& box) override;

private:
    SenseFn sense_;
    EvolveFn evolve_;
};

/// System transitions. Empty when the invariant fails. Throws
/// ResolverOutOfRange when the resolver leaves an offered interval.
std::vector<SysStep> system_steps(const Cps& m, DisturbanceResolver& resolver,
                                  const InputAlphabet& inputs = {});

/// Chooses a step by action shape; `choice` picks among several matches.
struct ActionSelector {
    Action::Kind kind = Action::Kind::Tau;
    std::optional<std::string> channel;
    std::optional<Value> value;
    std::size_t choice = 0;

    static ActionSelector exactly(const Action& a);
    static ActionSelector of(Action::Kind kind);
    /// "tau", "tick", "out warning", "out(warning,L)", "in c".
    static ActionSelector parse(std::string_view text);

    bool matches(const Action& a) const;
};

struct TraceRecord {
    std::size_t stepIndex = 0;
    /// One-based time slot in which the step happens.
    std::size_t timeSlot = 1;
    Action action;
    Cause cause;
    /// State and actuators after the step, in plant order.
    std::vector<Rational> state;
    std::vector<Value> actuators;
    Resolution resolution;
};

struct Trace {
    std::vector<std::string> variables;
    std::vector<std::string> actuators;
    std::vector<TraceRecord> records;

    void append(const SysStep& step);
    std::size_t ticks() const;
};

struct RunResult {
    Cps final;
    Trace trace;
};

/// Replays the selectors in order. Throws StuckAt(i) when selector i matches no step.
RunResult run_trace(const Cps& m, const std::vector<ActionSelector>& script,
                    DisturbanceResolver& resolver, const InputAlphabet& inputs = {});

/// Header: stepIndex,timeSlot,action,channel,value,perVariableState,actuatorValuation,resolvedDisturbances
std::string trace_to_csv(const Trace& trace);
std::string trace_to_json(const Trace& trace, int indent = 2);

} // namespace ccps
