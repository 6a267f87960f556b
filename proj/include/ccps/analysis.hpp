#pragma once

#include "ccps/abstraction.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ccps {

// ---------------------------------------------------------------------------
// weak bisimulation

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Hennessy-Milner formula with weak modalities: <<a>>phi holds when some
/// weak a-derivative (zero or more taus for a = tau) satisfies phi.
class Formula {
public:
    enum class Kind { True, Not, And, Diamond };

    static FormulaPtr truth();
    static FormulaPtr negate(FormulaPtr f);
    static FormulaPtr conj(std::vector<FormulaPtr> parts);
    static FormulaPtr diamond(Action a, FormulaPtr f);

    Kind kind() const { return kind_; }
    const Action& action() const { return action_; }
    const std::vector<FormulaPtr>& parts() const { return parts_; }
    std::size_t depth() const;
    std::string str() const;

private:
    Kind kind_ = Kind::True;
    Action action_;
    std::vector<FormulaPtr> parts_;
};

/// Model checking of a formula against one state.
bool satisfies(const FiniteLts& lts, std::size_t state, const FormulaPtr& f);

struct BisimWitness {
    /// Holds in the initial state of the first LTS iff `side` is 1.
    FormulaPtr formula;
    /// Actions along the leading chain of modalities.
    std::vector<Action> actions;
    /// The LTS (1 or 2) whose initial state satisfies the formula.
    int side = 1;
};

struct BisimVerdict {
    bool bisimilar = false;
    /// Pairs (state of first, state of second) in the same class, both reachable.
    std::vector<std::pair<std::size_t, std::size_t>> relation;
    std::optional<BisimWitness> witness;
    std::size_t rounds = 0;
    std::size_t classes = 0;
};

/// Decides weak bisimilarity of the initial states by partition refinement
/// on the saturated disjoint union.
BisimVerdict weak_bisim(const FiniteLts& l1, const FiniteLts& l2);

/// True when the formula separates the two initial states as recorded.
bool witness_valid(const FiniteLts& l1, const FiniteLts& l2, const BisimWitness& w);

std::string verdict_to_json(const BisimVerdict& v, int indent = 2);

// ---------------------------------------------------------------------------
// congruence instances

struct CongruenceContext {
    enum class Kind { UplusWith, ParallelWith, Restrict };
    Kind kind = Kind::Restrict;
    std::optional<Cps> other;
    ProcPtr process;
    std::string channel;
    /// UplusWith only: the fixed system is the left operand.
    bool otherFirst = false;

    /// [.] |+| o
    static CongruenceContext uplusWith(Cps o);
    /// o |+| [.]
    static CongruenceContext uplusAfter(Cps o);
    static CongruenceContext parallelWith(ProcPtr p);
    static CongruenceContext restrictOn(std::string c);

    Cps apply(const Cps& m) const;
    std::string str() const;
};

struct CongruenceReport {
    std::string context;
    BisimVerdict component;
    BisimVerdict composite;
    /// Component bisimilar but composite not: the congruence property fails.
    bool violation = false;
};

/// Throws InterferenceViolation when the context is not admissible for m or n.
CongruenceReport check_congruence_instance(const Cps& m, const Cps& n, const CongruenceContext& context,
                                           const AbstractionConfig& config = {});

// ---------------------------------------------------------------------------
// trace search

struct TraceSearchResult {
    std::vector<ActionSelector> script;
    std::vector<std::map<std::string, Rational>> tickDisturbances;
    std::vector<Rational> sensorNoise;
    Trace trace;
    /// Time slot of the target action.
    std::size_t slot = 0;
};

/// Shortest abstract path (by number of actions) whose last edge matches
/// `target` after at most `tickBound` ticks, concretised into a scripted
/// run and checked by replay. Throws ConcretizationFailed if replay fails.
std::optional<TraceSearchResult> find_trace_to(const Cps& m, const ActionSelector& target, std::size_t tickBound,
                                               const AbstractionConfig& config = {});

// ---------------------------------------------------------------------------
// time properties

struct TimeViolation {
    std::string property;
    std::string detail;
};

struct TimeReport {
    bool timeDeterminism = true;
    bool maximalProgress = true;
    bool patience = true;
    bool wellTimedness = true;
    /// Longest instantaneous run allowed by the abstraction; absent if unbounded.
    std::optional<std::size_t> bound;
    std::size_t longestObserved = 0;
    std::size_t abstractStates = 0;
    std::size_t concreteStates = 0;
    std::size_t deadlockedRuns = 0;
    std::vector<TimeViolation> violations;

    bool ok() const { return timeDeterminism && maximalProgress && patience && wellTimedness; }
    std::string toJson(int indent = 2) const;
};

struct TimeCheckConfig {
    /// Ticks per sampled run.
    std::size_t depth = 30;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    AbstractionConfig abstraction;
};

/// Longest path without ticks in the LTS; absent when a tick-free cycle exists.
std::optional<std::size_t> instantaneous_bound(const FiniteLts& lts);

TimeReport check_time_properties(const Cps& m, const TimeCheckConfig& config = {});

// ---------------------------------------------------------------------------
// statistics

/// Seed of run `index` in a campaign seeded with `seed` (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::size_t index);

/// Scheduler of sampled runs: uniform among the non-tick steps, the tick
/// step only when nothing else is enabled. Null for an empty list.
const SysStep* choose_step(const std::vector<SysStep>& steps, std::mt19937_64& engine);

struct EmbeddingConfig {
    std::size_t runs = 1000;
    /// Ticks per run.
    std::size_t horizon = 30;
    std::uint64_t seed = 0;
    InputAlphabet inputs;
};

struct EmbeddingReport {
    std::size_t runs = 0;
    std::size_t steps = 0;
    /// One entry per run that left the abstraction, with the first offending step.
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Replays sampled concrete runs against an abstract LTS built from the same
/// system. Each concrete step must follow an abstract edge with the same
/// action into a state of the same location whose box contains the new
/// concrete state, or into Deadlock when the new state violates the invariant.
EmbeddingReport check_embedding(const Cps& m, const FiniteLts& lts, const EmbeddingConfig& config = {});

struct MonteCarloConfig {
    std::size_t runs = 100;
    std::size_t horizon = 250;
    std::uint64_t seed = 0;
    /// Variable sampled at switching steps and the switched actuator.
    std::string variable = "temp";
    std::string actuator = "cool";
    /// Out actions on this channel count as warnings; empty counts every output.
    std::string warningChannel = "warning";
    unsigned grid = 1000;
    InputAlphabet inputs;
};

struct RunRow {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::size_t ticks = 0;
    std::size_t activeTicks = 0;
    std::size_t turnOns = 0;
    std::size_t turnOffs = 0;
    std::size_t warnings = 0;
    bool deadlocked = false;
};

struct RunStats {
    std::size_t runs = 0;
    std::size_t horizon = 0;
    std::vector<Rational> turnOnTemps;
    std::vector<Rational> turnOffTemps;
    /// Ticks with the actuator on over all ticks; absent when no tick was run.
    std::optional<Rational> coolantOnFraction;
    /// Sum over active ticks of |drift of the variable| over all ticks.
    std::optional<Rational> coolantEffort;
    std::size_t warningsEmitted = 0;
    std::size_t deadlocks = 0;
    std::vector<RunRow> rows;

    std::string toJson(int indent = 2) const;
    /// One row per run plus a final summary row.
    std::string toCsv() const;
};

/// Independent seeded runs; each run owns a generator derived from (seed, run index).
/// Non-tick steps are chosen uniformly; a tick is taken only when nothing else is enabled.
RunStats monte_carlo(const Cps& m, const MonteCarloConfig& config);

} // namespace ccps
