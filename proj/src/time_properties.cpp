#include "ccps/analysis.hpp"

#include <json.hpp>

#include <functional>

namespace ccps {

std::optional<std::size_t> instantaneous_bound(const FiniteLts& lts)
{
    auto out = lts.successors();
    enum class Mark { Fresh, Active, Done };
    std::vector<Mark> mark(lts.numStates, Mark::Fresh);
    std::vector<std::size_t> longest(lts.numStates, 0);
    bool cyclic = false;
    std::function<void(std::size_t)> visit = [&](std::size_t s) {
        mark[s] = Mark::Active;
        for (std::size_t e : out[s]) {
            if (lts.edges[e].action.kind == Action::Kind::Tick) continue;
            std::size_t d = lts.edges[e].dst;
            if (mark[d] == Mark::Active) {
                cyclic = true;
                continue;
            }
            if (mark[d] == Mark::Fresh) visit(d);
            longest[s] = std::max(longest[s], longest[d] + 1);
        }
        mark[s] = Mark::Done;
    };
    std::size_t best = 0;
    for (std::size_t s = 0; s < lts.numStates; ++s) {
        if (mark[s] == Mark::Fresh) visit(s);
        best = std::max(best, longest[s]);
    }
    if (cyclic) return std::nullopt;
    return best;
}

namespace {

void record(TimeReport& r, bool TimeReport::*flag, const std::string& property, std::string detail)
{
    r.*flag = false;
    if (r.violations.size() < 50) r.violations.push_back(TimeViolation{property, std::move(detail)});
}

std::string describe(const Cps& m)
{
    std::string out = print(m.proc);
    if (out.size() > 200) out = out.substr(0, 200) + "...";
    const auto& plant = m.env.plant();
    for (std::size_t i = 0; i < plant.variables.size(); ++i)
        out += "; " + plant.variables[i] + "=" + to_string(m.env.state()[i]);
    for (std::size_t i = 0; i < plant.actuators.size(); ++i)
        out += "; " + plant.actuators[i] + "=" + m.env.actuators()[i].str();
    return out;
}

} // namespace

TimeReport check_time_properties(const Cps& m, const TimeCheckConfig& config)
{
    TimeReport r;
    FiniteLts lts = build_abstract_lts(m, config.abstraction);
    r.abstractStates = lts.numStates;
    auto out = lts.successors();
    for (std::size_t s = 0; s < lts.numStates; ++s) {
        const AbstractState& st = lts.states[s];
        if (st.deadlock) continue;
        bool tau = false, tick = false;
        std::string tickKey;
        for (std::size_t e : out[s]) {
            const LtsEdge& edge = lts.edges[e];
            if (edge.action.kind == Action::Kind::Tau) tau = true;
            if (edge.action.kind != Action::Kind::Tick) continue;
            tick = true;
            const AbstractState& dst = lts.states[edge.dst];
            if (dst.deadlock) continue;
            if (tickKey.empty()) tickKey = dst.controlKey;
            else if (tickKey != dst.controlKey)
                record(r, &TimeReport::timeDeterminism, "time determinism",
                       "abstract state " + std::to_string(s) + " has tick derivatives with different control");
        }
        std::size_t processTicks = 0;
        for (const auto& step : process_steps(st.control))
            if (step.kind == ProcStep::Kind::Tick) ++processTicks;
        if (processTicks > 1)
            record(r, &TimeReport::timeDeterminism, "time determinism",
                   "abstract state " + std::to_string(s) + " has several process tick derivatives");
        if (tau && tick)
            record(r, &TimeReport::maximalProgress, "maximal progress",
                   "abstract state " + std::to_string(s) + " offers tau and tick");
        if (!tau && !tick)
            record(r, &TimeReport::patience, "patience",
                   "abstract state " + std::to_string(s) + " satisfies the invariant but offers neither tau nor tick");
    }
    r.bound = instantaneous_bound(lts);
    if (!r.bound) record(r, &TimeReport::wellTimedness, "well-timedness", "the abstraction has a cycle without ticks");

    ZeroNoise zero;
    for (std::size_t run = 0; run < config.samples; ++run) {
        SeededSampler sampler(derive_seed(config.seed, run));
        Cps cur = m;
        std::size_t ticks = 0, instantaneous = 0;
        while (ticks < config.depth) {
            auto steps = system_steps(cur, sampler, config.abstraction.inputs);
            ++r.concreteStates;
            bool inv = invariant_holds(cur.env);
            const SysStep* tickStep = nullptr;
            bool tau = false;
            for (const auto& s : steps) {
                if (s.action.kind == Action::Kind::Tick) {
                    if (tickStep)
                        record(r, &TimeReport::timeDeterminism, "time determinism",
                               "several tick steps at " + describe(cur));
                    tickStep = &s;
                } else {
                    if (s.action.kind == Action::Kind::Tau) tau = true;
                }
            }
            if (tau && tickStep) record(r, &TimeReport::maximalProgress, "maximal progress", "tau and tick at " + describe(cur));
            if (!tickStep && inv && !tau)
                record(r, &TimeReport::patience, "patience", "no tick, no tau and a valid invariant at " + describe(cur));
            if (tickStep) {
                auto alternative = system_steps(cur, zero, config.abstraction.inputs);
                const SysStep* other = nullptr;
                for (const auto& s : alternative)
                    if (s.action.kind == Action::Kind::Tick) other = &s;
                auto box = next_box(cur.env);
                bool inside = true;
                for (const SysStep* s : {tickStep, other}) {
                    if (!s) continue;
                    for (std::size_t i = 0; i < box.size(); ++i)
                        inside = inside && box[i].contains(s->successor.env.state()[i]);
                }
                if (!other || !structurally_congruent(tickStep->successor.proc, other->successor.proc) || !inside)
                    record(r, &TimeReport::timeDeterminism, "time determinism",
                           "tick derivatives disagree at " + describe(cur));
            }
            if (steps.empty()) {
                ++r.deadlockedRuns;
                break;
            }
            const SysStep* chosen = choose_step(steps, sampler.engine());
            if (chosen->action.kind == Action::Kind::Tick) {
                ++ticks;
                instantaneous = 0;
            } else {
                ++instantaneous;
                r.longestObserved = std::max(r.longestObserved, instantaneous);
                if (r.bound && instantaneous > *r.bound)
                    record(r, &TimeReport::wellTimedness, "well-timedness",
                           std::to_string(instantaneous) + " actions without a tick at " + describe(cur));
            }
            cur = chosen->successor;
        }
    }
    return r;
}

std::string TimeReport::toJson(int indent) const
{
    nlohmann::ordered_json j;
    j["timeDeterminism"] = timeDeterminism;
    j["maximalProgress"] = maximalProgress;
    j["patience"] = patience;
    j["wellTimedness"] = wellTimedness;
    j["bound"] = bound ? nlohmann::ordered_json(*bound) : nlohmann::ordered_json(nullptr);
    j["longestObserved"] = longestObserved;
    j["abstractStates"] = abstractStates;
    j["concreteStates"] = concreteStates;
    j["deadlockedRuns"] = deadlockedRuns;
    nlohmann::ordered_json v = nlohmann::ordered_json::array();
    for (const auto& x : violations) v.push_back({{"property", x.property}, {"state", x.detail}});
    j["violations"] = v;
    return j.dump(indent);
}

} // namespace ccps
