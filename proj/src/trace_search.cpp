#include "ccps/analysis.hpp"

#include "ccps/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace ccps {

namespace {

Rational pick(const Interval& range)
{
    if (range.isEmpty()) throw ConcretizationFailed("no concrete point satisfies an abstract step");
    return range.interiorPoint();
}

struct PathSearch {
    std::vector<std::size_t> edges;
};

std::optional<PathSearch> shortestPath(const FiniteLts& lts, const ActionSelector& target, std::size_t tickBound)
{
    auto out = lts.successors();
    using Node = std::pair<std::size_t, std::size_t>;
    std::map<Node, std::pair<Node, std::size_t>> parent;
    std::set<Node> seen;
    std::deque<Node> work;
    Node start{lts.initial, 0};
    seen.insert(start);
    work.push_back(start);
    while (!work.empty()) {
        Node cur = work.front();
        work.pop_front();
        for (std::size_t e : out[cur.first]) {
            const LtsEdge& edge = lts.edges[e];
            bool tick = edge.action.kind == Action::Kind::Tick;
            if (target.matches(edge.action)) {
                PathSearch found;
                found.edges.push_back(e);
                Node back = cur;
                while (back != start) {
                    const auto& [prev, via] = parent.at(back);
                    found.edges.push_back(via);
                    back = prev;
                }
                std::reverse(found.edges.begin(), found.edges.end());
                return found;
            }
            std::size_t ticks = cur.second + (tick ? 1 : 0);
            if (ticks > tickBound) continue;
            Node next{edge.dst, ticks};
            if (seen.insert(next).second) {
                parent.emplace(next, std::make_pair(cur, e));
                work.push_back(next);
            }
        }
    }
    return std::nullopt;
}

bool sameAbstractTarget(const SysStep& step, const AbstractState& target)
{
    if (target.deadlock) return !invariant_holds(step.successor.env);
    if (step.successor.env.actuators() != target.actuators) return false;
    const auto& state = step.successor.env.state();
    for (std::size_t i = 0; i < state.size(); ++i)
        if (!target.box[i].contains(state[i])) return false;
    return canonical_key(step.successor.proc) == target.controlKey;
}

} // namespace

std::optional<TraceSearchResult> find_trace_to(const Cps& m, const ActionSelector& target, std::size_t tickBound,
                                               const AbstractionConfig& config)
{
    AbstractionConfig hullConfig = config;
    hullConfig.policy = WideningPolicy::Hull;
    FiniteLts hull = build_abstract_lts(m, hullConfig);
    bool anywhere = std::any_of(hull.edges.begin(), hull.edges.end(),
                                [&](const LtsEdge& e) { return target.matches(e.action); });
    if (!anywhere) return std::nullopt;

    AbstractionConfig exactConfig = config;
    exactConfig.policy = WideningPolicy::Exact;
    exactConfig.maxTicks = tickBound + 1;
    FiniteLts lts = build_abstract_lts(m, exactConfig);
    auto path = shortestPath(lts, target, tickBound);
    if (!path) return std::nullopt;

    const Plant& plant = m.env.plant();
    const auto& edges = path->edges;
    std::size_t n = edges.size();

    // Choose concrete states backwards from the source of the target edge.
    std::vector<std::vector<Rational>> points(n);
    {
        const auto& last = lts.states[lts.edges[edges.back()].src];
        for (const auto& iv : last.box) points[n - 1].push_back(pick(iv));
    }
    std::vector<std::map<std::string, Rational>> disturbances;
    std::vector<Rational> noise;
    for (std::size_t i = n - 1; i-- > 0;) {
        const LtsEdge& edge = lts.edges[edges[i]];
        const Cause& cause = lts.causes[edges[i]];
        const AbstractState& src = lts.states[edge.src];
        const auto& after = points[i + 1];
        std::vector<Rational> before = after;
        if (edge.action.kind == Action::Kind::Tick) {
            std::map<std::string, Rational> gamma;
            for (std::size_t j = 0; j < after.size(); ++j) {
                Rational d = drift_under(plant, j, src.actuators);
                const Rational& w = plant.uncertainty[j];
                Interval pre = src.box[j].intersect(Interval(after[j] - d - w, after[j] - d + w));
                before[j] = pick(pre);
                gamma[plant.variables[j]] = after[j] - before[j] - d;
            }
            disturbances.push_back(std::move(gamma));
        } else if (cause.kind == Cause::Kind::SensRead) {
            auto si = plant.sensorIndex(cause.device);
            std::size_t vi = plant.sensorTarget[*si];
            Interval admissible = cause.sensed.intersect(Interval::around(after[vi], plant.sensorError[*si]));
            noise.push_back(pick(admissible) - after[vi]);
        }
        points[i] = std::move(before);
    }
    std::reverse(disturbances.begin(), disturbances.end());
    std::reverse(noise.begin(), noise.end());
    if (points.front() != m.env.state())
        throw ConcretizationFailed("backward point selection does not reach the initial state");

    // Replay, fixing which of several matching steps realises each abstract edge.
    TraceSearchResult result;
    result.tickDisturbances = disturbances;
    result.sensorNoise = noise;
    {
        Scripted resolver(disturbances, noise);
        Cps cur = m;
        for (std::size_t i = 0; i < n; ++i) {
            const LtsEdge& edge = lts.edges[edges[i]];
            auto steps = system_steps(cur, resolver, config.inputs);
            ActionSelector sel = ActionSelector::exactly(edge.action);
            std::size_t matching = 0;
            const SysStep* chosen = nullptr;
            for (const auto& s : steps) {
                if (!sel.matches(s.action)) continue;
                if (sameAbstractTarget(s, lts.states[edge.dst])) {
                    chosen = &s;
                    sel.choice = matching;
                    break;
                }
                ++matching;
            }
            if (!chosen)
                throw ConcretizationFailed("step " + std::to_string(i) + " (" + edge.action.str() +
                                           ") has no concrete counterpart");
            resolver.onStepTaken(*chosen);
            result.script.push_back(sel);
            cur = chosen->successor;
        }
    }
    Scripted replayResolver(disturbances, noise);
    RunResult replay = run_trace(m, result.script, replayResolver, config.inputs);
    if (replay.trace.records.empty() || !target.matches(replay.trace.records.back().action))
        throw ConcretizationFailed("replay does not end with the target action");
    result.trace = std::move(replay.trace);
    result.slot = result.trace.records.back().timeSlot;
    return result;
}

} // namespace ccps
