#include "ccps/analysis.hpp"

#include <sstream>

namespace ccps {

namespace {

bool embeds(const Cps& c, const AbstractState& a)
{
    if (a.deadlock) return false;
    const auto& values = c.env.state();
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!a.box[i].contains(values[i])) return false;
    return true;
}

std::string where(std::size_t run, std::size_t step, const std::string& what)
{
    std::ostringstream out;
    out << "run " << run << ", step " << step << ": " << what;
    return out.str();
}

} // namespace

EmbeddingReport check_embedding(const Cps& m, const FiniteLts& lts, const EmbeddingConfig& config)
{
    if (lts.states.size() != lts.numStates)
        throw std::invalid_argument("check_embedding needs an LTS with state annotations");
    EmbeddingReport report;
    auto succ = lts.successors();
    std::string initialLocation = abstract_initial(m).location();
    for (std::size_t run = 0; run < config.runs; ++run) {
        ++report.runs;
        SeededSampler sampler(derive_seed(config.seed, run));
        Cps cur = m;
        std::size_t at = lts.initial;
        if (lts.states[at].location() != initialLocation || !embeds(cur, lts.states[at])) {
            report.failures.push_back(where(run, 0, "initial state outside the initial abstract state"));
            continue;
        }
        std::size_t ticks = 0;
        for (std::size_t step = 1; ticks < config.horizon; ++step) {
            auto steps = system_steps(cur, sampler, config.inputs);
            const SysStep* chosen = choose_step(steps, sampler.engine());
            if (!chosen) break;
            Cps next = chosen->successor;
            bool violated = !invariant_holds(next.env);
            std::string location = violated ? std::string() : abstract_initial(next).location();
            std::optional<std::size_t> target;
            for (std::size_t e : succ[at]) {
                const LtsEdge& edge = lts.edges[e];
                const AbstractState& t = lts.states[edge.dst];
                if (edge.action != chosen->action) continue;
                if (violated ? t.deadlock : (t.location() == location && embeds(next, t))) {
                    target = edge.dst;
                    break;
                }
            }
            ++report.steps;
            if (!target) {
                report.failures.push_back(where(run, step, chosen->action.str() + " from abstract state " +
                                                               std::to_string(at) + " has no matching edge"));
                break;
            }
            if (chosen->action.kind == Action::Kind::Tick) ++ticks;
            at = *target;
            cur = std::move(next);
            if (violated) break;
        }
    }
    return report;
}

} // namespace ccps
