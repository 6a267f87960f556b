#include "ccps/analysis.hpp"

#include <json.hpp>

#include <sstream>

namespace ccps {

std::uint64_t derive_seed(std::uint64_t seed, std::size_t index)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

const SysStep* choose_step(const std::vector<SysStep>& steps, std::mt19937_64& engine)
{
    const SysStep* tick = nullptr;
    std::size_t others = 0;
    for (const auto& s : steps) {
        if (s.action.kind == Action::Kind::Tick) tick = &s;
        else ++others;
    }
    if (others == 0) return tick;
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, others - 1)(engine);
    for (const auto& s : steps)
        if (s.action.kind != Action::Kind::Tick && k-- == 0) return &s;
    return tick;
}

RunStats monte_carlo(const Cps& m, const MonteCarloConfig& config)
{
    RunStats stats;
    stats.runs = config.runs;
    stats.horizon = config.horizon;
    const Plant& plant = m.env.plant();
    auto vi = plant.variableIndex(config.variable);
    auto ai = plant.actuatorIndex(config.actuator);
    std::size_t totalTicks = 0, activeTicks = 0;
    Rational effort = 0;

    for (std::size_t run = 0; run < config.runs; ++run) {
        RunRow row;
        row.run = run;
        row.seed = derive_seed(config.seed, run);
        SeededSampler sampler(row.seed, config.grid);
        Cps cur = m;
        while (row.ticks < config.horizon) {
            auto steps = system_steps(cur, sampler, config.inputs);
            if (steps.empty()) {
                row.deadlocked = true;
                break;
            }
            const SysStep* chosen = choose_step(steps, sampler.engine());
            const Cause& cause = chosen->cause;
            if (ai && vi && cause.kind == Cause::Kind::ActWrite && cause.device == config.actuator) {
                const Value& before = cur.env.actuators()[*ai];
                if (before != cause.value) {
                    if (cause.value == on()) {
                        ++row.turnOns;
                        stats.turnOnTemps.push_back(cur.env.state()[*vi]);
                    } else if (cause.value == off()) {
                        ++row.turnOffs;
                        stats.turnOffTemps.push_back(cur.env.state()[*vi]);
                    }
                }
            }
            if (chosen->action.kind == Action::Kind::Out &&
                (config.warningChannel.empty() || chosen->action.channel == config.warningChannel))
                ++row.warnings;
            if (chosen->action.kind == Action::Kind::Tick) {
                ++row.ticks;
                if (ai && cur.env.actuators()[*ai] == on()) {
                    ++row.activeTicks;
                    if (vi) effort += abs(cur.env.drift(*vi));
                }
            }
            cur = chosen->successor;
        }
        totalTicks += row.ticks;
        activeTicks += row.activeTicks;
        stats.warningsEmitted += row.warnings;
        if (row.deadlocked) ++stats.deadlocks;
        stats.rows.push_back(row);
    }
    if (totalTicks > 0) {
        stats.coolantOnFraction = Rational(activeTicks, totalTicks);
        stats.coolantEffort = effort / totalTicks;
    }
    return stats;
}

namespace {

nlohmann::ordered_json rationals(const std::vector<Rational>& values)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& v : values) out.push_back(to_string(v));
    return out;
}

} // namespace

std::string RunStats::toJson(int indent) const
{
    nlohmann::ordered_json j;
    j["runs"] = runs;
    j["horizon"] = horizon;
    j["turnOnTemps"] = rationals(turnOnTemps);
    j["turnOffTemps"] = rationals(turnOffTemps);
    j["coolantOnFraction"] = coolantOnFraction ? nlohmann::ordered_json(to_double(*coolantOnFraction))
                                               : nlohmann::ordered_json(nullptr);
    j["coolantOnFractionExact"] = coolantOnFraction ? nlohmann::ordered_json(to_string(*coolantOnFraction))
                                                    : nlohmann::ordered_json(nullptr);
    j["coolantEffort"] =
        coolantEffort ? nlohmann::ordered_json(to_double(*coolantEffort)) : nlohmann::ordered_json(nullptr);
    j["warningsEmitted"] = warningsEmitted;
    j["deadlocks"] = deadlocks;
    return j.dump(indent);
}

std::string RunStats::toCsv() const
{
    std::ostringstream out;
    out << "run,seed,ticks,activeTicks,turnOns,turnOffs,warnings,deadlocked\n";
    std::size_t ticks = 0, active = 0, ons = 0, offs = 0;
    for (const auto& r : rows) {
        out << r.run << ',' << r.seed << ',' << r.ticks << ',' << r.activeTicks << ',' << r.turnOns << ','
            << r.turnOffs << ',' << r.warnings << ',' << (r.deadlocked ? 1 : 0) << '\n';
        ticks += r.ticks;
        active += r.activeTicks;
        ons += r.turnOns;
        offs += r.turnOffs;
    }
    out << "summary,," << ticks << ',' << active << ',' << ons << ',' << offs << ',' << warningsEmitted << ','
        << deadlocks << '\n';
    return out.str();
}

} // namespace ccps
