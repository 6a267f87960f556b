#include "ccps/cps.hpp"

namespace ccps {

std::optional<WellFormednessError> well_formed(const PhysicalEnv& env, const ProcPtr& proc)
{
    std::vector<std::string> sensors, actuators;
    for (const auto& s : sensors_read(proc))
        if (!env.plant().sensorIndex(s)) sensors.push_back(s);
    for (const auto& a : actuators_written(proc))
        if (!env.plant().actuatorIndex(a)) actuators.push_back(a);
    if (sensors.empty() && actuators.empty()) return std::nullopt;
    return WellFormednessError(std::move(sensors), std::move(actuators));
}

Cps make_cps(PhysicalEnv env, ProcPtr proc)
{
    if (!proc->isClosed()) {
        std::string names;
        for (const auto* set : {&proc->freeProcVars(), &proc->freeDataVars()})
            for (const auto& n : *set) names += (names.empty() ? "" : ", ") + n;
        throw TermError("process is not closed; free names: " + names);
    }
    if (auto err = well_formed(env, proc)) throw *err;
    return Cps{std::move(env), std::move(proc)};
}

bool same_system(const Cps& m, const Cps& n)
{
    return m.env == n.env && structurally_congruent(m.proc, n.proc);
}

bool non_interfering(const Cps& m, const Cps& n)
{
    return shared_names(m.env, n.env).empty();
}

bool non_interfering(const ProcPtr& p)
{
    return sensors_read(p).empty() && actuators_written(p).empty();
}

Cps uplus(const Cps& m, const Cps& o)
{
    return Cps{disjoint_union(m.env, o.env), par(m.proc, o.proc)};
}

Cps parallel(const Cps& m, const ProcPtr& q)
{
    if (!non_interfering(q))
        throw InterferenceViolation("the parallel process reads sensors or writes actuators");
    return Cps{m.env, par(m.proc, q)};
}

Cps restrict(const Cps& m, const std::string& channel)
{
    return Cps{m.env, restrict(m.proc, channel)};
}

} // namespace ccps
