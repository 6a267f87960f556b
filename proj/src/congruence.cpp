#include "ccps/analysis.hpp"

#include "ccps/error.hpp"

namespace ccps {

CongruenceContext CongruenceContext::uplusWith(Cps o)
{
    CongruenceContext c;
    c.kind = Kind::UplusWith;
    c.other = std::move(o);
    return c;
}

CongruenceContext CongruenceContext::uplusAfter(Cps o)
{
    CongruenceContext c = uplusWith(std::move(o));
    c.otherFirst = true;
    return c;
}

CongruenceContext CongruenceContext::parallelWith(ProcPtr p)
{
    CongruenceContext c;
    c.kind = Kind::ParallelWith;
    c.process = std::move(p);
    return c;
}

CongruenceContext CongruenceContext::restrictOn(std::string channel)
{
    CongruenceContext c;
    c.kind = Kind::Restrict;
    c.channel = std::move(channel);
    return c;
}

Cps CongruenceContext::apply(const Cps& m) const
{
    switch (kind) {
    case Kind::UplusWith: return otherFirst ? uplus(*other, m) : uplus(m, *other);
    case Kind::ParallelWith: return parallel(m, process);
    case Kind::Restrict: return restrict(m, channel);
    }
    return m;
}

std::string CongruenceContext::str() const
{
    switch (kind) {
    case Kind::UplusWith: return otherFirst ? "O |+| [.]" : "[.] |+| O";
    case Kind::ParallelWith: return "[.] | P";
    case Kind::Restrict: return "[.] \\ " + channel;
    }
    return {};
}

namespace {

std::string joined(const std::vector<std::string>& names)
{
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
}

} // namespace

CongruenceReport check_congruence_instance(const Cps& m, const Cps& n, const CongruenceContext& context,
                                           const AbstractionConfig& config)
{
    if (context.kind == CongruenceContext::Kind::UplusWith) {
        if (!context.other) throw InterferenceViolation("the |+| context has no system");
        for (const Cps* side : {&m, &n}) {
            auto shared = shared_names(side->env, context.other->env);
            if (!shared.empty())
                throw InterferenceViolation("the composed plants share " + joined(shared));
        }
    } else if (context.kind == CongruenceContext::Kind::ParallelWith) {
        if (!context.process) throw InterferenceViolation("the parallel context has no process");
        if (!non_interfering(context.process))
            throw InterferenceViolation("the parallel process reads sensors or writes actuators");
    }
    CongruenceReport report;
    report.context = context.str();
    report.component = weak_bisim(build_abstract_lts(m, config), build_abstract_lts(n, config));
    report.composite =
        weak_bisim(build_abstract_lts(context.apply(m), config), build_abstract_lts(context.apply(n), config));
    report.violation = report.component.bisimilar && !report.composite.bisimilar;
    return report;
}

} // namespace ccps
