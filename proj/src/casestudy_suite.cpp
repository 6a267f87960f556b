#include "ccps/analysis.hpp"
#include "ccps/casestudy.hpp"
#include "ccps/error.hpp"

#include <sstream>

namespace ccps {

Interval expected_turn_on(const EngineParams& p)
{
    return Interval(p.threshold - p.epsilon, p.threshold + p.epsilon + p.heatOff + p.delta, true, false);
}

Interval expected_turn_off(const EngineParams& p)
{
    Interval on = expected_turn_on(p);
    Rational k = p.coolTicks;
    return Interval(on.lo() + k * (p.heatOn - p.delta), on.hi() + k * (p.heatOn + p.delta), true, false);
}

SuiteConfig SuiteConfig::fromBase(const EngineParams& base)
{
    SuiteConfig c;
    c.eng = c.engBar = c.engHat = base;
    c.engBar.heatOn = EngineParams::reduced().heatOn;
    c.engHat.heatOn = EngineParams::weak().heatOn;
    return c;
}

bool SuiteReport::allPassed() const
{
    for (const auto& e : entries)
        if (!e.passed) return false;
    return true;
}

std::string SuiteReport::str() const
{
    std::ostringstream out;
    for (const auto& e : entries) {
        out << (e.passed ? "PASS " : "FAIL ") << e.name << '\n';
        for (const auto& d : e.details) out << "  " << d << '\n';
    }
    return out.str();
}

namespace {

std::string verdictText(const BisimVerdict& v)
{
    return v.bisimilar ? "bisimilar" : "not bisimilar";
}

/// Collects failures of a check into an entry.
struct EntryBuilder {
    SuiteEntry entry;

    explicit EntryBuilder(std::string name) { entry.name = std::move(name); entry.passed = true; }
    void expect(bool ok, const std::string& what)
    {
        entry.details.push_back(std::string(ok ? "ok: " : "failed: ") + what);
        entry.passed = entry.passed && ok;
    }
    void note(const std::string& what) { entry.details.push_back(what); }
};

void safetyCheck(const std::string& name, const Cps& m, const SuiteConfig& config, SuiteReport& report)
{
    EntryBuilder b(name);
    FiniteLts lts = build_abstract_lts(m);
    auto succ = lts.successors();
    std::size_t terminal = 0;
    for (std::size_t s = 0; s < lts.numStates; ++s)
        if (succ[s].empty() && !lts.states[s].deadlock) ++terminal;
    bool deadlockReached = false;
    for (const auto& e : lts.edges)
        if (lts.deadlock && e.dst == *lts.deadlock) deadlockReached = true;
    std::size_t outs = lts.countEdges(Action::Kind::Out) + lts.countEdges(Action::Kind::In);
    b.note(std::to_string(lts.numStates) + " abstract states, " + std::to_string(lts.edges.size()) + " edges");
    b.expect(outs == 0, "only tau and tick actions (" + std::to_string(outs) + " visible edges)");
    b.expect(!deadlockReached, "no deadlock state");
    b.expect(terminal == 0, "every state has a successor");
    if (outs > 0) {
        auto trace = find_trace_to(m, ActionSelector::parse("out warning"), config.traceBound);
        if (trace) b.note("warning emitted in time slot " + std::to_string(trace->slot) + " of a concrete run");
    }
    report.entries.push_back(std::move(b.entry));
}

void envelopeCheck(EntryBuilder& b, const FiniteLts& lts, const std::string& variable, const std::string& query,
                   const Interval& expected)
{
    try {
        auto env = reach_envelope(lts, LocationQuery::parse(query));
        const Interval& got = env.at(variable);
        b.expect(got == expected, query + ": " + variable + " in " + got.str() + ", expected " + expected.str());
    } catch (const Error& e) {
        b.expect(false, query + ": " + e.what());
    }
}

} // namespace

SuiteReport proposition_suite(const SuiteConfig& config)
{
    SuiteReport report;
    Cps eng = build_engine(config.eng);
    Cps engBar = build_engine(config.engBar);
    Cps engHat = build_engine(config.engHat);

    safetyCheck("eng-safety", eng, config, report);

    FiniteLts absEng = build_abstract_lts(eng);
    FiniteLts absBar = build_abstract_lts(engBar);
    {
        EntryBuilder b("eng-envelopes");
        envelopeCheck(b, absEng, config.eng.temp(), "turn_on", expected_turn_on(config.eng));
        envelopeCheck(b, absEng, config.eng.temp(), "turn_off", expected_turn_off(config.eng));
        report.entries.push_back(std::move(b.entry));
    }
    {
        EntryBuilder b("eng-vs-eng-bar");
        auto v = weak_bisim(absEng, absBar);
        b.expect(v.bisimilar, "weak bisimulation: " + verdictText(v));
        envelopeCheck(b, absBar, config.engBar.temp(),
                      "ticks_after(turn_on)=" + std::to_string(config.engBar.coolTicks),
                      expected_turn_off(config.engBar));
        report.entries.push_back(std::move(b.entry));
    }
    {
        EntryBuilder b("eng-vs-eng-hat");
        FiniteLts absHat = build_abstract_lts(engHat);
        auto v = weak_bisim(absEng, absHat);
        b.expect(!v.bisimilar, "weak bisimulation: " + verdictText(v));
        if (v.witness) {
            b.expect(witness_valid(absEng, absHat, *v.witness), "distinguishing formula " + v.witness->formula->str());
        }
        try {
            auto found = find_trace_to(engHat, ActionSelector::parse("out warning"), config.traceBound);
            if (!found) {
                b.expect(false, "no warning within " + std::to_string(config.traceBound) + " time slots");
            } else {
                Scripted replayResolver(found->tickDisturbances, found->sensorNoise);
                RunResult replay = run_trace(engHat, found->script, replayResolver);
                const auto& last = replay.trace.records.back();
                bool warning = last.action.kind == Action::Kind::Out && last.action.channel == "warning" &&
                               last.action.value == Value(Name{config.engHat.engineId});
                b.expect(warning && found->slot <= config.traceBound,
                         "replayed run emits " + last.action.str() + " in time slot " + std::to_string(found->slot));
            }
        } catch (const Error& e) {
            b.expect(false, std::string("trace search: ") + e.what());
        }
        report.entries.push_back(std::move(b.entry));
    }
    {
        EntryBuilder b("airplane-congruence");
        EngineParams l = config.eng.renamed("_l", "L"), r = config.eng.renamed("_r", "R");
        EngineParams lBar = config.engBar.renamed("_l", "L"), rBar = config.engBar.renamed("_r", "R");
        Cps engL = build_engine(l), engR = build_engine(r);
        Cps barL = build_engine(lBar), barR = build_engine(rBar);
        try {
            auto step = [&](const Cps& m, const Cps& n, const CongruenceContext& ctx) {
                auto rep = check_congruence_instance(m, n, ctx);
                b.expect(rep.component.bisimilar && rep.composite.bisimilar,
                         ctx.str() + ": component " + verdictText(rep.component) + ", composite " +
                             verdictText(rep.composite));
            };
            step(engL, barL, CongruenceContext::uplusWith(engR));
            step(engR, barR, CongruenceContext::uplusAfter(barL));
            Cps pair = uplus(engL, engR), pairBar = uplus(barL, barR);
            step(pair, pairBar, CongruenceContext::parallelWith(build_check("L", "R")));
            step(parallel(pair, build_check("L", "R")), parallel(pairBar, build_check("L", "R")),
                 CongruenceContext::restrictOn("warning"));
            auto direct = weak_bisim(build_abstract_lts(build_airplane(config.eng)),
                                     build_abstract_lts(build_airplane(config.engBar)));
            b.expect(direct.bisimilar, "direct check of the composed systems: " + verdictText(direct));
        } catch (const Error& e) {
            b.expect(false, e.what());
        }
        report.entries.push_back(std::move(b.entry));
    }
    if (config.timeSamples > 0) {
        EntryBuilder b("time-properties");
        std::vector<std::pair<std::string, Cps>> models = {{"eng", eng},
                                                           {"eng-bar", engBar},
                                                           {"eng-hat", engHat},
                                                           {"airplane", build_airplane(config.eng)}};
        TimeCheckConfig tc;
        tc.depth = config.timeDepth;
        tc.samples = config.timeSamples;
        tc.seed = config.seed;
        for (const auto& [name, m] : models) {
            TimeReport t = check_time_properties(m, tc);
            std::string what = name + ": bound " + (t.bound ? std::to_string(*t.bound) : std::string("none")) +
                               ", " + std::to_string(t.violations.size()) + " violations";
            if (!t.violations.empty()) what += " (" + t.violations.front().property + ")";
            b.expect(t.ok(), what);
        }
        report.entries.push_back(std::move(b.entry));
    }
    return report;
}

} // namespace ccps
