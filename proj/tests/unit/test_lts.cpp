#include "ccps/casestudy.hpp"
#include "ccps/error.hpp"
#include "ccps/lts.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ccps;

namespace {

ProcPtr out(const std::string& c, ProcPtr p) { return prefixed(Prefix::signal(c), std::move(p)); }
ProcPtr in(const std::string& c, ProcPtr p) { return prefixed(Prefix::await(c), std::move(p)); }

std::size_t count(const std::vector<ProcStep>& steps, ProcStep::Kind kind)
{
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [&](const ProcStep& s) { return s.kind == kind; }));
}

Cps inert(ProcPtr p)
{
    VariableDecl x;
    x.invariant = Interval(-5, 5);
    return make_cps(PhysicalEnv::make({{"x", x}}, {}, {}), std::move(p));
}

} // namespace

TEST_CASE("process rules")
{
    SUBCASE("nil and tick idle")
    {
        auto s = process_steps(nil());
        REQUIRE(s.size() == 1);
        CHECK(s[0].kind == ProcStep::Kind::Tick);
        CHECK(process_steps(tick(out("c", nil())))[0].target->kind() == Process::Kind::Fix);
    }
    SUBCASE("timeout fires its prefix or yields after a tick")
    {
        ProcPtr p = timeout(Prefix::signal("c"), nil(), tick(nil()));
        auto s = process_steps(p);
        CHECK(count(s, ProcStep::Kind::Out) == 1);
        REQUIRE(count(s, ProcStep::Kind::Tick) == 1);
        for (const auto& st : s)
            if (st.kind == ProcStep::Kind::Tick) CHECK(print(st.target) == "tick.nil");
    }
    SUBCASE("a pending prefix waits")
    {
        ProcPtr p = out("c", nil());
        for (const auto& st : process_steps(p))
            if (st.kind == ProcStep::Kind::Tick) CHECK(structurally_congruent(st.target, p));
    }
    SUBCASE("communication and maximal progress")
    {
        ProcPtr p = par(out("c", nil()), in("c", tick(nil())));
        auto s = process_steps(p);
        CHECK(count(s, ProcStep::Kind::Tau) == 1);
        CHECK(count(s, ProcStep::Kind::Tick) == 0);
    }
    SUBCASE("value passing substitutes the payload")
    {
        ProcPtr rx = prefixed(Prefix::receive("c", "v"), prefixed(Prefix::send("d", Expr::var("v")), nil()));
        ProcPtr p = par(prefixed(Prefix::send("c", Expr::literal(Value(7))), nil()), rx);
        auto s = process_steps(p);
        REQUIRE(count(s, ProcStep::Kind::Tau) == 1);
        for (const auto& st : s)
            if (st.kind == ProcStep::Kind::Tau) CHECK(print(st.target).find("out d<7>") != std::string::npos);
    }
    SUBCASE("a pure receive ignores payloads")
    {
        ProcPtr p = par(prefixed(Prefix::send("c", Expr::literal(Value(1))), nil()), in("c", nil()));
        CHECK(count(process_steps(p), ProcStep::Kind::Tau) == 0);
    }
    SUBCASE("restriction hides channels")
    {
        ProcPtr p = restrict(out("c", nil()), "c");
        CHECK(count(process_steps(p), ProcStep::Kind::Out) == 0);
        CHECK(count(process_steps(restrict(par(out("c", nil()), in("c", nil())), "c")), ProcStep::Kind::Tau) == 1);
    }
    SUBCASE("reads and writes")
    {
        auto s = process_steps(prefixed(Prefix::read("x", "st"), nil()));
        CHECK(count(s, ProcStep::Kind::Read) == 1);
        CHECK(count(s, ProcStep::Kind::Tick) == 1);
        auto w = process_steps(prefixed(Prefix::write(Expr::literal(on()), "cool"), nil()));
        REQUIRE(count(w, ProcStep::Kind::Write) == 1);
    }
}

TEST_CASE("system rules")
{
    Cps eng = build_engine(EngineParams::standard());
    ZeroNoise zero;
    auto steps = system_steps(eng, zero);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].action == Action::tau());
    CHECK(steps[0].cause.kind == Cause::Kind::SensRead);
    CHECK(steps[0].cause.device == "st");
    CHECK(steps[0].cause.value == Value(0));
    CHECK(steps[0].resolution.sensed->second == 0);

    auto after = system_steps(steps[0].successor, zero);
    REQUIRE(after.size() == 1);
    CHECK(after[0].action == Action::tick());
    CHECK(after[0].successor.env.stateOf("temp") == 1);

    SUBCASE("the invariant blocks every step")
    {
        Cps hot{eng.env.withState({31}), eng.proc};
        CHECK(system_steps(hot, zero).empty());
    }
    SUBCASE("resolvers must stay inside the offered intervals")
    {
        Adversarial wild([](const PhysicalEnv&, const std::string&, const Interval&) { return Rational(100); },
                         [](const PhysicalEnv&, const std::vector<Interval>& b) { return std::vector<Rational>(b.size(), 100); });
        CHECK_THROWS_AS(system_steps(eng, wild), ResolverOutOfRange);
    }
    SUBCASE("inputs come from the alphabet")
    {
        Cps rx = inert(prefixed(Prefix::receive("c", "v"), nil()));
        CHECK(system_steps(rx, zero).size() == 1);
        auto with = system_steps(rx, zero, {{"c", Value(1)}, {"c", Value(2)}});
        CHECK(with.size() == 3);
    }
}

TEST_CASE("seeded sampling is reproducible and stays in range")
{
    SeededSampler a(9), b(9);
    Interval r(0, 1, true, true);
    for (int i = 0; i < 50; ++i) {
        Rational x = a.sample(r);
        CHECK(x == b.sample(r));
        CHECK(r.contains(x));
    }
}

TEST_CASE("scripted runs")
{
    Cps eng = build_engine(EngineParams::weak());
    Scripted resolver({{{"temp", Rational(1, 10)}}, {{"temp", Rational(-1, 10)}}}, {Rational(1, 20)});
    std::vector<ActionSelector> script = {ActionSelector::parse("tau"), ActionSelector::parse("tick"),
                                          ActionSelector::parse("tau"), ActionSelector::parse("tick")};
    RunResult r = run_trace(eng, script, resolver);
    REQUIRE(r.trace.records.size() == 4);
    CHECK(r.trace.records[1].state[0] == Rational(11, 10));
    CHECK(r.trace.records[3].state[0] == 2);
    CHECK(r.trace.records[0].resolution.sensed->second == Rational(1, 20));
    CHECK(r.trace.ticks() == 2);
    CHECK(r.trace.records[3].timeSlot == 2);

    Scripted again({}, {});
    CHECK_THROWS_AS(run_trace(eng, {ActionSelector::parse("tick")}, again), StuckAt);
    try {
        Scripted third({}, {});
        run_trace(eng, {ActionSelector::parse("tau"), ActionSelector::parse("out warning")}, third);
    } catch (const StuckAt& e) {
        CHECK(e.index() == 1);
    }
}

TEST_CASE("actions and selectors")
{
    for (const char* text : {"tau", "tick", "out(warning,L)", "out(alarm)", "in(c,3)", "out(c,on)", "out(c,0.4)"})
        CHECK(parse_action(text).str() == text);
    CHECK(parse_action("out(warning,L)").value == Value(Name{"L"}));
    CHECK(parse_action("out(c,0.4)").value == Value(Rational(2, 5)));
    CHECK_THROWS(parse_action("jump"));

    ActionSelector s = ActionSelector::parse("out warning");
    CHECK(s.matches(Action::out("warning", Value(Name{"ID"}))));
    CHECK_FALSE(s.matches(Action::out("alarm")));
    CHECK(ActionSelector::parse("out(warning,L)").matches(Action::out("warning", Value(Name{"L"}))));
    CHECK_FALSE(ActionSelector::parse("out(warning,L)").matches(Action::out("warning", Value(Name{"R"}))));
    CHECK_THROWS(ActionSelector::parse("jump x"));
}

TEST_CASE("trace export")
{
    Cps eng = build_engine(EngineParams::standard());
    ZeroNoise zero;
    RunResult r = run_trace(eng, {ActionSelector::parse("tau"), ActionSelector::parse("tick")}, zero);
    std::string csv = trace_to_csv(r.trace);
    CHECK(csv.rfind("stepIndex,timeSlot,action,channel,value,perVariableState,actuatorValuation,"
                    "resolvedDisturbances\n",
                    0) == 0);
    CHECK(csv.find("1,1,tick,,,temp=1,cool=off,temp=0") != std::string::npos);
    std::string json = trace_to_json(r.trace);
    CHECK(json.find("\"perVariableState\"") != std::string::npos);
    CHECK(json.find("\"stepIndex\": 1") != std::string::npos);
}
