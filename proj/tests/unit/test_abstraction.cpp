#include "ccps/abstraction.hpp"
#include "ccps/casestudy.hpp"
#include "ccps/error.hpp"

#include <doctest.h>

using namespace ccps;

namespace {

std::size_t deadlockEdges(const FiniteLts& lts)
{
    std::size_t n = 0;
    for (const auto& e : lts.edges)
        if (lts.deadlock && e.dst == *lts.deadlock) ++n;
    return n;
}

Interval envelope(const FiniteLts& lts, const std::string& query)
{
    return reach_envelope(lts, LocationQuery::parse(query)).at("temp");
}

} // namespace

TEST_CASE("hull abstraction of the engine")
{
    FiniteLts lts = build_abstract_lts(build_engine(EngineParams::standard()));
    CHECK(lts.numStates == 10);
    CHECK(lts.countEdges(Action::Kind::Out) == 0);
    CHECK(deadlockEdges(lts) == 0);
    CHECK(lts.widened);
    for (const auto& targets : lts.successors()) CHECK_FALSE(targets.empty());
    CHECK(lts.states[lts.initial].box[0].lo() == 0);
}

TEST_CASE("weaker cooling reaches a warning and the deadlock")
{
    FiniteLts lts = build_abstract_lts(build_engine(EngineParams::weak()));
    CHECK(lts.countEdges(Action::Kind::Out) == 1);
    CHECK(deadlockEdges(lts) > 0);
}

TEST_CASE("envelopes at switching points")
{
    FiniteLts eng = build_abstract_lts(build_engine(EngineParams::standard()));
    CHECK(envelope(eng, "turn_on").str() == "(9.9, 11.5]");
    CHECK(envelope(eng, "turn_off").str() == "(2.9, 8.5]");
    CHECK(envelope(eng, "ticks_after(turn_on)=5").str() == "(2.9, 8.5]");
    CHECK(envelope(eng, "turn_on(cool)").str() == "(9.9, 11.5]");

    FiniteLts bar = build_abstract_lts(build_engine(EngineParams::reduced()));
    CHECK(envelope(bar, "turn_off").str() == "(3.9, 9.5]");

    EngineParams calm = EngineParams::standard();
    calm.delta = 0;
    FiniteLts still = build_abstract_lts(build_engine(calm));
    CHECK(envelope(still, "turn_on") == expected_turn_on(calm));
    CHECK(envelope(still, "turn_off") == expected_turn_off(calm));
    CHECK(envelope(still, "turn_off").str() == "(4.9, 6.1]");
}

TEST_CASE("location queries")
{
    FiniteLts eng = build_abstract_lts(build_engine(EngineParams::standard()));
    CHECK_FALSE(LocationQuery::parse("cool=on").select(eng).empty());
    CHECK_FALSE(LocationQuery::parse("cool=on && last=tick").select(eng).empty());
    CHECK_FALSE(LocationQuery::parse("last=read st").select(eng).empty());
    CHECK(LocationQuery::parse("cool=on && cool=off").select(eng).empty());
    CHECK_THROWS_AS(reach_envelope(eng, LocationQuery::parse("cool=on && cool=off")), EmptySelection);
    CHECK_THROWS(LocationQuery::parse("bogus"));
    CHECK_THROWS(LocationQuery::parse("ticks_after(turn_on)=x"));
    CHECK(LocationQuery::parse("turn_on").text() == "turn_on");
}

TEST_CASE("reads split the box at guard thresholds")
{
    Cps eng = build_engine(EngineParams::standard());
    AbstractState s = abstract_initial(eng);
    s.box = {Interval(9, 11)};
    auto succ = abstract_successors(s, eng.env.plant());
    REQUIRE(succ.size() == 2);
    std::vector<std::string> boxes;
    for (const auto& st : succ) boxes.push_back(st.target.box[0].str());
    std::sort(boxes.begin(), boxes.end());
    CHECK(boxes == std::vector<std::string>{"(9.9, 11]", "[9, 10.1]"});
}

TEST_CASE("sensed values may only reach guards")
{
    VariableDecl x;

    PhysicalEnv env = PhysicalEnv::make({{"x", x}}, {}, {{"s", SensorDecl{"x", 1}}});
    ProcPtr leak = prefixed(Prefix::read("v", "s"), prefixed(Prefix::send("c", Expr::var("v")), nil()));
    CHECK_THROWS_AS(build_abstract_lts(make_cps(env, leak)), AbstractionError);
}

TEST_CASE("budgets and depth bounds")
{
    Cps eng = build_engine(EngineParams::standard());
    AbstractionConfig tiny;
    tiny.maxStates = 3;
    CHECK_THROWS_AS(build_abstract_lts(eng, tiny), StateBudgetExceeded);

    AbstractionConfig exact;
    exact.policy = WideningPolicy::Exact;
    exact.maxTicks = 8;
    FiniteLts lts = build_abstract_lts(eng, exact);
    CHECK(lts.truncated);
    CHECK_FALSE(lts.widened);
    for (std::size_t d : lts.tickDepth) CHECK(d <= 8);
}

TEST_CASE("line format round trip")
{
    FiniteLts lts = build_abstract_lts(build_engine(EngineParams::weak()));
    std::string text = export_lts(lts);
    FiniteLts back = import_lts(text);
    CHECK(back.numStates == lts.numStates);
    CHECK(back.initial == lts.initial);
    CHECK(back.edges == lts.edges);
    CHECK(export_lts(back) == text);
    CHECK(text.find("out(warning,ID)") != std::string::npos);

    CHECK_THROWS_AS(import_lts("states 2\ninitial 5\n"), std::invalid_argument);
    CHECK_THROWS_AS(import_lts("states 2\ninitial 0\n0 jump 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(import_lts("initial 0\n"), std::invalid_argument);
}
