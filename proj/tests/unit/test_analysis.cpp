#include "ccps/analysis.hpp"
#include "ccps/casestudy.hpp"
#include "ccps/error.hpp"

#include "generators.hpp"

#include <doctest.h>

using namespace ccps;

TEST_CASE("congruence contexts")
{
    Cps eng = build_engine(EngineParams::standard());
    Cps bar = build_engine(EngineParams::reduced());

    SUBCASE("composition with an engine sharing device names is rejected")
    {
        CHECK_THROWS_AS(check_congruence_instance(eng, bar, CongruenceContext::uplusWith(eng)),
                        InterferenceViolation);
    }
    SUBCASE("a parallel process may not touch the devices")
    {
        ProcPtr meddler = prefixed(Prefix::write(Expr::literal(Value(on())), "cool"), nil());
        CHECK_THROWS_AS(CongruenceContext::parallelWith(meddler).apply(eng), InterferenceViolation);
    }
    SUBCASE("restriction preserves the verdict")
    {
        CongruenceReport r = check_congruence_instance(eng, bar, CongruenceContext::restrictOn("warning"));
        CHECK(r.component.bisimilar);
        CHECK(r.composite.bisimilar);
        CHECK_FALSE(r.violation);
        CHECK(r.context == "[.] \\ warning");
    }
    SUBCASE("the other engine may come first")
    {
        Cps right = build_engine(EngineParams::standard().renamed("_r", "R"));
        CongruenceContext before = CongruenceContext::uplusAfter(right);
        CHECK(before.str() == "O |+| [.]");
        CHECK(CongruenceContext::uplusWith(right).str() == "[.] |+| O");
        Cps left = build_engine(EngineParams::standard().renamed("_l", "L"));
        Cps composed = before.apply(left);
        std::string text = print(composed.proc);
        CHECK(text.find(print(right.proc)) < text.find(print(left.proc)));
        CHECK(composed.env.plant().variables.size() == 2);
    }
}

TEST_CASE("trace search reaches the warning of the weak engine")
{
    Cps hat = build_engine(EngineParams::weak());
    auto found = find_trace_to(hat, ActionSelector::parse("out warning"), 17);
    REQUIRE(found.has_value());
    CHECK(found->slot <= 17);
    CHECK(found->trace.records.back().action == Action::out("warning", Value(Name{"ID"})));
    CHECK(found->trace.records.back().timeSlot == found->slot);

    Scripted replay(found->tickDisturbances, found->sensorNoise);
    RunResult again = run_trace(hat, found->script, replay);
    CHECK(again.trace.records.size() == found->trace.records.size());
    CHECK(trace_to_csv(again.trace) == trace_to_csv(found->trace));

    CHECK_FALSE(find_trace_to(hat, ActionSelector::parse("out warning"), 3).has_value());
    CHECK_FALSE(find_trace_to(build_engine(EngineParams::standard()), ActionSelector::parse("out warning"), 40));
}

TEST_CASE("instantaneous bound")
{
    CHECK(instantaneous_bound(import_lts("states 2\ninitial 0\n0 tau 1\n1 tick 0\n")) == 1u);
    CHECK(instantaneous_bound(import_lts("states 3\ninitial 0\n0 tau 1\n1 out(a) 2\n2 tick 0\n")) == 2u);
    CHECK_FALSE(instantaneous_bound(import_lts("states 2\ninitial 0\n0 tau 1\n1 tau 0\n")).has_value());
    CHECK(instantaneous_bound(import_lts("states 1\ninitial 0\n0 tick 0\n")) == 0u);
}

TEST_CASE("timing properties of generated models")
{
    std::mt19937_64 rng(99);
    TimeCheckConfig config;
    config.depth = 12;
    config.samples = 20;
    for (int i = 0; i < 25; ++i) {
        gen::ModelShape shape;
        shape.withActuator = gen::coin(rng);
        shape.depth = 3;
        Cps m = gen::randomModel(rng, shape);
        config.seed = static_cast<std::uint64_t>(i);
        TimeReport r = check_time_properties(m, config);
        CAPTURE(print(m.proc));
        CAPTURE(r.toJson());
        CHECK(r.ok());
    }
}

TEST_CASE("seeded campaigns are reproducible")
{
    Cps eng = build_engine(EngineParams::standard());
    MonteCarloConfig config;
    config.runs = 8;
    config.horizon = 60;
    config.seed = 5;
    RunStats a = monte_carlo(eng, config);
    RunStats b = monte_carlo(eng, config);
    CHECK(a.toJson() == b.toJson());
    CHECK(a.toCsv() == b.toCsv());
    CHECK(a.rows.size() == 8);
    CHECK(a.deadlocks == 0);
    CHECK(a.warningsEmitted == 0);
    Interval on = expected_turn_on(EngineParams::standard());
    Interval off = expected_turn_off(EngineParams::standard());
    CHECK_FALSE(a.turnOnTemps.empty());
    for (const auto& t : a.turnOnTemps) CHECK(on.contains(t));
    for (const auto& t : a.turnOffTemps) CHECK(off.contains(t));
    REQUIRE(a.coolantOnFraction);
    CHECK(*a.coolantOnFraction > 0);
    CHECK(*a.coolantOnFraction < 1);

    config.seed = 6;
    CHECK(monte_carlo(eng, config).toCsv() != a.toCsv());
    CHECK(derive_seed(5, 0) != derive_seed(5, 1));
    CHECK(derive_seed(5, 0) == derive_seed(5, 0));

    std::string csv = a.toCsv();
    CHECK(csv.rfind("run,seed,ticks,activeTicks,turnOns,turnOffs,warnings,deadlocked\n", 0) == 0);
    CHECK(csv.find("\nsummary,") != std::string::npos);
}

TEST_CASE("step choice prefers instantaneous steps")
{
    Cps eng = build_engine(EngineParams::standard());
    ZeroNoise zero;
    std::mt19937_64 rng(1);
    auto steps = system_steps(eng, zero);
    const SysStep* s = choose_step(steps, rng);
    REQUIRE(s);
    CHECK(s->action.kind != Action::Kind::Tick);
    CHECK(choose_step({}, rng) == nullptr);
}

TEST_CASE("concrete runs embed into the abstraction")
{
    EmbeddingConfig config;
    config.runs = 60;
    config.horizon = 30;
    for (const auto& params : {EngineParams::standard(), EngineParams::weak()}) {
        Cps m = build_engine(params);
        EmbeddingReport r = check_embedding(m, build_abstract_lts(m), config);
        CHECK(r.ok());
        CHECK(r.runs == 60);
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 15; ++i) {
        Cps m = gen::randomModel(rng);
        config.seed = static_cast<std::uint64_t>(i);
        config.runs = 10;
        EmbeddingReport r = check_embedding(m, build_abstract_lts(m), config);
        CAPTURE(print(m.proc));
        CHECK(r.ok());
    }
    CHECK_THROWS_AS(check_embedding(build_engine(EngineParams::standard()), import_lts("states 1\ninitial 0\n")),
                    std::invalid_argument);
}
