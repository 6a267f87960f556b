#include "ccps/casestudy.hpp"
#include "ccps/cps.hpp"
#include "ccps/error.hpp"

#include <doctest.h>

using namespace ccps;

namespace {

PhysicalEnv tank(const std::string& suffix = "")
{
    VariableDecl level;
    level.initial = 5;
    level.uncertainty = Rational(1, 2);
    level.dynamics.rows.push_back(DriftTable::Row{{{"pump" + suffix, on()}}, -2});
    level.dynamics.fallback = 1;
    level.invariant = Interval(0, 10);
    return PhysicalEnv::make({{"level" + suffix, level}}, {{"pump" + suffix, off()}},
                             {{"gauge" + suffix, SensorDecl{"level" + suffix, Rational(1, 4)}}});
}

} // namespace

TEST_CASE("environment construction validates declarations")
{
    PhysicalEnv env = tank();
    CHECK(env.stateOf("level") == 5);
    CHECK(env.actuatorOf("pump") == off());
    CHECK_THROWS_AS(env.stateOf("nope"), UnknownDevice);
    CHECK_THROWS_AS(PhysicalEnv::make({}, {}, {{"s", SensorDecl{"ghost", 0}}}), Error);
    VariableDecl bad;
    bad.uncertainty = -1;
    CHECK_THROWS_AS(PhysicalEnv::make({{"x", bad}}, {}, {}), Error);
}

TEST_CASE("measurement, actuation and evolution")
{
    PhysicalEnv env = tank();
    CHECK(read_sensor(env, "gauge") == Interval(Rational(19, 4), Rational(21, 4)));
    CHECK_THROWS_AS(read_sensor(env, "ghost"), UnknownDevice);

    CHECK(next_envs(env).at("level") == Interval(Rational(11, 2), Rational(13, 2)));
    PhysicalEnv pumping = update_act(env, "pump", on());
    CHECK(pumping.drift(0) == -2);
    CHECK(next_box(pumping)[0] == Interval(Rational(5, 2), Rational(7, 2)));
    CHECK_THROWS_AS(update_act(env, "valve", on()), UnknownDevice);
}

TEST_CASE("invariant")
{
    PhysicalEnv env = tank();
    CHECK(invariant_holds(env));
    CHECK_FALSE(invariant_holds(env.withState({11})));
    CHECK(invariant_holds(env.withState({10})));
}

TEST_CASE("disjoint union of plants")
{
    PhysicalEnv u = disjoint_union(tank("_a"), tank("_b"));
    CHECK(u.plant().variables == std::vector<std::string>{"level_a", "level_b"});
    CHECK(shared_names(tank("_a"), tank("_b")).empty());
    CHECK(shared_names(tank(), tank()) == std::vector<std::string>{"gauge", "level", "pump"});
    CHECK_THROWS_AS(disjoint_union(tank(), tank()), NameClash);
}

TEST_CASE("well-formed systems")
{
    PhysicalEnv env = tank();
    ProcPtr good = fix("X", prefixed(Prefix::read("x", "gauge"), tick(pvar("X"))));
    CHECK_FALSE(well_formed(env, good).has_value());
    ProcPtr bad = prefixed(Prefix::read("x", "ghost"), prefixed(Prefix::write(Expr::literal(on()), "valve"), nil()));
    auto err = well_formed(env, bad);
    REQUIRE(err.has_value());
    CHECK(err->unknownSensors() == std::vector<std::string>{"ghost"});
    CHECK(err->unknownActuators() == std::vector<std::string>{"valve"});
    CHECK_THROWS_AS(make_cps(env, bad), WellFormednessError);
    CHECK_THROWS_AS(make_cps(env, pvar("X")), TermError);
}

TEST_CASE("composition operators")
{
    Cps a = make_cps(tank("_a"), nil());
    Cps b = make_cps(tank("_b"), tick(nil()));
    CHECK(non_interfering(a, b));
    CHECK_FALSE(non_interfering(a, a));
    Cps ab = uplus(a, b);
    CHECK(ab.env.plant().sensors.size() == 2);
    CHECK_THROWS_AS(uplus(a, a), NameClash);

    ProcPtr monitor = fix("X", timeout(Prefix::await("alarm"), tick(pvar("X")), pvar("X")));
    CHECK(non_interfering(monitor));
    CHECK_NOTHROW(parallel(a, monitor));
    ProcPtr writer = prefixed(Prefix::write(Expr::literal(on()), "pump_a"), nil());
    CHECK_FALSE(non_interfering(writer));
    CHECK_THROWS_AS(parallel(a, writer), InterferenceViolation);
    CHECK(print(restrict(ab, "c").proc) == "(nil | tick.nil) \\ c");
}

TEST_CASE("engine builders")
{
    Cps eng = build_engine(EngineParams::standard());
    CHECK(eng.env.plant().variables == std::vector<std::string>{"temp"});
    CHECK(eng.env.plant().uncertainty[0] == Rational(2, 5));
    CHECK(eng.env.plant().sensorError[0] == Rational(1, 10));
    CHECK(eng.env.driftUnder(0, {on()}) == -1);
    CHECK(build_engine(EngineParams::reduced()).env.driftUnder(0, {on()}) == Rational(-4, 5));
    CHECK(build_engine(EngineParams::weak()).env.driftUnder(0, {on()}) == Rational(-7, 10));

    Cps air = build_airplane(EngineParams::standard());
    CHECK(air.env.plant().variables == std::vector<std::string>{"temp_l", "temp_r"});
    CHECK(air.proc->kind() == Process::Kind::Restrict);
    CHECK(non_interfering(build_engine(EngineParams::standard().renamed("_l", "L")),
                          build_engine(EngineParams::standard().renamed("_r", "R"))));
    CHECK(non_interfering(build_check()));

    EngineParams bad;
    bad.coolTicks = 0;
    CHECK_THROWS_AS(build_engine(bad), Error);
}
