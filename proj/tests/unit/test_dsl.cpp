#include "ccps/casestudy.hpp"
#include "ccps/dsl.hpp"
#include "ccps/error.hpp"

#include "generators.hpp"

#include <doctest.h>

using namespace ccps;

namespace {

std::string modelPath(const std::string& name) { return std::string(CCPS_MODELS_DIR) + "/" + name + ".ccps"; }

const char* kHeader = R"(
vars { temp = 0, uncertainty 0.4, invariant [0, 30]; }
actuators { cool = off; }
sensors { st measures temp, error 0.1; }
dynamics { temp { when cool = on: -1; default: 1; } }
)";

ParseError parseFailure(const std::string& text)
{
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error");
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("model files match the built systems")
{
    CHECK(same_system(load_model(modelPath("eng")).system, build_engine(EngineParams::standard())));
    CHECK(same_system(load_model(modelPath("eng_bar")).system, build_engine(EngineParams::reduced())));
    CHECK(same_system(load_model(modelPath("eng_hat")).system, build_engine(EngineParams::weak())));
    CHECK(same_system(load_model(modelPath("airplane")).system, build_airplane(EngineParams::standard())));
    CHECK(same_system(load_model(modelPath("airplane_bar")).system, build_airplane(EngineParams::reduced())));
    CHECK_FALSE(same_system(load_model(modelPath("eng")).system, build_engine(EngineParams::weak())));
    CHECK_THROWS_AS(load_model(modelPath("missing")), Error);
}

TEST_CASE("printing and parsing round trip")
{
    for (const char* name : {"eng", "eng_hat", "airplane"}) {
        Model m = load_model(modelPath(name));
        std::string text = print_model(m);
        Model back = parse_model(text);
        CAPTURE(text);
        CHECK(same_model(m, back));
        CHECK(print_model(back) == text);
    }
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        gen::ModelShape shape;
        shape.withActuator = gen::coin(rng);
        Model m;
        m.system = gen::randomModel(rng, shape);
        std::string text = print_model(m);
        CAPTURE(text);
        Model back = parse_model(text);
        CHECK(same_system(m.system, back.system));
    }
}

TEST_CASE("process syntax")
{
    ProcPtr p = parse_process("fix X. tick^2.X");
    CHECK(structurally_congruent(p, fix("X", tick(tick(pvar("X"))))));
    CHECK(structurally_congruent(parse_process("nil | nil"), par(nil(), nil())));
    CHECK(structurally_congruent(parse_process("(out c<1>.nil) \\ c"),
                                 restrict(prefixed(Prefix::send("c", Expr::literal(Value(1))), nil()), "c")));
    CHECK(structurally_congruent(parse_process(print(p)), p));
    CHECK_THROWS_AS(parse_process("fix X. X"), ParseError);
    CHECK_THROWS_AS(parse_process("tick."), ParseError);
}

TEST_CASE("a system doing nothing only lets time pass")
{
    Model m = parse_model(std::string(kHeader) + "system nil;\n");
    FiniteLts lts = build_abstract_lts(m.system);
    CHECK(lts.countEdges(Action::Kind::Tau) == 0);
    CHECK(lts.countEdges(Action::Kind::Tick) == lts.edges.size());
    CHECK(m.systemName == "Main");
}

TEST_CASE("definitions are macros")
{
    Model m = parse_model(std::string(kHeader) +
                          "process Body = tick.X;\n"
                          "process Loop = fix X. out c<1>.Body;\n"
                          "inputs { c: 1; }\n"
                          "system Loop;\n");
    CHECK(structurally_congruent(
        m.system.proc,
        fix("X", prefixed(Prefix::send("c", Expr::literal(Value(1))), tick(pvar("X"))))));
    CHECK(m.systemName == "Loop");
    CHECK(m.definitions.size() == 2);
    CHECK(m.inputs == InputAlphabet{{"c", Value(1)}});
}

TEST_CASE("errors carry positions")
{
    ParseError e = parseFailure(std::string(kHeader) + "system fix X. X;\n");
    CHECK(e.line() == 6);
    CHECK(e.column() == 8);

    e = parseFailure("vars { temp = ; }\n");
    CHECK(e.line() == 1);
    CHECK(e.column() == 15);
    CHECK_FALSE(e.expected().empty());

    e = parseFailure(std::string(kHeader) + "system Ghost;\n");
    CHECK(std::string(e.what()).find("Ghost") != std::string::npos);

    e = parseFailure(std::string(kHeader) + "process A = tick.A;\nsystem A;\n");
    CHECK(e.line() == 6);

    CHECK_THROWS_AS(parse_model(std::string(kHeader) + "system write on(fan).nil;\n"), WellFormednessError);
}
