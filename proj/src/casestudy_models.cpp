#include "ccps/casestudy.hpp"

namespace ccps {

EngineParams EngineParams::standard()
{
    return EngineParams{};
}

EngineParams EngineParams::reduced()
{
    EngineParams p;
    p.heatOn = Rational(-4, 5);
    return p;
}

EngineParams EngineParams::weak()
{
    EngineParams p;
    p.heatOn = Rational(-7, 10);
    return p;
}

EngineParams EngineParams::renamed(std::string newSuffix, std::string id) const
{
    EngineParams p = *this;
    p.suffix = std::move(newSuffix);
    p.engineId = std::move(id);
    return p;
}

void EngineParams::validate() const
{
    if (delta < 0) throw Error("engine uncertainty must be non-negative");
    if (epsilon < 0) throw Error("engine sensor error must be non-negative");
    if (coolTicks < 1) throw Error("cooling must last at least one time unit");
}

PhysicalEnv build_engine_env(const EngineParams& params)
{
    params.validate();
    VariableDecl temp;
    temp.initial = params.initialTemp;
    temp.uncertainty = params.delta;
    temp.dynamics.rows.push_back(DriftTable::Row{{{params.cool(), on()}}, params.heatOn});
    temp.dynamics.fallback = params.heatOff;
    temp.invariant = params.invariantBox;
    return PhysicalEnv::make({{params.temp(), temp}}, {{params.cool(), off()}},
                             {{params.sensor(), SensorDecl{params.temp(), params.epsilon}}});
}

ProcPtr build_controller(const EngineParams& params)
{
    auto above = [&] {
        return BoolExpr::cmp(CmpOp::Gt, Expr::var("x"), Expr::literal(Value(params.threshold)));
    };
    auto read = [&](ProcPtr cont) { return prefixed(Prefix::read("x", params.sensor()), std::move(cont)); };

    ProcPtr warn = prefixed(Prefix::send("warning", Expr::literal(Value(Name{params.engineId}))), pvar("Y"));
    ProcPtr stop = prefixed(Prefix::write(Expr::literal(off()), params.cool()), tick(pvar("X")));
    ProcPtr loop = fix("Y", ticks(params.coolTicks, read(ite(above(), warn, stop))));
    ProcPtr cooling = prefixed(Prefix::write(Expr::literal(on()), params.cool()), loop);
    return fix("X", read(ite(above(), cooling, tick(pvar("X")))));
}

Cps build_engine(const EngineParams& params)
{
    return make_cps(build_engine_env(params), build_controller(params));
}

namespace {

ProcPtr checkStage(const std::string& id, unsigned i)
{
    const std::string var = i == 5 ? "z" : "y";
    auto differs = BoolExpr::cmp(CmpOp::Ne, Expr::var(var), Expr::literal(Value(Name{id})));
    ProcPtr alarm = prefixed(Prefix::signal("alarm"), tick(pvar("X")));
    auto failure = [&](ProcPtr cont) {
        return prefixed(Prefix::send("failure", Expr::literal(Value(Name{id}))), std::move(cont));
    };
    if (i == 5)
        return timeout(Prefix::receive("warning", var), ite(differs, alarm, failure(tick(pvar("X")))),
                       failure(pvar("X")));
    ProcPtr next = checkStage(id, i + 1);
    return timeout(Prefix::receive("warning", var), ite(differs, alarm, tick(next)), next);
}

} // namespace

ProcPtr build_check(const std::string& left, const std::string& right)
{
    auto isLeft = BoolExpr::cmp(CmpOp::Eq, Expr::var("x"), Expr::literal(Value(Name{left})));
    return fix("X", timeout(Prefix::receive("warning", "x"),
                            ite(isLeft, checkStage(left, 1), checkStage(right, 1)), pvar("X")));
}

Cps build_engine_pair(const EngineParams& variant)
{
    return uplus(build_engine(variant.renamed("_l", "L")), build_engine(variant.renamed("_r", "R")));
}

Cps build_airplane(const EngineParams& variant)
{
    Cps engines = build_engine_pair(variant);
    return make_cps(engines.env, restrict(par(engines.proc, build_check("L", "R")), "warning"));
}

} // namespace ccps
