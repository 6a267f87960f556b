#pragma once

// Seeded random instances for property tests.

#include "ccps/abstraction.hpp"
#include "ccps/cps.hpp"

#include <random>
#include <string>
#include <vector>

namespace gen {

using namespace ccps;

inline std::size_t below(std::mt19937_64& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool coin(std::mt19937_64& rng, double p = 0.5)
{
    return std::bernoulli_distribution(p)(rng);
}

/// Random LTS with at most `maxStates` states over the first `numActions`
/// of tau, out(a), out(b), tick.
inline FiniteLts randomLts(std::mt19937_64& rng, std::size_t maxStates = 7, std::size_t numActions = 3)
{
    static const std::vector<Action> alphabet = {Action::tau(), Action::out("a"), Action::out("b"), Action::tick()};
    FiniteLts l;
    l.numStates = 1 + below(rng, maxStates);
    l.initial = below(rng, l.numStates);
    std::size_t edges = below(rng, 2 * l.numStates + 1);
    for (std::size_t i = 0; i < edges; ++i) {
        LtsEdge e{below(rng, l.numStates), alphabet[below(rng, numActions)], below(rng, l.numStates)};
        bool duplicate = false;
        for (const auto& f : l.edges) duplicate = duplicate || f == e;
        if (!duplicate) l.edges.push_back(e);
    }
    return l;
}

/// A variant of `l` with states permuted, some edges split by an inserted
/// tau step and occasionally one edge redirected.
inline FiniteLts perturbedCopy(std::mt19937_64& rng, const FiniteLts& l, std::size_t maxStates = 7)
{
    std::vector<std::size_t> perm(l.numStates);
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    FiniteLts c;
    c.numStates = l.numStates;
    c.initial = perm[l.initial];
    for (const auto& e : l.edges) {
        if (c.numStates < maxStates && coin(rng, 0.2)) {
            std::size_t mid = c.numStates++;
            c.edges.push_back({perm[e.src], Action::tau(), mid});
            c.edges.push_back({mid, e.action, perm[e.dst]});
        } else {
            c.edges.push_back({perm[e.src], e.action, perm[e.dst]});
        }
    }
    if (!c.edges.empty() && coin(rng, 0.3)) {
        auto& e = c.edges[below(rng, c.edges.size())];
        e.dst = below(rng, c.numStates);
    }
    return c;
}

struct ModelShape {
    bool withActuator = true;
    std::size_t components = 2;
    std::size_t depth = 4;
};

/// Process generator over one sensor `s`, one actuator `a` and channels c, d.
/// Recursion variables only occur time-guarded and sensed values only reach guards.
class ProcessGen {
public:
    explicit ProcessGen(std::mt19937_64& rng, bool withDevices) : rng_(rng), devices_(withDevices) {}

    ProcPtr component()
    {
        return fix("X", body(depth_, false));
    }

    std::size_t depth_ = 4;

private:
    ProcPtr body(std::size_t depth, bool guarded)
    {
        if (depth == 0) return leaf(guarded);
        std::size_t choice = below(rng_, devices_ ? 7 : 5);
        switch (choice) {
        case 0: return tick(body(depth - 1, true));
        case 1: {
            Prefix p = coin(rng_) ? Prefix::send(channel(), literal()) : Prefix::signal(channel());
            return prefixed(p, body(depth - 1, guarded));
        }
        case 2: {
            std::string var = "v" + std::to_string(depth);
            Prefix p = coin(rng_) ? Prefix::receive(channel(), var) : Prefix::await(channel());
            ProcPtr cont = body(depth - 1, guarded);
            if (p.binds() && coin(rng_)) {
                auto g = BoolExpr::cmp(CmpOp::Eq, Expr::var(var), Expr::literal(Value(1)));
                cont = ite(g, cont, body(depth - 1, guarded));
            }
            return timeout(p, cont, body(depth - 1, true));
        }
        case 3: return timeout(Prefix::signal(channel()), body(depth - 1, guarded), body(depth - 1, true));
        case 4: return leaf(guarded);
        case 5: {
            std::string var = "x" + std::to_string(depth);
            Rational threshold = Rational(static_cast<long>(below(rng_, 7)) - 1);
            auto g = BoolExpr::cmp(coin(rng_) ? CmpOp::Gt : CmpOp::Le, Expr::var(var), Expr::literal(Value(threshold)));
            return prefixed(Prefix::read(var, "s"), ite(g, body(depth - 1, guarded), body(depth - 1, guarded)));
        }
        default:
            return prefixed(Prefix::write(Expr::literal(coin(rng_) ? on() : off()), "a"), body(depth - 1, guarded));
        }
    }

    ProcPtr leaf(bool guarded)
    {
        if (guarded && coin(rng_, 0.8)) return pvar("X");
        return coin(rng_, 0.7) ? tick(pvar("X")) : nil();
    }

    std::string channel() { return coin(rng_) ? "c" : "d"; }
    ExprPtr literal() { return Expr::literal(Value(static_cast<int>(below(rng_, 2)))); }

    std::mt19937_64& rng_;
    bool devices_;
};

/// A closed, well-formed system: one variable x with drift +1, or -1 while
/// actuator a is on, a sensor s on x and a parallel composition of components.
inline Cps randomModel(std::mt19937_64& rng, const ModelShape& shape = {})
{
    VariableDecl x;
    x.initial = Rational(static_cast<long>(below(rng, 5)));
    x.uncertainty = Rational(static_cast<long>(below(rng, 3)), 4);
    if (shape.withActuator) x.dynamics.rows.push_back(DriftTable::Row{{{"a", on()}}, -1});
    x.dynamics.fallback = 1;
    x.invariant = Interval(-Rational(static_cast<long>(5 + below(rng, 20))), Rational(static_cast<long>(5 + below(rng, 20))));
    PhysicalEnv env = shape.withActuator
                          ? PhysicalEnv::make({{"x", x}}, {{"a", off()}}, {{"s", SensorDecl{"x", Rational(1, 10)}}})
                          : PhysicalEnv::make({{"x", x}}, {}, {});
    ProcessGen g(rng, shape.withActuator);
    g.depth_ = shape.depth;
    ProcPtr p = g.component();
    for (std::size_t i = 1; i < shape.components; ++i) p = par(p, g.component());
    if (coin(rng, 0.3)) p = restrict(p, "c");
    return make_cps(env, p);
}

} // namespace gen
