#pragma once

// Independent reference implementations used to cross-check the library.

#include "ccps/abstraction.hpp"

#include <set>
#include <vector>

namespace oracle {

using ccps::Action;
using ccps::FiniteLts;

/// States reachable through zero or more tau edges, per state.
inline std::vector<std::set<std::size_t>> tauClosure(std::size_t n, const std::vector<ccps::LtsEdge>& edges)
{
    std::vector<std::set<std::size_t>> closure(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        closure[s].insert(s);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (const auto& e : edges)
                if (e.src == u && e.action.kind == Action::Kind::Tau && closure[s].insert(e.dst).second)
                    stack.push_back(e.dst);
        }
    }
    return closure;
}

/// Naive greatest fixpoint: start from all pairs of the disjoint union and
/// delete pairs whose strong moves cannot be answered by weak moves until
/// nothing changes. Returns whether the two initial states remain related.
inline bool naiveWeakBisimilar(const FiniteLts& a, const FiniteLts& b)
{
    const std::size_t n = a.numStates + b.numStates;
    std::vector<ccps::LtsEdge> edges = a.edges;
    for (auto e : b.edges) {
        e.src += a.numStates;
        e.dst += a.numStates;
        edges.push_back(e);
    }
    auto closure = tauClosure(n, edges);

    // weak(s, act): states reachable by tau* act tau*, or tau* when act is tau.
    auto weak = [&](std::size_t s, const Action& act) {
        std::set<std::size_t> out;
        if (act.kind == Action::Kind::Tau) return closure[s];
        for (std::size_t m : closure[s])
            for (const auto& e : edges)
                if (e.src == m && e.action == act) out.insert(closure[e.dst].begin(), closure[e.dst].end());
        return out;
    };

    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                if (!rel[p][q]) continue;
                bool ok = true;
                for (int dir = 0; dir < 2 && ok; ++dir) {
                    std::size_t x = dir == 0 ? p : q, y = dir == 0 ? q : p;
                    for (const auto& e : edges) {
                        if (e.src != x) continue;
                        bool matched = false;
                        for (std::size_t y2 : weak(y, e.action)) {
                            bool related = dir == 0 ? rel[e.dst][y2] : rel[y2][e.dst];
                            if (related) {
                                matched = true;
                                break;
                            }
                        }
                        if (!matched) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) {
                    rel[p][q] = false;
                    changed = true;
                }
            }
        }
    }
    return rel[a.initial][a.numStates + b.initial];
}

} // namespace oracle
