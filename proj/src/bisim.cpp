#include "ccps/analysis.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace ccps {

FormulaPtr Formula::truth()
{
    static const FormulaPtr t = std::make_shared<const Formula>();
    return t;
}

FormulaPtr Formula::negate(FormulaPtr f)
{
    if (f->kind() == Kind::Not) return f->parts().front();
    auto out = std::make_shared<Formula>();
    out->kind_ = Kind::Not;
    out->parts_.push_back(std::move(f));
    return out;
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> parts)
{
    std::vector<FormulaPtr> kept;
    std::set<std::string> seen;
    for (auto& p : parts) {
        if (p->kind() == Kind::True) continue;
        if (seen.insert(p->str()).second) kept.push_back(std::move(p));
    }
    if (kept.empty()) return truth();
    if (kept.size() == 1) return kept.front();
    auto out = std::make_shared<Formula>();
    out->kind_ = Kind::And;
    out->parts_ = std::move(kept);
    return out;
}

FormulaPtr Formula::diamond(Action a, FormulaPtr f)
{
    auto out = std::make_shared<Formula>();
    out->kind_ = Kind::Diamond;
    out->action_ = std::move(a);
    out->parts_.push_back(std::move(f));
    return out;
}

std::size_t Formula::depth() const
{
    std::size_t d = 0;
    for (const auto& p : parts_) d = std::max(d, p->depth());
    return d + (kind_ == Kind::Diamond ? 1 : 0);
}

std::string Formula::str() const
{
    switch (kind_) {
    case Kind::True: return "tt";
    case Kind::Not: return "!" + parts_.front()->str();
    case Kind::Diamond: return "<" + action_.str() + ">" + parts_.front()->str();
    case Kind::And: {
        std::string out = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? " & " : "") + parts_[i]->str();
        return out + ")";
    }
    }
    return {};
}

namespace {

/// Weak transitions of an LTS: s =a=> t, with tau meaning zero or more taus.
class Saturation {
public:
    Saturation(std::size_t n, const std::vector<LtsEdge>& edges) : n_(n)
    {
        tauOut_.resize(n);
        visOut_.resize(n);
        addEdges(edges, 0);
    }

    void addEdges(const std::vector<LtsEdge>& edges, std::size_t offset)
    {
        std::map<std::string, int> ids;
        for (std::size_t i = 0; i < actions_.size(); ++i) ids[actions_[i].str()] = static_cast<int>(i) + 1;
        for (const auto& e : edges) {
            std::size_t s = e.src + offset, d = e.dst + offset;
            if (e.action.kind == Action::Kind::Tau) {
                tauOut_[s].push_back(d);
                continue;
            }
            std::string name = e.action.str();
            auto it = ids.find(name);
            int id;
            if (it == ids.end()) {
                id = static_cast<int>(actions_.size()) + 1;
                ids.emplace(name, id);
                actions_.push_back(e.action);
            } else {
                id = it->second;
            }
            visOut_[s].push_back({id, d});
        }
    }

    void saturate()
    {
        closure_.assign(n_, {});
        for (std::size_t s = 0; s < n_; ++s) {
            std::vector<bool> seen(n_, false);
            std::deque<std::size_t> work{s};
            seen[s] = true;
            while (!work.empty()) {
                std::size_t u = work.front();
                work.pop_front();
                closure_[s].push_back(u);
                for (std::size_t v : tauOut_[u])
                    if (!seen[v]) {
                        seen[v] = true;
                        work.push_back(v);
                    }
            }
            std::sort(closure_[s].begin(), closure_[s].end());
        }
        weak_.assign(n_, {});
        for (std::size_t s = 0; s < n_; ++s) {
            std::set<std::pair<int, std::size_t>> out;
            for (std::size_t t : closure_[s]) out.insert({0, t});
            for (std::size_t u : closure_[s])
                for (const auto& [a, v] : visOut_[u])
                    for (std::size_t t : closure_[v]) out.insert({a, t});
            weak_[s].assign(out.begin(), out.end());
        }
    }

    /// Action id 0 is tau; id k > 0 is actions()[k - 1].
    Action action(int id) const { return id == 0 ? Action::tau() : actions_[static_cast<std::size_t>(id - 1)]; }
    const std::vector<std::pair<int, std::size_t>>& weak(std::size_t s) const { return weak_[s]; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<Action> actions_;
    std::vector<std::vector<std::size_t>> tauOut_;
    std::vector<std::vector<std::pair<int, std::size_t>>> visOut_;
    std::vector<std::vector<std::size_t>> closure_;
    std::vector<std::vector<std::pair<int, std::size_t>>> weak_;
};

using Signature = std::vector<std::pair<int, std::size_t>>;

Signature signatureOf(const Saturation& sat, std::size_t s, const std::vector<std::size_t>& block)
{
    Signature sig;
    sig.reserve(sat.weak(s).size());
    for (const auto& [a, t] : sat.weak(s)) sig.push_back({a, block[t]});
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    return sig;
}

class Refinement {
public:
    explicit Refinement(const Saturation& sat) : sat_(sat)
    {
        history_.push_back(std::vector<std::size_t>(sat.size(), 0));
        std::size_t count = sat.size() ? 1 : 0;
        while (true) {
            const auto& prev = history_.back();
            std::map<std::pair<std::size_t, Signature>, std::size_t> ids;
            std::vector<std::size_t> next(sat.size());
            for (std::size_t s = 0; s < sat.size(); ++s) {
                auto key = std::make_pair(prev[s], signatureOf(sat, s, prev));
                auto it = ids.find(key);
                if (it == ids.end()) it = ids.emplace(std::move(key), ids.size()).first;
                next[s] = it->second;
            }
            if (ids.size() == count) break;
            count = ids.size();
            history_.push_back(std::move(next));
        }
        classes_ = count;
    }

    const std::vector<std::size_t>& finalBlocks() const { return history_.back(); }
    std::size_t rounds() const { return history_.size() - 1; }
    std::size_t classes() const { return classes_; }

    std::size_t splitRound(std::size_t s, std::size_t t) const
    {
        for (std::size_t k = 0; k < history_.size(); ++k)
            if (history_[k][s] != history_[k][t]) return k;
        return std::numeric_limits<std::size_t>::max();
    }

    /// A formula satisfied by s and not by t; the two must be separated.
    FormulaPtr distinguish(std::size_t s, std::size_t t)
    {
        auto key = std::make_pair(s, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::size_t k = splitRound(s, t);
        const auto& prev = history_[k - 1];
        FormulaPtr f = positive(s, t, prev);
        if (!f) f = Formula::negate(positive(t, s, prev));
        memo_.emplace(key, f);
        return f;
    }

private:
    /// <<a>>(conjunction) for a move of s that t cannot match at the previous round, if any.
    FormulaPtr positive(std::size_t s, std::size_t t, const std::vector<std::size_t>& prev)
    {
        Signature tSig = signatureOf(sat_, t, prev);
        struct Candidate {
            std::size_t cost;
            std::string action;
            int id;
            std::size_t target;
        };
        std::optional<Candidate> best;
        for (const auto& [a, s2] : sat_.weak(s)) {
            if (std::binary_search(tSig.begin(), tSig.end(), std::make_pair(a, prev[s2]))) continue;
            std::size_t cost = 0;
            for (const auto& [b, t2] : sat_.weak(t))
                if (b == a) cost = std::max(cost, splitRound(s2, t2));
            Candidate c{cost, sat_.action(a).str(), a, s2};
            if (!best || std::tie(c.cost, c.action, c.target) < std::tie(best->cost, best->action, best->target))
                best = c;
        }
        if (!best) return nullptr;
        std::vector<FormulaPtr> parts;
        for (const auto& [b, t2] : sat_.weak(t))
            if (b == best->id) parts.push_back(distinguish(best->target, t2));
        return Formula::diamond(sat_.action(best->id), Formula::conj(std::move(parts)));
    }

    const Saturation& sat_;
    std::vector<std::vector<std::size_t>> history_;
    std::size_t classes_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, FormulaPtr> memo_;
};

std::vector<bool> reachable(const FiniteLts& lts)
{
    std::vector<bool> seen(lts.numStates, false);
    if (lts.numStates == 0) return seen;
    auto out = lts.successors();
    std::deque<std::size_t> work{lts.initial};
    seen[lts.initial] = true;
    while (!work.empty()) {
        std::size_t s = work.front();
        work.pop_front();
        for (std::size_t e : out[s]) {
            std::size_t d = lts.edges[e].dst;
            if (!seen[d]) {
                seen[d] = true;
                work.push_back(d);
            }
        }
    }
    return seen;
}

std::vector<Action> spineOf(const FormulaPtr& f)
{
    std::vector<Action> out;
    FormulaPtr cur = f;
    while (cur) {
        switch (cur->kind()) {
        case Formula::Kind::True: cur = nullptr; break;
        case Formula::Kind::Diamond:
            out.push_back(cur->action());
            cur = cur->parts().front();
            break;
        case Formula::Kind::Not:
        case Formula::Kind::And: cur = cur->parts().front(); break;
        }
    }
    return out;
}

class Checker {
public:
    explicit Checker(const FiniteLts& lts) : sat_(lts.numStates, lts.edges) { sat_.saturate(); }

    bool holds(std::size_t s, const FormulaPtr& f)
    {
        auto key = std::make_pair(f.get(), s);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool r = false;
        switch (f->kind()) {
        case Formula::Kind::True: r = true; break;
        case Formula::Kind::Not: r = !holds(s, f->parts().front()); break;
        case Formula::Kind::And:
            r = std::all_of(f->parts().begin(), f->parts().end(), [&](const FormulaPtr& p) { return holds(s, p); });
            break;
        case Formula::Kind::Diamond:
            for (const auto& [a, t] : sat_.weak(s))
                if (sat_.action(a) == f->action() && holds(t, f->parts().front())) {
                    r = true;
                    break;
                }
            break;
        }
        memo_.emplace(key, r);
        return r;
    }

private:
    Saturation sat_;
    std::map<std::pair<const Formula*, std::size_t>, bool> memo_;
};

} // namespace

bool satisfies(const FiniteLts& lts, std::size_t state, const FormulaPtr& f)
{
    Checker checker(lts);
    return checker.holds(state, f);
}

BisimVerdict weak_bisim(const FiniteLts& l1, const FiniteLts& l2)
{
    std::size_t n1 = l1.numStates;
    Saturation sat(n1 + l2.numStates, l1.edges);
    sat.addEdges(l2.edges, n1);
    sat.saturate();
    Refinement refinement(sat);

    BisimVerdict verdict;
    verdict.rounds = refinement.rounds();
    verdict.classes = refinement.classes();
    const auto& blocks = refinement.finalBlocks();
    std::size_t i1 = l1.initial, i2 = n1 + l2.initial;
    verdict.bisimilar = blocks[i1] == blocks[i2];
    if (verdict.bisimilar) {
        auto r1 = reachable(l1);
        auto r2 = reachable(l2);
        for (std::size_t s = 0; s < n1; ++s) {
            if (!r1[s]) continue;
            for (std::size_t t = 0; t < l2.numStates; ++t)
                if (r2[t] && blocks[s] == blocks[n1 + t]) verdict.relation.push_back({s, t});
        }
        return verdict;
    }
    FormulaPtr f = refinement.distinguish(i1, i2);
    BisimWitness w;
    if (f->kind() == Formula::Kind::Not) {
        w.formula = f->parts().front();
        w.side = 2;
    } else {
        w.formula = f;
        w.side = 1;
    }
    w.actions = spineOf(w.formula);
    verdict.witness = std::move(w);
    return verdict;
}

bool witness_valid(const FiniteLts& l1, const FiniteLts& l2, const BisimWitness& w)
{
    bool in1 = satisfies(l1, l1.initial, w.formula);
    bool in2 = satisfies(l2, l2.initial, w.formula);
    return w.side == 1 ? (in1 && !in2) : (in2 && !in1);
}

std::string verdict_to_json(const BisimVerdict& v, int indent)
{
    nlohmann::ordered_json j;
    j["verdict"] = v.bisimilar ? "bisimilar" : "not bisimilar";
    j["level"] = "box abstraction";
    j["relationSize"] = v.relation.size();
    j["classes"] = v.classes;
    j["rounds"] = v.rounds;
    if (v.witness) {
        nlohmann::ordered_json w;
        w["formula"] = v.witness->formula->str();
        std::vector<std::string> actions;
        for (const auto& a : v.witness->actions) actions.push_back(a.str());
        w["actions"] = actions;
        w["satisfiedBy"] = v.witness->side;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j.dump(indent);
}

} // namespace ccps
