#include "ccps/abstraction.hpp"

#include "ccps/error.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace ccps {

AbstractState AbstractState::makeDeadlock()
{
    AbstractState s;
    s.deadlock = true;
    return s;
}

std::string AbstractState::location() const
{
    if (deadlock) return "<deadlock>";
    std::string out = controlKey;
    out += " @";
    for (const auto& v : actuators) out += " " + v.str();
    return out;
}

std::string AbstractState::key() const
{
    std::string out = location();
    if (deadlock) return out;
    out += " #";
    for (const auto& iv : box) out += " " + iv.str();
    return out;
}

std::string AbstractState::str(const Plant& plant) const
{
    if (deadlock) return "Deadlock";
    std::string out = print(control) + " with ";
    for (std::size_t i = 0; i < actuators.size(); ++i)
        out += plant.actuators[i] + "=" + actuators[i].str() + ", ";
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (i) out += ", ";
        out += plant.variables[i] + " in " + box[i].str();
    }
    return out;
}

namespace {

AbstractState makeState(ProcPtr control, std::vector<Value> actuators, std::vector<Interval> box)
{
    AbstractState s;
    s.controlKey = canonical_key(control);
    s.control = std::move(control);
    s.actuators = std::move(actuators);
    s.box = std::move(box);
    return s;
}

void thresholdsInGuard(const BoolPtr& g, const std::string& x, std::set<Rational>& out)
{
    if (!g->mentions(x)) return;
    switch (g->kind()) {
    case BoolExpr::Kind::Cmp: {
        auto affine = Expr::sub(g->lhs(), g->rhs())->affineIn(x);
        if (affine && affine->first != 0) out.insert(-affine->second / affine->first);
        return;
    }
    case BoolExpr::Kind::Not: thresholdsInGuard(g->left(), x, out); return;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or:
        thresholdsInGuard(g->left(), x, out);
        thresholdsInGuard(g->right(), x, out);
        return;
    default: return;
    }
}

void thresholds(const ProcPtr& p, const std::string& x, std::set<Rational>& out)
{
    if (!p->freeDataVars().count(x)) return;
    switch (p->kind()) {
    case Process::Kind::If:
        thresholdsInGuard(p->guard(), x, out);
        thresholds(p->thenBranch(), x, out);
        thresholds(p->elseBranch(), x, out);
        return;
    case Process::Kind::Timeout:
        if (!(p->prefix().binds() && p->prefix().var == x)) thresholds(p->continuation(), x, out);
        thresholds(p->timeoutBranch(), x, out);
        return;
    case Process::Kind::Par:
        thresholds(p->left(), x, out);
        thresholds(p->right(), x, out);
        return;
    case Process::Kind::Tick:
    case Process::Kind::Restrict:
    case Process::Kind::Fix: thresholds(p->body(), x, out); return;
    default: return;
    }
}

/// Splits `range` into threshold points and the open pieces between them.
std::vector<Interval> cells(const Interval& range, const std::set<Rational>& cuts)
{
    std::vector<Interval> out;
    Rational lo = range.lo();
    bool loOpen = range.loOpen();
    for (const auto& c : cuts) {
        if (c < range.lo() || c > range.hi()) continue;
        Interval piece(lo, c, loOpen, true);
        if (!piece.isEmpty()) out.push_back(piece);
        if (range.contains(c)) out.push_back(Interval::point(c));
        lo = c;
        loOpen = true;
    }
    Interval last(lo, range.hi(), loOpen, range.hiOpen());
    if (!last.isEmpty()) out.push_back(last);
    return out;
}

void addSensorReadSuccessors(const AbstractState& s, const Plant& plant, const ProcStep& step,
                             std::vector<AbstractStep>& out)
{
    auto si = plant.sensorIndex(step.device);
    if (!si) throw UnknownDevice(UnknownDevice::Kind::Sensor, step.device);
    std::size_t vi = plant.sensorTarget[*si];
    Interval noise = Interval::around(0, plant.sensorError[*si]);
    Interval sensed = s.box[vi] + noise;

    std::set<Rational> cuts;
    thresholds(step.target, step.binder, cuts);

    struct Group {
        Interval range;
        ProcPtr control;
        std::string key;
    };
    std::vector<Group> groups;
    for (const auto& cell : cells(sensed, cuts)) {
        std::vector<Rational> reps;
        if (cell.lo() == cell.hi()) {
            reps.push_back(cell.lo());
        } else {
            Rational width = cell.hi() - cell.lo();
            reps.push_back(cell.lo() + width / 3);
            reps.push_back(cell.lo() + width * 2 / 3);
        }
        ProcPtr control = resolve_conditionals(step.resume(Value(reps.front())));
        std::string key = canonical_key(control);
        for (std::size_t r = 1; r < reps.size(); ++r)
            if (canonical_key(resolve_conditionals(step.resume(Value(reps[r])))) != key)
                throw AbstractionError("the value read from sensor '" + step.device +
                                       "' escapes into the control term; only guards may use it");
        if (!groups.empty() && groups.back().key == key) {
            groups.back().range = groups.back().range.hull(cell);
        } else {
            groups.push_back(Group{cell, std::move(control), std::move(key)});
        }
    }
    for (auto& g : groups) {
        std::vector<Interval> box = s.box;
        box[vi] = box[vi].intersect(g.range + noise);
        if (box[vi].isEmpty()) continue;
        AbstractState target;
        target.control = std::move(g.control);
        target.controlKey = std::move(g.key);
        target.actuators = s.actuators;
        target.box = std::move(box);
        out.push_back(AbstractStep{Action::tau(), Cause{Cause::Kind::SensRead, step.device, {}, g.range}, std::move(target)});
    }
}

} // namespace

std::vector<AbstractStep> abstract_successors(const AbstractState& s, const Plant& plant, const InputAlphabet& inputs)
{
    if (s.deadlock) throw AbstractionError("the deadlock state has no successors");
    std::vector<AbstractStep> out;
    const ProcStep* tickStep = nullptr;
    bool tau = false;
    auto steps = process_steps(s.control);
    for (const auto& step : steps) {
        switch (step.kind) {
        case ProcStep::Kind::Tick: tickStep = &step; break;
        case ProcStep::Kind::Tau:
            out.push_back(AbstractStep{Action::tau(), Cause{Cause::Kind::Tau, step.device, step.value},
                                       makeState(step.target, s.actuators, s.box)});
            tau = true;
            break;
        case ProcStep::Kind::Out:
            out.push_back(AbstractStep{Action::out(step.device, step.value),
                                       Cause{Cause::Kind::Out, step.device, step.value},
                                       makeState(step.target, s.actuators, s.box)});
            break;
        case ProcStep::Kind::In:
            for (const auto& [channel, v] : inputs) {
                if (channel != step.device || (step.binder.empty() && !v.isUnit())) continue;
                out.push_back(AbstractStep{Action::in(channel, v), Cause{Cause::Kind::In, channel, v},
                                           makeState(step.resume(v), s.actuators, s.box)});
            }
            break;
        case ProcStep::Kind::Write: {
            auto a = plant.actuatorIndex(step.device);
            if (!a) throw UnknownDevice(UnknownDevice::Kind::Actuator, step.device);
            std::vector<Value> acts = s.actuators;
            acts[*a] = step.value;
            out.push_back(AbstractStep{Action::tau(), Cause{Cause::Kind::ActWrite, step.device, step.value},
                                       makeState(step.target, std::move(acts), s.box)});
            tau = true;
            break;
        }
        case ProcStep::Kind::Read:
            addSensorReadSuccessors(s, plant, step, out);
            tau = true;
            break;
        }
    }
    if (!tau && tickStep) {
        std::vector<Interval> box;
        bool partial = false;
        bool gone = false;
        for (std::size_t i = 0; i < s.box.size(); ++i) {
            Rational d = drift_under(plant, i, s.actuators);
            const Rational& w = plant.uncertainty[i];
            Interval moved = s.box[i] + Interval(d - w, d + w);
            if (plant.invariant[i]) {
                Interval clipped = moved.intersect(*plant.invariant[i]);
                if (clipped.isEmpty()) gone = true;
                else if (clipped != moved) partial = true;
                moved = clipped;
            }
            box.push_back(std::move(moved));
        }
        Cause time{Cause::Kind::Time, {}, {}};
        if (!gone)
            out.push_back(AbstractStep{Action::tick(), time, makeState(tickStep->target, s.actuators, std::move(box))});
        if (gone || partial) out.push_back(AbstractStep{Action::tick(), time, AbstractState::makeDeadlock()});
    }
    return out;
}

AbstractState abstract_initial(const Cps& m)
{
    if (!invariant_holds(m.env)) return AbstractState::makeDeadlock();
    std::vector<Interval> box;
    for (const auto& v : m.env.state()) box.push_back(Interval::point(v));
    return makeState(m.proc, m.env.actuators(), std::move(box));
}

std::vector<std::vector<std::size_t>> FiniteLts::successors() const
{
    std::vector<std::vector<std::size_t>> out(numStates);
    for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].src].push_back(e);
    return out;
}

std::size_t FiniteLts::countEdges(Action::Kind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [&](const LtsEdge& e) { return e.action.kind == kind; }));
}

namespace {

class LtsBuilder {
public:
    LtsBuilder(const Cps& m, const AbstractionConfig& config) : config_(config)
    {
        lts_.plant = m.env.sharedPlant();
        lts_.variables = m.env.plant().variables;
        lts_.actuators = m.env.plant().actuators;
    }

    std::size_t deadlockIndex()
    {
        if (!lts_.deadlock) {
            lts_.deadlock = lts_.states.size();
            lts_.states.push_back(AbstractState::makeDeadlock());
            lts_.tickDepth.push_back(0);
            checkBudget();
        }
        return *lts_.deadlock;
    }

    void addEdge(std::size_t src, const Action& action, const Cause& cause, std::size_t dst)
    {
        auto key = std::make_tuple(src, action.str(), dst);
        if (!edgeSet_.insert(key).second) return;
        lts_.edges.push_back(LtsEdge{src, action, dst});
        lts_.causes.push_back(cause);
    }

    void checkBudget() const
    {
        if (lts_.states.size() > config_.maxStates) throw StateBudgetExceeded(config_.maxStates);
    }

    FiniteLts buildHull(const Cps& m)
    {
        const Plant& plant = m.env.plant();
        std::unordered_map<std::string, std::size_t> byLocation;
        std::deque<std::size_t> work;
        std::vector<bool> queued;
        auto add = [&](AbstractState s) {
            if (s.deadlock) return deadlockIndex();
            std::string loc = s.location();
            auto it = byLocation.find(loc);
            if (it == byLocation.end()) {
                std::size_t idx = lts_.states.size();
                byLocation.emplace(std::move(loc), idx);
                lts_.states.push_back(std::move(s));
                lts_.tickDepth.push_back(0);
                checkBudget();
                queued.resize(lts_.states.size(), false);
                queued[idx] = true;
                work.push_back(idx);
                return idx;
            }
            std::size_t idx = it->second;
            AbstractState& existing = lts_.states[idx];
            bool changed = false;
            for (std::size_t i = 0; i < existing.box.size(); ++i) {
                Interval joined = existing.box[i].hull(s.box[i]);
                if (joined != existing.box[i]) {
                    existing.box[i] = std::move(joined);
                    changed = true;
                }
            }
            if (changed) {
                lts_.widened = true;
                if (++updates_ > config_.maxStates * 64) throw StateBudgetExceeded(config_.maxStates);
                if (!queued[idx]) {
                    queued[idx] = true;
                    work.push_back(idx);
                }
            }
            return idx;
        };

        lts_.initial = add(abstract_initial(m));
        while (!work.empty()) {
            std::size_t idx = work.front();
            work.pop_front();
            queued[idx] = false;
            if (lts_.states[idx].deadlock) continue;
            AbstractState current = lts_.states[idx];
            for (auto& step : abstract_successors(current, plant, config_.inputs)) add(std::move(step.target));
        }
        for (std::size_t idx = 0; idx < lts_.states.size(); ++idx) {
            if (lts_.states[idx].deadlock) continue;
            for (auto& step : abstract_successors(lts_.states[idx], plant, config_.inputs)) {
                std::size_t dst = step.target.deadlock ? deadlockIndex() : byLocation.at(step.target.location());
                addEdge(idx, step.action, step.cause, dst);
            }
        }
        lts_.numStates = lts_.states.size();
        return std::move(lts_);
    }

    FiniteLts buildExact(const Cps& m)
    {
        const Plant& plant = m.env.plant();
        std::unordered_map<std::string, std::size_t> byKey;
        std::deque<std::size_t> work;
        auto add = [&](AbstractState s, std::size_t depth) {
            if (s.deadlock) return deadlockIndex();
            std::string key = s.key();
            auto it = byKey.find(key);
            if (it != byKey.end()) return it->second;
            std::size_t idx = lts_.states.size();
            byKey.emplace(std::move(key), idx);
            lts_.states.push_back(std::move(s));
            lts_.tickDepth.push_back(depth);
            checkBudget();
            work.push_back(idx);
            return idx;
        };
        lts_.initial = add(abstract_initial(m), 0);
        while (!work.empty()) {
            std::size_t idx = work.front();
            work.pop_front();
            if (lts_.states[idx].deadlock) continue;
            std::size_t depth = lts_.tickDepth[idx];
            if (config_.maxTicks && depth >= *config_.maxTicks) {
                lts_.truncated = true;
                continue;
            }
            AbstractState current = lts_.states[idx];
            for (auto& step : abstract_successors(current, plant, config_.inputs)) {
                std::size_t nextDepth = depth + (step.action.kind == Action::Kind::Tick ? 1 : 0);
                std::size_t dst = add(std::move(step.target), nextDepth);
                addEdge(idx, step.action, step.cause, dst);
            }
        }
        lts_.numStates = lts_.states.size();
        return std::move(lts_);
    }

private:
    const AbstractionConfig& config_;
    FiniteLts lts_;
    std::set<std::tuple<std::size_t, std::string, std::size_t>> edgeSet_;
    std::size_t updates_ = 0;
};

} // namespace

FiniteLts build_abstract_lts(const Cps& m, const AbstractionConfig& config)
{
    LtsBuilder builder(m, config);
    return config.policy == WideningPolicy::Hull ? builder.buildHull(m) : builder.buildExact(m);
}

std::string export_lts(const FiniteLts& lts)
{
    std::ostringstream out;
    out << "states " << lts.numStates << "\n";
    out << "initial " << lts.initial << "\n";
    for (const auto& e : lts.edges) out << e.src << ' ' << e.action.str() << ' ' << e.dst << "\n";
    return out.str();
}

FiniteLts import_lts(const std::string& text)
{
    FiniteLts lts;
    std::istringstream in(text);
    std::string line;
    std::size_t lineNo = 0;
    bool haveStates = false, haveInitial = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("line " + std::to_string(lineNo) + ": " + why);
        };
        if (first == "states") {
            if (!(ls >> lts.numStates)) fail("expected a state count");
            haveStates = true;
        } else if (first == "initial") {
            if (!(ls >> lts.initial)) fail("expected an initial state");
            haveInitial = true;
        } else {
            if (!haveStates) fail("edge before the 'states' header");
            LtsEdge e;
            try {
                e.src = std::stoul(first);
            } catch (const std::exception&) {
                fail("expected a source state");
            }
            std::string action;
            if (!(ls >> action >> e.dst)) fail("expected 'src action dst'");
            e.action = parse_action(action);
            if (e.src >= lts.numStates || e.dst >= lts.numStates) fail("state index out of range");
            lts.edges.push_back(std::move(e));
        }
    }
    if (!haveStates || !haveInitial) throw std::invalid_argument("missing 'states' or 'initial' header");
    if (lts.numStates == 0 || lts.initial >= lts.numStates) throw std::invalid_argument("initial state out of range");
    return lts;
}

// ---------------------------------------------------------------------------
// location queries

namespace {

std::string trimmed(const std::string& s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

Value valueWord(const std::string& text)
{
    if (text == "on") return on();
    if (text == "off") return off();
    if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-'))
        return Value(parse_rational(text));
    return Value(Name{text});
}

/// Parses "turn_on" or "turn_on(act)".
std::optional<LocationQuery::Condition> switchCondition(const std::string& text)
{
    using K = LocationQuery::Condition::Kind;
    LocationQuery::Condition c;
    std::string head = text, arg;
    auto paren = text.find('(');
    if (paren != std::string::npos) {
        if (text.back() != ')') return std::nullopt;
        head = trimmed(text.substr(0, paren));
        arg = trimmed(text.substr(paren + 1, text.size() - paren - 2));
    }
    if (head == "turn_on") c.kind = K::TurnOn;
    else if (head == "turn_off") c.kind = K::TurnOff;
    else return std::nullopt;
    c.actuator = arg;
    return c;
}

bool switched(const FiniteLts& lts, std::size_t e, const LocationQuery::Condition& c, bool toOn)
{
    const Cause& cause = lts.causes[e];
    if (cause.kind != Cause::Kind::ActWrite) return false;
    if (!c.actuator.empty() && cause.device != c.actuator) return false;
    Value target = toOn ? on() : off();
    if (cause.value != target) return false;
    const AbstractState& src = lts.states[lts.edges[e].src];
    auto it = std::find(lts.actuators.begin(), lts.actuators.end(), cause.device);
    if (it == lts.actuators.end()) return false;
    return src.actuators[static_cast<std::size_t>(it - lts.actuators.begin())] != target;
}

bool lastMatches(const FiniteLts& lts, std::size_t e, const std::string& last)
{
    const Cause& cause = lts.causes[e];
    const Action& action = lts.edges[e].action;
    if (last == "tick") return action.kind == Action::Kind::Tick;
    if (last == "tau") return action.kind == Action::Kind::Tau;
    if (last.rfind("read ", 0) == 0) return cause.kind == Cause::Kind::SensRead && cause.device == trimmed(last.substr(5));
    if (last.rfind("write ", 0) == 0)
        return cause.kind == Cause::Kind::ActWrite && cause.device == trimmed(last.substr(6));
    if (last.rfind("out", 0) == 0 || last.rfind("in", 0) == 0) {
        try {
            return ActionSelector::parse(last).matches(action);
        } catch (const std::invalid_argument&) {
            return false;
        }
    }
    return false;
}

} // namespace

LocationQuery LocationQuery::parse(const std::string& text)
{
    using K = Condition::Kind;
    LocationQuery q;
    q.text_ = text;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto amp = text.find("&&", start);
        std::string part = trimmed(text.substr(start, amp == std::string::npos ? std::string::npos : amp - start));
        start = amp == std::string::npos ? text.size() + 1 : amp + 2;
        if (part.empty()) throw std::invalid_argument("empty condition in query '" + text + "'");
        if (auto c = switchCondition(part)) {
            q.conditions_.push_back(*c);
            continue;
        }
        auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("unrecognised condition '" + part + "'");
        std::string lhs = trimmed(part.substr(0, eq));
        std::string rhs = trimmed(part.substr(eq + 1));
        Condition c;
        if (lhs == "last") {
            c.kind = K::Last;
            c.last = rhs;
        } else if (lhs.rfind("ticks_after(", 0) == 0 && lhs.back() == ')') {
            auto anchor = switchCondition(trimmed(lhs.substr(12, lhs.size() - 13)));
            if (!anchor) throw std::invalid_argument("ticks_after expects turn_on or turn_off in '" + part + "'");
            c = *anchor;
            c.anchor = anchor->kind;
            c.kind = K::TicksAfter;
            try {
                c.count = std::stoul(rhs);
            } catch (const std::exception&) {
                throw std::invalid_argument("expected a tick count in '" + part + "'");
            }
            if (c.count == 0) throw std::invalid_argument("tick count must be positive in '" + part + "'");
        } else {
            c.kind = K::Actuator;
            c.actuator = lhs;
            c.value = valueWord(rhs);
        }
        q.conditions_.push_back(std::move(c));
    }
    return q;
}

std::vector<std::size_t> LocationQuery::select(const FiniteLts& lts) const
{
    using K = Condition::Kind;
    if (lts.states.size() != lts.numStates || lts.causes.size() != lts.edges.size())
        throw EmptySelection("location queries need an annotated abstract LTS");
    std::vector<bool> selected(lts.numStates, true);
    for (const auto& c : conditions_) {
        std::vector<bool> hit(lts.numStates, false);
        switch (c.kind) {
        case K::TurnOn:
        case K::TurnOff:
            for (std::size_t e = 0; e < lts.edges.size(); ++e)
                if (switched(lts, e, c, c.kind == K::TurnOn)) hit[lts.edges[e].src] = true;
            break;
        case K::Actuator: {
            auto it = std::find(lts.actuators.begin(), lts.actuators.end(), c.actuator);
            if (it == lts.actuators.end()) throw UnknownDevice(UnknownDevice::Kind::Actuator, c.actuator);
            std::size_t a = static_cast<std::size_t>(it - lts.actuators.begin());
            for (std::size_t s = 0; s < lts.numStates; ++s)
                if (!lts.states[s].deadlock && lts.states[s].actuators[a] == c.value) hit[s] = true;
            break;
        }
        case K::Last:
            for (std::size_t e = 0; e < lts.edges.size(); ++e)
                if (lastMatches(lts, e, c.last)) hit[lts.edges[e].dst] = true;
            break;
        case K::TicksAfter: {
            auto out = lts.successors();
            std::set<std::pair<std::size_t, std::size_t>> seen;
            std::deque<std::pair<std::size_t, std::size_t>> work;
            for (std::size_t e = 0; e < lts.edges.size(); ++e)
                if (switched(lts, e, c, c.anchor == K::TurnOn) && seen.insert({lts.edges[e].dst, 0}).second)
                    work.push_back({lts.edges[e].dst, 0});
            while (!work.empty()) {
                auto [s, k] = work.front();
                work.pop_front();
                for (std::size_t e : out[s]) {
                    std::size_t nk = k + (lts.edges[e].action.kind == Action::Kind::Tick ? 1 : 0);
                    std::size_t d = lts.edges[e].dst;
                    if (nk == c.count) {
                        if (lts.edges[e].action.kind == Action::Kind::Tick) hit[d] = true;
                        continue;
                    }
                    if (seen.insert({d, nk}).second) work.push_back({d, nk});
                }
            }
            break;
        }
        }
        for (std::size_t s = 0; s < lts.numStates; ++s) selected[s] = selected[s] && hit[s];
    }
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < lts.numStates; ++s)
        if (selected[s] && !lts.states[s].deadlock) out.push_back(s);
    return out;
}

std::map<std::string, Interval> reach_envelope(const FiniteLts& lts, const LocationQuery& query)
{
    auto chosen = query.select(lts);
    if (chosen.empty()) throw EmptySelection("no state satisfies '" + query.text() + "'");
    std::map<std::string, Interval> out;
    for (std::size_t i = 0; i < lts.variables.size(); ++i) {
        Interval hull;
        for (std::size_t s : chosen) hull = hull.hull(lts.states[s].box[i]);
        out.emplace(lts.variables[i], hull);
    }
    return out;
}

} // namespace ccps
