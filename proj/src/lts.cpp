#include "ccps/lts.hpp"

#include "ccps/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ccps {

ProcPtr ProcStep::resume(const Value& v) const
{
    if (binder.empty()) return target;
    return substitute_value(target, binder, v);
}

std::string ProcStep::label() const
{
    switch (kind) {
    case Kind::Tau: return "tau";
    case Kind::Tick: return "tick";
    case Kind::Out: return "out " + device + "<" + value.str() + ">";
    case Kind::In: return binder.empty() ? "in " + device : "in " + device + "(" + binder + ")";
    case Kind::Write: return "write " + value.str() + "(" + device + ")";
    case Kind::Read: return "read " + device + "(" + binder + ")";
    }
    return {};
}

namespace {

bool synchronises(const ProcStep& out, const ProcStep& in)
{
    if (out.kind != ProcStep::Kind::Out || in.kind != ProcStep::Kind::In) return false;
    if (out.device != in.device) return false;
    return !in.binder.empty() || out.value.isUnit();
}

void collectSteps(const ProcPtr& p, std::vector<ProcStep>& out);

void parSteps(const ProcPtr& p, std::vector<ProcStep>& out)
{
    std::vector<ProcStep> left, right;
    collectSteps(p->left(), left);
    collectSteps(p->right(), right);
    const ProcPtr* leftTick = nullptr;
    const ProcPtr* rightTick = nullptr;
    bool tau = false;
    for (const auto& l : left) {
        if (l.kind == ProcStep::Kind::Tick) {
            leftTick = &l.target;
            continue;
        }
        ProcStep lifted = l;
        lifted.target = par(l.target, p->right());
        tau = tau || l.kind == ProcStep::Kind::Tau;
        out.push_back(std::move(lifted));
    }
    for (const auto& r : right) {
        if (r.kind == ProcStep::Kind::Tick) {
            rightTick = &r.target;
            continue;
        }
        ProcStep lifted = r;
        lifted.target = par(p->left(), r.target);
        tau = tau || r.kind == ProcStep::Kind::Tau;
        out.push_back(std::move(lifted));
    }
    for (const auto& l : left)
        for (const auto& r : right) {
            if (synchronises(l, r)) {
                out.push_back(ProcStep{ProcStep::Kind::Tau, l.device, l.value, {}, par(l.target, r.resume(l.value))});
                tau = true;
            } else if (synchronises(r, l)) {
                out.push_back(ProcStep{ProcStep::Kind::Tau, r.device, r.value, {}, par(l.resume(r.value), r.target)});
                tau = true;
            }
        }
    if (!tau && leftTick && rightTick)
        out.push_back(ProcStep{ProcStep::Kind::Tick, {}, {}, {}, par(*leftTick, *rightTick)});
}

void collectSteps(const ProcPtr& p, std::vector<ProcStep>& out)
{
    switch (p->kind()) {
    case Process::Kind::Nil: out.push_back(ProcStep{ProcStep::Kind::Tick, {}, {}, {}, p}); return;
    case Process::Kind::Tick: out.push_back(ProcStep{ProcStep::Kind::Tick, {}, {}, {}, p->body()}); return;
    case Process::Kind::Timeout: {
        const Prefix& pre = p->prefix();
        switch (pre.kind) {
        case Prefix::Kind::Send:
            out.push_back(ProcStep{ProcStep::Kind::Out, pre.device, pre.value->evaluate(), {}, p->continuation()});
            break;
        case Prefix::Kind::Receive:
            out.push_back(ProcStep{ProcStep::Kind::In, pre.device, {}, pre.var, p->continuation()});
            break;
        case Prefix::Kind::Read:
            out.push_back(ProcStep{ProcStep::Kind::Read, pre.device, {}, pre.var, p->continuation()});
            break;
        case Prefix::Kind::Write:
            out.push_back(ProcStep{ProcStep::Kind::Write, pre.device, pre.value->evaluate(), {}, p->continuation()});
            break;
        }
        out.push_back(ProcStep{ProcStep::Kind::Tick, {}, {}, {}, p->timeoutBranch()});
        return;
    }
    case Process::Kind::If:
        if (!p->guard()->isClosed()) throw TermError("conditional with an open guard: " + p->guard()->str());
        collectSteps(p->guard()->evaluate() ? p->thenBranch() : p->elseBranch(), out);
        return;
    case Process::Kind::Fix: collectSteps(unfold_fix(p), out); return;
    case Process::Kind::Restrict: {
        std::vector<ProcStep> inner;
        collectSteps(p->body(), inner);
        for (auto& s : inner) {
            if ((s.kind == ProcStep::Kind::Out || s.kind == ProcStep::Kind::In) && s.device == p->name()) continue;
            s.target = restrict(s.target, p->name());
            out.push_back(std::move(s));
        }
        return;
    }
    case Process::Kind::Par: parSteps(p, out); return;
    case Process::Kind::Var: throw TermError("free process variable '" + p->name() + "'");
    }
}

} // namespace

std::vector<ProcStep> process_steps(const ProcPtr& p)
{
    std::vector<ProcStep> out;
    collectSteps(p, out);
    return out;
}

std::string Action::str() const
{
    switch (kind) {
    case Kind::Tau: return "tau";
    case Kind::Tick: return "tick";
    case Kind::Out:
    case Kind::In: {
        std::string head = kind == Kind::Out ? "out(" : "in(";
        if (value.isUnit()) return head + channel + ")";
        return head + channel + "," + value.str() + ")";
    }
    }
    return {};
}

bool Action::operator==(const Action& other) const
{
    if (kind != other.kind) return false;
    if (kind == Kind::Tau || kind == Kind::Tick) return true;
    return channel == other.channel && value == other.value;
}

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

Value parseValueToken(const std::string& text)
{
    if (text == "on") return on();
    if (text == "off") return off();
    if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-' || text[0] == '+'))
        return Value(parse_rational(text));
    return Value(Name{text});
}

} // namespace

Action parse_action(std::string_view text)
{
    std::string t = trim(text);
    if (t == "tau") return Action::tau();
    if (t == "tick") return Action::tick();
    Action::Kind kind;
    std::string rest;
    if (t.rfind("out(", 0) == 0) {
        kind = Action::Kind::Out;
        rest = t.substr(4);
    } else if (t.rfind("in(", 0) == 0) {
        kind = Action::Kind::In;
        rest = t.substr(3);
    } else {
        throw std::invalid_argument("unrecognised action '" + t + "'");
    }
    if (rest.empty() || rest.back() != ')') throw std::invalid_argument("missing ')' in action '" + t + "'");
    rest.pop_back();
    auto comma = rest.find(',');
    Action a;
    a.kind = kind;
    if (comma == std::string::npos) {
        a.channel = trim(rest);
    } else {
        a.channel = trim(rest.substr(0, comma));
        a.value = parseValueToken(trim(rest.substr(comma + 1)));
    }
    if (a.channel.empty()) throw std::invalid_argument("missing channel in action '" + t + "'");
    return a;
}

std::string Cause::str() const
{
    switch (kind) {
    case Kind::Tau: return "tau";
    case Kind::SensRead: return "read " + device;
    case Kind::ActWrite: return "write " + device + "=" + value.str();
    case Kind::Out: return "out " + device;
    case Kind::In: return "in " + device;
    case Kind::Time: return "time";
    }
    return {};
}

// ---------------------------------------------------------------------------
// resolvers

Rational ZeroNoise::sense(const PhysicalEnv&, const std::string&, const Interval& range)
{
    return midpoint(range.lo(), range.hi());
}

std::vector<Rational> ZeroNoise::evolve(const PhysicalEnv&, const std::vector<Interval>& box)
{
    std::vector<Rational> out;
    out.reserve(box.size());
    for (const auto& iv : box) out.push_back(midpoint(iv.lo(), iv.hi()));
    return out;
}

SeededSampler::SeededSampler(std::uint64_t seed, unsigned grid) : rng_(seed), grid_(std::max(grid, 2u)) {}

Rational SeededSampler::sample(const Interval& range)
{
    if (range.isEmpty()) throw ResolverOutOfRange("cannot sample from an empty interval");
    if (range.lo() == range.hi()) return range.lo();
    unsigned lo = range.loOpen() ? 1 : 0;
    unsigned hi = range.hiOpen() ? grid_ - 1 : grid_;
    std::uniform_int_distribution<unsigned> pick(lo, hi);
    unsigned k = pick(rng_);
    return range.lo() + (range.hi() - range.lo()) * Rational(k, grid_);
}

Rational SeededSampler::sense(const PhysicalEnv&, const std::string&, const Interval& range)
{
    return sample(range);
}

std::vector<Rational> SeededSampler::evolve(const PhysicalEnv&, const std::vector<Interval>& box)
{
    std::vector<Rational> out;
    out.reserve(box.size());
    for (const auto& iv : box) out.push_back(sample(iv));
    return out;
}

Scripted::Scripted(std::vector<std::map<std::string, Rational>> tickDisturbances,
                   std::vector<Rational> sensorNoise)
    : ticks_(std::move(tickDisturbances)), noise_(std::move(sensorNoise))
{
}

Rational Scripted::sense(const PhysicalEnv&, const std::string&, const Interval& range)
{
    Rational centre = midpoint(range.lo(), range.hi());
    return nextRead_ < noise_.size() ? centre + noise_[nextRead_] : centre;
}

void Scripted::onStepTaken(const SysStep& step)
{
    if (step.cause.kind == Cause::Kind::SensRead) ++nextRead_;
    if (step.action.kind == Action::Kind::Tick) ++nextTick_;
}

std::vector<Rational> Scripted::evolve(const PhysicalEnv& env, const std::vector<Interval>& box)
{
    std::vector<Rational> out;
    const auto& vars = env.plant().variables;
    for (std::size_t i = 0; i < box.size(); ++i) {
        Rational point = midpoint(box[i].lo(), box[i].hi());
        if (nextTick_ < ticks_.size()) {
            auto it = ticks_[nextTick_].find(vars[i]);
            if (it != ticks_[nextTick_].end()) point += it->second;
        }
        out.push_back(point);
    }
    return out;
}

Adversarial::Adversarial(SenseFn sense, EvolveFn evolve) : sense_(std::move(sense)), evolve_(std::move(evolve)) {}

Rational Adversarial::sense(const PhysicalEnv& env, const std::string& sensor, const Interval& range)
{
    return sense_(env, sensor, range);
}

std::vector<Rational> Adversarial::evolve(const PhysicalEnv& env, const std::vector<Interval>& box)
{
    return evolve_(env, box);
}

// ---------------------------------------------------------------------------
// system steps

std::vector<SysStep> system_steps(const Cps& m, DisturbanceResolver& resolver, const InputAlphabet& inputs)
{
    std::vector<SysStep> out;
    if (!invariant_holds(m.env)) return out;
    auto steps = process_steps(m.proc);
    const ProcStep* tickStep = nullptr;
    bool tau = false;
    for (const auto& s : steps) {
        switch (s.kind) {
        case ProcStep::Kind::Tick: tickStep = &s; break;
        case ProcStep::Kind::Tau:
            out.push_back(SysStep{Action::tau(), Cps{m.env, s.target}, {}, Cause{Cause::Kind::Tau, s.device, s.value}});
            tau = true;
            break;
        case ProcStep::Kind::Out:
            out.push_back(SysStep{Action::out(s.device, s.value), Cps{m.env, s.target}, {},
                                  Cause{Cause::Kind::Out, s.device, s.value}});
            break;
        case ProcStep::Kind::In:
            for (const auto& [channel, v] : inputs) {
                if (channel != s.device || (s.binder.empty() && !v.isUnit())) continue;
                out.push_back(SysStep{Action::in(channel, v), Cps{m.env, s.resume(v)}, {},
                                      Cause{Cause::Kind::In, channel, v}});
            }
            break;
        case ProcStep::Kind::Write:
            out.push_back(SysStep{Action::tau(), Cps{update_act(m.env, s.device, s.value), s.target}, {},
                                  Cause{Cause::Kind::ActWrite, s.device, s.value}});
            tau = true;
            break;
        case ProcStep::Kind::Read: {
            Interval range = read_sensor(m.env, s.device);
            Rational v = resolver.sense(m.env, s.device, range);
            if (!range.contains(v))
                throw ResolverOutOfRange("measurement " + to_string(v) + " of sensor '" + s.device +
                                         "' outside " + range.str());
            Resolution res;
            res.sensed = std::make_pair(s.device, v);
            out.push_back(SysStep{Action::tau(), Cps{m.env, s.resume(Value(v))}, std::move(res),
                                  Cause{Cause::Kind::SensRead, s.device, Value(v)}});
            tau = true;
            break;
        }
        }
    }
    if (!tau && tickStep) {
        auto box = next_box(m.env);
        auto point = resolver.evolve(m.env, box);
        if (point.size() != box.size()) throw ResolverOutOfRange("resolver returned a state of the wrong dimension");
        Resolution res;
        for (std::size_t i = 0; i < box.size(); ++i) {
            if (!box[i].contains(point[i]))
                throw ResolverOutOfRange("successor " + to_string(point[i]) + " of variable '" +
                                         m.env.plant().variables[i] + "' outside " + box[i].str());
            res.disturbance.push_back(point[i] - m.env.state()[i] - m.env.drift(i));
        }
        out.push_back(SysStep{Action::tick(), Cps{m.env.withState(std::move(point)), tickStep->target},
                              std::move(res), Cause{Cause::Kind::Time, {}, {}}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// traces

ActionSelector ActionSelector::exactly(const Action& a)
{
    ActionSelector s;
    s.kind = a.kind;
    if (a.kind == Action::Kind::Out || a.kind == Action::Kind::In) {
        s.channel = a.channel;
        s.value = a.value;
    }
    return s;
}

ActionSelector ActionSelector::of(Action::Kind kind)
{
    ActionSelector s;
    s.kind = kind;
    return s;
}

ActionSelector ActionSelector::parse(std::string_view text)
{
    std::string t = trim(text);
    if (t.find('(') != std::string::npos) return exactly(parse_action(t));
    if (t == "tau") return of(Action::Kind::Tau);
    if (t == "tick") return of(Action::Kind::Tick);
    std::istringstream in(t);
    std::string word, channel;
    in >> word >> channel;
    ActionSelector s;
    if (word == "out") s.kind = Action::Kind::Out;
    else if (word == "in") s.kind = Action::Kind::In;
    else throw std::invalid_argument("unrecognised action selector '" + t + "'");
    if (!channel.empty()) s.channel = channel;
    return s;
}

bool ActionSelector::matches(const Action& a) const
{
    if (a.kind != kind) return false;
    if (channel && a.channel != *channel) return false;
    if (value && a.value != *value) return false;
    return true;
}

void Trace::append(const SysStep& step)
{
    TraceRecord r;
    r.stepIndex = records.size();
    if (!records.empty())
        r.timeSlot = records.back().timeSlot + (records.back().action.kind == Action::Kind::Tick ? 1 : 0);
    r.action = step.action;
    r.cause = step.cause;
    r.state = step.successor.env.state();
    r.actuators = step.successor.env.actuators();
    r.resolution = step.resolution;
    records.push_back(std::move(r));
}

std::size_t Trace::ticks() const
{
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const TraceRecord& r) {
        return r.action.kind == Action::Kind::Tick;
    }));
}

RunResult run_trace(const Cps& m, const std::vector<ActionSelector>& script, DisturbanceResolver& resolver,
                    const InputAlphabet& inputs)
{
    RunResult result{m, {}};
    result.trace.variables = m.env.plant().variables;
    result.trace.actuators = m.env.plant().actuators;
    for (std::size_t i = 0; i < script.size(); ++i) {
        auto steps = system_steps(result.final, resolver, inputs);
        std::size_t seen = 0;
        const SysStep* chosen = nullptr;
        for (const auto& s : steps) {
            if (!script[i].matches(s.action)) continue;
            if (seen++ == script[i].choice) {
                chosen = &s;
                break;
            }
        }
        if (!chosen) throw StuckAt(i);
        resolver.onStepTaken(*chosen);
        result.trace.append(*chosen);
        result.final = chosen->successor;
    }
    return result;
}

namespace {

std::string joinAssignments(const std::vector<std::string>& names, const std::vector<Rational>& values)
{
    std::string out;
    for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) {
        if (i) out += ";";
        out += names[i] + "=" + to_string(values[i]);
    }
    return out;
}

std::string joinValues(const std::vector<std::string>& names, const std::vector<Value>& values)
{
    std::string out;
    for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) {
        if (i) out += ";";
        out += names[i] + "=" + values[i].str();
    }
    return out;
}

std::string resolutionText(const Trace& trace, const Resolution& r)
{
    if (r.sensed) return r.sensed->first + "=" + to_string(r.sensed->second);
    return joinAssignments(trace.variables, r.disturbance);
}

std::string actionName(const Action& a)
{
    switch (a.kind) {
    case Action::Kind::Tau: return "tau";
    case Action::Kind::Tick: return "tick";
    case Action::Kind::Out: return "out";
    case Action::Kind::In: return "in";
    }
    return {};
}

} // namespace

std::string trace_to_csv(const Trace& trace)
{
    std::ostringstream out;
    out << "stepIndex,timeSlot,action,channel,value,perVariableState,actuatorValuation,resolvedDisturbances\n";
    for (const auto& r : trace.records) {
        bool channelAction = r.action.kind == Action::Kind::Out || r.action.kind == Action::Kind::In;
        out << r.stepIndex << ',' << r.timeSlot << ',' << actionName(r.action) << ','
            << (channelAction ? r.action.channel : "") << ','
            << (channelAction && !r.action.value.isUnit() ? r.action.value.str() : "") << ','
            << joinAssignments(trace.variables, r.state) << ',' << joinValues(trace.actuators, r.actuators) << ','
            << resolutionText(trace, r.resolution) << '\n';
    }
    return out.str();
}

std::string trace_to_json(const Trace& trace, int indent)
{
    using nlohmann::ordered_json;
    ordered_json records = ordered_json::array();
    for (const auto& r : trace.records) {
        ordered_json rec;
        rec["stepIndex"] = r.stepIndex;
        rec["timeSlot"] = r.timeSlot;
        rec["action"] = actionName(r.action);
        bool channelAction = r.action.kind == Action::Kind::Out || r.action.kind == Action::Kind::In;
        rec["channel"] = channelAction ? ordered_json(r.action.channel) : ordered_json(nullptr);
        rec["value"] = channelAction && !r.action.value.isUnit() ? ordered_json(r.action.value.str())
                                                                  : ordered_json(nullptr);
        ordered_json state = ordered_json::object();
        for (std::size_t i = 0; i < trace.variables.size() && i < r.state.size(); ++i)
            state[trace.variables[i]] = to_string(r.state[i]);
        rec["perVariableState"] = state;
        ordered_json acts = ordered_json::object();
        for (std::size_t i = 0; i < trace.actuators.size() && i < r.actuators.size(); ++i)
            acts[trace.actuators[i]] = r.actuators[i].str();
        rec["actuatorValuation"] = acts;
        ordered_json res = ordered_json::object();
        if (r.resolution.sensed) {
            res[r.resolution.sensed->first] = to_string(r.resolution.sensed->second);
        } else {
            for (std::size_t i = 0; i < trace.variables.size() && i < r.resolution.disturbance.size(); ++i)
                res[trace.variables[i]] = to_string(r.resolution.disturbance[i]);
        }
        rec["resolvedDisturbances"] = res;
        records.push_back(std::move(rec));
    }
    return records.dump(indent);
}

} // namespace ccps
