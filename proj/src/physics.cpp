#include "ccps/physics.hpp"

#include "ccps/error.hpp"

#include <algorithm>
#include <set>

namespace ccps {

namespace {

std::optional<std::size_t> indexIn(const std::vector<std::string>& sorted, const std::string& name)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), name);
    if (it == sorted.end() || *it != name) return std::nullopt;
    return static_cast<std::size_t>(it - sorted.begin());
}

std::shared_ptr<const Plant> emptyPlant()
{
    static const auto plant = std::make_shared<const Plant>();
    return plant;
}

} // namespace

std::optional<std::size_t> Plant::variableIndex(const std::string& name) const
{
    return indexIn(variables, name);
}

std::optional<std::size_t> Plant::actuatorIndex(const std::string& name) const
{
    return indexIn(actuators, name);
}

std::optional<std::size_t> Plant::sensorIndex(const std::string& name) const
{
    return indexIn(sensors, name);
}

bool Plant::operator==(const Plant& other) const
{
    return variables == other.variables && uncertainty == other.uncertainty &&
           dynamics == other.dynamics && invariant == other.invariant &&
           actuators == other.actuators && sensors == other.sensors &&
           sensorError == other.sensorError && sensorTarget == other.sensorTarget;
}

PhysicalEnv::PhysicalEnv() : plant_(emptyPlant()) {}

PhysicalEnv PhysicalEnv::make(const std::map<std::string, VariableDecl>& variables,
                              const std::map<std::string, Value>& actuators,
                              const std::map<std::string, SensorDecl>& sensors)
{
    auto plant = std::make_shared<Plant>();
    PhysicalEnv env;
    for (const auto& [name, decl] : variables) {
        if (decl.uncertainty < 0) throw Error("negative uncertainty for variable '" + name + "'");
        plant->variables.push_back(name);
        plant->uncertainty.push_back(decl.uncertainty);
        plant->dynamics.push_back(decl.dynamics);
        plant->invariant.push_back(decl.invariant);
        env.state_.push_back(decl.initial);
        for (const auto& row : decl.dynamics.rows)
            for (const auto& [actuator, value] : row.when)
                if (!actuators.count(actuator))
                    throw UnknownDevice(UnknownDevice::Kind::Actuator, actuator);
    }
    for (const auto& [name, value] : actuators) {
        plant->actuators.push_back(name);
        env.actuators_.push_back(value);
    }
    for (const auto& [name, decl] : sensors) {
        auto target = plant->variableIndex(decl.target);
        if (!target) throw UnknownDevice(UnknownDevice::Kind::Variable, decl.target);
        if (decl.error < 0) throw Error("negative error for sensor '" + name + "'");
        plant->sensors.push_back(name);
        plant->sensorError.push_back(decl.error);
        plant->sensorTarget.push_back(*target);
    }
    env.plant_ = std::move(plant);
    return env;
}

const Rational& PhysicalEnv::stateOf(const std::string& variable) const
{
    auto i = plant_->variableIndex(variable);
    if (!i) throw UnknownDevice(UnknownDevice::Kind::Variable, variable);
    return state_[*i];
}

const Value& PhysicalEnv::actuatorOf(const std::string& actuator) const
{
    auto i = plant_->actuatorIndex(actuator);
    if (!i) throw UnknownDevice(UnknownDevice::Kind::Actuator, actuator);
    return actuators_[*i];
}

PhysicalEnv PhysicalEnv::withState(std::vector<Rational> state) const
{
    PhysicalEnv copy = *this;
    copy.state_ = std::move(state);
    return copy;
}

PhysicalEnv PhysicalEnv::withActuators(std::vector<Value> actuators) const
{
    PhysicalEnv copy = *this;
    copy.actuators_ = std::move(actuators);
    return copy;
}

Rational PhysicalEnv::drift(std::size_t index) const
{
    return driftUnder(index, actuators_);
}

Rational PhysicalEnv::driftUnder(std::size_t index, const std::vector<Value>& actuators) const
{
    return drift_under(*plant_, index, actuators);
}

Rational drift_under(const Plant& plant, std::size_t index, const std::vector<Value>& actuators)
{
    const DriftTable& table = plant.dynamics[index];
    for (const auto& row : table.rows) {
        bool holds = std::all_of(row.when.begin(), row.when.end(), [&](const auto& cond) {
            auto a = plant.actuatorIndex(cond.first);
            return a && actuators[*a] == cond.second;
        });
        if (holds) return row.drift;
    }
    return table.fallback;
}

std::map<std::string, VariableDecl> PhysicalEnv::variableDecls() const
{
    std::map<std::string, VariableDecl> out;
    for (std::size_t i = 0; i < plant_->variables.size(); ++i)
        out[plant_->variables[i]] =
            VariableDecl{state_[i], plant_->uncertainty[i], plant_->dynamics[i], plant_->invariant[i]};
    return out;
}

std::map<std::string, Value> PhysicalEnv::actuatorDecls() const
{
    std::map<std::string, Value> out;
    for (std::size_t i = 0; i < plant_->actuators.size(); ++i) out[plant_->actuators[i]] = actuators_[i];
    return out;
}

std::map<std::string, SensorDecl> PhysicalEnv::sensorDecls() const
{
    std::map<std::string, SensorDecl> out;
    for (std::size_t i = 0; i < plant_->sensors.size(); ++i)
        out[plant_->sensors[i]] =
            SensorDecl{plant_->variables[plant_->sensorTarget[i]], plant_->sensorError[i]};
    return out;
}

bool PhysicalEnv::operator==(const PhysicalEnv& other) const
{
    if (state_ != other.state_ || actuators_ != other.actuators_) return false;
    return plant_ == other.plant_ || *plant_ == *other.plant_;
}

Interval read_sensor(const PhysicalEnv& env, const std::string& sensor)
{
    const Plant& plant = env.plant();
    auto s = plant.sensorIndex(sensor);
    if (!s) throw UnknownDevice(UnknownDevice::Kind::Sensor, sensor);
    return Interval::around(env.state()[plant.sensorTarget[*s]], plant.sensorError[*s]);
}

PhysicalEnv update_act(const PhysicalEnv& env, const std::string& actuator, const Value& v)
{
    auto a = env.plant().actuatorIndex(actuator);
    if (!a) throw UnknownDevice(UnknownDevice::Kind::Actuator, actuator);
    std::vector<Value> acts = env.actuators();
    acts[*a] = v;
    return env.withActuators(std::move(acts));
}

std::vector<Interval> next_box(const PhysicalEnv& env)
{
    const Plant& plant = env.plant();
    std::vector<Interval> out;
    out.reserve(plant.variables.size());
    for (std::size_t i = 0; i < plant.variables.size(); ++i)
        out.push_back(Interval::around(env.state()[i] + env.drift(i), plant.uncertainty[i]));
    return out;
}

std::map<std::string, Interval> next_envs(const PhysicalEnv& env)
{
    std::map<std::string, Interval> out;
    auto box = next_box(env);
    for (std::size_t i = 0; i < box.size(); ++i) out.emplace(env.plant().variables[i], box[i]);
    return out;
}

bool invariant_holds(const PhysicalEnv& env)
{
    const Plant& plant = env.plant();
    for (std::size_t i = 0; i < plant.variables.size(); ++i)
        if (plant.invariant[i] && !plant.invariant[i]->contains(env.state()[i])) return false;
    return true;
}

std::vector<std::string> shared_names(const PhysicalEnv& e1, const PhysicalEnv& e2)
{
    const Plant& a = e1.plant();
    const Plant& b = e2.plant();
    std::set<std::string> left(a.variables.begin(), a.variables.end());
    left.insert(a.actuators.begin(), a.actuators.end());
    left.insert(a.sensors.begin(), a.sensors.end());
    std::set<std::string> shared;
    for (const auto* names : {&b.variables, &b.actuators, &b.sensors})
        for (const auto& n : *names)
            if (left.count(n)) shared.insert(n);
    return {shared.begin(), shared.end()};
}

PhysicalEnv disjoint_union(const PhysicalEnv& e1, const PhysicalEnv& e2)
{
    auto clash = shared_names(e1, e2);
    if (!clash.empty()) throw NameClash(std::move(clash));
    auto vars = e1.variableDecls();
    vars.merge(e2.variableDecls());
    auto acts = e1.actuatorDecls();
    acts.merge(e2.actuatorDecls());
    auto sens = e1.sensorDecls();
    sens.merge(e2.sensorDecls());
    return PhysicalEnv::make(vars, acts, sens);
}

} // namespace ccps
