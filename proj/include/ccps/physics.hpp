#pragma once

#include "ccps/interval.hpp"
#include "ccps/value.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccps {

/// Per-variable drift: the first row whose actuator conditions all hold
/// gives the drift, otherwise the default arm applies.
struct DriftTable {
    struct Row {
        std::vector<std::pair<std::string, Value>> when;
        Rational drift;
        bool operator==(const Row&) const = default;
    };
    std::vector<Row> rows;
    Rational fallback = 0;

    bool operator==(const DriftTable&) const = default;
};

struct VariableDecl {
    Rational initial = 0;
    Rational uncertainty = 0;
    DriftTable dynamics;
    /// Box constraint of the invariant; absent means unconstrained.
    std::optional<Interval> invariant;
};

struct SensorDecl {
    std::string target;
    Rational error = 0;
};

/// Declarations that never change along an execution: variable names,
/// uncertainty, dynamics, sensors and invariant.
struct Plant {
    std::vector<std::string> variables;   // sorted
    std::vector<Rational> uncertainty;
    std::vector<DriftTable> dynamics;
    std::vector<std::optional<Interval>> invariant;
    std::vector<std::string> actuators;   // sorted
    std::vector<std::string> sensors;     // sorted
    std::vector<Rational> sensorError;
    std::vector<std::size_t> sensorTarget;

    std::optional<std::size_t> variableIndex(const std::string& name) const;
    std::optional<std::size_t> actuatorIndex(const std::string& name) const;
    std::optional<std::size_t> sensorIndex(const std::string& name) const;

    bool operator==(const Plant& other) const;
};

/// A physical environment: state and actuator functions over a shared,
/// constant plant description.
class PhysicalEnv {
public:
    /// The empty environment (no variables, sensors or actuators).
    PhysicalEnv();

    /// Validates key sets: every sensor targets a declared variable and
    /// uncertainties/errors are non-negative. Throws Error otherwise.
    static PhysicalEnv make(const std::map<std::string, VariableDecl>& variables,
                            const std::map<std::string, Value>& actuators,
                            const std::map<std::string, SensorDecl>& sensors);

    const Plant& plant() const { return *plant_; }
    const std::shared_ptr<const Plant>& sharedPlant() const { return plant_; }

    const std::vector<Rational>& state() const { return state_; }
    const std::vector<Value>& actuators() const { return actuators_; }

    const Rational& stateOf(const std::string& variable) const;
    const Value& actuatorOf(const std::string& actuator) const;

    /// Same plant and actuators, new state vector (aligned with plant().variables).
    PhysicalEnv withState(std::vector<Rational> state) const;
    PhysicalEnv withActuators(std::vector<Value> actuators) const;

    /// Drift of variable `index` under the current actuator valuation.
    Rational drift(std::size_t index) const;
    Rational driftUnder(std::size_t index, const std::vector<Value>& actuators) const;

    /// Back to declaration form, e.g. for printing.
    std::map<std::string, VariableDecl> variableDecls() const;
    std::map<std::string, Value> actuatorDecls() const;
    std::map<std::string, SensorDecl> sensorDecls() const;

    bool operator==(const PhysicalEnv& other) const;

private:
    std::shared_ptr<const Plant> plant_;
    std::vector<Rational> state_;
    std::vector<Value> actuators_;
};

/// Drift of variable `index` of `plant` under an actuator valuation in plant order.
Rational drift_under(const Plant& plant, std::size_t index, const std::vector<Value>& actuators);

/// Closed interval of admissible measurements of sensor `s`.
Interval read_sensor(const PhysicalEnv& env, const std::string& sensor);

PhysicalEnv update_act(const PhysicalEnv& env, const std::string& actuator, const Value& v);

/// Box of admissible next values per variable.
std::map<std::string, Interval> next_envs(const PhysicalEnv& env);
/// Same as next_envs, aligned with plant().variables.
std::vector<Interval> next_box(const PhysicalEnv& env);

bool invariant_holds(const PhysicalEnv& env);

/// Throws NameClash listing every shared variable, sensor or actuator name.
PhysicalEnv disjoint_union(const PhysicalEnv& e1, const PhysicalEnv& e2);

/// Names shared between the two environments (empty when disjoint).
std::vector<std::string> shared_names(const PhysicalEnv& e1, const PhysicalEnv& e2);

} // namespace ccps
