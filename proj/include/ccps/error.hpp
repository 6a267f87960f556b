#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ccps {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A process term violates a structural rule (unguarded recursion, open term, ...).
class TermError : public Error {
public:
    using Error::Error;
};

class UnknownDevice : public Error {
public:
    enum class Kind { Sensor, Actuator, Variable };
    UnknownDevice(Kind kind, std::string name);
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    Kind kind_;
    std::string name_;
};

/// Process mentions devices the environment does not declare.
class WellFormednessError : public Error {
public:
    WellFormednessError(std::vector<std::string> unknownSensors,
                        std::vector<std::string> unknownActuators);
    const std::vector<std::string>& unknownSensors() const { return sensors_; }
    const std::vector<std::string>& unknownActuators() const { return actuators_; }

private:
    std::vector<std::string> sensors_;
    std::vector<std::string> actuators_;
};

class NameClash : public Error {
public:
    explicit NameClash(std::vector<std::string> names);
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

class ResolverOutOfRange : public Error {
public:
    using Error::Error;
};

class StuckAt : public Error {
public:
    explicit StuckAt(std::size_t index);
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class StateBudgetExceeded : public Error {
public:
    explicit StateBudgetExceeded(std::size_t budget);
    std::size_t budget() const { return budget_; }

private:
    std::size_t budget_;
};

/// The abstraction cannot represent the model (e.g. a sensed value escapes into a channel).
class AbstractionError : public Error {
public:
    using Error::Error;
};

class EmptySelection : public Error {
public:
    using Error::Error;
};

class InterferenceViolation : public Error {
public:
    using Error::Error;
};

class ConcretizationFailed : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message,
               std::vector<std::string> expected);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

} // namespace ccps
