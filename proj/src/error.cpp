#include "ccps/error.hpp"

#include <sstream>

namespace ccps {

namespace {

std::string join(const std::vector<std::string>& names)
{
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

const char* kindName(UnknownDevice::Kind kind)
{
    switch (kind) {
    case UnknownDevice::Kind::Sensor: return "sensor";
    case UnknownDevice::Kind::Actuator: return "actuator";
    case UnknownDevice::Kind::Variable: return "variable";
    }
    return "device";
}

std::string wellFormednessMessage(const std::vector<std::string>& sensors,
                                  const std::vector<std::string>& actuators)
{
    std::string msg = "ill-formed system:";
    if (!sensors.empty()) msg += " unknown sensor(s) " + join(sensors) + ";";
    if (!actuators.empty()) msg += " unknown actuator(s) " + join(actuators) + ";";
    return msg;
}

std::string parseMessage(std::size_t line, std::size_t column, const std::string& message,
                         const std::vector<std::string>& expected)
{
    std::ostringstream out;
    out << line << ":" << column << ": " << message;
    if (!expected.empty()) out << " (expected " << join(expected) << ")";
    return out.str();
}

} // namespace

UnknownDevice::UnknownDevice(Kind kind, std::string name)
    : Error(std::string("unknown ") + kindName(kind) + " '" + name + "'"), kind_(kind),
      name_(std::move(name))
{
}

WellFormednessError::WellFormednessError(std::vector<std::string> unknownSensors,
                                         std::vector<std::string> unknownActuators)
    : Error(wellFormednessMessage(unknownSensors, unknownActuators)),
      sensors_(std::move(unknownSensors)), actuators_(std::move(unknownActuators))
{
}

NameClash::NameClash(std::vector<std::string> names)
    : Error("environments share names: " + join(names)), names_(std::move(names))
{
}

StuckAt::StuckAt(std::size_t index)
    : Error("no step matches selector " + std::to_string(index)), index_(index)
{
}

StateBudgetExceeded::StateBudgetExceeded(std::size_t budget)
    : Error("abstract state budget of " + std::to_string(budget) + " exceeded"), budget_(budget)
{
}

ParseError::ParseError(std::size_t line, std::size_t column, std::string message,
                       std::vector<std::string> expected)
    : Error(parseMessage(line, column, message, expected)), line_(line), column_(column),
      expected_(std::move(expected))
{
}

} // namespace ccps
