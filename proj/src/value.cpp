#include "ccps/value.hpp"

namespace ccps {

bool Value::operator<(const Value& other) const
{
    if (v_.index() != other.v_.index()) return v_.index() < other.v_.index();
    switch (v_.index()) {
    case 0: return false;
    case 1: return real() < other.real();
    case 2: return switchValue() < other.switchValue();
    default: return name() < other.name();
    }
}

std::string Value::str() const
{
    if (isUnit()) return "()";
    if (isReal()) return to_string(real());
    if (isSwitch()) return switchValue() == Switch::On ? "on" : "off";
    return name();
}

Value on() { return Value(Switch::On); }
Value off() { return Value(Switch::Off); }

} // namespace ccps
