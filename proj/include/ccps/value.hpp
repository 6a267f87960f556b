#pragma once

#include "ccps/rational.hpp"

#include <compare>
#include <string>
#include <variant>

namespace ccps {

enum class Switch { Off, On };

/// An opaque name value, e.g. an engine identifier.
struct Name {
    std::string id;
    bool operator==(const Name&) const = default;
};

/// The payload of a pure synchronisation.
struct Unit {
    bool operator==(const Unit&) const = default;
};

/// A data value: a rational, an on/off switch position, a name, or unit.
class Value {
public:
    Value() : v_(Unit{}) {}
    Value(Rational r) : v_(std::move(r)) {}
    Value(int i) : v_(Rational(i)) {}
    Value(Switch s) : v_(s) {}
    Value(Name n) : v_(std::move(n)) {}
    Value(Unit u) : v_(u) {}

    bool isReal() const { return std::holds_alternative<Rational>(v_); }
    bool isSwitch() const { return std::holds_alternative<Switch>(v_); }
    bool isName() const { return std::holds_alternative<Name>(v_); }
    bool isUnit() const { return std::holds_alternative<Unit>(v_); }

    const Rational& real() const { return std::get<Rational>(v_); }
    Switch switchValue() const { return std::get<Switch>(v_); }
    const std::string& name() const { return std::get<Name>(v_).id; }

    bool operator==(const Value& other) const { return v_ == other.v_; }
    bool operator!=(const Value& other) const { return !(*this == other); }
    /// Total order: unit < reals < switches < names.
    bool operator<(const Value& other) const;

    std::string str() const;

private:
    std::variant<Unit, Rational, Switch, Name> v_;
};

Value on();
Value off();

} // namespace ccps
