#include "ccps/interval.hpp"

#include <stdexcept>

namespace ccps {

Interval::Interval(Rational lo, Rational hi, bool loOpen, bool hiOpen)
{
    if (lo > hi) return;
    if (lo == hi && (loOpen || hiOpen)) return;
    bounds_ = Bounds{std::move(lo), std::move(hi), loOpen, hiOpen};
}

Interval Interval::around(const Rational& center, const Rational& radius)
{
    return Interval(center - radius, center + radius);
}

const Rational& Interval::lo() const
{
    if (!bounds_) throw std::logic_error("empty interval has no bounds");
    return bounds_->lo;
}

const Rational& Interval::hi() const
{
    if (!bounds_) throw std::logic_error("empty interval has no bounds");
    return bounds_->hi;
}

bool Interval::loOpen() const { return bounds_ && bounds_->loOpen; }
bool Interval::hiOpen() const { return bounds_ && bounds_->hiOpen; }

bool Interval::contains(const Rational& v) const
{
    if (!bounds_) return false;
    const auto& b = *bounds_;
    bool aboveLo = b.loOpen ? v > b.lo : v >= b.lo;
    bool belowHi = b.hiOpen ? v < b.hi : v <= b.hi;
    return aboveLo && belowHi;
}

bool Interval::containsInterval(const Interval& other) const
{
    if (other.isEmpty()) return true;
    if (isEmpty()) return false;
    const auto& a = *bounds_;
    const auto& b = *other.bounds_;
    bool loOk = a.lo < b.lo || (a.lo == b.lo && (!a.loOpen || b.loOpen));
    bool hiOk = b.hi < a.hi || (a.hi == b.hi && (!a.hiOpen || b.hiOpen));
    return loOk && hiOk;
}

Interval Interval::operator+(const Interval& other) const
{
    if (isEmpty() || other.isEmpty()) return {};
    const auto& a = *bounds_;
    const auto& b = *other.bounds_;
    return Interval(a.lo + b.lo, a.hi + b.hi, a.loOpen || b.loOpen, a.hiOpen || b.hiOpen);
}

Interval Interval::shifted(const Rational& delta) const
{
    if (isEmpty()) return {};
    const auto& a = *bounds_;
    return Interval(a.lo + delta, a.hi + delta, a.loOpen, a.hiOpen);
}

Interval Interval::intersect(const Interval& other) const
{
    if (isEmpty() || other.isEmpty()) return {};
    return clampBelow(other.lo(), other.loOpen()).clampAbove(other.hi(), other.hiOpen());
}

Interval Interval::clampBelow(const Rational& bound, bool open) const
{
    if (isEmpty()) return {};
    const auto& a = *bounds_;
    if (bound > a.lo) return Interval(bound, a.hi, open, a.hiOpen);
    if (bound == a.lo) return Interval(a.lo, a.hi, a.loOpen || open, a.hiOpen);
    return *this;
}

Interval Interval::clampAbove(const Rational& bound, bool open) const
{
    if (isEmpty()) return {};
    const auto& a = *bounds_;
    if (bound < a.hi) return Interval(a.lo, bound, a.loOpen, open);
    if (bound == a.hi) return Interval(a.lo, a.hi, a.loOpen, a.hiOpen || open);
    return *this;
}

Interval Interval::hull(const Interval& other) const
{
    if (isEmpty()) return other;
    if (other.isEmpty()) return *this;
    const auto& a = *bounds_;
    const auto& b = *other.bounds_;
    Rational lo = a.lo;
    bool loOpen = a.loOpen;
    if (b.lo < a.lo) {
        lo = b.lo;
        loOpen = b.loOpen;
    } else if (b.lo == a.lo) {
        loOpen = a.loOpen && b.loOpen;
    }
    Rational hi = a.hi;
    bool hiOpen = a.hiOpen;
    if (b.hi > a.hi) {
        hi = b.hi;
        hiOpen = b.hiOpen;
    } else if (b.hi == a.hi) {
        hiOpen = a.hiOpen && b.hiOpen;
    }
    return Interval(lo, hi, loOpen, hiOpen);
}

Rational Interval::interiorPoint() const
{
    if (isEmpty()) throw std::logic_error("empty interval has no points");
    return midpoint(bounds_->lo, bounds_->hi);
}

bool Interval::operator==(const Interval& other) const
{
    if (isEmpty() || other.isEmpty()) return isEmpty() == other.isEmpty();
    const auto& a = *bounds_;
    const auto& b = *other.bounds_;
    return a.lo == b.lo && a.hi == b.hi && a.loOpen == b.loOpen && a.hiOpen == b.hiOpen;
}

std::string Interval::str() const
{
    if (isEmpty()) return "empty";
    const auto& a = *bounds_;
    return std::string(a.loOpen ? "(" : "[") + to_string(a.lo) + ", " + to_string(a.hi) +
           (a.hiOpen ? ")" : "]");
}

} // namespace ccps
