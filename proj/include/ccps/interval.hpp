#pragma once

#include "ccps/rational.hpp"

#include <optional>
#include <string>

namespace ccps {

/// A set of rationals of the form [lo, hi], (lo, hi], [lo, hi) or (lo, hi),
/// or the empty set. A degenerate interval lo = hi is always closed.
class Interval {
public:
    /// The empty interval.
    Interval() = default;

    Interval(Rational lo, Rational hi, bool loOpen = false, bool hiOpen = false);

    static Interval point(const Rational& v) { return Interval(v, v); }
    static Interval empty() { return Interval(); }
    /// [center - radius, center + radius]
    static Interval around(const Rational& center, const Rational& radius);

    bool isEmpty() const { return !bounds_.has_value(); }
    const Rational& lo() const;
    const Rational& hi() const;
    bool loOpen() const;
    bool hiOpen() const;

    bool contains(const Rational& v) const;
    bool containsInterval(const Interval& other) const;

    /// Minkowski sum; an endpoint is open when either summand's is.
    Interval operator+(const Interval& other) const;
    Interval shifted(const Rational& delta) const;

    Interval intersect(const Interval& other) const;
    /// Intersection with (bound, +inf) when open, [bound, +inf) otherwise.
    Interval clampBelow(const Rational& bound, bool open) const;
    /// Intersection with (-inf, bound) when open, (-inf, bound] otherwise.
    Interval clampAbove(const Rational& bound, bool open) const;
    /// Smallest interval containing both.
    Interval hull(const Interval& other) const;

    /// Some point strictly inside when the interval is non-degenerate, the
    /// point itself otherwise.
    Rational interiorPoint() const;

    bool operator==(const Interval& other) const;
    bool operator!=(const Interval& other) const { return !(*this == other); }

    /// "(9.9, 11.5]", "[0, 0]" or "empty".
    std::string str() const;

private:
    struct Bounds {
        Rational lo;
        Rational hi;
        bool loOpen;
        bool hiOpen;
    };
    std::optional<Bounds> bounds_;
};

} // namespace ccps
