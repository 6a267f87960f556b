#include "ccps/interval.hpp"
#include "ccps/value.hpp"

#include <doctest.h>

using namespace ccps;

TEST_CASE("decimal literals are exact")
{
    CHECK(parse_rational("0.4") == Rational(2, 5));
    CHECK(parse_rational("9.9") + parse_rational("0.1") == 10);
    CHECK(parse_rational("-1.25") == Rational(-5, 4));
    CHECK(parse_rational("7") == 7);
}

TEST_CASE("rationals print as decimals when they terminate")
{
    CHECK(to_string(Rational(99, 10)) == "9.9");
    CHECK(to_string(Rational(-1, 3)) == "-1/3");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(to_string(Rational(-1, 20)) == "-0.05");
    CHECK(parse_rational(to_string(Rational(123, 40))) == Rational(123, 40));
}

TEST_CASE("interval membership respects open ends")
{
    Interval i(Rational(99, 10), Rational(23, 2), true, false);
    CHECK_FALSE(i.contains(Rational(99, 10)));
    CHECK(i.contains(Rational(23, 2)));
    CHECK(i.contains(10));
    CHECK(i.str() == "(9.9, 11.5]");
    CHECK(Interval(0, 30).str() == "[0, 30]");
    CHECK(Interval::empty().str() == "empty");
}

TEST_CASE("interval arithmetic")
{
    Interval a(0, 1, true, false);
    Interval b = Interval::around(10, Rational(1, 10));
    CHECK((a + b) == Interval(Rational(99, 10), Rational(111, 10), true, false));
    CHECK(a.shifted(2) == Interval(2, 3, true, false));

    SUBCASE("intersection")
    {
        CHECK(Interval(0, 5).intersect(Interval(5, 9)) == Interval::point(5));
        CHECK(Interval(0, 5, false, true).intersect(Interval(5, 9)).isEmpty());
        CHECK(Interval(0, 10).clampBelow(10, true).isEmpty());
        CHECK(Interval(0, 10).clampAbove(3, true) == Interval(0, 3, false, true));
    }
    SUBCASE("hull keeps the tighter openness at shared endpoints")
    {
        Interval h = Interval(0, 1, true, true).hull(Interval(1, 2, false, true));
        CHECK(h == Interval(0, 2, true, true));
        CHECK(Interval(0, 1, true, false).hull(Interval(0, 1, false, true)) == Interval(0, 1));
    }
    SUBCASE("interior point")
    {
        Interval o(1, 2, true, true);
        CHECK(o.contains(o.interiorPoint()));
        CHECK(Interval::point(3).interiorPoint() == 3);
    }
}

TEST_CASE("value order and printing")
{
    CHECK(Value(Unit{}) < Value(1));
    CHECK(Value(1) < on());
    CHECK(off() < on());
    CHECK(on() < Value(Name{"L"}));
    CHECK(Value(Name{"ID"}).str() == "ID");
    CHECK(Value(Rational(2, 5)).str() == "0.4");
    CHECK(Value(Unit{}).str() == "()");
}
