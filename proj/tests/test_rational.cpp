#include "tropical/rational.hpp"

#include <doctest.h>

using namespace tropical;

TEST_CASE("parse_rational accepts integers and fractions in lowest terms") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-7") == -7);
    CHECK(parse_rational("4/6") == Rational(2, 3));
    CHECK(parse_rational("-1/2") == Rational(-1, 2));
    CHECK(to_string(parse_rational("10/4")) == "5/2");
    CHECK(to_string(parse_rational("8/4")) == "2");
}

TEST_CASE("parse_rational rejects inexact or malformed text") {
    for (const char* bad : {"1/0", "1.5", "1e3", " 1", "1 ", "", "/2", "1/", "1//2", "+-1", "abc", "0x10"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_rational(bad), ParseError);
    }
}

TEST_CASE("floor, ceil and narrowing") {
    CHECK(floor_of(Rational(-1, 2)) == -1);
    CHECK(ceil_of(Rational(-1, 2)) == 0);
    CHECK(floor_of(Rational(7, 3)) == 2);
    CHECK(ceil_of(Rational(7, 3)) == 3);
    CHECK(to_int64(Rational(-5)) == -5);
    CHECK_THROWS(to_int64(Rational(1, 2)));
    CHECK_THROWS_AS(to_int64(Integer("100000000000000000000")), std::overflow_error);
    CHECK(lcm(Integer(4), Integer(6)) == 12);
}

TEST_CASE("extended values order infinities around the rationals") {
    Extended lo = Extended::minus_infinity(), hi = Extended::plus_infinity();
    CHECK(lo < Extended(Rational(-1000)));
    CHECK(Extended(Rational(1000)) < hi);
    CHECK(hi == Extended::plus_infinity());
    CHECK(to_string(hi) == "inf");
    CHECK(to_string(lo) == "-inf");
    CHECK(to_string(Extended(Rational(1, 3))) == "1/3");
    CHECK_THROWS(hi.value());
}
