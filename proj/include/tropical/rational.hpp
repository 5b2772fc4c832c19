#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tropical {

/// Exact arbitrary-precision rational. Every length, offset and function value
/// in the library is one of these; nothing is ever rounded.
using Rational = mpq_class;
using Integer = mpz_class;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses "p", "-p" or "p/q" (q > 0 after normalisation). Decimal points,
/// exponents, whitespace and zero denominators are rejected.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);
Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

/// Narrowing with a range check; throws std::overflow_error.
std::int64_t to_int64(const Integer& value);
std::int64_t to_int64(const Rational& value);

Integer lcm(const Integer& a, const Integer& b);

/// A value that may be +infinity or -infinity (function values at unbounded
/// ends, distances to an unbounded end).
class Extended {
public:
    enum class Kind { Finite, PlusInfinity, MinusInfinity };

    Extended() = default;
    Extended(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)

    static Extended plus_infinity() { return Extended(Kind::PlusInfinity); }
    static Extended minus_infinity() { return Extended(Kind::MinusInfinity); }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    const Rational& value() const;

    friend bool operator==(const Extended& a, const Extended& b);
    friend std::partial_ordering operator<=>(const Extended& a, const Extended& b);

private:
    explicit Extended(Kind kind) : kind_(kind) {}

    Kind kind_ = Kind::Finite;
    Rational value_;
};

std::string to_string(const Extended& value);

}  // namespace tropical
