#include "tropical/rational.hpp"

#include <cctype>
#include <limits>

namespace tropical {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw ParseError("malformed rational \"" + std::string(text) + "\"");
    }
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    Rational r(n, d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Integer floor_of(const Rational& value) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Integer ceil_of(const Rational& value) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

std::int64_t to_int64(const Integer& value) {
    if (!value.fits_slong_p()) throw std::overflow_error("integer out of 64-bit range: " + value.get_str());
    static_assert(sizeof(long) == sizeof(std::int64_t));
    return value.get_si();
}

std::int64_t to_int64(const Rational& value) {
    if (!is_integer(value)) throw InvalidArgument("expected an integer, got " + to_string(value));
    return to_int64(value.get_num());
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

const Rational& Extended::value() const {
    if (kind_ != Kind::Finite) throw InvalidArgument("infinite value has no rational part");
    return value_;
}

bool operator==(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Extended::Kind::Finite || a.value_ == b.value_;
}

std::partial_ordering operator<=>(const Extended& a, const Extended& b) {
    auto rank = [](Extended::Kind k) {
        switch (k) {
            case Extended::Kind::MinusInfinity: return 0;
            case Extended::Kind::Finite: return 1;
            case Extended::Kind::PlusInfinity: return 2;
        }
        return 1;
    };
    if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
    if (a.kind_ != Extended::Kind::Finite) return std::partial_ordering::equivalent;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::string to_string(const Extended& value) {
    switch (value.kind()) {
        case Extended::Kind::PlusInfinity: return "inf";
        case Extended::Kind::MinusInfinity: return "-inf";
        case Extended::Kind::Finite: break;
    }
    return to_string(value.value());
}

}  // namespace tropical
