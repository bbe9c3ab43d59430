#include "dynmwm/rational.hpp"

#include <stdexcept>

namespace dynmwm {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

// Boost treats a leading 0 as an octal prefix, so digits are accumulated by hand.
BigInt decimal_digits(std::string_view s) {
    BigInt v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

BigInt parse_int(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("malformed number: '" + std::string(s) + "'");
    BigInt v = decimal_digits(s);
    return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        BigInt num = parse_int(text.substr(0, slash));
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_int(text));
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
        neg = whole.front() == '-';
        whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
        throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = decimal_digits(whole);
    BigInt f = decimal_digits(frac);
    Rational r(BigInt(w * scale + f), scale);
    return neg ? Rational(-r) : r;
}

std::string format_rational(const Rational& x) {
    BigInt num = numerator(x);
    BigInt den = denominator(x);
    if (den == 1) return num.str();
    BigInt d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return num.str() + "/" + den.str();
    int digits = std::max(twos, fives);
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    BigInt scaled = num * (scale / den);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string s = scaled.str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
    return neg ? "-" + s : s;
}

Rational rational_pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::invalid_argument("zero to a negative power");
        return Rational(1) / rational_pow(base, -exponent);
    }
    Rational result = 1;
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1) result *= b;
        b *= b;
        exponent >>= 1;
    }
    return result;
}

long floor_log(const Rational& x, const Rational& base) {
    if (x <= 0) throw std::invalid_argument("floor_log of non-positive value");
    if (base <= 1) throw std::invalid_argument("floor_log base must exceed 1");
    long j = 0;
    Rational p = 1;
    if (x >= 1) {
        while (p * base <= x) { p *= base; ++j; }
    } else {
        while (p > x) { p /= base; --j; }
    }
    return j;
}

long ceil_log(const Rational& x, const Rational& base) {
    long j = floor_log(x, base);
    return rational_pow(base, j) == x ? j : j + 1;
}

BigInt floor_div(const Rational& x) {
    BigInt n = numerator(x);
    BigInt d = denominator(x);
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

BigInt ceil_div(const Rational& x) {
    BigInt f = floor_div(x);
    return Rational(f) == x ? f : BigInt(f + 1);
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

bool pow_ge(const Rational& r, const Rational& base, const Rational& x) {
    BigInt p = numerator(x);
    BigInt q = denominator(x);
    if (q > 4096) throw std::invalid_argument("pow_ge exponent denominator too large");
    long qi = q.convert_to<long>();
    long pi = p.convert_to<long>();
    return rational_pow(r, qi) >= rational_pow(base, pi);
}

}  // namespace dynmwm
