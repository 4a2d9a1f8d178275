#include "infonomics/scalar.hpp"

#include "infonomics/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace infonomics {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Decimal literal with optional exponent, parsed exactly.
Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    boost::multiprecision::cpp_int digits = 0;
    long exponent = 0;
    bool seen_digit = false;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            if (seen_point) --exponent;
            seen_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw ValidationError("not a number: '" + std::string(whole) + "'");
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw ValidationError("not a number: '" + std::string(whole) + "'");
        std::string_view rest = s.substr(i + 1);
        long e = 0;
        if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
        if (ec != std::errc() || ptr != rest.data() + rest.size())
            throw ValidationError("bad exponent in '" + std::string(whole) + "'");
        exponent += e;
    }
    Rational r(digits);
    boost::multiprecision::cpp_int scale = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                      static_cast<unsigned>(std::labs(exponent)));
    r = exponent >= 0 ? Rational(r * scale) : Rational(r / scale);
    return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s, text);
    Rational num = parse_decimal(trim(s.substr(0, slash)), text);
    Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

double parse_double(std::string_view text) {
    std::string_view s = trim(text);
    if (s.find('/') != std::string_view::npos) return to_double(parse_rational(s));
    std::string buf(s);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size())
        throw ValidationError("not a number: '" + std::string(text) + "'");
    return v;
}

std::string format_scalar(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

std::string format_scalar(const Rational& x, int) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace infonomics
