#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace infonomics {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double default_tol() { return 1e-12; }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational default_tol() { return Rational(0); }
};

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class T>
T abs_value(const T& x) {
    return x < 0 ? T(-x) : x;
}

// Accepts "3", "-3/4", "0.125", "1e-3". Throws ValidationError.
Rational parse_rational(std::string_view text);
double parse_double(std::string_view text);

template <class T>
T parse_scalar(std::string_view text);

template <>
inline double parse_scalar<double>(std::string_view text) { return parse_double(text); }
template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return parse_rational(text); }

std::string format_scalar(double x, int precision = 12);
std::string format_scalar(const Rational& x, int precision = 12);

template <class T>
std::vector<T> convert_vector(const std::vector<double>& v) {
    return std::vector<T>(v.begin(), v.end());
}

template <class T>
T sum(const std::vector<T>& v) {
    T s(0);
    for (const auto& x : v) s += x;
    return s;
}

}  // namespace infonomics
