#pragma once

// Arithmetic modes. Every algorithm is templated on a scalar type; `double`
// is the default floating mode, `Rational` the exact mode used by oracles.

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "beliefrev/errors.hpp"

namespace beliefrev {

using Rational = boost::multiprecision::mpq_rational;

inline constexpr double kDefaultTolerance = 1e-9;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;

    static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
    static bool equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }
    static double magnitude(double x) { return std::abs(x); }
    static double to_double(double x) { return x; }

    static double parse(std::string_view text);
    // Shortest representation that reads back to the same double.
    static std::string format(double x);
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;

    static bool is_zero(const Rational& x, double) { return x == 0; }
    static bool equal(const Rational& a, const Rational& b, double) { return a == b; }
    static Rational magnitude(const Rational& x) { return abs(x); }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }

    // Accepts decimals ("0.1875", "-2.5e-3") and fractions ("3/16").
    static Rational parse(std::string_view text);
    // Terminating decimal when the denominator allows, "p/q" otherwise.
    static std::string format(const Rational& x);
};

template <class S>
bool is_zero(const S& x, double tol) {
    return ScalarTraits<S>::is_zero(x, tol);
}

template <class S>
bool approx_equal(const S& a, const S& b, double tol) {
    return ScalarTraits<S>::equal(a, b, tol);
}

// Strictly positive beyond tolerance.
template <class S>
bool is_positive(const S& x, double tol) {
    return x > 0 && !ScalarTraits<S>::is_zero(x, tol);
}

// Below zero beyond tolerance.
template <class S>
bool is_negative(const S& x, double tol) {
    return x < 0 && !ScalarTraits<S>::is_zero(x, tol);
}

template <class S>
std::string format_scalar(const S& x) {
    return ScalarTraits<S>::format(x);
}

template <class S>
S parse_scalar(std::string_view text) {
    return ScalarTraits<S>::parse(text);
}

}  // namespace beliefrev
