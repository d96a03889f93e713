#include "beliefrev/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <system_error>

namespace beliefrev {

namespace {

using boost::multiprecision::mpz_int;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_number(std::string_view text) {
    throw InvalidInput("not a number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

mpz_int parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) bad_number(whole);
    s.remove_prefix(std::min(s.find_first_not_of('0'), s.size() - 1));
    const mpz_int value{std::string(s)};
    return negative ? mpz_int(-value) : value;
}

mpz_int pow10(unsigned k) {
    mpz_int r = 1;
    for (unsigned i = 0; i < k; ++i) r *= 10;
    return r;
}

}  // namespace

double ScalarTraits<double>::parse(std::string_view text) {
    const auto s = trim(text);
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const double p = parse(s.substr(0, slash));
        const double q = parse(s.substr(slash + 1));
        if (q == 0.0) bad_number(text);
        return p / q;
    }
    std::string_view body = s;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) bad_number(text);
    return value;
}

std::string ScalarTraits<double>::format(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

Rational ScalarTraits<Rational>::parse(std::string_view text) {
    const auto s = trim(text);
    if (s.empty()) bad_number(text);
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const mpz_int p = parse_integer(s.substr(0, slash), text);
        const mpz_int q = parse_integer(s.substr(slash + 1), text);
        if (q == 0) bad_number(text);
        return Rational(p, q);
    }

    std::string_view mantissa = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        const auto exp_text = s.substr(e + 1);
        const auto [ptr, ec] = std::from_chars(exp_text.data() + (exp_text.starts_with('+') ? 1 : 0),
                                               exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) bad_number(text);
    }

    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long fraction_digits = 0;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        const auto int_part = mantissa.substr(0, dot);
        const auto frac_part = mantissa.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) bad_number(text);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
            bad_number(text);
        digits = std::string(int_part) + std::string(frac_part);
        fraction_digits = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(mantissa)) bad_number(text);
        digits = std::string(mantissa);
    }
    if (digits.empty()) bad_number(text);
    // mpz reads a leading 0 as an octal prefix
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));

    mpz_int numerator{digits};
    if (negative) numerator = -numerator;
    const long shift = exponent - fraction_digits;
    if (shift >= 0) return Rational(numerator * pow10(static_cast<unsigned>(shift)));
    return Rational(numerator, pow10(static_cast<unsigned>(-shift)));
}

std::string ScalarTraits<Rational>::format(const Rational& x) {
    const mpz_int p = numerator(x);
    mpz_int q = denominator(x);
    if (q == 1) return p.str();

    unsigned twos = 0;
    unsigned fives = 0;
    mpz_int rest = q;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) return p.str() + "/" + q.str();

    const unsigned places = std::max(twos, fives);
    const mpz_int scaled = p * pow10(places) / q;
    const bool negative = scaled < 0;
    std::string digits = (negative ? mpz_int(-scaled) : scaled).str();
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
    return negative ? "-" + digits : digits;
}

}  // namespace beliefrev
