#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace pivotal {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

// Sign tests in Binary64 go through a single absolute threshold; the rational
// scalar uses eps 0 and every test becomes exact.
template <class T>
struct tolerance {
    T eps;

    bool positive(const T& v) const { return v > eps; }
    bool negative(const T& v) const { return v < -eps; }
    bool zero(const T& v) const { return !positive(v) && !negative(v); }
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr const char* name() { return "f64"; }
    static tolerance<double> default_tolerance() { return {1e-9}; }
    static double from_int(long long v) { return static_cast<double>(v); }
    static double to_double(double v) { return v; }

    static std::string str(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }
    static std::string str_fixed(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return buf;
    }
    static std::string json(double v) { return str(v); }
};

template <>
struct scalar_traits<rational> {
    static constexpr const char* name() { return "rational"; }
    static tolerance<rational> default_tolerance() { return {rational(0)}; }
    static rational from_int(long long v) { return rational(v); }
    static double to_double(const rational& v) { return v.template convert_to<double>(); }

    static std::string str(const rational& v) {
        bigint num = boost::multiprecision::numerator(v);
        bigint den = boost::multiprecision::denominator(v);
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
    }
    static std::string str_fixed(const rational& v) { return str(v); }
    static std::string json(const rational& v) { return "\"" + str(v) + "\""; }
};

// Exact parse of a decimal or p/q token into a rational.
inline rational rational_from_token(const std::string& tok) {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        bigint num(tok.substr(0, slash));
        bigint den(tok.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return rational(num, den);
    }
    std::string digits;
    long long exp10 = 0;
    bool neg = false;
    size_t i = 0;
    if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) neg = tok[i++] == '-';
    bool any = false;
    for (; i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])); ++i) {
        digits += tok[i];
        any = true;
    }
    if (i < tok.size() && tok[i] == '.') {
        ++i;
        for (; i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])); ++i) {
            digits += tok[i];
            --exp10;
            any = true;
        }
    }
    if (i < tok.size() && (tok[i] == 'e' || tok[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) eneg = tok[i++] == '-';
        if (i >= tok.size()) throw std::invalid_argument("malformed exponent");
        long long e = 0;
        for (; i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])); ++i)
            e = e * 10 + (tok[i] - '0');
        exp10 += eneg ? -e : e;
    }
    if (!any || i != tok.size()) throw std::invalid_argument("malformed number");
    rational v{bigint(digits.empty() ? "0" : digits)};
    bigint p10 = boost::multiprecision::pow(bigint(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0) v /= rational(p10);
    else v *= rational(p10);
    return neg ? -v : v;
}

template <class T>
T parse_scalar(const std::string& tok);

template <>
inline double parse_scalar<double>(const std::string& tok) {
    auto slash = tok.find('/');
    size_t used = 0;
    if (slash != std::string::npos) {
        double num = std::stod(tok.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("malformed number");
        double den = std::stod(tok.substr(slash + 1), &used);
        if (used != tok.size() - slash - 1) throw std::invalid_argument("malformed number");
        if (den == 0) throw std::invalid_argument("zero denominator");
        return num / den;
    }
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("malformed number");
    return v;
}

template <>
inline rational parse_scalar<rational>(const std::string& tok) {
    return rational_from_token(tok);
}

}  // namespace pivotal
