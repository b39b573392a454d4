#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>
#include <string_view>

#include "syncwalk/errors.hpp"

namespace syncwalk {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational. All exact computations in the library
/// (chain solving, closed forms) run on this type with no intermediate
/// rounding, so equality checks against closed forms are exact.
using Rational = boost::multiprecision::cpp_rational;

/// base^e for integer e (negative exponents invert; exact for Rational).
template <typename Scalar>
Scalar pow_int(Scalar base, long long e) {
    if (e < 0) return Scalar(1) / pow_int(base, -e);
    Scalar result(1);
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Canonical text form: "14", "-3/4". Denominator 1 is omitted.
inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "m/k", a plain integer, or a plain decimal ("0.25" -> 1/4).
/// Exponent notation is rejected; this is for exact inputs only.
inline Rational rational_from_string(std::string_view text) {
    const std::string s(text);
    if (s.empty()) throw domain_error("empty rational literal");
    try {
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            const BigInt num(s.substr(0, slash));
            const BigInt den(s.substr(slash + 1));
            if (den == 0) throw domain_error("zero denominator in '" + s + "'");
            return Rational(num, den);
        }
        const auto dot = s.find('.');
        if (dot != std::string::npos) {
            const std::string head = s.substr(0, dot);
            const std::string frac = s.substr(dot + 1);
            if (frac.find_first_not_of("0123456789") != std::string::npos)
                throw domain_error("bad decimal literal '" + s + "'");
            BigInt scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
            const bool neg = !head.empty() && head[0] == '-';
            const std::string digits = neg ? head.substr(1) : head;
            BigInt whole = digits.empty() ? BigInt(0) : BigInt(digits);
            BigInt num = whole * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
            if (neg) num = -num;
            return Rational(num, scale);
        }
        return Rational(BigInt(s));
    } catch (const domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw domain_error("cannot parse rational '" + s + "'");
    }
}

}  // namespace syncwalk
