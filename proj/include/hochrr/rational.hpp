#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace hochrr {

using Int = boost::multiprecision::cpp_int;

// Exact scalar of the ground field: arbitrary-precision rational, always in
// lowest terms with positive denominator (cpp_rational keeps this canonical).
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

// Serialized form is "p/q", or just "p" when the denominator is 1.
inline std::string rat_str(const Rat& q) {
    if (rat_den(q) == 1)
        return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0)
        throw std::invalid_argument("rat_parse: nonpositive denominator in '" + s + "'");
    return Rat(num, den);
}

inline Rat binomial(long n, long k) {
    if (k < 0 || k > n)
        return 0;
    Rat r = 1;
    for (long i = 0; i < k; ++i)
        r *= Rat(n - i, i + 1);
    return r;
}

inline Rat factorial(long n) {
    Rat r = 1;
    for (long i = 2; i <= n; ++i)
        r *= i;
    return r;
}

}  // namespace hochrr
