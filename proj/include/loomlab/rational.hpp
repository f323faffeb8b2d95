#ifndef LOOMLAB_RATIONAL_HPP
#define LOOMLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace loomlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; zero for out-of-range arguments.
inline Int binom(long n, long r) {
    if (r < 0 || n < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    Int acc = 1;
    for (long i = 1; i <= r; ++i) {
        acc *= (n - r + i);
        acc /= i;
    }
    return acc;
}

inline Int factorial(long n) {
    Int acc = 1;
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

inline Int rat_floor(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

/// Serialise a rational as "p" or "p/q"; the format used by every verdict field.
inline std::string rat_to_string(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Parse "p" or "p/q".  Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational '" + s + "': " + e.what());
    }
}

}  // namespace loomlab

#endif
