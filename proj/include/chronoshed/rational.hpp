#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "chronoshed/errors.hpp"

namespace chronoshed {

// All schedule arithmetic is exact. Rationals are kept in lowest terms by the backend.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Floor division, correct for negative values.
inline BigInt floor_rat(const Rat& r) {
    BigInt n = numerator(r), d = denominator(r);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

inline BigInt ceil_rat(const Rat& r) {
    BigInt n = numerator(r), d = denominator(r);
    BigInt q = n / d;
    if (n % d != 0 && n > 0) q += 1;
    return q;
}

// Fractional part in [0, 1).
inline Rat frac_rat(const Rat& r) { return r - Rat(floor_rat(r)); }

inline std::int64_t to_i64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw InvariantViolation("integer out of 64-bit range: " + v.str());
    return static_cast<std::int64_t>(v);
}

inline std::int64_t rat_to_i64(const Rat& r) {
    if (!is_integer(r)) throw InvariantViolation("expected integer rational, got " + std::string(r.str()));
    return to_i64(numerator(r));
}

inline std::string rat_str(const Rat& r) {
    if (is_integer(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

inline BigInt lcm_big(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

} // namespace chronoshed
