#pragma once

// Exact integer arithmetic. Every operation on coordinates and coefficients
// goes through these helpers so that overflow raises instead of wrapping.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tropfactor {

using Int = std::int64_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& what) : Error("integer overflow in " + what) {}
};

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("addition");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("subtraction");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("multiplication");
    return r;
}

inline Int checked_neg(Int a) {
    if (a == std::numeric_limits<Int>::min()) throw OverflowError("negation");
    return -a;
}

inline Int checked_abs(Int a) { return a < 0 ? checked_neg(a) : a; }

/// Non-negative gcd; gcd(0, 0) = 0.
inline Int gcd(Int a, Int b) {
    a = checked_abs(a);
    b = checked_abs(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline int sign(Int v) { return (v > 0) - (v < 0); }

/// Floor division for b > 0.
inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

}  // namespace tropfactor
