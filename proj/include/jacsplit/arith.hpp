#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jacsplit/error.hpp"

namespace jacsplit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Arbitrary precision integer used for every integer-coefficient polynomial.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& base, u64 exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1U) result *= b;
        exp >>= 1U;
        if (exp != 0) b *= b;
    }
    return result;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

// Trial division; parameter ranges here stay far below 2^40.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Distinct prime divisors of n, ascending.
inline std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m); }

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

/// p^n as u64; throws when it overflows 2^63.
inline u64 checked_pow(u64 p, u64 n) {
    u64 r = 1;
    for (u64 i = 0; i < n; ++i) {
        if (r > (u64{1} << 62) / p) throw GuardExceeded("p^n overflows 64-bit range");
        r *= p;
    }
    return r;
}

/// Floor of the square root of a nonnegative BigInt.
inline BigInt isqrt(const BigInt& v) { return boost::multiprecision::sqrt(v); }

inline BigInt big_abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

}  // namespace jacsplit
