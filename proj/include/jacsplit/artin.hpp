#pragma once

#include <vector>

#include "jacsplit/arith.hpp"
#include "jacsplit/error.hpp"

namespace jacsplit {

/// Least k >= 1 with a^k = +-1 (mod ell): the order of a in (Z/ell)^* / <-1>.
inline u64 order_in_quotient(u64 a, u64 ell) {
    if (ell < 3 || ell % 2 == 0 || !is_prime(ell)) throw PreconditionError("ell must be an odd prime");
    a %= ell;
    if (a == 0) throw PreconditionError("a must be prime to ell");
    u64 cur = a;
    for (u64 k = 1; k <= ell; ++k) {
        if (cur == 1 || cur == ell - 1) return k;
        cur = mul_mod(cur, a, ell);
    }
    throw InternalError("order search did not terminate");
}

struct GeneratorCertificate {
    u64 base = 0;  // p^i mod ell
    u64 ell = 0;
    u64 order = 0;
    u64 group_order = 0;  // (ell - 1) / 2
    bool generator = false;
};

/// Whether p^i generates (Z/ell)^* / <-1>.
inline GeneratorCertificate is_generator_quotient(u64 p, u64 i, u64 ell) {
    if (ell == p) throw PreconditionError("ell must differ from p");
    GeneratorCertificate c;
    c.ell = ell;
    c.base = pow_mod(p, i, ell);
    c.order = order_in_quotient(c.base, ell);
    c.group_order = (ell - 1) / 2;
    c.generator = c.order == c.group_order;
    return c;
}

/// Odd primes ell <= bound, ell != p, for which p^i generates the quotient.
inline std::vector<u64> search_ells(u64 p, u64 i, u64 bound) {
    if (bound < 3) throw PreconditionError("search bound must be >= 3");
    std::vector<u64> out;
    for (u64 ell = 3; ell <= bound; ell += 2) {
        if (ell == p || !is_prime(ell) || p % ell == 0) continue;
        if (is_generator_quotient(p, i, ell).generator) out.push_back(ell);
    }
    return out;
}

/// Multiplicative order of 2 modulo an odd prime r.
inline u64 phi2(u64 r) {
    if (r % 2 == 0 || !is_prime(r)) throw PreconditionError("r must be an odd prime");
    u64 k = 1;
    u64 cur = 2 % r;
    while (cur != 1) {
        cur = mul_mod(cur, 2, r);
        ++k;
    }
    return k;
}

/// Mersenne primes 2^k - 1 <= bound, ascending.
inline std::vector<u64> mersenne_primes(u64 bound) {
    if (bound < 3) throw PreconditionError("Mersenne bound must be >= 3");
    std::vector<u64> out;
    for (u64 k = 2; k < 63; ++k) {
        const u64 m = (u64{1} << k) - 1;
        if (m > bound) break;
        if (is_prime(k) && is_prime(m)) out.push_back(m);
    }
    return out;
}

}  // namespace jacsplit
