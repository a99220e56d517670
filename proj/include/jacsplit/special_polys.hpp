#pragma once

#include <algorithm>
#include <vector>

#include "jacsplit/arith.hpp"
#include "jacsplit/field.hpp"
#include "jacsplit/polynomial.hpp"

namespace jacsplit {

/// Dickson polynomial D_ell(x, a) by D_0 = 2, D_1 = x,
/// D_{k+1} = x D_k - a D_{k-1}.
inline FieldPoly dickson(u32 ell, const FieldElem& a) {
    const auto& f = a.field();
    const FieldPoly x = FieldPoly::variable(FieldElem::one(f));
    FieldPoly prev = FieldPoly::constant(FieldElem::from_int(f, 2));
    if (ell == 0) return prev;
    FieldPoly cur = x;
    const FieldPoly a_const = FieldPoly::constant(a);
    for (u32 k = 1; k < ell; ++k) {
        FieldPoly next = x * cur - a_const * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// x^ell * D_ell(x + a/x, a) == x^(2 ell) + a^ell, both sides expanded as
/// polynomials (denominators cleared).
inline bool dickson_functional_identity(u32 ell, const FieldElem& a) {
    const auto& f = a.field();
    const FieldElem one = FieldElem::one(f);
    const FieldPoly d = dickson(ell, a);
    const FieldPoly num = FieldPoly(std::vector<FieldElem>{a, FieldElem::zero(f), one});  // x^2 + a
    const FieldPoly x = FieldPoly::variable(one);
    FieldPoly lhs(FieldElem::zero(f));
    for (int k = 0; k <= d.degree(); ++k) {
        const auto ku = static_cast<u64>(k);
        lhs += (num.pow(ku) * x.pow(ell - ku)).scaled(d[ku]);
    }
    const FieldPoly rhs = FieldPoly::monomial(one, 2 * ell) + FieldPoly::constant(a.pow(ell));
    return lhs == rhs;
}

/// Order by degree, then high-to-low coefficient indices.
inline bool poly_canonical_less(const FieldPoly& a, const FieldPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int k = a.degree(); k >= 0; --k) {
        const auto i = static_cast<std::size_t>(k);
        const u64 ai = a[i].index();
        const u64 bi = b[i].index();
        if (ai != bi) return ai < bi;
    }
    return false;
}

/// Irreducible factors of x^r - 1 over F2 for an odd prime r: x + 1 and
/// (r-1)/ord_r(2) distinct factors of degree ord_r(2), in canonical order.
inline std::vector<FieldPoly> factor_x_pow_r_minus_1_over_f2(u32 r) {
    if (r % 2 == 0 || !is_prime(r)) throw PreconditionError("r must be an odd prime");
    const auto f2 = make_field(2, 1);
    const FieldElem one = FieldElem::one(f2);
    const FieldPoly target = FieldPoly::monomial(one, r) + FieldPoly::constant(one);

    u32 d = 1;
    while (pow_mod(2, d, r) != 1) ++d;

    std::vector<FieldPoly> factors{field_poly(f2, {1, 1})};
    FieldPoly rest = target / factors.front();
    const u64 count = u64{1} << d;
    for (u64 idx = 0; idx < count && rest.degree() > 0; ++idx) {
        auto v = fp_poly::monic_from_index(idx, d, 2);
        if (!fp_poly::is_irreducible(v, 2)) continue;
        std::vector<i64> c(v.begin(), v.end());
        FieldPoly cand = field_poly(f2, c);
        auto [quot, rem] = rest.divmod(cand);
        if (rem.is_zero()) {
            factors.push_back(cand);
            rest = quot;
        }
    }
    if (rest.degree() != 0) throw InternalError("factorization of x^r - 1 incomplete");
    std::sort(factors.begin(), factors.end(), poly_canonical_less);
    return factors;
}

inline IntPoly int_poly(std::initializer_list<long long> coeffs) {
    std::vector<BigInt> c;
    for (long long v : coeffs) c.emplace_back(v);
    return IntPoly(std::move(c), BigInt(0));
}

}  // namespace jacsplit
