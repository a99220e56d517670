#pragma once

#include <numeric>
#include <vector>

#include "jacsplit/arith.hpp"
#include "jacsplit/field.hpp"
#include "jacsplit/polynomial.hpp"
#include "jacsplit/zeta.hpp"

namespace jacsplit {

// Cartier operator of C_t^ell : y^2 = x (x^(2 ell) + t x^ell + 1) on the
// basis omega_i = x^(i-1) dx / y. With f = (x^2 + t x + 1)^((p-1)/2) =
// sum c_n(t) x^n, the operator sends omega_i to c_alpha(i)^(1/p) omega_j(i),
// so after raising entries to the p-th power its matrix is a permutation
// times diag(c_alpha(i)).

namespace detail {

inline void require_odd_prime(u32 p) {
    if (p == 2 || !is_prime(p)) throw PreconditionError("p must be an odd prime");
}

inline FieldElem eval_over(const FieldPoly& poly_over_fp, const FieldElem& t) {
    const auto& f = t.field();
    return poly_over_fp.eval_mapped(t, FieldElem::zero(f), [&](const FieldElem& c) {
        return FieldElem::from_int(f, c.coeffs()[0]);
    });
}

}  // namespace detail

/// c_0..c_{p-1} by expanding (x^2 + t x + 1)^((p-1)/2) in F_p[t][x].
inline std::vector<FieldPoly> c_coefficients_expansion(u32 p) {
    detail::require_odd_prime(p);
    const auto fp = make_field(p, 1);
    const FieldElem one = FieldElem::one(fp);
    const FieldPoly zero_t(FieldElem::zero(fp));
    const FieldPoly one_t = FieldPoly::constant(one);
    const FieldPoly t = FieldPoly::variable(one);
    using Bivariate = Polynomial<FieldPoly>;
    const Bivariate base(std::vector<FieldPoly>{one_t, t, one_t}, zero_t);
    const Bivariate f = base.pow((p - 1) / 2);
    std::vector<FieldPoly> c;
    for (u32 n = 0; n < p; ++n) c.push_back(f[n]);
    return c;
}

/// c_n = sum_{2 n1 + n2 = n} C(h, n1) C(h - n1, n2) t^n2 with h = (p-1)/2.
inline std::vector<FieldPoly> c_coefficients_binomial(u32 p) {
    detail::require_odd_prime(p);
    const auto fp = make_field(p, 1);
    const u32 h = (p - 1) / 2;
    auto binom = [](u32 n, u32 k) {
        if (k > n) return BigInt(0);
        BigInt r = 1;
        for (u32 i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return r;
    };
    std::vector<FieldPoly> c;
    for (u32 n = 0; n < p; ++n) {
        std::vector<i64> coeffs(n + 1, 0);
        for (u32 n1 = 0; 2 * n1 <= n; ++n1) {
            const u32 n2 = n - 2 * n1;
            if (n1 > h || n2 > h - n1) continue;
            const BigInt term = binom(h, n1) * binom(h - n1, n2) % p;
            coeffs[n2] = (coeffs[n2] + term.convert_to<i64>()) % p;
        }
        c.push_back(field_poly(fp, coeffs));
    }
    return c;
}

/// Both constructions, cross-checked coefficient by coefficient.
inline std::vector<FieldPoly> c_coefficients(u32 p) {
    auto direct = c_coefficients_expansion(p);
    if (direct != c_coefficients_binomial(p))
        throw InternalError("expansion and binomial formula disagree for the Cartier coefficients");
    return direct;
}

/// j(i) and alpha(i) for i = 1..ell, stored at position i - 1.
struct IndexMaps {
    std::vector<u32> j;
    std::vector<u32> alpha;
};

/// 2 j(i) - 1 = (2i - 1)/p mod 2 ell and alpha(i) = floor(p (2 j(i) - 1) / (2 ell)).
inline IndexMaps index_maps(u32 p, u32 ell) {
    if (ell % 2 == 0 || std::gcd(u64{p}, u64{2} * ell) != 1)
        throw PreconditionError("index maps need odd ell with gcd(p, 2 ell) = 1");
    IndexMaps maps;
    const u64 mod = u64{2} * ell;
    for (u32 i = 1; i <= ell; ++i) {
        u32 found = 0;
        for (u32 j = 1; j <= ell; ++j) {
            if ((u64{p} * (2 * j - 1)) % mod == (2 * i - 1) % mod) {
                found = j;
                break;
            }
        }
        if (found == 0) throw InternalError("index congruence has no solution");
        maps.j.push_back(found);
        maps.alpha.push_back(static_cast<u32>(u64{p} * (2 * found - 1) / mod));
    }
    return maps;
}

/// Phi = c_0 c_1 ... c_{(p-1)/2}; deg Phi = (p^2 - 1)/8.
inline FieldPoly phi_polynomial(u32 p) {
    const auto c = c_coefficients(p);
    FieldPoly phi = FieldPoly::constant(FieldElem::one(make_field(p, 1)));
    for (u32 n = 0; n <= (p - 1) / 2; ++n) phi *= c[n];
    return phi;
}

struct CartierData {
    u32 p = 0;
    u32 ell = 0;
    std::vector<FieldPoly> c;
    IndexMaps maps;
    FieldPoly phi;
};

inline CartierData cartier_data(u32 p, u32 ell) {
    detail::require_odd_prime(p);
    if (!is_prime(ell) || ell == 2 || ell == p) throw PreconditionError("ell must be an odd prime distinct from p");
    CartierData d;
    d.p = p;
    d.ell = ell;
    d.c = c_coefficients(p);
    d.maps = index_maps(p, ell);
    d.phi = phi_polynomial(p);
    return d;
}

/// Specialization at t = t0 of the (p-th power) Cartier matrix, kept as a
/// permutation and a diagonal: column i has its only entry diag[i-1] in row
/// perm[i-1].
struct CartierMatrix {
    u32 ell = 0;
    std::vector<u32> perm;
    std::vector<FieldElem> diag;

    FieldElem entry(u32 row, u32 col) const {
        if (perm.at(col - 1) == row) return diag[col - 1];
        return FieldElem::zero(diag.front().field());
    }

    u32 nonzero_count() const {
        u32 n = 0;
        for (const auto& d : diag) n += d.is_zero() ? 0 : 1;
        return n;
    }
};

inline void require_cartier_params(u32 p, u32 ell, const FieldElem& t0) {
    detail::require_odd_prime(p);
    if (t0.characteristic() != p) throw PreconditionError("t0 must lie in a field of characteristic p");
    if (ell % 2 == 0 || ell % p == 0) throw PreconditionError("ell must be odd and prime to p");
    require_not_pm2(t0);
}

inline CartierMatrix cartier_matrix(u32 p, u32 ell, const FieldElem& t0) {
    require_cartier_params(p, ell, t0);
    const auto c = c_coefficients(p);
    const auto maps = index_maps(p, ell);
    CartierMatrix m;
    m.ell = ell;
    m.perm = maps.j;
    for (u32 i = 0; i < ell; ++i) m.diag.push_back(detail::eval_over(c[maps.alpha[i]], t0));
    return m;
}

/// Exact verdict (all diagonal entries nonzero) next to the sufficient test
/// Phi(t0) != 0. The two can differ when Phi(t0) = 0.
struct OrdinarityVerdict {
    bool ordinary = false;
    bool phi_nonzero = false;
    FieldElem phi_value;
    CartierMatrix matrix;
};

inline OrdinarityVerdict is_ordinary_ct(u32 p, u32 ell, const FieldElem& t0) {
    OrdinarityVerdict v;
    v.matrix = cartier_matrix(p, ell, t0);
    v.ordinary = v.matrix.nonzero_count() == ell;
    v.phi_value = detail::eval_over(phi_polynomial(p), t0);
    v.phi_nonzero = !v.phi_value.is_zero();
    return v;
}

/// First t0 of F_{p^i} in index order with t0 != +-2 and Phi(t0) != 0.
inline FieldElem find_ordinary_t(u32 p, u32 ell, u32 i) {
    detail::require_odd_prime(p);
    if (i <= 1) throw PreconditionError("find_ordinary_t requires i > 1", "usage.i");
    if (ell % 2 == 0 || ell % p == 0) throw PreconditionError("ell must be odd and prime to p");
    const auto field = make_field(p, i);
    const auto phi = phi_polynomial(p);
    const FieldElem two = FieldElem::from_int(field, 2);
    const u64 q = field->size();
    for (u64 idx = 0; idx < q; ++idx) {
        const FieldElem t = FieldElem::from_index(field, idx);
        if (t == two || t == -two) continue;
        if (!detail::eval_over(phi, t).is_zero()) return t;
    }
    throw InternalError("no t with Phi(t) != 0 although deg Phi < p^i - 2");
}

}  // namespace jacsplit
