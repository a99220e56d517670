#pragma once

#include <algorithm>
#include <cstdlib>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "jacsplit/arith.hpp"
#include "jacsplit/fast_field.hpp"
#include "jacsplit/field.hpp"
#include "jacsplit/polynomial.hpp"
#include "jacsplit/special_polys.hpp"

namespace jacsplit {

/// Limits for exhaustive enumeration.
struct CountConfig {
    static constexpr u64 kDefaultGuard = u64{1} << 26;
    static constexpr u64 kMinGuard = u64{1} << 10;

    u64 guard = kDefaultGuard;  // largest field size a scan may enumerate
    unsigned workers = 0;       // 0: hardware concurrency
    // Fault injection for the verification tests: added to every count's
    // points at infinity. Always 0 in production paths.
    i64 infinity_bias = 0;

    unsigned effective_workers() const {
        if (workers != 0) return workers;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }

    /// Default configuration with JACSPLIT_GUARD applied when set.
    static CountConfig from_env() {
        CountConfig cfg;
        if (const char* env = std::getenv("JACSPLIT_GUARD"); env != nullptr && *env != '\0') {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == nullptr || *end != '\0' || v < kMinGuard)
                throw PreconditionError("JACSPLIT_GUARD must be an integer >= 1024", "usage.guard");
            cfg.guard = v;
        }
        return cfg;
    }

    void check(u64 field_size) const {
        if (field_size > guard)
            throw GuardExceeded("enumeration of " + std::to_string(field_size) + " elements exceeds guard " +
                                std::to_string(guard));
    }
};

/// y^2 = f(x) over a field of odd characteristic, f squarefree.
class CurveOddChar {
public:
    CurveOddChar(FieldPtr field, FieldPoly f) : field_(std::move(field)), f_(std::move(f)) {
        if (field_->p == 2) throw PreconditionError("odd-characteristic curve over a field of characteristic 2");
        if (f_.degree() < 3) throw PreconditionError("curve polynomial must have degree >= 3");
        if (!same_field(f_.zero_proto().field(), field_)) throw MixedFieldError("curve coefficients in another field");
        if (gcd(f_, f_.derivative()).degree() != 0)
            throw PreconditionError("curve polynomial is not squarefree", "precondition.singular");
    }

    const FieldPtr& field() const { return field_; }
    const FieldPoly& f() const { return f_; }
    u32 degree() const { return static_cast<u32>(f_.degree()); }
    u32 genus() const { return degree() % 2 == 1 ? (degree() - 1) / 2 : (degree() - 2) / 2; }

private:
    FieldPtr field_;
    FieldPoly f_;
};

inline void require_not_pm2(const FieldElem& t) {
    const FieldElem two = FieldElem::from_int(t.field(), 2);
    if (t == two || t == -two) throw PreconditionError("parameter t must avoid +-2", "precondition.t_pm2");
}

/// C_t^ell : y^2 = x (x^(2 ell) + t x^ell + 1), genus ell.
inline CurveOddChar c_curve(u32 ell, const FieldElem& t) {
    require_not_pm2(t);
    const auto& f = t.field();
    std::vector<FieldElem> c(2 * ell + 2, FieldElem::zero(f));
    c[1] = FieldElem::one(f);
    c[ell + 1] = t;
    c[2 * ell + 1] = FieldElem::one(f);
    return CurveOddChar(f, FieldPoly(std::move(c), FieldElem::zero(f)));
}

/// D_t : y^2 = D_ell(x, 1) + t, genus (ell - 1) / 2.
inline CurveOddChar d_curve(u32 ell, const FieldElem& t) {
    require_not_pm2(t);
    const auto& f = t.field();
    return CurveOddChar(f, dickson(ell, FieldElem::one(f)) + FieldPoly::constant(t));
}

/// E_t : y^2 = x (x^2 + t x + 1).
inline CurveOddChar e_curve(const FieldElem& t) {
    const auto& f = t.field();
    std::vector<FieldElem> c{FieldElem::zero(f), FieldElem::one(f), t, FieldElem::one(f)};
    return CurveOddChar(f, FieldPoly(std::move(c), FieldElem::zero(f)));
}

namespace detail {

/// |N - Q - 1| <= 2 g sqrt(Q), squared to stay in integers.
inline void assert_weil(i64 count, u64 field_size, u32 genus) {
    const BigInt dev = BigInt(count) - BigInt(field_size) - 1;
    if (dev * dev > BigInt(4) * genus * genus * BigInt(field_size))
        throw InternalError("point count " + std::to_string(count) + " violates the Weil bound over F_" +
                            std::to_string(field_size));
}

/// Sum of body(k) over k in [0, n), split into contiguous chunks.
template <class Body>
i64 parallel_sum(u64 n, unsigned workers, Body body) {
    workers = static_cast<unsigned>(std::max<u64>(1, std::min<u64>(workers, n / 4096 + 1)));
    std::vector<i64> partial(workers, 0);
    auto run = [&](unsigned w) {
        const u64 lo = n * w / workers;
        const u64 hi = n * (w + 1) / workers;
        i64 s = 0;
        for (u64 k = lo; k < hi; ++k) s += body(k);
        partial[w] = s;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& th : threads) th.join();
    }
    i64 total = 0;
    for (i64 s : partial) total += s;
    return total;
}

}  // namespace detail

/// #C(F_{q^m}) on the smooth projective model, q the size of the curve's
/// field: sum over x of (1 + chi(f(x))) plus the points at infinity (one for
/// odd degree; two or none for even degree depending on the leading
/// coefficient being a square).
inline i64 count_points_odd(const CurveOddChar& curve, u32 m, const CountConfig& cfg = {}) {
    if (m < 1) throw PreconditionError("extension degree must be >= 1");
    const auto& base = curve.field();
    const u64 size = checked_pow(base->p, u64{base->n} * m);
    cfg.check(size);
    const auto target = make_field(base->p, base->n * m);
    const Embedding emb(base, target);
    const auto ff = FastField::of(target);

    std::vector<FastField::Elem> coeffs;
    for (const auto& c : curve.f().coeffs()) coeffs.push_back(ff->from_elem(emb(c)));

    const i64 chi_sum = ff->chi(coeffs.empty() ? ff->zero() : coeffs[0]) +
                        detail::parallel_sum(ff->group_order(), cfg.effective_workers(), [&](u64 k) -> i64 {
                            return ff->chi(ff->eval(coeffs, static_cast<FastField::Elem>(k)));
                        });
    i64 infinity = 1;
    if (curve.degree() % 2 == 0) infinity = ff->chi(coeffs.back()) == 1 ? 2 : 0;
    const i64 count = static_cast<i64>(size) + chi_sum + infinity + cfg.infinity_bias;
    detail::assert_weil(count, size, curve.genus());
    return count;
}

/// #N(F_{2^{rm}}) for the smooth model of y^2 + y = eps/x + beta x, beta in
/// F_{2^r}. Simple poles at x = 0 (eps = 1) and x = oo (beta != 0) are
/// ramified and carry one point each; an unramified boundary place splits
/// (two points) iff the trace of u's value there vanishes.
inline i64 count_points_as2(bool eps, const FieldElem& beta, u32 m, const CountConfig& cfg = {}) {
    const auto& base = beta.field();
    if (base->p != 2) throw PreconditionError("Artin-Schreier count requires characteristic 2");
    if (!eps && beta.is_zero()) throw PreconditionError("zero Artin-Schreier function", "precondition.zero_function");
    if (m < 1) throw PreconditionError("extension degree must be >= 1");
    const u64 size = checked_pow(2, u64{base->n} * m);
    cfg.check(size);
    const auto target = make_field(2, base->n * m);
    const Embedding emb(base, target);
    const auto ff = FastField::of(target);
    const auto b = ff->from_elem(emb(beta));
    const u32 order = ff->group_order();

    i64 count = detail::parallel_sum(order, cfg.effective_workers(), [&](u64 k) -> i64 {
        const auto x = static_cast<FastField::Elem>(k);
        auto u = ff->mul(b, x);
        if (eps) u = ff->add(u, ff->inv(x));
        return ff->trace2(u) == 0 ? 2 : 0;
    });
    // x = 0: pole when eps = 1, else u(0) = 0 which splits.
    count += eps ? 1 : 2;
    // x = oo: pole when beta != 0, else u(oo) = 0 which splits.
    count += beta.is_zero() ? 2 : 1;
    count += cfg.infinity_bias;
    const u32 genus = (eps && !beta.is_zero()) ? 1 : 0;
    detail::assert_weil(count, size, genus);
    return count;
}

/// Numerator of the zeta function, L(T) = sum a_i T^i = prod (1 - lambda_i T).
struct LPoly {
    std::vector<BigInt> a;  // a_0 .. a_{2g}
    BigInt q;
    u32 g = 0;

    bool satisfies_functional_equation() const {
        if (a.size() != 2 * g + 1 || a[0] != 1) return false;
        for (u32 i = 0; i <= g; ++i) {
            if (a[2 * g - i] != big_pow(q, g - i) * a[i]) return false;
        }
        return true;
    }
};

namespace newton {

/// Power sums s_1..s_count of the inverse roots of prod (1 - lambda T) given
/// its coefficients a (a_0 = 1); k a_k + sum_{j=1..k} s_j a_{k-j} = 0.
inline std::vector<BigInt> power_sums(std::span<const BigInt> a, std::size_t count) {
    std::vector<BigInt> s(count + 1, 0);
    for (std::size_t k = 1; k <= count; ++k) {
        BigInt acc = k < a.size() ? BigInt(-BigInt(k) * a[k]) : BigInt(0);
        for (std::size_t j = 1; j < k; ++j) {
            if (k - j < a.size()) acc -= s[j] * a[k - j];
        }
        s[k] = acc;
    }
    s.erase(s.begin());
    return s;
}

/// Inverse of power_sums: a_0..a_degree from s_1..s_degree, exact.
inline std::vector<BigInt> coeffs_from_power_sums(std::span<const BigInt> s, std::size_t degree) {
    std::vector<BigInt> a(degree + 1, 0);
    a[0] = 1;
    for (std::size_t k = 1; k <= degree; ++k) {
        BigInt acc = 0;
        for (std::size_t j = 1; j <= k; ++j) acc += s[j - 1] * a[k - j];
        if (acc % BigInt(k) != 0)
            throw InternalError("Newton identity produced a non-integer coefficient (inconsistent counts)");
        a[k] = -acc / BigInt(k);
    }
    return a;
}

}  // namespace newton

/// L(T) from N_1..N_g over F_q..F_{q^g}; the upper half follows from the
/// functional equation a_{2g-i} = q^(g-i) a_i.
inline LPoly l_from_counts(std::span<const i64> counts, const BigInt& q, u32 g) {
    if (counts.size() < g) throw PreconditionError("need counts over F_q .. F_{q^g}");
    std::vector<BigInt> s;
    for (u32 j = 1; j <= g; ++j) s.push_back(big_pow(q, j) + 1 - counts[j - 1]);
    auto low = newton::coeffs_from_power_sums(s, g);
    LPoly L;
    L.q = q;
    L.g = g;
    L.a.assign(2 * g + 1, 0);
    for (u32 i = 0; i <= g; ++i) L.a[i] = low[i];
    for (u32 i = 0; i < g; ++i) L.a[2 * g - i] = big_pow(q, g - i) * L.a[i];
    return L;
}

/// #C(F_{q^m}) predicted from L: q^m + 1 - s_m.
inline BigInt predict_count(const LPoly& L, u32 m) {
    const auto s = newton::power_sums(L.a, m);
    return big_pow(L.q, m) + 1 - s[m - 1];
}

/// chi(T) = T^(2g) L(1/T).
inline IntPoly charpoly_from_l(const LPoly& L) { return IntPoly(L.a, BigInt(0)).reversed(static_cast<int>(2 * L.g)); }

/// deg (L mod p); equals g exactly when the Jacobian is ordinary.
inline u32 p_rank_from_l(const LPoly& L, u32 p) {
    u32 deg = 0;
    for (u32 i = 0; i < L.a.size(); ++i) {
        if (L.a[i] % p != 0) deg = i;
    }
    return deg;
}

/// Counts and L-polynomial of a curve over its own field.
struct ZetaData {
    std::vector<i64> counts;  // N_1 .. N_g (plus N_{g+1} when requested)
    LPoly L;
    IntPoly charpoly;
    bool prediction_checked = false;
    bool prediction_ok = false;
};

/// Counts over F_q..F_{q^g}; with `verify_next`, also counts over F_{q^(g+1)}
/// and compares it to the value predicted by L.
inline ZetaData compute_zeta(const CurveOddChar& curve, const CountConfig& cfg = {}, bool verify_next = false) {
    const u32 g = curve.genus();
    ZetaData z;
    for (u32 j = 1; j <= g; ++j) z.counts.push_back(count_points_odd(curve, j, cfg));
    z.L = l_from_counts(z.counts, BigInt(curve.field()->size()), g);
    z.charpoly = charpoly_from_l(z.L);
    if (verify_next) {
        const i64 next = count_points_odd(curve, g + 1, cfg);
        z.counts.push_back(next);
        z.prediction_checked = true;
        z.prediction_ok = predict_count(z.L, g + 1) == next;
    }
    return z;
}

}  // namespace jacsplit
