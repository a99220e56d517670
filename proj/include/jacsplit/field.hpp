#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacsplit/arith.hpp"
#include "jacsplit/error.hpp"
#include "jacsplit/polynomial.hpp"

namespace jacsplit {

/// Raw dense polynomials over F_p as residue vectors (low to high). Used to
/// build the field models themselves, before any FieldElem exists.
namespace fp_poly {

using Vec = std::vector<u32>;

inline void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Vec mul(const Vec& a, const Vec& b, u32 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + u64{a[i]} * b[j]) % p;
    }
    Vec out(t.begin(), t.end());
    trim(out);
    return out;
}

/// a mod m, m monic.
inline Vec mod(Vec a, const Vec& m, u32 p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const u64 c = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = static_cast<u32>((a[shift + i] + (p - c) * m[i]) % p);
        trim(a);
    }
    return a;
}

/// Remainder for an arbitrary nonzero divisor (leading coefficient inverted mod p).
inline Vec rem(Vec a, Vec b, u32 p) {
    trim(a);
    trim(b);
    if (b.empty()) throw DivisionByZero("polynomial remainder by zero");
    const u64 inv = pow_mod(b.back(), p - 2, p);
    for (auto& v : b) v = static_cast<u32>(v * inv % p);
    return mod(std::move(a), b, p);
}

inline Vec gcd(Vec a, Vec b, u32 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Vec powmod(Vec base, u64 e, const Vec& m, u32 p) {
    Vec result{1};
    base = mod(std::move(base), m, p);
    while (e != 0) {
        if (e & 1U) result = mod(mul(result, base, p), m, p);
        e >>= 1U;
        if (e != 0) base = mod(mul(base, base, p), m, p);
    }
    return result;
}

inline Vec sub(Vec a, const Vec& b, u32 p) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

/// Monic polynomial with the given tail digits: index -> (c_0..c_{deg-1}, 1).
inline Vec monic_from_index(u64 idx, u32 deg, u32 p) {
    Vec v(deg + 1, 0);
    for (u32 i = 0; i < deg; ++i) {
        v[i] = static_cast<u32>(idx % p);
        idx /= p;
    }
    v[deg] = 1;
    return v;
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..deg/2.
inline bool is_irreducible_exhaustive(const Vec& f, u32 p) {
    const u32 n = static_cast<u32>(f.size()) - 1;
    if (n < 1) return false;
    for (u32 d = 1; 2 * d <= n; ++d) {
        const u64 count = checked_pow(p, d);
        for (u64 idx = 0; idx < count; ++idx) {
            if (rem(f, monic_from_index(idx, d, p), p).empty()) return false;
        }
    }
    return true;
}

/// Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for
/// every prime r | n. f must be monic.
inline bool is_irreducible_rabin(const Vec& f, u32 p) {
    const u32 n = static_cast<u32>(f.size()) - 1;
    if (n < 1) return false;
    if (n == 1) return true;
    const Vec x{0, 1};
    auto x_pow_p_pow = [&](u32 k) {
        Vec h = mod(x, f, p);
        for (u32 i = 0; i < k; ++i) h = powmod(h, p, f, p);
        return h;
    };
    if (sub(x_pow_p_pow(n), mod(x, f, p), p).size() != 0) return false;
    for (u64 r : prime_divisors(n)) {
        Vec g = gcd(sub(x_pow_p_pow(n / static_cast<u32>(r)), x, p), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

/// Exhaustive search up to degree 8, Rabin's power-gcd test above.
inline bool is_irreducible(const Vec& f, u32 p) {
    return f.size() - 1 <= 8 ? is_irreducible_exhaustive(f, p) : is_irreducible_rabin(f, p);
}

}  // namespace fp_poly

/// Explicit model F_p[z]/(modulus) of F_{p^n}.
struct FieldDesc {
    u32 p = 0;
    u32 n = 0;
    std::vector<u32> modulus;  // monic, low to high, size n + 1

    u64 size() const { return checked_pow(p, n); }

    friend bool operator==(const FieldDesc& a, const FieldDesc& b) {
        return a.p == b.p && a.n == b.n && a.modulus == b.modulus;
    }
};

using FieldPtr = std::shared_ptr<const FieldDesc>;

/// Lexicographically smallest (high to low) monic irreducible of degree n.
inline std::vector<u32> canonical_modulus(u32 p, u32 n) {
    const u64 count = checked_pow(p, n);
    for (u64 idx = 0; idx < count; ++idx) {
        auto f = fp_poly::monic_from_index(idx, n, p);
        if (fp_poly::is_irreducible(f, p)) return f;
    }
    throw InternalError("no irreducible polynomial found");
}

/// Canonical F_{p^n}. Models are cached, so equal parameters yield the same
/// pointer.
inline FieldPtr make_field(u32 p, u32 n) {
    if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
    if (n < 1) throw PreconditionError("extension degree must be >= 1");
    if (p > 65535) throw PreconditionError("characteristic too large for 32-bit residue arithmetic");
    static std::mutex mu;
    static std::map<std::pair<u32, u32>, FieldPtr> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{p, n}];
    if (!slot) {
        auto desc = std::make_shared<FieldDesc>();
        desc->p = p;
        desc->n = n;
        desc->modulus = canonical_modulus(p, n);
        (void)desc->size();
        slot = std::move(desc);
    }
    return slot;
}

inline bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || (a && b && *a == *b); }

/// Element of a FieldDesc in the power basis of z.
class FieldElem {
public:
    FieldElem() = default;

    FieldElem(FieldPtr field, std::vector<u32> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        if (!field_) throw PreconditionError("field element without field");
        if (c_.size() != field_->n) throw PreconditionError("coordinate vector length differs from extension degree");
        for (u32 v : c_) {
            if (v >= field_->p) throw PreconditionError("coordinate outside [0, p)");
        }
    }

    static FieldElem zero(const FieldPtr& f) { return FieldElem(f, std::vector<u32>(f->n, 0)); }

    static FieldElem from_int(const FieldPtr& f, i64 v) {
        std::vector<u32> c(f->n, 0);
        const i64 p = f->p;
        c[0] = static_cast<u32>(((v % p) + p) % p);
        return FieldElem(f, std::move(c));
    }

    static FieldElem one(const FieldPtr& f) { return from_int(f, 1); }

    /// Base-p digits of idx as coordinates, c_0 least significant. Index
    /// order coincides with high-to-low lexicographic order on coordinates.
    static FieldElem from_index(const FieldPtr& f, u64 idx) {
        std::vector<u32> c(f->n, 0);
        for (u32 i = 0; i < f->n; ++i) {
            c[i] = static_cast<u32>(idx % f->p);
            idx /= f->p;
        }
        if (idx != 0) throw PreconditionError("element index out of range");
        return FieldElem(f, std::move(c));
    }

    /// The class of z (equals the constant 0 in a prime field).
    static FieldElem z(const FieldPtr& f) {
        if (f->n == 1) return zero(f);
        std::vector<u32> c(f->n, 0);
        c[1] = 1;
        return FieldElem(f, std::move(c));
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<u32>& coeffs() const { return c_; }
    u32 characteristic() const { return field_->p; }

    u64 index() const {
        u64 idx = 0;
        for (std::size_t i = c_.size(); i-- > 0;) idx = idx * field_->p + c_[i];
        return idx;
    }

    bool is_zero() const {
        for (u32 v : c_) {
            if (v != 0) return false;
        }
        return true;
    }

    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i) {
            if (c_[i] != 0) return false;
        }
        return true;
    }

    FieldElem operator-() const {
        FieldElem r(*this);
        const u32 p = field_->p;
        for (auto& v : r.c_) v = (p - v) % p;
        return r;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        check_same(a, b);
        FieldElem r(a);
        const u32 p = a.field_->p;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (a.c_[i] + b.c_[i]) % p;
        return r;
    }

    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        check_same(a, b);
        FieldElem r(a);
        const u32 p = a.field_->p;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (a.c_[i] + p - b.c_[i]) % p;
        return r;
    }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        check_same(a, b);
        const u32 p = a.field_->p;
        const std::size_t n = a.c_.size();
        std::vector<u64> t(2 * n - 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) t[i + j] = (t[i + j] + u64{a.c_[i]} * b.c_[j]) % p;
        }
        const auto& m = a.field_->modulus;
        for (std::size_t k = t.size(); k-- > n;) {
            const u64 c = t[k];
            if (c == 0) continue;
            for (std::size_t i = 0; i < n; ++i) t[k - n + i] = (t[k - n + i] + (p - c) * m[i]) % p;
            t[k] = 0;
        }
        std::vector<u32> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<u32>(t[i]);
        return FieldElem(a.field_, std::move(out));
    }

    FieldElem pow(u64 e) const {
        FieldElem result = one(field_);
        FieldElem base = *this;
        while (e != 0) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e != 0) base = base * base;
        }
        return result;
    }

    FieldElem inv() const {
        if (is_zero()) throw DivisionByZero("inverse of zero field element");
        return pow(field_->size() - 2);
    }

    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    /// a^(p^times); `times` is reduced modulo n.
    FieldElem frobenius(u64 times = 1) const {
        FieldElem r(*this);
        for (u64 i = 0; i < times % field_->n; ++i) r = r.pow(field_->p);
        return r;
    }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.c_ == b.c_ && (a.field_ == b.field_ || same_field(a.field_, b.field_));
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    /// Index order; only meaningful inside one field.
    friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.index() < b.index(); }

    std::string to_string() const {
        if (!field_) return "<unbound>";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (c_[k] == 0) continue;
            if (!out.empty()) out += "+";
            if (k == 0) {
                out += std::to_string(c_[k]);
                continue;
            }
            if (c_[k] != 1) out += std::to_string(c_[k]) + "*";
            out += "z";
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out.empty() ? "0" : out;
    }

private:
    static void check_same(const FieldElem& a, const FieldElem& b) {
        if (!a.field_ || !b.field_) throw PreconditionError("arithmetic on unbound field element");
        if (a.field_ != b.field_ && !same_field(a.field_, b.field_))
            throw MixedFieldError("operands belong to different fields");
    }

    FieldPtr field_;
    std::vector<u32> c_;
};

template <>
struct ring_traits<FieldElem> {
    static FieldElem zero_like(const FieldElem& like) { return FieldElem::zero(like.field()); }
    static FieldElem one_like(const FieldElem& like) { return FieldElem::one(like.field()); }
    static FieldElem from_int_like(const FieldElem& like, i64 v) { return FieldElem::from_int(like.field(), v); }
    static bool is_zero(const FieldElem& v) { return v.is_zero(); }
    static FieldElem div_exact(const FieldElem& a, const FieldElem& b) { return a / b; }
    static std::string format(const FieldElem& v) { return v.to_string(); }
};

using FieldPoly = Polynomial<FieldElem>;

inline FieldPoly field_poly(const FieldPtr& f, std::span<const i64> coeffs) {
    std::vector<FieldElem> c;
    c.reserve(coeffs.size());
    for (i64 v : coeffs) c.push_back(FieldElem::from_int(f, v));
    return FieldPoly(std::move(c), FieldElem::zero(f));
}

inline FieldPoly field_poly(const FieldPtr& f, std::initializer_list<i64> coeffs) {
    return field_poly(f, std::span<const i64>(coeffs.begin(), coeffs.size()));
}

/// The modulus of F_{p^n} as a polynomial over the prime field.
inline FieldPoly modulus_poly(const FieldDesc& f) {
    auto fp = make_field(f.p, 1);
    std::vector<i64> c(f.modulus.begin(), f.modulus.end());
    return field_poly(fp, c);
}

/// -1, 0 or +1 via Euler's criterion a^((q-1)/2).
inline int quadratic_character(const FieldElem& a) {
    if (a.characteristic() == 2) throw PreconditionError("quadratic character in characteristic 2");
    if (a.is_zero()) return 0;
    const FieldElem e = a.pow((a.field()->size() - 1) / 2);
    if (e.is_one()) return 1;
    if (e == -FieldElem::one(a.field())) return -1;
    throw InternalError("Euler criterion produced neither +1 nor -1");
}

/// Absolute trace a + a^2 + ... + a^(2^(n-1)) of an element of F_{2^n}.
inline u32 trace_to_f2(const FieldElem& a) {
    if (a.characteristic() != 2) throw PreconditionError("trace to F2 requires characteristic 2");
    FieldElem acc = a;
    FieldElem cur = a;
    for (u32 i = 1; i < a.field()->n; ++i) {
        cur = cur * cur;
        acc += cur;
    }
    if (acc.is_zero()) return 0;
    if (acc.is_one()) return 1;
    throw InternalError("trace left F2");
}

/// Every element of the field in index order.
inline std::vector<FieldElem> all_elements(const FieldPtr& f) {
    std::vector<FieldElem> out;
    const u64 q = f->size();
    out.reserve(q);
    for (u64 i = 0; i < q; ++i) out.push_back(FieldElem::from_index(f, i));
    return out;
}

}  // namespace jacsplit
