#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jacsplit/arith.hpp"
#include "jacsplit/error.hpp"

namespace jacsplit {

/// Ring operations a coefficient type must expose to `Polynomial`.
///
/// The primary template covers integer-like types (BigInt, i64). Field
/// elements and nested polynomials specialize it; the `like` argument carries
/// whatever runtime context (e.g. the field) the new value needs.
template <class R, class Enable = void>
struct ring_traits {
    static R zero_like(const R&) { return R(0); }
    static R one_like(const R&) { return R(1); }
    static R from_int_like(const R&, i64 v) { return R(v); }
    static bool is_zero(const R& v) { return v == 0; }
    static R div_exact(const R& a, const R& b) {
        if (b == 0) throw DivisionByZero("integer division by zero");
        if (a % b != 0) throw InternalError("inexact integer division");
        return a / b;
    }
    static std::string format(const R& v) {
        std::ostringstream os;
        os << v;
        return os.str();
    }
};

/// Dense univariate polynomial, coefficients stored low to high.
///
/// The zero prototype `zero_` lets coefficient types with runtime context
/// (finite field elements, inner polynomials) create fresh coefficients even
/// when the polynomial itself is zero. Representation is kept trimmed: the
/// leading stored coefficient is never zero.
template <class R>
class Polynomial {
public:
    using coeff_type = R;
    using traits = ring_traits<R>;

    explicit Polynomial(R zero = R{}) : zero_(std::move(zero)) {}

    Polynomial(std::vector<R> coeffs, R zero) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

    /// Zero prototype taken from the first coefficient.
    explicit Polynomial(std::vector<R> coeffs)
        : zero_(coeffs.empty() ? R{} : traits::zero_like(coeffs.front())), c_(std::move(coeffs)) {
        trim();
    }

    Polynomial(std::initializer_list<R> coeffs) : Polynomial(std::vector<R>(coeffs)) {}

    static Polynomial monomial(const R& c, std::size_t k) {
        std::vector<R> v(k + 1, traits::zero_like(c));
        v[k] = c;
        return Polynomial(std::move(v), traits::zero_like(c));
    }

    /// The polynomial T over the ring of `proto`.
    static Polynomial variable(const R& proto) { return monomial(traits::one_like(proto), 1); }

    static Polynomial constant(const R& c) { return Polynomial(std::vector<R>{c}, traits::zero_like(c)); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    const std::vector<R>& coeffs() const { return c_; }
    const R& zero_proto() const { return zero_; }

    const R& operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }

    const R& lead() const {
        if (c_.empty()) throw PreconditionError("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == traits::one_like(zero_); }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial(a.zero_);
        std::vector<R> out(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (traits::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(out), a.zero_);
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const R& s) const {
        Polynomial r(*this);
        for (auto& v : r.c_) v = v * s;
        r.trim();
        return r;
    }

    Polynomial pow(u64 k) const {
        Polynomial result = constant(traits::one_like(zero_));
        Polynomial base = *this;
        while (k != 0) {
            if (k & 1U) result *= base;
            k >>= 1U;
            if (k != 0) base *= base;
        }
        return result;
    }

    /// Horner evaluation at a point of the coefficient ring.
    R operator()(const R& x) const {
        R acc = zero_;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Evaluation at a value of another ring S, through a coefficient map R -> S.
    template <class S, class Map>
    S eval_mapped(const S& x, const S& zero, Map&& map) const {
        S acc = zero;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + map(*it);
        return acc;
    }

    /// f(g(T)).
    Polynomial compose(const Polynomial& g) const {
        Polynomial acc(zero_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
        return acc;
    }

    /// f(T^d).
    Polynomial substitute_power(std::size_t d) const {
        if (d == 0) throw PreconditionError("substitute_power requires d >= 1");
        if (is_zero()) return *this;
        std::vector<R> out((c_.size() - 1) * d + 1, zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) out[i * d] = c_[i];
        return Polynomial(std::move(out), zero_);
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial(zero_);
        std::vector<R> out(c_.size() - 1, zero_);
        for (std::size_t i = 1; i < c_.size(); ++i)
            out[i - 1] = c_[i] * traits::from_int_like(zero_, static_cast<i64>(i));
        return Polynomial(std::move(out), zero_);
    }

    /// T^width * f(1/T); width defaults to deg f.
    Polynomial reversed(int width = -1) const {
        if (width < 0) width = degree();
        if (degree() > width) throw PreconditionError("reversal width below degree");
        std::vector<R> out(static_cast<std::size_t>(width) + 1, zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) out[static_cast<std::size_t>(width) - i] = c_[i];
        return Polynomial(std::move(out), zero_);
    }

    /// Euclidean division; the divisor's leading coefficient must divide
    /// exactly at every step (always true over a field or for monic divisors).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
        Polynomial rem(*this);
        if (rem.degree() < d.degree()) return {Polynomial(zero_), rem};
        std::vector<R> quot(static_cast<std::size_t>(rem.degree() - d.degree()) + 1, zero_);
        const R& lc = d.lead();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            const auto shift = static_cast<std::size_t>(rem.degree() - d.degree());
            R factor = traits::div_exact(rem.lead(), lc);
            for (std::size_t i = 0; i < d.c_.size(); ++i) rem.c_[i + shift] = rem.c_[i + shift] - factor * d.c_[i];
            quot[shift] = factor;
            rem.trim();
        }
        return {Polynomial(std::move(quot), zero_), rem};
    }

    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return a.divmod(b).first; }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return a.divmod(b).second; }

    /// Divide by the leading coefficient (field coefficients only).
    Polynomial monic() const {
        if (is_zero()) return *this;
        const R one = traits::one_like(zero_);
        const R inv = traits::div_exact(one, lead());
        return scaled(inv);
    }

    template <class F>
    auto map_coeffs(F&& f) const {
        using S = std::decay_t<decltype(f(zero_))>;
        std::vector<S> out;
        out.reserve(c_.size());
        for (const auto& v : c_) out.push_back(f(v));
        return Polynomial<S>(std::move(out), f(zero_));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string to_string(const std::string& var = "T") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (traits::is_zero(c_[k])) continue;
            std::string coeff = traits::format(c_[k]);
            const bool one = c_[k] == traits::one_like(zero_);
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += coeff;
                continue;
            }
            if (!one) out += (coeff.find_first_of("+ ") != std::string::npos ? "(" + coeff + ")" : coeff) + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && traits::is_zero(c_.back())) c_.pop_back();
    }

    R zero_;
    std::vector<R> c_;
};

template <class R>
struct ring_traits<Polynomial<R>> {
    using P = Polynomial<R>;
    static P zero_like(const P& like) { return P(like.zero_proto()); }
    static P one_like(const P& like) { return P::constant(ring_traits<R>::one_like(like.zero_proto())); }
    static P from_int_like(const P& like, i64 v) {
        return P::constant(ring_traits<R>::from_int_like(like.zero_proto(), v));
    }
    static bool is_zero(const P& v) { return v.is_zero(); }
    static P div_exact(const P& a, const P& b) {
        auto [q, r] = a.divmod(b);
        if (!r.is_zero()) throw InternalError("inexact polynomial division");
        return q;
    }
    static std::string format(const P& v) { return v.to_string("t"); }
};

/// Monic gcd over a field.
template <class R>
Polynomial<R> gcd(Polynomial<R> a, Polynomial<R> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

using IntPoly = Polynomial<BigInt>;

}  // namespace jacsplit
