#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "jacsplit/arith.hpp"
#include "jacsplit/field.hpp"

namespace jacsplit {

/// Logarithm/Zech-table model of a FieldDesc for exhaustive scans.
///
/// Elements are stored as discrete logarithms to a fixed primitive element g
/// (the smallest-index element of order q - 1); the value q - 1 encodes zero.
/// Multiplication is an addition of logs, addition goes through the Zech
/// table zech[k] = log(1 + g^k). Tables cost 12 bytes per field element.
class FastField {
public:
    using Elem = u32;

    explicit FastField(FieldPtr desc) : desc_(std::move(desc)) {
        q_ = desc_->size();
        if (q_ > (u64{1} << 31)) throw GuardExceeded("field too large for table arithmetic");
        order_ = static_cast<u32>(q_ - 1);
        build();
    }

    /// Cached tables for a field model.
    static std::shared_ptr<const FastField> of(const FieldPtr& desc) {
        static std::mutex mu;
        static std::map<const FieldDesc*, std::shared_ptr<const FastField>> cache;
        std::lock_guard lock(mu);
        auto& slot = cache[desc.get()];
        if (!slot) slot = std::make_shared<FastField>(desc);
        return slot;
    }

    const FieldPtr& desc() const { return desc_; }
    u64 size() const { return q_; }
    u32 group_order() const { return order_; }
    Elem zero() const { return order_; }
    Elem one() const { return 0; }
    bool is_zero(Elem a) const { return a == order_; }

    /// g^k for k in [0, q-1).
    Elem power_of_generator(u64 k) const { return static_cast<Elem>(k % order_); }

    Elem from_index(u64 idx) const { return log_[idx]; }
    u64 to_index(Elem a) const { return a == order_ ? 0 : exp_[a]; }

    Elem from_elem(const FieldElem& a) const {
        if (!same_field(a.field(), desc_)) throw MixedFieldError("element not in this table field");
        return log_[a.index()];
    }
    FieldElem to_elem(Elem a) const { return FieldElem::from_index(desc_, to_index(a)); }
    FieldElem generator() const { return to_elem(1 % order_); }

    Elem mul(Elem a, Elem b) const {
        if (a == order_ || b == order_) return order_;
        const u64 s = u64{a} + b;
        return static_cast<Elem>(s >= order_ ? s - order_ : s);
    }

    Elem inv(Elem a) const {
        if (a == order_) throw DivisionByZero("inverse of zero field element");
        return a == 0 ? 0 : order_ - a;
    }

    Elem add(Elem a, Elem b) const {
        if (a == order_) return b;
        if (b == order_) return a;
        const u32 d = b >= a ? b - a : b + order_ - a;
        const u32 z = zech_[d];
        if (z == order_) return order_;
        const u64 s = u64{a} + z;
        return static_cast<Elem>(s >= order_ ? s - order_ : s);
    }

    Elem neg(Elem a) const { return mul(a, minus_one_); }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    /// Quadratic character in odd characteristic: squares are even logs.
    int chi(Elem a) const {
        if (a == order_) return 0;
        return (a & 1U) == 0 ? 1 : -1;
    }

    /// Absolute trace to F2 (characteristic 2 only): parity of the index
    /// masked by the traces of the basis monomials.
    u32 trace2(Elem a) const {
        if (a == order_) return 0;
        return static_cast<u32>(__builtin_popcountll(exp_[a] & trace_mask_) & 1);
    }

    /// Horner evaluation, coefficients low to high.
    Elem eval(std::span<const Elem> coeffs, Elem x) const {
        Elem acc = order_;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = add(mul(acc, x), coeffs[i]);
        return acc;
    }

private:
    void build() {
        const u32 p = desc_->p;
        const u32 n = desc_->n;
        const FieldElem g = find_primitive();
        const auto& gc = g.coeffs();
        const auto& m = desc_->modulus;

        exp_.assign(order_, 0);
        log_.assign(q_, order_);
        std::vector<u32> cur(n, 0);
        cur[0] = 1;
        std::vector<u64> t(2 * n, 0);
        for (u32 k = 0; k < order_; ++k) {
            u64 idx = 0;
            for (u32 i = n; i-- > 0;) idx = idx * p + cur[i];
            exp_[k] = idx;
            log_[idx] = k;
            // cur *= g, exploiting the sparsity of small-index generators
            std::fill(t.begin(), t.end(), 0);
            for (u32 j = 0; j < n; ++j) {
                if (gc[j] == 0) continue;
                for (u32 i = 0; i < n; ++i) t[i + j] = (t[i + j] + u64{cur[i]} * gc[j]) % p;
            }
            for (u32 d = 2 * n - 1; d-- > n;) {
                const u64 c = t[d];
                if (c == 0) continue;
                for (u32 i = 0; i < n; ++i) t[d - n + i] = (t[d - n + i] + (p - c) * m[i]) % p;
                t[d] = 0;
            }
            for (u32 i = 0; i < n; ++i) cur[i] = static_cast<u32>(t[i]);
        }
        if (log_[0] != order_) throw InternalError("generator powers hit zero");

        zech_.assign(order_, order_);
        for (u32 k = 0; k < order_; ++k) {
            const u64 idx = exp_[k];
            const u64 c0 = idx % p;
            const u64 plus_one = c0 + 1 == p ? idx - c0 : idx + 1;
            zech_[k] = log_[plus_one];
        }
        minus_one_ = p == 2 ? 0 : order_ / 2;

        trace_mask_ = 0;
        if (p == 2) {
            for (u32 i = 0; i < n; ++i) {
                std::vector<u32> c(n, 0);
                c[i] = 1;
                if (trace_to_f2(FieldElem(desc_, std::move(c))) == 1) trace_mask_ |= u64{1} << i;
            }
        }
    }

    FieldElem find_primitive() const {
        if (q_ == 2) return FieldElem::one(desc_);
        const auto primes = prime_divisors(order_);
        for (u64 idx = 1; idx < q_; ++idx) {
            const FieldElem c = FieldElem::from_index(desc_, idx);
            bool primitive = true;
            for (u64 r : primes) {
                if (c.pow(order_ / r).is_one()) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return c;
        }
        throw InternalError("no primitive element");
    }

    FieldPtr desc_;
    u64 q_ = 0;
    u32 order_ = 0;
    u32 minus_one_ = 0;
    u64 trace_mask_ = 0;
    std::vector<u64> exp_;
    std::vector<u32> log_;
    std::vector<u32> zech_;
};

/// Embedding F_{p^a} -> F_{p^{ab}} sending z to the smallest-index root of
/// the source modulus inside the target.
class Embedding {
public:
    Embedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
        if (from_->p != to_->p || to_->n % from_->n != 0)
            throw PreconditionError("no embedding between fields of these degrees");
        root_ = find_root();
        powers_.push_back(FieldElem::one(to_));
        for (u32 i = 1; i < from_->n; ++i) powers_.push_back(powers_.back() * root_);
    }

    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }
    const FieldElem& image_of_z() const { return root_; }

    FieldElem operator()(const FieldElem& a) const {
        if (!same_field(a.field(), from_)) throw MixedFieldError("element not in embedding source");
        FieldElem acc = FieldElem::zero(to_);
        const auto& c = a.coeffs();
        for (u32 i = 0; i < from_->n; ++i) {
            if (c[i] != 0) acc += FieldElem::from_int(to_, c[i]) * powers_[i];
        }
        return acc;
    }

    FieldPoly operator()(const FieldPoly& f) const {
        return f.map_coeffs([this](const FieldElem& v) { return (*this)(v); });
    }

private:
    FieldElem find_root() const {
        if (from_->n == 1) return FieldElem::zero(to_);
        if (same_field(from_, to_)) return FieldElem::z(to_);
        // Roots lie in the unique subfield of order p^a: zero plus the powers
        // g^(k (q-1)/(p^a-1)).
        const auto ff = FastField::of(to_);
        const u64 sub_order = from_->size() - 1;
        const u64 step = ff->group_order() / sub_order;
        std::vector<FastField::Elem> mod;
        for (u32 v : from_->modulus) mod.push_back(ff->from_index(v));
        u64 best = ~u64{0};
        for (u64 k = 0; k < sub_order; ++k) {
            const auto x = ff->power_of_generator(k * step);
            if (ff->is_zero(ff->eval(mod, x))) best = std::min(best, ff->to_index(x));
        }
        if (best == ~u64{0}) throw InternalError("modulus has no root in extension");
        return FieldElem::from_index(to_, best);
    }

    FieldPtr from_;
    FieldPtr to_;
    FieldElem root_;
    std::vector<FieldElem> powers_;
};

}  // namespace jacsplit
