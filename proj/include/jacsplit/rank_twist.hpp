#pragma once

#include <string>

#include "jacsplit/decompose.hpp"
#include "jacsplit/field.hpp"
#include "jacsplit/report.hpp"

namespace jacsplit {

/// E : Y^2 = g(X) = X (X^2 + t X + 1) and the cover C_t : y^2 = h(x) =
/// x (x^(2 ell) + t x^ell + 1). The twist over k(x) is h(x) Y^2 = g(X).
struct TwistModel {
    u32 p = 0;
    u32 ell = 0;
    FieldElem t0;
    FieldPoly g;
    FieldPoly h;
};

/// Assembles g and h without the primality checks on ell (ell = 1 gives h = g).
inline TwistModel assemble_twist(u32 ell, const FieldElem& t0) {
    if (ell == 0 || ell % 2 == 0) throw PreconditionError("ell must be odd");
    const auto& f = t0.field();
    const FieldElem one = FieldElem::one(f);
    TwistModel tw;
    tw.p = f->p;
    tw.ell = ell;
    tw.t0 = t0;
    tw.g = FieldPoly(std::vector<FieldElem>{FieldElem::zero(f), one, t0, one}, FieldElem::zero(f));
    tw.h = FieldPoly::monomial(one, 2 * ell + 1) + FieldPoly::monomial(t0, ell + 1) + FieldPoly::monomial(one, 1);
    return tw;
}

/// g(x^ell) == x^(ell-1) h(x).
inline bool twist_identity_holds(const TwistModel& tw) {
    const FieldElem one = FieldElem::one(tw.t0.field());
    return tw.g.substitute_power(tw.ell) == FieldPoly::monomial(one, tw.ell - 1) * tw.h;
}

inline TwistModel build_twist(u32 p, u32 ell, const FieldElem& t0) {
    if (t0.characteristic() != p) throw PreconditionError("t0 must lie in a field of characteristic p");
    if (p == 2) throw PreconditionError("p must be odd");
    if (ell < 3 || !is_prime(ell) || ell == p) throw PreconditionError("ell must be an odd prime distinct from p");
    require_not_pm2(t0);
    TwistModel tw = assemble_twist(ell, t0);
    if (gcd(tw.h, tw.h.derivative()).degree() > 0 || gcd(tw.g, tw.g.derivative()).degree() > 0)
        throw PreconditionError("twist model is singular", "precondition.singular");
    if (!twist_identity_holds(tw)) throw InternalError("g(x^ell) != x^(ell-1) h(x)");
    return tw;
}

/// (X, Y) = (x^ell, x^y_exponent) on h(x) Y^2 = g(X); the point comes from
/// the cover (x, y) -> (x^ell, y x^((ell-1)/2)) with y_exponent = (ell-1)/2.
inline bool witness_point_check(const TwistModel& tw, std::optional<u32> y_exponent = std::nullopt) {
    const u32 e = y_exponent.value_or((tw.ell - 1) / 2);
    const FieldElem one = FieldElem::one(tw.t0.field());
    const FieldPoly X = FieldPoly::monomial(one, tw.ell);
    const FieldPoly Y = FieldPoly::monomial(one, e);
    return tw.h * Y * Y == tw.g.compose(X);
}

enum class RankContext { finite_field, algebraic_closure };

inline std::string to_string(RankContext c) {
    return c == RankContext::finite_field ? "finite_field" : "algebraic_closure";
}

/// Bookkeeping prediction, never a computed Mordell-Weil rank.
struct RankReport {
    u32 p = 0;
    u32 ell = 0;
    u32 i = 0;
    u32 r = 0;           // multiplicity of the elliptic factor
    u32 endo_rank = 2;   // End of an ordinary elliptic curve over a finite field is an imaginary quadratic order
    u32 predicted_rank = 0;
    RankContext context = RankContext::finite_field;
    bool witness_ok = false;
    std::string status = "predicted";

    json to_json() const {
        return json{{"p", p},
                    {"ell", ell},
                    {"i", i},
                    {"r", r},
                    {"endo_rank", endo_rank},
                    {"predicted_rank", predicted_rank},
                    {"context", to_string(context)},
                    {"witness_ok", witness_ok},
                    {"status", status}};
    }
};

inline RankReport rank_report(const DecompReport& dec, RankContext context) {
    for (const char* name : {"dt_power_shape", "elliptic_factor_ordinary", "base_change_power"}) {
        const Check* c = dec.find(name);
        if (c == nullptr || !c->pass) throw PreconditionError(std::string("decomposition check failed: ") + name,
                                                              "precondition.decomposition");
    }
    if (!dec.f || !dec.chi_d_base_changed || *dec.chi_d_base_changed != dec.f->pow(dec.d))
        throw PreconditionError("decomposition lacks a verified f^d factorization", "precondition.decomposition");
    RankReport rep;
    rep.p = dec.p;
    rep.ell = dec.ell;
    rep.i = dec.i;
    rep.r = dec.d;
    rep.predicted_rank = rep.r * rep.endo_rank;
    rep.context = context;
    rep.witness_ok = witness_point_check(build_twist(dec.p, dec.ell, dec.t0));
    return rep;
}

}  // namespace jacsplit
