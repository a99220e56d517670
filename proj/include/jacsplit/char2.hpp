#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jacsplit/artin.hpp"
#include "jacsplit/field.hpp"
#include "jacsplit/report.hpp"
#include "jacsplit/special_polys.hpp"
#include "jacsplit/zeta.hpp"

namespace jacsplit {

// Subextensions of the elementary abelian 2-extension of F_{2^r}(x) are
// represented by their Artin-Schreier functions u = eps/x + beta x. Sums and
// Frobenius images keep that shape, so a function is the bit vector
// (eps, coordinates of beta) and U is an F2-subspace of F2^(1+r).

struct ASFunction {
    bool eps = false;
    FieldElem beta;

    /// eps in bit 0, the coordinate bits of beta above it.
    u64 code() const { return (beta.index() << 1U) | (eps ? 1U : 0U); }

    static ASFunction from_code(const FieldPtr& f, u64 code) {
        return ASFunction{(code & 1U) != 0, FieldElem::from_index(f, code >> 1U)};
    }

    bool is_zero() const { return !eps && beta.is_zero(); }
    ASFunction frobenius() const { return ASFunction{eps, beta * beta}; }

    friend ASFunction operator+(const ASFunction& a, const ASFunction& b) {
        return ASFunction{a.eps != b.eps, a.beta + b.beta};
    }
    friend bool operator==(const ASFunction& a, const ASFunction& b) { return a.eps == b.eps && a.beta == b.beta; }

    std::string to_string() const {
        std::string s;
        if (eps) s = "1/x";
        if (!beta.is_zero()) s += (s.empty() ? "" : " + ") + std::string("(") + beta.to_string() + ")*x";
        return s.empty() ? "0" : s;
    }
};

/// Row-reduced F2 span of bit vectors.
class F2Span {
public:
    /// Adds v; false when v was already in the span.
    bool insert(u64 v) {
        v = reduce(v);
        if (v == 0) return false;
        const u64 pivot = top_bit(v);
        for (auto& row : rows_) {
            if ((row >> pivot) & 1U) row ^= v;
        }
        rows_.push_back(v);
        std::sort(rows_.begin(), rows_.end(), std::greater<>());
        return true;
    }

    u64 reduce(u64 v) const {
        for (u64 row : rows_) {
            if ((v >> top_bit(row)) & 1U) v ^= row;
        }
        return v;
    }

    bool contains(u64 v) const { return reduce(v) == 0; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<u64>& rows() const { return rows_; }

private:
    static u64 top_bit(u64 v) { return 63U - static_cast<u64>(__builtin_clzll(v)); }
    std::vector<u64> rows_;
};

struct ASModule {
    u32 r = 0;
    FieldElem alpha;
    std::vector<ASFunction> basis;  // reduced echelon rows, descending code
    u32 dim = 0;

    /// Every nonzero element, ascending by code.
    std::vector<ASFunction> nonzero_elements() const {
        std::vector<u64> codes;
        const u64 total = u64{1} << dim;
        for (u64 mask = 1; mask < total; ++mask) {
            u64 code = 0;
            for (u32 b = 0; b < dim; ++b) {
                if ((mask >> b) & 1U) code ^= basis[b].code();
            }
            codes.push_back(code);
        }
        std::sort(codes.begin(), codes.end());
        std::vector<ASFunction> out;
        out.reserve(codes.size());
        for (u64 c : codes) out.push_back(ASFunction::from_code(alpha.field(), c));
        return out;
    }

    bool contains(const ASFunction& u) const {
        F2Span s;
        for (const auto& b : basis) s.insert(b.code());
        return s.contains(u.code());
    }
};

/// f(sigma)(beta) = sum f_i beta^(2^i) for f over F2.
inline FieldElem apply_frobenius_poly(const FieldPoly& f, const FieldElem& beta) {
    FieldElem acc = FieldElem::zero(beta.field());
    FieldElem conj = beta;
    for (int i = 0; i <= f.degree(); ++i) {
        if (!f[static_cast<std::size_t>(i)].is_zero()) acc += conj;
        conj = conj * conj;
    }
    return acc;
}

/// First element (index order) of F_{2^r} whose Frobenius orbit is a basis.
inline FieldElem normal_basis_generator(u32 r) {
    const auto f = make_field(2, r);
    const u64 q = f->size();
    for (u64 idx = 1; idx < q; ++idx) {
        FieldElem b = FieldElem::from_index(f, idx);
        F2Span span;
        bool independent = true;
        for (u32 i = 0; i < r && independent; ++i) {
            independent = span.insert(b.index());
            b = b * b;
        }
        if (independent) return FieldElem::from_index(f, idx);
    }
    throw InternalError("no normal basis generator");
}

struct AlphaConstruction {
    u32 r = 0;
    FieldElem beta;                   // normal basis generator
    std::vector<FieldPoly> factors;   // x + 1, p_1, ..., p_s in canonical order
    FieldPoly p1;
    FieldElem alpha;                  // ((x - 1) p_2 ... p_s)(sigma)(beta)
};

inline AlphaConstruction construct_alpha(u32 r) {
    AlphaConstruction c;
    c.r = r;
    c.factors = factor_x_pow_r_minus_1_over_f2(r);
    c.beta = normal_basis_generator(r);
    c.p1 = c.factors.at(1);
    FieldPoly cofactor = c.factors[0];
    for (std::size_t k = 2; k < c.factors.size(); ++k) cofactor *= c.factors[k];
    c.alpha = apply_frobenius_poly(cofactor, c.beta);
    if (c.alpha.is_zero() || c.alpha.is_one()) throw InternalError("constructed alpha lies in F2");
    if (!apply_frobenius_poly(c.p1, c.alpha).is_zero()) throw InternalError("p_1(sigma) does not kill alpha");
    return c;
}

/// The F2[Gal]-module generated by 1/x + alpha x.
inline ASModule galois_module_closure(const FieldElem& alpha, u32 r) {
    if (alpha.characteristic() != 2 || alpha.field()->n != r) throw PreconditionError("alpha must lie in F_{2^r}");
    if (alpha.is_zero()) throw PreconditionError("alpha must be nonzero");
    F2Span span;
    ASFunction g{true, alpha};
    std::vector<ASFunction> frontier{g};
    span.insert(g.code());
    // The span of the orbit is Frobenius-stable, so closing the orbit suffices.
    for (u32 i = 1; i < r; ++i) {
        g = g.frobenius();
        span.insert(g.code());
    }
    ASModule U;
    U.r = r;
    U.alpha = alpha;
    for (u64 row : span.rows()) U.basis.push_back(ASFunction::from_code(alpha.field(), row));
    U.dim = static_cast<u32>(U.basis.size());
    for (const auto& b : U.basis) {
        if (!U.contains(b.frobenius())) throw InternalError("module closure is not Galois stable");
    }
    return U;
}

/// One representative per F2-line, i.e. every nonzero element.
inline std::vector<ASFunction> minimal_subextensions(const ASModule& U) { return U.nonzero_elements(); }

/// Simple poles at 0 (eps = 1) and at infinity (beta != 0); genus 1 exactly
/// when both are present.
inline u32 genus_of_line(const ASFunction& u) {
    if (u.is_zero()) throw PreconditionError("zero Artin-Schreier function", "precondition.zero_function");
    const u32 ramified = (u.eps ? 1U : 0U) + (u.beta.is_zero() ? 0U : 1U);
    // 2g - 2 = 2 (-2) + sum over ramified places of (m + 1) with m = 1
    const int two_g = -4 + 2 * static_cast<int>(ramified) + 2;
    return static_cast<u32>(two_g / 2);
}

inline u32 genus_of_M(const ASModule& U) {
    u32 g = 0;
    for (const auto& u : minimal_subextensions(U)) g += genus_of_line(u);
    return g;
}

/// Lines with eps = 1 and beta != 0, counted without the genus formula.
inline u32 count_two_pole_lines(const ASModule& U) {
    u32 n = 0;
    for (const auto& u : U.nonzero_elements()) n += (u.eps && !u.beta.is_zero()) ? 1U : 0U;
    return n;
}

struct HyperellipticWitness {
    u32 dim_u = 0;
    u32 dim_v = 0;
    bool v_lines_genus_zero = false;
    bool pass() const { return dim_u == dim_v + 1 && v_lines_genus_zero; }
};

/// V = {u in U : eps = 0} has index 2 and only rational lines.
inline HyperellipticWitness hyperellipticity_witness(const ASModule& U) {
    HyperellipticWitness w;
    w.dim_u = U.dim;
    F2Span v;
    bool all_zero = true;
    for (const auto& u : U.nonzero_elements()) {
        if (u.eps) continue;
        v.insert(u.code());
        all_zero = all_zero && genus_of_line(u) == 0;
    }
    w.dim_v = static_cast<u32>(v.dim());
    w.v_lines_genus_zero = all_zero;
    return w;
}

/// No nonzero element is Artin-Schreier equivalent to a constant: each has
/// a simple pole.
inline bool regularity_check(const ASModule& U) {
    for (const auto& u : U.nonzero_elements()) {
        if (!u.eps && u.beta.is_zero()) return false;
    }
    return U.dim >= 1;
}

inline bool in_proper_subfield(const FieldElem& a) {
    const u32 n = a.field()->n;
    for (u32 d = 1; d < n; ++d) {
        if (n % d == 0 && a.frobenius(d) == a) return true;
    }
    return false;
}

/// Frobenius trace q + 1 - N of y^2 + y = u over F_{2^r}.
inline BigInt line_trace(const ASFunction& u, const CountConfig& cfg = {}) {
    const u64 q = u.beta.field()->size();
    return BigInt(q) + 1 - count_points_as2(u.eps, u.beta, 1, cfg);
}

struct ConjugateCounts {
    bool distinct = false;
    std::vector<i64> counts_m1;  // over F_{2^r}
    std::vector<i64> counts_m2;  // over F_{2^{2r}}
    bool equal() const {
        return std::adjacent_find(counts_m1.begin(), counts_m1.end(), std::not_equal_to<>()) == counts_m1.end() &&
               std::adjacent_find(counts_m2.begin(), counts_m2.end(), std::not_equal_to<>()) == counts_m2.end();
    }
    bool pass() const { return distinct && equal(); }
};

/// The r conjugates 1/x + sigma^i(alpha) x are distinct and share counts.
inline ConjugateCounts conjugate_zeta_equality(const FieldElem& alpha, u32 r, const CountConfig& cfg = {}) {
    if (alpha.characteristic() != 2 || alpha.field()->n != r) throw PreconditionError("alpha must lie in F_{2^r}");
    if (in_proper_subfield(alpha)) throw PreconditionError("alpha lies in a proper subfield");
    ConjugateCounts out;
    std::vector<u64> seen;
    FieldElem conj = alpha;
    for (u32 i = 0; i < r; ++i) {
        seen.push_back(conj.index());
        out.counts_m1.push_back(count_points_as2(true, conj, 1, cfg));
        out.counts_m2.push_back(count_points_as2(true, conj, 2, cfg));
        conj = conj * conj;
    }
    std::sort(seen.begin(), seen.end());
    out.distinct = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    return out;
}

struct JMCharpoly {
    IntPoly chi;
    std::vector<std::pair<ASFunction, BigInt>> line_traces;  // genus-1 lines only
};

/// Product over genus-1 lines of T^2 - a T + q.
inline JMCharpoly jm_charpoly(const ASModule& U, const CountConfig& cfg = {}) {
    const BigInt q = U.alpha.field()->size();
    JMCharpoly out;
    out.chi = int_poly({1});
    for (const auto& u : minimal_subextensions(U)) {
        if (genus_of_line(u) != 1) continue;
        const BigInt a = line_trace(u, cfg);
        out.line_traces.emplace_back(u, a);
        out.chi *= IntPoly(std::vector<BigInt>{q, BigInt(-a), BigInt(1)}, BigInt(0));
    }
    return out;
}

struct BijectionCheck {
    u64 polynomials = 0;  // nonzero f over F2 of degree < deg p_1
    bool injective = false;
    bool lands_in_genus_one = false;
    bool surjective = false;
    bool pass() const { return injective && lands_in_genus_one && surjective; }
};

/// f -> 1/x + f(sigma)(alpha) x maps nonzero f of degree < deg p_1 onto the
/// genus-1 lines of U.
inline BijectionCheck polynomial_line_bijection(const ASModule& U, const AlphaConstruction& c) {
    BijectionCheck out;
    const auto f2 = make_field(2, 1);
    const auto d = static_cast<u32>(c.p1.degree());
    std::vector<u64> images;
    bool genus_ok = true;
    for (u64 mask = 1; mask < (u64{1} << d); ++mask) {
        std::vector<i64> coeffs(d, 0);
        for (u32 b = 0; b < d; ++b) coeffs[b] = static_cast<i64>((mask >> b) & 1U);
        const ASFunction u{true, apply_frobenius_poly(field_poly(f2, coeffs), c.alpha)};
        genus_ok = genus_ok && U.contains(u) && genus_of_line(u) == 1;
        images.push_back(u.code());
    }
    out.polynomials = images.size();
    std::sort(images.begin(), images.end());
    out.injective = std::adjacent_find(images.begin(), images.end()) == images.end();
    out.lands_in_genus_one = genus_ok;
    out.surjective = out.injective && images.size() == count_two_pole_lines(U);
    return out;
}

struct Char2Report {
    u32 r = 0;
    AlphaConstruction construction;
    ASModule module;
    u32 genus = 0;
    u32 genus_one_lines = 0;
    bool mersenne = false;
    std::optional<JMCharpoly> jm;
    BigInt trace_l;  // trace of L : y^2 + y = 1/x + alpha x
    std::vector<Check> checks;
    std::string conclusion;

    bool pass() const { return all_pass(checks); }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }

    json to_json() const {
        json params{{"r", r}, {"phi2", phi2(r)}, {"mersenne", mersenne}};
        json body = make_envelope(std::move(params), checks, conclusion);
        json factors = json::array();
        for (const auto& f : construction.factors) factors.push_back(fp_poly_to_json(f));
        json results{{"alpha", field_elem_to_json(construction.alpha)},
                     {"beta", field_elem_to_json(construction.beta)},
                     {"factors", factors},
                     {"dim_u", module.dim},
                     {"genus_m", genus},
                     {"genus_one_lines", genus_one_lines},
                     {"trace_l", big_to_json(trace_l)}};
        if (jm) results["chi_jm"] = int_poly_to_json(jm->chi);
        body["results"] = std::move(results);
        return body;
    }
};

/// Builds U for the constructed alpha and verifies its genus, hyperelliptic,
/// regularity and Jacobian-decomposition claims. `with_counts` enables the
/// point-count based checks.
inline Char2Report char2_report(u32 r, const CountConfig& cfg = {}, bool with_counts = true) {
    if (r < 3 || r % 2 == 0 || !is_prime(r)) throw PreconditionError("r must be an odd prime", "usage.r");
    Char2Report rep;
    rep.r = r;
    rep.construction = construct_alpha(r);
    const auto& c = rep.construction;
    const u64 d = phi2(r);
    rep.mersenne = (u64{1} << d) - 1 == r;

    rep.checks.push_back(Check{"alpha_construction",
                               "artin_schreier.alpha",
                               !in_proper_subfield(c.alpha) && apply_frobenius_poly(c.p1, c.alpha).is_zero(),
                               {{"deg_p1", c.p1.degree()}, {"factor_count", c.factors.size()}}});

    rep.module = galois_module_closure(c.alpha, r);
    rep.checks.push_back(Check{"module_dimension", "artin_schreier.module", rep.module.dim == 1 + d,
                               {{"dim", rep.module.dim}, {"expected", 1 + d}}});

    rep.genus = genus_of_M(rep.module);
    rep.genus_one_lines = count_two_pole_lines(rep.module);
    const u64 expected_genus = (u64{1} << d) - 1;
    rep.checks.push_back(Check{"genus_of_m",
                               "artin_schreier.genus",
                               rep.genus == expected_genus && rep.genus == rep.genus_one_lines,
                               {{"genus", rep.genus}, {"genus_one_lines", rep.genus_one_lines},
                                {"expected", expected_genus}}});

    const auto w = hyperellipticity_witness(rep.module);
    rep.checks.push_back(Check{"hyperelliptic", "artin_schreier.hyperelliptic", w.pass(),
                               {{"dim_u", w.dim_u}, {"dim_v", w.dim_v}, {"v_genus_zero", w.v_lines_genus_zero}}});

    rep.checks.push_back(Check{"regular", "artin_schreier.regular", regularity_check(rep.module), json::object()});

    const auto bij = polynomial_line_bijection(rep.module, c);
    rep.checks.push_back(Check{"polynomial_bijection",
                               "artin_schreier.bijection",
                               bij.pass(),
                               {{"polynomials", bij.polynomials},
                                {"injective", bij.injective},
                                {"surjective", bij.surjective}}});

    if (with_counts) {
        const auto conj = conjugate_zeta_equality(c.alpha, r, cfg);
        rep.checks.push_back(Check{"conjugate_counts", "artin_schreier.conjugates", conj.pass(),
                                   {{"distinct", conj.distinct}, {"counts_m1", conj.counts_m1},
                                    {"counts_m2", conj.counts_m2}}});

        rep.jm = jm_charpoly(rep.module, cfg);
        rep.trace_l = line_trace(ASFunction{true, c.alpha}, cfg);
        bool odd = true;
        u32 conjugate_lines = 0;
        std::vector<u64> orbit;
        FieldElem conj_alpha = c.alpha;
        for (u32 i = 0; i < r; ++i, conj_alpha = conj_alpha * conj_alpha) orbit.push_back(conj_alpha.index());
        for (const auto& [u, a] : rep.jm->line_traces) {
            odd = odd && a % 2 != 0;
            if (std::find(orbit.begin(), orbit.end(), u.beta.index()) != orbit.end()) {
                ++conjugate_lines;
                odd = odd && a == rep.trace_l;
            }
        }
        rep.checks.push_back(Check{"ordinary_lines", "artin_schreier.ordinary", odd,
                                   {{"conjugate_lines", conjugate_lines}}});

        const BigInt q = BigInt(1) << r;
        const IntPoly el = IntPoly(std::vector<BigInt>{q, BigInt(-rep.trace_l), BigInt(1)}, BigInt(0));
        auto [cofactor, rem] = rep.jm->chi.divmod(el.pow(r));
        const bool has_power = rem.is_zero() && conjugate_lines == r;
        const bool shape_ok = has_power && cofactor.degree() == static_cast<int>(2 * (rep.genus - r));
        const bool pure_power = rep.jm->chi == el.pow(r);
        rep.checks.push_back(Check{"jacobian_decomposition",
                                   "artin_schreier.jacobian",
                                   shape_ok && (!rep.mersenne || pure_power),
                                   {{"contains_el_power", has_power},
                                    {"cofactor_degree", cofactor.degree()},
                                    {"pure_power", pure_power}}});
    }

    if (rep.pass()) {
        rep.conclusion = rep.mersenne ? "J_M is isogenous to J_L^" + std::to_string(r) + ", genus " +
                                            std::to_string(rep.genus) + ", J_L ordinary"
                                      : "J_M is isogenous to J_L^" + std::to_string(r) + " x A with dim A = " +
                                            std::to_string(rep.genus - r) + ", all factors ordinary elliptic";
    } else {
        std::string failed;
        for (const auto& ch : rep.checks) {
            if (!ch.pass) failed += (failed.empty() ? "" : ", ") + ch.name;
        }
        rep.conclusion = "verification failed: " + failed;
    }
    return rep;
}

}  // namespace jacsplit
