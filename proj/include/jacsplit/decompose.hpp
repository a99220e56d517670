#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jacsplit/artin.hpp"
#include "jacsplit/cartier.hpp"
#include "jacsplit/fast_field.hpp"
#include "jacsplit/report.hpp"
#include "jacsplit/special_polys.hpp"
#include "jacsplit/zeta.hpp"

namespace jacsplit {

/// chi(T) = f(T^d).
struct PowerShape {
    IntPoly f;
    u32 d = 1;
};

struct ShapeCheck {
    std::optional<PowerShape> shape;
    int offending_exponent = -1;  // first exponent not divisible by d with a nonzero coefficient
    bool ok() const { return shape.has_value(); }
};

inline ShapeCheck verify_power_shape(const IntPoly& chi, u32 d) {
    if (!chi.is_monic()) throw PreconditionError("power-shape check needs a monic polynomial");
    if (d == 0 || chi.degree() % static_cast<int>(d) != 0) throw PreconditionError("d must divide deg chi");
    ShapeCheck out;
    std::vector<BigInt> f;
    for (int k = 0; k <= chi.degree(); ++k) {
        const auto& c = chi[static_cast<std::size_t>(k)];
        if (k % static_cast<int>(d) == 0) {
            f.push_back(c);
        } else if (c != 0) {
            out.offending_exponent = k;
            return out;
        }
    }
    out.shape = PowerShape{IntPoly(std::move(f), BigInt(0)), d};
    return out;
}

/// Largest d dividing deg chi for which chi = f(T^d).
inline u32 max_power_shape(const IntPoly& chi) {
    u32 best = 1;
    for (int d = 1; d <= chi.degree(); ++d) {
        if (chi.degree() % d == 0 && verify_power_shape(chi, static_cast<u32>(d)).ok()) best = static_cast<u32>(d);
    }
    return best;
}

/// Characteristic polynomial whose roots are the m-th powers of the roots of
/// chi, through exact power sums.
inline IntPoly base_change_charpoly(const IntPoly& chi, u32 m) {
    if (!chi.is_monic()) throw PreconditionError("base change needs a monic polynomial");
    if (m == 0) throw PreconditionError("base change degree must be >= 1");
    const auto D = static_cast<std::size_t>(chi.degree());
    if (m == 1 || D == 0) return chi;
    std::vector<BigInt> recip(D + 1);
    for (std::size_t k = 0; k <= D; ++k) recip[k] = chi[D - k];
    const auto sums = newton::power_sums(recip, D * m);
    std::vector<BigInt> lifted;
    for (std::size_t k = 1; k <= D; ++k) lifted.push_back(sums[k * m - 1]);
    const auto coeffs = newton::coeffs_from_power_sums(lifted, D);
    return IntPoly(coeffs, BigInt(0)).reversed(static_cast<int>(D));
}

/// T^2 - a T + Q belongs to an ordinary elliptic curve: a^2 <= 4Q and p does
/// not divide a.
inline bool is_ordinary_ec_charpoly(const IntPoly& f, u32 p) {
    if (f.degree() != 2 || !f.is_monic()) throw PreconditionError("expected a monic quadratic");
    BigInt Q = f[0];
    if (Q <= 0) throw PreconditionError("constant term must be a power of p");
    while (Q % p == 0) Q /= p;
    if (Q != 1) throw PreconditionError("constant term must be a power of p");
    const BigInt a = -f[1];
    return a * a <= 4 * f[0] && a % p != 0;
}

struct PermutationCheck {
    u32 j = 0;
    u64 field_size = 0;
    u64 image_size = 0;
    i64 count = 0;
    bool bijection = false;
    bool count_ok = false;
    bool pass() const { return bijection && count_ok; }
};

/// x -> D_ell(x, 1) permutes F_{p^(ij)} and #D_t(F_{p^(ij)}) = p^(ij) + 1,
/// for (ell - 1)/2 not dividing j.
inline PermutationCheck dickson_permutation_check(u32 ell, u32 p, u32 i, const FieldElem& t0, u32 j,
                                                  const CountConfig& cfg = {}) {
    if (ell < 3 || j < 1 || j % ((ell - 1) / 2) == 0)
        throw PreconditionError("permutation check requires (ell-1)/2 not dividing j");
    if (t0.characteristic() != p || t0.field()->n != i) throw PreconditionError("t0 must lie in F_{p^i}");
    PermutationCheck out;
    out.j = j;
    out.field_size = checked_pow(p, u64{i} * j);
    cfg.check(out.field_size);
    const auto target = make_field(p, i * j);
    const auto ff = FastField::of(target);
    const FieldPoly dk = dickson(ell, FieldElem::one(make_field(p, 1)));
    std::vector<FastField::Elem> coeffs;
    for (const auto& c : dk.coeffs()) coeffs.push_back(ff->from_index(c.coeffs()[0]));
    std::vector<bool> hit(out.field_size, false);
    for (u64 idx = 0; idx < out.field_size; ++idx) hit[ff->to_index(ff->eval(coeffs, ff->from_index(idx)))] = true;
    for (bool h : hit) out.image_size += h ? 1 : 0;
    out.bijection = out.image_size == out.field_size;
    out.count = count_points_odd(d_curve(ell, t0), j, cfg);
    out.count_ok = out.count == static_cast<i64>(out.field_size) + 1;
    return out;
}

struct DecompOptions {
    bool include_ct = true;  // chi of J_{C_t}, when q^ell fits the guard
};

/// Every computed object plus the verified claims for one (p, ell, i, t0).
struct DecompReport {
    u32 p = 0;
    u32 ell = 0;
    u32 i = 0;
    FieldElem t0;
    GeneratorCertificate generator;
    u32 d = 1;  // (ell - 1) / 2

    OrdinarityVerdict ct_cartier;
    std::vector<i64> d_counts;  // N_1 .. N_{d+1} of D_t
    LPoly d_l;
    IntPoly chi_d;
    u32 d_p_rank = 0;
    u32 max_shape_d = 1;
    std::optional<IntPoly> f;  // chi_d = f(T^d)
    BigInt trace;              // a in f = T^2 - a T + Q
    std::optional<IntPoly> chi_d_base_changed;
    std::vector<PermutationCheck> permutations;
    std::vector<u32> skipped_permutation_j;

    i64 e_count = 0;
    IntPoly chi_e;
    std::optional<std::vector<i64>> c_counts;
    std::optional<IntPoly> chi_c;

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
        json params{{"p", p}, {"ell", ell}, {"i", i}, {"t0", field_elem_to_json(t0)}, {"q", t0.field()->size()}};
        params["generator"] = json{{"base", generator.base},
                                   {"order", generator.order},
                                   {"group_order", generator.group_order},
                                   {"generator", generator.generator}};
        json body = make_envelope(std::move(params), checks, conclusion);
        json results{{"chi_d", int_poly_to_json(chi_d)},
                     {"d_counts", d_counts},
                     {"d", d},
                     {"d_p_rank", d_p_rank},
                     {"max_shape_d", max_shape_d},
                     {"chi_e", int_poly_to_json(chi_e)},
                     {"e_count", e_count}};
        if (f) results["f"] = int_poly_to_json(*f);
        if (f) results["trace"] = big_to_json(trace);
        if (chi_c) results["chi_c"] = int_poly_to_json(*chi_c);
        if (c_counts) results["c_counts"] = *c_counts;
        body["results"] = std::move(results);
        return body;
    }
};

/// Multiplicative order of q modulo ell.
inline u32 order_mod(u64 q, u32 ell) {
    u64 cur = q % ell;
    u32 k = 1;
    while (cur != 1) {
        cur = mul_mod(cur, q, ell);
        ++k;
    }
    return k;
}

/// Assemble and verify the decomposition of J_{D_t} for one instance.
/// Precondition violations throw; failed claims are recorded in `checks`.
inline DecompReport full_decomposition_report(u32 p, u32 ell, u32 i, std::optional<FieldElem> t0_opt,
                                              const CountConfig& cfg = {}, const DecompOptions& opt = {}) {
    if (p == 2 || !is_prime(p)) throw PreconditionError("p must be an odd prime", "usage.p");
    if (ell < 3 || !is_prime(ell) || ell == p) throw PreconditionError("ell must be an odd prime != p", "usage.ell");
    if (i <= 1) throw PreconditionError("i must be > 1", "usage.i");

    DecompReport r;
    r.p = p;
    r.ell = ell;
    r.i = i;
    r.d = (ell - 1) / 2;
    r.generator = is_generator_quotient(p, i, ell);
    if (!r.generator.generator)
        throw PreconditionError("p^i does not generate (Z/ell)^*/<-1>", "precondition.generator");

    const auto field = make_field(p, i);
    if (t0_opt) {
        if (!same_field(t0_opt->field(), field)) throw PreconditionError("t must lie in F_{p^i}", "usage.t");
        require_not_pm2(*t0_opt);
        r.t0 = *t0_opt;
    } else {
        r.t0 = find_ordinary_t(p, ell, i);
    }
    const BigInt q = field->size();

    r.ct_cartier = is_ordinary_ct(p, ell, r.t0);
    r.checks.push_back(Check{"ct_ordinary",
                             "cartier.ordinarity",
                             r.ct_cartier.ordinary,
                             {{"phi_nonzero", r.ct_cartier.phi_nonzero},
                              {"diagonal_nonzero", r.ct_cartier.matrix.nonzero_count()}}});

    const auto dt = d_curve(ell, r.t0);
    const ZetaData z = compute_zeta(dt, cfg, true);
    r.d_counts = z.counts;
    r.d_l = z.L;
    r.chi_d = z.charpoly;
    r.d_p_rank = p_rank_from_l(z.L, p);
    r.max_shape_d = max_power_shape(r.chi_d);
    r.checks.push_back(Check{"dt_count_prediction",
                             "zeta.prediction",
                             z.prediction_ok,
                             {{"predicted", big_to_json(predict_count(z.L, r.d + 1))}, {"counted", z.counts.back()}}});
    r.checks.push_back(Check{"dt_functional_equation", "zeta.functional_equation",
                             z.L.satisfies_functional_equation(), json::object()});
    r.checks.push_back(Check{"dt_ordinary", "zeta.p_rank", r.d_p_rank == r.d, {{"p_rank", r.d_p_rank}, {"genus", r.d}}});

    const ShapeCheck shape = verify_power_shape(r.chi_d, r.d);
    r.checks.push_back(Check{"dt_power_shape",
                             "charpoly.power_shape",
                             shape.ok() && shape.shape->f.degree() == 2,
                             {{"d", r.d}, {"offending_exponent", shape.offending_exponent}, {"max_d", r.max_shape_d}}});

    const BigInt Q = big_pow(q, r.d);
    bool ec_ok = false;
    if (shape.ok()) {
        r.f = shape.shape->f;
        r.trace = -(*r.f)[1];
        ec_ok = r.f->degree() == 2 && (*r.f)[0] == Q && is_ordinary_ec_charpoly(*r.f, p);
    }
    r.checks.push_back(Check{"elliptic_factor_ordinary",
                             "weil_restriction.ordinary_factor",
                             ec_ok,
                             {{"trace", big_to_json(r.trace)}, {"Q", big_to_json(Q)}}});

    bool bc_ok = false;
    if (r.f) {
        r.chi_d_base_changed = base_change_charpoly(r.chi_d, r.d);
        bc_ok = *r.chi_d_base_changed == r.f->pow(r.d);
    }
    r.checks.push_back(Check{"base_change_power", "weil_restriction.base_change", bc_ok,
                             {{"chi_over_extension", r.chi_d_base_changed ? int_poly_to_json(*r.chi_d_base_changed)
                                                                          : json(nullptr)}}});

    bool perm_ok = true;
    json perm_rows = json::array();
    for (u32 j = 1; j <= 2 * r.d; ++j) {
        if (j % r.d == 0) continue;
        if (checked_pow(p, u64{i} * j) > cfg.guard) {
            r.skipped_permutation_j.push_back(j);
            continue;
        }
        r.permutations.push_back(dickson_permutation_check(ell, p, i, r.t0, j, cfg));
        const auto& pc = r.permutations.back();
        perm_ok = perm_ok && pc.pass();
        perm_rows.push_back(json{{"j", j},
                                 {"field_size", pc.field_size},
                                 {"image_size", pc.image_size},
                                 {"count", pc.count},
                                 {"pass", pc.pass()}});
    }
    r.checks.push_back(Check{"dickson_permutation",
                             "permutation_polynomial.counts",
                             perm_ok,
                             {{"rows", perm_rows}, {"skipped_j", r.skipped_permutation_j}}});

    r.e_count = count_points_odd(e_curve(r.t0), 1, cfg);
    r.chi_e = IntPoly(std::vector<BigInt>{q, BigInt(-(q + 1 - r.e_count)), BigInt(1)}, BigInt(0));

    if (opt.include_ct && checked_pow(q.convert_to<u64>(), ell) <= cfg.guard) {
        const ZetaData zc = compute_zeta(c_curve(ell, r.t0), cfg, false);
        r.c_counts = zc.counts;
        r.chi_c = zc.charpoly;
        auto [quot, rem] = r.chi_c->divmod(r.chi_e);
        const u32 ka = order_mod(q.convert_to<u64>(), ell);
        const bool divides = rem.is_zero();
        const bool quot_shape = divides && verify_power_shape(quot, ka).ok();
        r.checks.push_back(Check{"ct_contains_et",
                                 "charpoly.power_shape",
                                 divides && quot_shape,
                                 {{"divides", divides},
                                  {"degree_of_splitting_field", ka},
                                  {"quotient_shape", quot_shape},
                                  {"quotient_max_d", divides ? max_power_shape(quot) : 0},
                                  {"ct_p_rank", p_rank_from_l(zc.L, p)}}});
    }

    if (r.pass()) {
        r.conclusion = "J(D_t) is isogenous to the Weil restriction from F_{q^" + std::to_string(r.d) +
                       "} to F_q of one ordinary elliptic curve with trace " + r.trace.str();
    } else {
        std::string failed;
        for (const auto& c : r.checks) {
            if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
        }
        r.conclusion = "verification failed: " + failed;
    }
    return r;
}

}  // namespace jacsplit
