#include <gtest/gtest.h>

#include <set>

#include "jacsplit/char2.hpp"
#include "oracles.hpp"

using namespace jacsplit;

namespace {

// Traces of L : y^2 + y = 1/x + alpha x over F_{2^r}, fixed from the oracle
// counts in LineTraceMatchesOracle.
constexpr long long kTraceR3 = 1;
constexpr long long kTraceR5 = 9;
constexpr long long kTraceR7 = 1;

long long oracle_trace(const FieldElem& alpha) {
    const auto q = static_cast<long long>(alpha.field()->size());
    return q + 1 - oracle::count_artin_schreier(true, alpha, 1);
}

}  // namespace

TEST(NormalBasis, OrbitSpans) {
    for (u32 r : {3U, 5U, 7U}) {
        const FieldElem b = normal_basis_generator(r);
        F2Span span;
        std::set<u64> orbit;
        FieldElem c = b;
        for (u32 i = 0; i < r; ++i, c = c.frobenius()) {
            orbit.insert(c.index());
            span.insert(c.index());
        }
        EXPECT_EQ(orbit.size(), r);
        EXPECT_EQ(span.dim(), r);
    }
}

TEST(Alpha, Construction) {
    for (u32 r : {3U, 5U, 7U, 11U, 13U}) {
        const auto c = construct_alpha(r);
        EXPECT_EQ(c.p1.degree(), static_cast<int>(phi2(r)));
        EXPECT_TRUE(apply_frobenius_poly(c.p1, c.alpha).is_zero());
        EXPECT_FALSE(c.alpha.is_zero());
        EXPECT_FALSE(c.alpha.is_one());
        EXPECT_FALSE(in_proper_subfield(c.alpha));
    }
    EXPECT_EQ(construct_alpha(5).factors.size(), 2U);
    EXPECT_EQ(construct_alpha(7).factors.size(), 3U);
}

TEST(Alpha, FrobeniusPolynomialApplication) {
    const auto f2 = make_field(2, 1);
    const auto f8 = make_field(2, 3);
    const FieldElem b = FieldElem::z(f8);
    EXPECT_EQ(apply_frobenius_poly(field_poly(f2, {1, 1}), b), b + b * b);
    EXPECT_EQ(apply_frobenius_poly(field_poly(f2, {0, 0, 1}), b), b.pow(4));
}

TEST(Module, DimensionAndStability) {
    for (u32 r : {3U, 5U, 7U}) {
        const auto c = construct_alpha(r);
        const auto U = galois_module_closure(c.alpha, r);
        EXPECT_EQ(U.dim, 1 + phi2(r));
        FieldElem a = c.alpha;
        for (u32 i = 0; i < r; ++i, a = a.frobenius()) EXPECT_TRUE(U.contains(ASFunction{true, a}));
        for (const auto& u : U.nonzero_elements()) EXPECT_TRUE(U.contains(u.frobenius()));
    }
    EXPECT_THROW(galois_module_closure(FieldElem::zero(make_field(2, 3)), 3), PreconditionError);
}

TEST(Module, SubextensionsOfRThree) {
    const auto c = construct_alpha(3);
    const auto U = galois_module_closure(c.alpha, 3);
    const auto lines = minimal_subextensions(U);
    EXPECT_EQ(lines.size(), 7U);
    int eps_one = 0;
    for (const auto& u : lines) {
        EXPECT_FALSE(u.is_zero());
        eps_one += u.eps ? 1 : 0;
    }
    EXPECT_EQ(eps_one, 4);
    for (std::size_t k = 1; k < lines.size(); ++k) EXPECT_LT(lines[k - 1].code(), lines[k].code());
}

TEST(Genus, Lines) {
    const auto f = make_field(2, 3);
    const FieldElem b = FieldElem::z(f);
    EXPECT_EQ(genus_of_line(ASFunction{true, b}), 1U);
    EXPECT_EQ(genus_of_line(ASFunction{false, b}), 0U);
    EXPECT_EQ(genus_of_line(ASFunction{true, FieldElem::zero(f)}), 0U);
    EXPECT_THROW(genus_of_line(ASFunction{false, FieldElem::zero(f)}), PreconditionError);
}

TEST(Genus, OfModule) {
    const std::pair<u32, u32> expected[] = {{3, 3}, {5, 15}, {7, 7}, {11, 1023}, {13, 4095}};
    for (auto [r, g] : expected) {
        const auto U = galois_module_closure(construct_alpha(r).alpha, r);
        EXPECT_EQ(genus_of_M(U), g) << "r=" << r;
        EXPECT_EQ(count_two_pole_lines(U), g);
    }
}

TEST(Hyperelliptic, Witness) {
    for (u32 r : {3U, 5U, 7U}) {
        const auto U = galois_module_closure(construct_alpha(r).alpha, r);
        const auto w = hyperellipticity_witness(U);
        EXPECT_TRUE(w.pass());
        EXPECT_EQ(w.dim_v + 1, w.dim_u);
    }
    // A module inside {eps = 0} has index 1.
    const auto f = make_field(2, 3);
    ASModule only_v;
    only_v.r = 3;
    only_v.alpha = FieldElem::z(f);
    only_v.basis = {ASFunction{false, FieldElem::one(f)}};
    only_v.dim = 1;
    EXPECT_FALSE(hyperellipticity_witness(only_v).pass());
}

TEST(Regularity, ConstructedModules) {
    for (u32 r : {3U, 5U, 7U}) EXPECT_TRUE(regularity_check(galois_module_closure(construct_alpha(r).alpha, r)));
}

TEST(Conjugates, DistinctWithEqualCounts) {
    for (u32 r : {3U, 7U}) {
        const auto c = conjugate_zeta_equality(construct_alpha(r).alpha, r);
        EXPECT_TRUE(c.pass());
        EXPECT_EQ(c.counts_m1.size(), r);
    }
    EXPECT_THROW(conjugate_zeta_equality(FieldElem::one(make_field(2, 3)), 3), PreconditionError);
}

TEST(Conjugates, CountsMatchOracle) {
    const auto c = conjugate_zeta_equality(construct_alpha(3).alpha, 3);
    const auto alpha = construct_alpha(3).alpha;
    EXPECT_EQ(c.counts_m1[0], oracle::count_artin_schreier(true, alpha, 1));
    EXPECT_EQ(c.counts_m2[0], oracle::count_artin_schreier(true, alpha, 2));
    EXPECT_EQ(c.counts_m1[0], 8);
    EXPECT_EQ(c.counts_m2[0], 80);
}

TEST(Jacobian, LineTraceMatchesOracle) {
    const std::pair<u32, long long> frozen[] = {{3, kTraceR3}, {5, kTraceR5}, {7, kTraceR7}};
    for (auto [r, a] : frozen) {
        const auto alpha = construct_alpha(r).alpha;
        EXPECT_EQ(oracle_trace(alpha), a) << "r=" << r;
        EXPECT_EQ(line_trace(ASFunction{true, alpha}), BigInt(a));
    }
}

TEST(Jacobian, MersenneIsPerfectPower) {
    for (u32 r : {3U, 7U}) {
        const auto rep = char2_report(r);
        ASSERT_TRUE(rep.jm);
        const IntPoly el(std::vector<BigInt>{BigInt(1) << r, BigInt(-rep.trace_l), BigInt(1)}, BigInt(0));
        EXPECT_EQ(rep.jm->chi, el.pow(r));
        EXPECT_NE(rep.trace_l % 2, 0);
        EXPECT_TRUE(rep.pass()) << rep.conclusion;
    }
}

TEST(Jacobian, NonMersenneCofactor) {
    const auto rep = char2_report(5);
    ASSERT_TRUE(rep.jm);
    EXPECT_TRUE(rep.pass()) << rep.conclusion;
    const IntPoly el(std::vector<BigInt>{BigInt(32), BigInt(-rep.trace_l), BigInt(1)}, BigInt(0));
    auto [cofactor, rem] = rep.jm->chi.divmod(el.pow(5));
    EXPECT_TRUE(rem.is_zero());
    EXPECT_EQ(cofactor.degree(), 20);
    for (const auto& [u, a] : rep.jm->line_traces) EXPECT_EQ(a, BigInt(32 + 1 - oracle::count_artin_schreier(u.eps, u.beta, 1)));
}

TEST(Bijection, PolynomialsToGenusOneLines) {
    for (u32 r : {3U, 5U, 7U}) {
        const auto c = construct_alpha(r);
        const auto U = galois_module_closure(c.alpha, r);
        const auto b = polynomial_line_bijection(U, c);
        EXPECT_TRUE(b.pass());
        EXPECT_EQ(b.polynomials, (u64{1} << phi2(r)) - 1);
    }
}

TEST(Report, MersenneCharacterization) {
    for (u32 r : {3U, 5U, 7U, 11U, 13U}) {
        const auto rep = char2_report(r, CountConfig{}, false);
        EXPECT_TRUE(rep.pass()) << rep.conclusion;
        EXPECT_EQ(rep.mersenne, r == 3 || r == 7);
        EXPECT_EQ(rep.genus == r, rep.mersenne);
    }
    EXPECT_THROW(char2_report(4), PreconditionError);
    EXPECT_THROW(char2_report(2), PreconditionError);
    EXPECT_EQ(char2_report(3).to_json().dump(), char2_report(3).to_json().dump());
}
