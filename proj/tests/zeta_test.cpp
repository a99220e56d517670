#include <gtest/gtest.h>

#include <random>

#include "jacsplit/zeta.hpp"
#include "oracles.hpp"

using namespace jacsplit;

namespace {

FieldElem t_of(u32 p, u32 n, u64 idx) { return FieldElem::from_index(make_field(p, n), idx); }

}  // namespace

TEST(Counting, EtOverF3AtZero) {
    const auto t = FieldElem::zero(make_field(3, 1));
    const auto e = e_curve(t);
    // y^2 = x^3 + x: x = 0 -> 1, x = 1 -> 2 is a non-square, x = 2 -> 10 = 1 -> 2 points; plus infinity.
    EXPECT_EQ(count_points_odd(e, 1), 4);
    for (u32 m = 1; m <= 4; ++m) EXPECT_EQ(count_points_odd(e, m), oracle::count_hyperelliptic(e.f(), m));
}

TEST(Counting, FamiliesMatchOracle) {
    for (u64 idx : {0ULL, 3ULL, 5ULL, 7ULL}) {
        const FieldElem t = t_of(3, 2, idx);
        for (u32 m = 1; m <= 2; ++m) {
            EXPECT_EQ(count_points_odd(c_curve(5, t), m), oracle::count_hyperelliptic(c_curve(5, t).f(), m));
            EXPECT_EQ(count_points_odd(d_curve(7, t), m), oracle::count_hyperelliptic(d_curve(7, t).f(), m));
            EXPECT_EQ(count_points_odd(e_curve(t), m), oracle::count_hyperelliptic(e_curve(t).f(), m));
        }
        EXPECT_EQ(count_points_odd(d_curve(7, t), 3), oracle::count_hyperelliptic(d_curve(7, t).f(), 3));
    }
    const FieldElem t5 = t_of(5, 2, 7);
    EXPECT_EQ(count_points_odd(c_curve(3, t5), 2), oracle::count_hyperelliptic(c_curve(3, t5).f(), 2));
}

TEST(Counting, EvenDegreeInfinity) {
    // y^2 = 2 (x^4 + 1) over F5: the leading coefficient 2 is a non-square,
    // so there is no point at infinity.
    const auto f5 = make_field(5, 1);
    const CurveOddChar c(f5, field_poly(f5, {2, 0, 0, 0, 2}));
    for (u32 m = 1; m <= 3; ++m) EXPECT_EQ(count_points_odd(c, m), oracle::count_hyperelliptic(c.f(), m));
    const CurveOddChar c1(f5, field_poly(f5, {1, 0, 0, 0, 1}));
    EXPECT_EQ(count_points_odd(c1, 1), oracle::count_hyperelliptic(c1.f(), 1));
}

TEST(Counting, DtPermutationCount) {
    // (3, 7, 2): #D_t(F9) = 10 for every admissible t.
    const auto f9 = make_field(3, 2);
    for (const auto& t : all_elements(f9)) {
        if (t == FieldElem::from_int(f9, 2) || t == FieldElem::from_int(f9, 1)) continue;
        EXPECT_EQ(count_points_odd(d_curve(7, t), 1), 10);
    }
}

TEST(Counting, ArtinSchreierMatchesOracle) {
    for (u32 r : {3U, 5U}) {
        const auto f = make_field(2, r);
        for (const auto& beta : all_elements(f)) {
            for (bool eps : {false, true}) {
                if (!eps && beta.is_zero()) continue;
                for (u32 m = 1; m <= 2; ++m) {
                    const i64 n = count_points_as2(eps, beta, m);
                    ASSERT_EQ(n, oracle::count_artin_schreier(eps, beta, m));
                    if (!eps || beta.is_zero()) { ASSERT_EQ(n, static_cast<i64>(f->size() * (m == 1 ? 1 : f->size())) + 1); }
                }
            }
        }
    }
}

TEST(Counting, ZeroArtinSchreierFunctionRejected) {
    EXPECT_THROW(count_points_as2(false, FieldElem::zero(make_field(2, 3)), 1), PreconditionError);
}

TEST(Counting, ArtinSchreierGenusOneHasseInterval) {
    const auto f8 = make_field(2, 3);
    for (const auto& beta : all_elements(f8)) {
        if (beta.is_zero()) continue;
        const i64 n = count_points_as2(true, beta, 1);
        EXPECT_LE((n - 9) * (n - 9), 32);
    }
}

TEST(Counting, SingularAndInvalidCurvesRejected) {
    const auto f9 = make_field(3, 2);
    EXPECT_THROW(c_curve(5, FieldElem::from_int(f9, 2)), PreconditionError);
    EXPECT_THROW(d_curve(7, FieldElem::from_int(f9, -2)), PreconditionError);
    EXPECT_THROW(CurveOddChar(f9, field_poly(f9, {0, 0, 1, 1})), PreconditionError);  // x^2 (x + 1)
    EXPECT_THROW(CurveOddChar(f9, field_poly(f9, {1, 1})), PreconditionError);
    try {
        CurveOddChar(f9, field_poly(f9, {0, 0, 1, 1}));
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.code()), "precondition.singular");
    }
}

TEST(Counting, GuardAndEnvironment) {
    CountConfig cfg;
    cfg.guard = 1024;
    const auto t = t_of(3, 2, 3);
    EXPECT_NO_THROW(count_points_odd(d_curve(7, t), 3, cfg));
    EXPECT_THROW(count_points_odd(d_curve(7, t), 4, cfg), GuardExceeded);
    setenv("JACSPLIT_GUARD", "100", 1);
    EXPECT_THROW(CountConfig::from_env(), PreconditionError);
    setenv("JACSPLIT_GUARD", "4096", 1);
    EXPECT_EQ(CountConfig::from_env().guard, 4096U);
    unsetenv("JACSPLIT_GUARD");
    EXPECT_EQ(CountConfig::from_env().guard, CountConfig::kDefaultGuard);
}

TEST(Counting, WorkerCountDoesNotChangeResults) {
    const auto t = t_of(3, 2, 5);
    CountConfig one;
    one.workers = 1;
    CountConfig many;
    many.workers = 7;
    for (u32 m = 1; m <= 5; ++m) EXPECT_EQ(count_points_odd(c_curve(7, t), m, one), count_points_odd(c_curve(7, t), m, many));
    const auto beta = t_of(2, 5, 9);
    EXPECT_EQ(count_points_as2(true, beta, 2, one), count_points_as2(true, beta, 2, many));
}

TEST(Newton, PowerSumsRoundTrip) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-20, 20);
    for (int k = 0; k < 30; ++k) {
        std::vector<BigInt> a{1, c(rng), c(rng), c(rng), c(rng)};
        const auto s = newton::power_sums(a, 4);
        EXPECT_EQ(newton::coeffs_from_power_sums(s, 4), a);
    }
    // (1 - 2T)(1 - 3T): s_1 = 5, s_2 = 13.
    const std::vector<BigInt> a{1, -5, 6};
    EXPECT_EQ(newton::power_sums(a, 3), (std::vector<BigInt>{5, 13, 35}));
}

TEST(LPolynomial, EllipticShapeAndCharpoly) {
    const i64 counts[] = {12};
    const auto L = l_from_counts(counts, BigInt(9), 1);
    EXPECT_EQ(L.a, (std::vector<BigInt>{1, 2, 9}));  // a = q + 1 - N = -2, L = 1 + 2T + 9T^2
    EXPECT_TRUE(L.satisfies_functional_equation());
    const IntPoly chi = charpoly_from_l(L);
    EXPECT_EQ(chi, IntPoly(std::vector<BigInt>{9, 2, 1}, BigInt(0)));
    EXPECT_EQ(chi[0], BigInt(9));
    EXPECT_EQ(chi.reversed(2).reversed(2), chi);
    EXPECT_EQ(p_rank_from_l(L, 3), 1U);
    const i64 ss[] = {10};
    EXPECT_EQ(p_rank_from_l(l_from_counts(ss, BigInt(9), 1), 3), 0U);
}

TEST(LPolynomial, PredictionMatchesFreshCount) {
    for (u64 idx : {3ULL, 4ULL, 8ULL}) {
        const auto t = t_of(3, 2, idx);
        for (u32 ell : {5U, 7U}) {
            const auto curve = ell == 5 ? c_curve(5, t) : d_curve(7, t);
            const auto z = compute_zeta(curve, CountConfig{}, true);
            EXPECT_TRUE(z.prediction_ok);
            EXPECT_TRUE(z.L.satisfies_functional_equation());
            EXPECT_EQ(z.charpoly[0], big_pow(BigInt(9), curve.genus()));
        }
    }
}

TEST(LPolynomial, InconsistentCountsAreDetected) {
    const auto t = t_of(3, 2, 3);
    CountConfig biased;
    biased.infinity_bias = 1;
    bool detected = false;
    try {
        const auto z = compute_zeta(d_curve(7, t), biased, true);
        detected = !z.prediction_ok;
    } catch (const InternalError&) {
        detected = true;
    }
    EXPECT_TRUE(detected);
}
