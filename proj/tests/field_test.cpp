#include <gtest/gtest.h>

#include <random>
#include <set>

#include "jacsplit/fast_field.hpp"
#include "jacsplit/field.hpp"
#include "oracles.hpp"

using namespace jacsplit;

namespace {

std::vector<u32> first_irreducible_by_sieve(u32 p, u32 n) {
    std::set<std::vector<u32>> reducible;
    for (auto& f : oracle::reducible_monics(p, n)) reducible.insert(f);
    u64 count = 1;
    for (u32 k = 0; k < n; ++k) count *= p;
    for (u64 idx = 0; idx < count; ++idx) {
        std::vector<u32> c(n + 1, 0);
        u64 v = idx;
        for (u32 k = 0; k < n; ++k) {
            c[k] = static_cast<u32>(v % p);
            v /= p;
        }
        c[n] = 1;
        if (!reducible.count(c)) return c;
    }
    return {};
}

}  // namespace

TEST(Field, PrimeFieldModulusIsZ) {
    const auto f = make_field(3, 1);
    EXPECT_EQ(f->modulus, (std::vector<u32>{0, 1}));
    EXPECT_EQ((FieldElem::from_int(f, 2) * FieldElem::from_int(f, 2)).index(), 1U);
}

TEST(Field, CanonicalModulusMatchesSieve) {
    for (auto [p, nmax] : {std::pair{2U, 7U}, std::pair{3U, 5U}, std::pair{5U, 3U}, std::pair{7U, 3U}}) {
        for (u32 n = 2; n <= nmax; ++n) {
            EXPECT_EQ(canonical_modulus(p, n), first_irreducible_by_sieve(p, n)) << "p=" << p << " n=" << n;
        }
    }
}

TEST(Field, F8ModulusAndCube) {
    const auto f = make_field(2, 3);
    EXPECT_EQ(f->modulus, (std::vector<u32>{1, 1, 0, 1}));
    const FieldElem z = FieldElem::z(f);
    EXPECT_EQ(z * (z * z), z + FieldElem::one(f));
}

TEST(Field, F9ModulusHasNoRootInF3) {
    const auto f = make_field(3, 2);
    for (u32 x = 0; x < 3; ++x) {
        u32 v = 0;
        for (int k = 2; k >= 0; --k) v = (v * x + f->modulus[static_cast<std::size_t>(k)]) % 3;
        EXPECT_NE(v, 0U);
    }
}

TEST(Field, InverseAndFrobeniusOrbit) {
    for (auto [p, n] : {std::pair{3U, 2U}, std::pair{2U, 5U}, std::pair{5U, 2U}}) {
        const auto f = make_field(p, n);
        for (const auto& x : all_elements(f)) {
            EXPECT_EQ(x.pow(f->size()), x);
            EXPECT_EQ(x.frobenius(n), x);
            EXPECT_EQ(x.frobenius(), x.pow(p));
            if (!x.is_zero()) { EXPECT_TRUE((x * x.inv()).is_one()); }
        }
    }
}

TEST(Field, RingAxiomsOnRandomTriples) {
    const auto f = make_field(7, 3);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<u64> d(0, f->size() - 1);
    for (int k = 0; k < 200; ++k) {
        const auto a = FieldElem::from_index(f, d(rng));
        const auto b = FieldElem::from_index(f, d(rng));
        const auto c = FieldElem::from_index(f, d(rng));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a - b) + b, a);
        if (!b.is_zero()) { EXPECT_EQ((a / b) * b, a); }
    }
}

TEST(Field, IndexRoundTrip) {
    const auto f = make_field(3, 3);
    for (u64 idx = 0; idx < f->size(); ++idx) EXPECT_EQ(FieldElem::from_index(f, idx).index(), idx);
}

TEST(Field, MixedFieldsRejected) {
    const auto a = FieldElem::one(make_field(3, 2));
    const auto b = FieldElem::one(make_field(3, 3));
    EXPECT_THROW((void)(a + b), MixedFieldError);
    EXPECT_THROW((void)(a * b), MixedFieldError);
}

TEST(Field, InvalidParametersRejected) {
    EXPECT_THROW(make_field(4, 2), PreconditionError);
    EXPECT_THROW(make_field(3, 0), PreconditionError);
    const auto f9 = make_field(3, 2);
    EXPECT_THROW((void)(FieldElem::one(f9) / FieldElem::zero(f9)), DivisionByZero);
}

TEST(Field, FrobeniusOverPrimeFieldIsIdentity) {
    const auto f = make_field(5, 1);
    for (const auto& x : all_elements(f)) EXPECT_EQ(x.frobenius(), x);
}


TEST(QuadraticCharacter, F9Squares) {
    const auto f = make_field(3, 2);
    EXPECT_EQ(quadratic_character(FieldElem::one(f)), 1);
    EXPECT_EQ(quadratic_character(FieldElem::zero(f)), 0);
    std::set<u64> squares;
    for (const auto& y : all_elements(f)) {
        if (!y.is_zero()) squares.insert((y * y).index());
    }
    EXPECT_EQ(squares.size(), 4U);
    int sum = 0;
    for (const auto& a : all_elements(f)) {
        sum += quadratic_character(a);
        if (!a.is_zero()) { EXPECT_EQ(quadratic_character(a) == 1, squares.count(a.index()) == 1); }
    }
    EXPECT_EQ(sum, 0);
}

TEST(Trace, HalfOfF8HasTraceZero) {
    const auto f = make_field(2, 3);
    int zeros = 0;
    for (const auto& a : all_elements(f)) {
        const FieldElem direct = a + a.frobenius() + a.frobenius(2);
        EXPECT_EQ(trace_to_f2(a), direct.index());
        EXPECT_EQ(trace_to_f2(a * a), trace_to_f2(a));
        zeros += trace_to_f2(a) == 0 ? 1 : 0;
    }
    EXPECT_EQ(trace_to_f2(FieldElem::zero(f)), 0U);
    EXPECT_EQ(zeros, 4);
}

TEST(FastField, AgreesWithFieldElem) {
    for (auto [p, n] : {std::pair{3U, 2U}, std::pair{2U, 4U}, std::pair{5U, 2U}, std::pair{3U, 3U}, std::pair{7U, 1U}}) {
        const auto f = make_field(p, n);
        const auto ff = FastField::of(f);
        const auto elems = all_elements(f);
        for (const auto& a : elems) {
            EXPECT_EQ(ff->to_elem(ff->from_elem(a)), a);
            for (const auto& b : elems) {
                const auto fa = ff->from_elem(a);
                const auto fb = ff->from_elem(b);
                ASSERT_EQ(ff->to_elem(ff->add(fa, fb)), a + b);
                ASSERT_EQ(ff->to_elem(ff->mul(fa, fb)), a * b);
                ASSERT_EQ(ff->to_elem(ff->sub(fa, fb)), a - b);
            }
            if (p != 2) {
                EXPECT_EQ(ff->chi(ff->from_elem(a)), quadratic_character(a));
            } else {
                EXPECT_EQ(ff->trace2(ff->from_elem(a)), trace_to_f2(a));
            }
        }
    }
}

TEST(FastField, GeneratorIsPrimitive) {
    const auto f = make_field(3, 4);
    const auto ff = FastField::of(f);
    const FieldElem g = ff->generator();
    std::set<u64> seen;
    FieldElem cur = FieldElem::one(f);
    for (u64 k = 0; k < f->size() - 1; ++k, cur *= g) seen.insert(cur.index());
    EXPECT_EQ(seen.size(), f->size() - 1);
}

TEST(Embedding, IsAFieldHomomorphism) {
    for (auto [p, a, b] : {std::tuple{3U, 2U, 3U}, std::tuple{2U, 3U, 2U}, std::tuple{5U, 1U, 3U}}) {
        const auto from = make_field(p, a);
        const auto to = make_field(p, a * b);
        const Embedding emb(from, to);
        const FieldPoly m = modulus_poly(*from);
        FieldElem acc = FieldElem::zero(to);
        for (int k = m.degree(); k >= 0; --k) acc = acc * emb.image_of_z() + FieldElem::from_int(to, m[static_cast<std::size_t>(k)].coeffs()[0]);
        EXPECT_TRUE(acc.is_zero());
        for (const auto& x : all_elements(from)) {
            EXPECT_EQ(emb(x).frobenius(a), emb(x));
            for (const auto& y : all_elements(from)) {
                ASSERT_EQ(emb(x * y), emb(x) * emb(y));
                ASSERT_EQ(emb(x + y), emb(x) + emb(y));
            }
        }
    }
}
