#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cymono/family_catalog.hpp"

using namespace cymono;

namespace {

// (x^2 - 2cos(2 pi A) x + 1)(x^2 - 2cos(2 pi B) x + 1): eigenvalues
// exp(+-2 pi i A), exp(+-2 pi i B), rounded to integers.
IntCharpoly exponent_charpoly(const FamilyParams& f) {
    const double ca = 2 * std::cos(2 * std::numbers::pi * f.A.convert_to<double>());
    const double cb = 2 * std::cos(2 * std::numbers::pi * f.B.convert_to<double>());
    const double coeff[5] = {1, -(ca + cb), 2 + ca * cb, -(ca + cb), 1};
    IntCharpoly out;
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(coeff[i], std::round(coeff[i]), 1e-12) << f.tag();
        out[static_cast<std::size_t>(i)] = static_cast<long long>(std::llround(coeff[i]));
    }
    return out;
}

IntMat4 repeated_product(const IntMat4& a, std::uint64_t m) {
    IntMat4 r = IntMat4::identity();
    for (std::uint64_t i = 0; i < m; ++i) r = r * a;
    return r;
}

}  // namespace

TEST(CatalogTest, FourteenDistinctFamilies) {
    const auto& c = catalog();
    ASSERT_EQ(c.size(), 14u);
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_TRUE(c[i].A > 0 && c[i].A <= c[i].B && c[i].B < 1) << c[i].tag();
        for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_FALSE(c[i].d == c[j].d && c[i].k == c[j].k);
    }
}

TEST(CatalogTest, Entries) {
    const auto q = *find_family(5, 5);
    EXPECT_EQ(q.A, Rational(1, 5));
    EXPECT_EQ(q.B, Rational(2, 5));
    EXPECT_EQ(q.label, "X(5) ⊂ P^4");
    EXPECT_EQ(find_family(16, 8)->A, Rational(1, 2));
    EXPECT_EQ(find_family(16, 8)->B, Rational(1, 2));
    EXPECT_EQ(find_family(1, 3)->A, Rational(1, 10));
    EXPECT_EQ(find_family(1, 3)->B, Rational(3, 10));
    EXPECT_EQ(find_family(12, 7)->label, "X(2,2,3) ⊂ P^6");
    EXPECT_FALSE(find_family(5, 4).has_value());
    EXPECT_EQ(quintic(), q);
}

TEST(CatalogTest, Generators) {
    EXPECT_EQ(m0(quintic()).row(2), IntVec4(5, 5, 1, 0));
    EXPECT_EQ(m0(*find_family(12, 7)).row(3), IntVec4(0, -7, -1, 1));
    const IntMat4 diff = m1() - IntMat4::identity();
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(diff(r, c), (r == 1 && c == 3) ? 1 : 0);
}

TEST(CatalogTest, RelationAtInfinity) {
    for (const auto& f : catalog()) EXPECT_EQ(m0(f) * m1() * m_infinity(f), IntMat4::identity()) << f.tag();
}

TEST(CatalogTest, QuinticInfinity) {
    const IntMat4 minf = m_infinity(quintic());
    EXPECT_EQ(trace(minf), -1);
    EXPECT_EQ(charpoly(minf), (IntCharpoly{1, 1, 1, 1, 1}));
    EXPECT_EQ(mat_pow(minf, 5), IntMat4::identity());
    EXPECT_EQ(adjugate(m0(quintic()) * m1()), minf);
}

TEST(CatalogTest, InfinityCharpolyFromExponents) {
    for (const auto& f : catalog()) {
        if ((f.d == 2 && f.k == 3) || (f.d == 6 && f.k == 5)) continue;
        EXPECT_EQ(charpoly(m_infinity(f)), exponent_charpoly(f)) << f.tag();
    }
    EXPECT_EQ(charpoly(m_infinity(*find_family(16, 8))), (IntCharpoly{1, 4, 6, 4, 1}));
}

TEST(CatalogTest, ExponentsOfTwoThreeAndSixFiveAreExchanged) {
    // The listed exponents of these two rows fit each other's M_inf:
    // (1/4, 1/3) gives (x^2 + 1)(x^2 + x + 1), realised by (6,5), and
    // (1/6, 1/4) gives (x^2 + 1)(x^2 - x + 1), realised by (2,3).
    const FamilyParams a = *find_family(2, 3), b = *find_family(6, 5);
    EXPECT_EQ(exponent_charpoly(a), (IntCharpoly{1, 1, 2, 1, 1}));
    EXPECT_EQ(exponent_charpoly(b), (IntCharpoly{1, -1, 2, -1, 1}));
    EXPECT_EQ(charpoly(m_infinity(a)), exponent_charpoly(b));
    EXPECT_EQ(charpoly(m_infinity(b)), exponent_charpoly(a));
}

TEST(CatalogTest, JordanTypes) {
    const IntCharpoly unipotent{1, -4, 6, -4, 1};
    for (const auto& f : catalog()) {
        EXPECT_EQ(det(m0(f)), 1);
        EXPECT_EQ(charpoly(m0(f)), unipotent);
        EXPECT_EQ(rank(m0(f) - IntMat4::identity()), 3u) << f.tag();
        EXPECT_EQ(mat_pow(m0(f) - IntMat4::identity(), 4), IntMat4{}) << f.tag();
    }
    EXPECT_EQ(det(m1()), 1);
    EXPECT_EQ(charpoly(m1()), unipotent);
    EXPECT_EQ(rank(m1() - IntMat4::identity()), 1u);
}

TEST(ClosedFormTest, SmallPowers) {
    for (const auto& f : catalog()) {
        EXPECT_EQ(m0_power_closed_form(f, 0), IntMat4::identity());
        EXPECT_EQ(m0_power_closed_form(f, 1), m0(f));
    }
    const IntMat4 p5 = m0_power_closed_form(quintic(), 5);
    EXPECT_EQ(p5(2, 1), 75);
    EXPECT_EQ(p5(3, 0), -50);
    EXPECT_EQ(p5(3, 1), -125);
    EXPECT_EQ(p5, repeated_product(m0(quintic()), 5));
}

TEST(ClosedFormTest, MatchesRepeatedProduct) {
    for (const auto& f : catalog()) {
        IntMat4 power = IntMat4::identity();
        for (std::uint64_t m = 1; m <= 50; ++m) {
            power = power * m0(f);
            ASSERT_EQ(m0_power_closed_form(f, m), power) << f.tag() << " m=" << m;
            ASSERT_EQ(mat_pow(m0(f), m), power);
        }
    }
}

TEST(IdentityTest, AllPass) {
    const auto report = verify_identities();
    ASSERT_EQ(report.size(), 6u);
    for (const auto& c : report) EXPECT_TRUE(c.pass) << c.name;
    EXPECT_TRUE(all_pass(report));
    EXPECT_EQ(IntVec4(0, 1, 0, 0) * quintic_bases().M, IntVec4(0, 1, 0, 0));
    EXPECT_EQ(mat_pow(m0(quintic()), 5), mat_inverse(quintic_bases().M) * quintic_bases().Sinf * quintic_bases().M);
}

TEST(IdentityTest, CorruptedPFails) {
    auto bases = quintic_bases();
    bases.P(0, 3) += 1;
    const auto report = verify_identities(bases, m0(quintic()), m1());
    EXPECT_FALSE(report[0].pass);
    EXPECT_FALSE(all_pass(report));
}

TEST(IdentityTest, EveryEntryOfPMatters) {
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            auto bases = quintic_bases();
            bases.P(r, c) += 1;
            const auto report = verify_identities(bases, m0(quintic()), m1());
            EXPECT_FALSE(report[0].pass && report[1].pass) << "P(" << r << "," << c << ")";
        }
}

TEST(PowerLemmaTest, Exponents) {
    EXPECT_EQ(power_lemma_exponent(Prime(2)), 4u);
    EXPECT_EQ(power_lemma_exponent(Prime(3)), 9u);
    EXPECT_EQ(power_lemma_exponent(Prime(7)), 7u);
}

TEST(PowerLemmaTest, Examples) {
    EXPECT_TRUE(verify_power_lemma(quintic(), Prime(7)).pass());
    EXPECT_TRUE(verify_power_lemma(quintic(), Prime(2)).pass());
    const auto r = verify_power_lemma(*find_family(12, 7), Prime(3));
    EXPECT_EQ(r.m0_exponent, 9u);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(reduce_mod(mat_pow(m0(*find_family(12, 7)), 9), Prime(3)), ResidueMat4::identity(Prime(3)));
}

TEST(PowerLemmaTest, AllFamiliesAllPrimes) {
    for (const auto& f : catalog())
        for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
            const auto r = verify_power_lemma(f, Prime(p));
            EXPECT_TRUE(r.m0_pass) << f.tag() << " p=" << p;
            EXPECT_TRUE(r.m1_pass) << f.tag() << " p=" << p;
        }
}

TEST(PowerLemmaTest, ExponentIsNeeded) {
    // For p >= 5 the order of M0 mod p is exactly p: M0^1 is not Id.
    for (const auto& f : catalog())
        for (std::uint64_t p : {5, 7, 11, 13})
            EXPECT_NE(reduce_mod(m0(f), Prime(p)), ResidueMat4::identity(Prime(p))) << f.tag();
}
