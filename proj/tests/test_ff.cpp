#include <prank/ff.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace prank::ff;

TEST(Field, Construction) {
    const Field F9 = Field::quadratic(3);
    EXPECT_EQ(F9.order(), 9u);
    EXPECT_EQ(F9.modulus_string(), "x^2+1");
    const Field F7 = Field::prime(7);
    EXPECT_EQ(F7.order(), 7u);
    EXPECT_EQ(F7.degree(), 1);
    EXPECT_THROW(Field(4, 1), std::invalid_argument);
    EXPECT_THROW(Field(2, 1), std::invalid_argument);
    EXPECT_THROW(Field(7, 3), std::invalid_argument);
}

TEST(Field, NonresidueIsNonSquare) {
    for (u32 p : {3u, 5u, 7u, 11u, 13u, 17u, 41u, 97u}) {
        const Field F = Field::quadratic(p);
        // brute-force: nu is not a square mod p
        bool square = false;
        for (u32 x = 0; x < p; ++x)
            if (x * x % p == F.nonresidue()) square = true;
        EXPECT_FALSE(square) << p;
        EXPECT_EQ(legendre(Field::prime(p).element(F.nonresidue())), -1);
    }
}

TEST(FieldElement, SmallArithmetic) {
    const Field F7 = Field::prime(7);
    EXPECT_EQ(F7.from_int(2).inverse(), F7.from_int(4));
    const Field F9 = Field::quadratic(3);
    EXPECT_EQ(F9.w() * F9.w(), F9.from_int(2));
    EXPECT_THROW(F7.one() / F7.zero(), std::domain_error);
    EXPECT_THROW(F7.zero().inverse(), std::domain_error);
    EXPECT_THROW(F7.one() + F9.one(), std::invalid_argument);
}

TEST(FieldElement, Frobenius) {
    const Field F7 = Field::prime(7);
    for (const auto& a : F7.elements()) EXPECT_EQ(frobenius(a), a);
    const Field F9 = Field::quadratic(3);
    EXPECT_EQ(frobenius(F9.w()), -F9.w());
    for (u32 p : {3u, 5u, 13u}) {
        const Field F = Field::quadratic(p);
        for (const auto& a : F.elements()) {
            EXPECT_EQ(frobenius(frobenius(a)), a);
            EXPECT_EQ(frobenius(a), a.pow(p));
        }
    }
}

TEST(FieldElement, Legendre) {
    const Field F11 = Field::prime(11);
    EXPECT_EQ(legendre(F11.from_int(3)), 1);
    EXPECT_EQ(legendre(F11.zero()), 0);
    // every element of GF(p) is a square in GF(p^2)
    const Field F = Field::quadratic(7);
    for (u32 a = 1; a < 7; ++a) EXPECT_EQ(legendre(F.element(a)), 1);
    // agrees with a brute-force table of squares
    std::vector<bool> square(F.order(), false);
    for (const auto& x : F.elements()) square[(x * x).index()] = true;
    for (const auto& a : F.elements())
        if (!a.is_zero()) {
            EXPECT_EQ(legendre(a), square[a.index()] ? 1 : -1) << a.to_string();
        }
}

TEST(FieldElement, ParseAndPrint) {
    const Field F = Field::quadratic(11);
    EXPECT_EQ(F.parse("3+2*w"), F.element(3, 2));
    EXPECT_EQ(F.parse("-1"), F.element(10));
    EXPECT_EQ(F.parse("w"), F.w());
    EXPECT_EQ(F.parse("-w+5"), F.element(5, 10));
    for (const auto& a : F.elements()) EXPECT_EQ(F.parse(a.to_string()), a);
    EXPECT_THROW(F.parse(""), std::invalid_argument);
    EXPECT_THROW(F.parse("3x"), std::invalid_argument);
    EXPECT_THROW(Field::prime(11).parse("w"), std::invalid_argument);
}

// Field axioms against an independent pair representation (a + b w, w^2 = nu).
TEST(FieldElement, AxiomsAgainstPairModel) {
    std::mt19937_64 rng(12345);
    for (u32 p : {3u, 5u, 13u, 101u, 65521u, 2147483647u}) {
        const Field F = Field::quadratic(p);
        const u64 nu = F.nonresidue();
        std::uniform_int_distribution<u32> d(0, p - 1);
        for (int it = 0; it < 200; ++it) {
            const u64 a0 = d(rng), a1 = d(rng), b0 = d(rng), b1 = d(rng);
            const auto A = F.element(static_cast<u32>(a0), static_cast<u32>(a1));
            const auto B = F.element(static_cast<u32>(b0), static_cast<u32>(b1));
            const auto P = A * B;
            const unsigned __int128 re = (static_cast<unsigned __int128>(a0) * b0 + static_cast<unsigned __int128>(a1) * b1 % p * nu) % p;
            const unsigned __int128 im = (static_cast<unsigned __int128>(a0) * b1 + static_cast<unsigned __int128>(a1) * b0) % p;
            EXPECT_EQ(P.re(), static_cast<u32>(re));
            EXPECT_EQ(P.im(), static_cast<u32>(im));
            EXPECT_EQ((A + B) - B, A);
            EXPECT_EQ(A * (B + F.one()), A * B + A);
            if (!A.is_zero()) {
                EXPECT_TRUE((A * A.inverse()).is_one());
                EXPECT_TRUE(A.pow(F.order() - 1).is_one());
            }
        }
    }
}

TEST(FieldElement, EnumerationIsBijective) {
    const Field F = Field::quadratic(5);
    const auto all = F.elements();
    ASSERT_EQ(all.size(), 25u);
    for (u64 i = 0; i < all.size(); ++i) {
        EXPECT_EQ(all[i].index(), i);
        for (u64 j = 0; j < i; ++j) EXPECT_NE(all[i], all[j]);
    }
}

TEST(FieldElement, Embed) {
    const Field F = Field::prime(7), K = Field::quadratic(7);
    EXPECT_EQ(embed(F.from_int(3), K), K.from_int(3));
    EXPECT_THROW(embed(K.w(), F), std::invalid_argument);
    EXPECT_THROW(embed(F.one(), Field::prime(11)), std::invalid_argument);
}
