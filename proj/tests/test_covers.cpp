#include <prank/covers.hpp>
#include <prank/curves.hpp>
#include <prank/point_count.hpp>
#include <prank/search.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace prank;
using cartier::HyperellipticModel;
using ff::Field;
using poly::DensePoly;

namespace {

DensePoly legendre_rhs(const ff::FieldElement& l) { return curves::LegendreCurve(l).rhs(); }

}  // namespace

TEST(KaniRosen, DisjointBranchLoci) {
    const Field F = Field::prime(13);
    const auto f1 = legendre_rhs(F.from_int(5));
    const auto f2 = DensePoly::from_roots(F, std::vector{F.from_int(2), F.from_int(3), F.from_int(4), F.from_int(6)});
    const auto t = covers::kani_rosen_triple(f1, f2);
    EXPECT_EQ(t.f3.degree(), 7);
    EXPECT_EQ(t.genera, (std::array<int, 3>{1, 1, 3}));
    EXPECT_EQ(t.genus_total, 5);
    EXPECT_EQ(t.f3, (f1 * f2).monic());
}

TEST(KaniRosen, SharedRootsCancel) {
    const Field F = Field::prime(13);
    const auto lam = F.from_int(5), mu = F.from_int(7);
    const auto t = covers::kani_rosen_triple(legendre_rhs(lam), legendre_rhs(mu));
    EXPECT_EQ(t.f3, DensePoly::from_roots(F, std::vector{lam, mu}));
    EXPECT_EQ(t.genera, (std::array<int, 3>{1, 1, 0}));
    EXPECT_EQ(t.genus_total, 2);
}

TEST(KaniRosen, GenusFiveSearchInputs) {
    const Field F = Field::prime(23);
    const auto P = search::ss5_polys(F.from_int(3), F.from_int(5));
    EXPECT_EQ(P.e_u.degree(), 4);
    EXPECT_EQ(P.d_v.degree(), 6);
    const auto t = covers::kani_rosen_triple(P.e_u, P.d_v);
    EXPECT_EQ(t.f3.degree(), 6);
    EXPECT_EQ(t.f3, P.f.monic());
    EXPECT_EQ(t.genera, (std::array<int, 3>{1, 2, 2}));
    EXPECT_EQ(t.genus_total, 5);
}

TEST(KaniRosen, Errors) {
    const Field F = Field::prime(7), K = Field::prime(11);
    EXPECT_THROW(covers::kani_rosen_triple(legendre_rhs(F.from_int(3)), legendre_rhs(K.from_int(3))), std::invalid_argument);
    EXPECT_THROW(covers::kani_rosen_triple(legendre_rhs(F.from_int(3)), legendre_rhs(F.from_int(3))), std::invalid_argument);
    EXPECT_THROW(covers::kani_rosen_triple(legendre_rhs(F.from_int(3)), DensePoly::from_ints(F, {0, 0, 1, 1})), std::domain_error);
}

TEST(FiberProduct, SupersingularPairs) {
    for (ff::u32 p : {5u, 7u, 11u, 13u}) {
        const auto t = covers::genus2_supersingular_pair(p);
        EXPECT_EQ(t.genus_total, 2);
        EXPECT_EQ(*t.prank_total, 0u);
    }
    EXPECT_THROW(covers::genus2_supersingular_pair(3), std::invalid_argument);
    const auto l = curves::supersingular_lambdas(7);
    const auto r = covers::prank_fiber_product(legendre_rhs(l[0]), legendre_rhs(l[2]));
    EXPECT_EQ(r.genus, 2);
    EXPECT_EQ(r.p_rank, 0u);
}

TEST(FiberProduct, Char3Witness) {
    const auto t = covers::char3_genus3_witness();
    EXPECT_EQ(t.genus_total, 3);
    EXPECT_EQ(*t.prank_total, 0u);
    for (const auto* f : {&t.f1, &t.f2, &t.f3}) {
        EXPECT_EQ(f->degree(), 4);
        EXPECT_TRUE(poly::is_squarefree(*f));
        EXPECT_TRUE(curves::quartic_hasse_char3(*f).is_zero());
    }
    const Field F = Field::quadratic(3);
    const auto i = F.w();
    EXPECT_EQ(t.f3, DensePoly(F, {F.one(), F.from_int(2) + F.from_int(2) * i, F.zero(), i + F.from_int(2), F.one()}));
}

// the p-rank of the fiber product is the sum of independently counted component p-ranks
TEST(FiberProduct, AdditivityAgainstPointCount) {
    std::mt19937_64 rng(12345);
    int checked = 0;
    for (ff::u32 p : {5u, 7u, 11u, 13u}) {
        const Field F = Field::prime(p);
        for (int it = 0; it < 8; ++it) {
            const auto l1 = F.element_at(2 + rng() % (p - 2));
            const auto l2 = F.element_at(2 + rng() % (p - 2));
            if (l1 == l2) continue;
            auto t = covers::kani_rosen_triple(legendre_rhs(l1), legendre_rhs(l2));
            covers::attach_p_ranks(t);
            int want = 0;
            for (const auto* f : {&t.f1, &t.f2, &t.f3})
                if (f->degree() >= 3) want += cartier::prank_oracle(HyperellipticModel(*f));
            EXPECT_EQ(static_cast<int>(*t.prank_total), want);
            ++checked;
        }
    }
    EXPECT_GT(checked, 10);
}

TEST(FamilyXn, KnownCases) {
    EXPECT_TRUE(cartier::is_superspecial(covers::family_xn_tn(5, Field::prime(19).one())));
    const auto C = covers::family_xn_tn(7, Field::prime(3).one());
    EXPECT_EQ(C.genus(), 3);
    EXPECT_EQ(cartier::cartier_matrix(C).matrix.rank(), 2u);
    EXPECT_THROW(covers::family_xn_tn(2, Field::prime(7).one()), std::invalid_argument);
    EXPECT_THROW(covers::family_xn_tn(7, Field::prime(7).one()), std::invalid_argument);
    EXPECT_THROW(covers::family_xn_tn(5, Field::prime(7).zero()), std::invalid_argument);
}

TEST(FamilyXn, RankSetMatchesMatrix) {
    for (int n = 3; n <= 12; ++n)
        for (ff::u32 p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
            if (n % static_cast<int>(p) == 0 || p % static_cast<ff::u32>(n) == 1) continue;
            const auto C = covers::family_xn_tn(n, Field::prime(p).from_int(2));
            EXPECT_EQ(cartier::cartier_matrix(C).matrix.rank(), covers::xn_rank_set(n, p).size()) << n << " " << p;
        }
}

TEST(Mobius, SendsTripleToZeroOneLambda) {
    const Field F = Field::quadratic(11);
    const auto lam = F.element(3, 4);
    const auto z0 = F.element(1, 2), z1 = F.element(5), z2 = F.element(7, 9);
    const auto L = covers::mobius_to_0_1_lambda(z0, z1, z2, lam);
    EXPECT_TRUE(L(z0)->is_zero());
    EXPECT_TRUE(L(z1)->is_one());
    EXPECT_EQ(*L(z2), lam);
    EXPECT_THROW(covers::mobius_to_0_1_lambda(z0, z0, z2, lam), std::domain_error);
}

TEST(MobiusFamily, PointsDistinctAndD3Superspecial) {
    for (auto [n, p] : {std::pair{3, 11u}, {3, 23u}, {5, 7u}, {5, 23u}, {7, 19u}}) {
        const Field F = Field::quadratic(p);
        bool done = false;
        for (const auto& lam : F.elements()) {
            if (lam.is_zero() || lam.is_one()) continue;
            std::vector<ff::FieldElement> xs;
            try {
                xs = covers::mobius_branch_points(n, lam, F.one());
            } catch (const std::domain_error&) {
                continue;
            }
            ASSERT_EQ(xs.size(), static_cast<std::size_t>(n));
            std::set<ff::u64> idx;
            for (const auto& x : xs) idx.insert(x.index());
            EXPECT_EQ(idx.size(), xs.size());
            auto t = covers::mobius_family_triple(n, lam, F.one());
            EXPECT_EQ(t.f3.degree(), n + 3);
            EXPECT_TRUE(cartier::is_superspecial(HyperellipticModel(t.f3)));
            covers::attach_p_ranks(t);
            EXPECT_LE(static_cast<int>((*t.p_ranks)[1] + (*t.p_ranks)[2]), (n - 1) / 2);
            done = true;
            break;
        }
        EXPECT_TRUE(done) << n << " " << p;
    }
    EXPECT_THROW(covers::mobius_branch_points(4, Field::quadratic(13).from_int(2), Field::quadratic(13).one()), std::invalid_argument);
    EXPECT_THROW(covers::mobius_branch_points(3, Field::quadratic(13).from_int(2), Field::quadratic(13).one()), std::invalid_argument);
}

TEST(CyclicCover, Models) {
    const Field F = Field::prime(5);
    EXPECT_TRUE(covers::cyclic_cover_hypothesis(4, 5));
    const auto m = covers::cyclic_cover_models(4, F.from_int(2));
    EXPECT_EQ(m.d1.degree(), 4);
    EXPECT_EQ(m.d2.degree(), 3);
    EXPECT_EQ(m.genus_total, 1 + m.g1 + m.g2);
    const auto cm = cartier::cartier_matrix(HyperellipticModel(m.d1));
    EXPECT_LT(cm.p_rank, static_cast<std::size_t>(m.g1));
    // p = -1 mod 2(n-1): D1 has p-rank 0
    for (auto [n, p] : {std::pair{4, 5u}, {4, 11u}, {5, 7u}, {6, 19u}, {7, 11u}}) {
        ASSERT_TRUE(covers::cyclic_cover_hypothesis(n, p));
        const Field G = Field::prime(p);
        ff::u32 l = 2;
        while (G.from_int(l).pow(static_cast<ff::u64>(n - 1)).is_one()) ++l;
        const auto mm = covers::cyclic_cover_models(n, G.from_int(l));
        if ((p + 1) % static_cast<ff::u32>(2 * (n - 1)) == 0) {
            EXPECT_EQ(cartier::p_rank(HyperellipticModel(mm.d1)), 0u) << n << " " << p;
        }
    }
    EXPECT_FALSE(covers::cyclic_cover_hypothesis(4, 7));  // 7 = 1 mod 6
    EXPECT_THROW(covers::cyclic_cover_models(4, Field::prime(7).from_int(2)), std::invalid_argument);
    EXPECT_THROW(covers::cyclic_cover_models(4, F.one()), std::invalid_argument);
}

TEST(RootsOfUnity, Order) {
    const Field F = Field::quadratic(7);
    const auto z = covers::primitive_root_of_unity(F, 8);
    ASSERT_TRUE(z);
    EXPECT_TRUE(z->pow(8).is_one());
    EXPECT_FALSE(z->pow(4).is_one());
    EXPECT_FALSE(covers::primitive_root_of_unity(F, 5));
}
