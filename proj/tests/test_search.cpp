#include <prank/cartier.hpp>
#include <prank/search.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace prank;
using cartier::HyperellipticModel;
using cartier::PowerStrategy;
using ff::Field;
using poly::DensePoly;
using search::DvForm;
using search::PairStatus;
using search::SweepMode;

namespace {

search::SearchResult sweep(ff::u32 p, SweepMode mode, unsigned threads = 1, ff::u32 chunk = 8, DvForm form = DvForm::homogeneous) {
    search::SweepConfig cfg;
    cfg.p = p;
    cfg.mode = mode;
    cfg.threads = threads;
    cfg.chunk = chunk;
    cfg.form = form;
    return search::ss5_sweep(cfg);
}

}  // namespace

TEST(Ss5Polys, Shapes) {
    const Field F = Field::prime(11);
    const auto u = F.from_int(3), v = F.from_int(4);
    const auto P = search::ss5_polys(u, v);
    const auto x = DensePoly::x(F);
    const auto xu = x + DensePoly::constant(u), ux1 = x * u + DensePoly::constant(F.one());
    EXPECT_EQ(P.a_u, xu * xu + ux1 * ux1);
    const auto xv = x + DensePoly::constant(v), vx1 = x * v + DensePoly::constant(F.one());
    const auto xv2 = xv * xv, vx2 = vx1 * vx1;
    EXPECT_EQ(P.b_v, xv2 * xv2 + xv2 * vx2 + vx2 * vx2);
    EXPECT_EQ(P.f, P.a_u * P.b_v);
    EXPECT_EQ(P.e_u, P.a_u * (xu * xu - ux1 * ux1));
    EXPECT_EQ(P.d_v, P.b_v * (xv2 - vx2));
    const auto Q = search::ss5_polys(u, v, DvForm::as_printed);
    EXPECT_EQ(Q.b_v, xv2 * xv2 + xv2 + DensePoly::constant(F.one()));
}

TEST(CheckPair, Exclusions) {
    const Field F = Field::prime(11);
    for (const auto& v : F.elements()) {
        EXPECT_EQ(search::ss5_check_pair(11, F.one(), v).status, PairStatus::excluded_uv);
        EXPECT_EQ(search::ss5_check_pair(11, -F.one(), v).status, PairStatus::excluded_uv);
        EXPECT_EQ(search::ss5_check_pair(11, v, F.one()).status, PairStatus::excluded_uv);
    }
    EXPECT_THROW(search::ss5_check_pair(13, F.one(), F.one()), std::invalid_argument);
    EXPECT_THROW(search::check_sweep_prime(15), std::invalid_argument);
    EXPECT_THROW(search::check_sweep_prime(1u << 28), std::invalid_argument);
}

TEST(CheckPair, EquationsAtZero) {
    const Field F = Field::prime(11);
    EXPECT_TRUE(search::ss5_equations(F.zero(), F.zero(), F.zero(), F.zero()));
    EXPECT_FALSE(search::ss5_equations(F.one(), F.zero(), F.zero(), F.zero()));
}

// every pair classified identically by the fast kernel, the recurrence path and full expansion
TEST(CheckPair, FastKernelMatchesGenericPaths) {
    for (ff::u32 p : {11u, 23u, 47u}) {
        for (DvForm form : {DvForm::homogeneous, DvForm::as_printed}) {
            const Field F = Field::prime(p);
            const search::GridData G(p, form);
            search::detail::Kernel K(p);
            for (ff::u32 u = 0; u < p; ++u)
                for (ff::u32 v = 0; v < p; ++v) {
                    std::array<ff::u64, 4> abcd{};
                    const auto fast = search::ss5_check_pair_fast(G, K, u, v, &abcd);
                    const auto naive = search::ss5_check_pair(p, F.element(u), F.element(v), PowerStrategy::naive, form);
                    const auto rec = search::ss5_check_pair(p, F.element(u), F.element(v), PowerStrategy::recurrence, form);
                    ASSERT_EQ(fast, naive.status) << p << " " << u << " " << v;
                    ASSERT_EQ(rec.status, naive.status);
                    if (naive.abcd) {
                        for (int i = 0; i < 4; ++i) {
                            EXPECT_EQ(abcd[i], (*naive.abcd)[i].re());
                            EXPECT_EQ((*rec.abcd)[i], (*naive.abcd)[i]);
                        }
                    }
                }
        }
    }
}

// u64 accumulation stays exact for large p
TEST(CheckPair, FastKernelLargePrime) {
    std::mt19937_64 rng(12345);
    for (ff::u32 p : {100043u, 1000151u}) {
        ASSERT_TRUE(ff::is_prime(p));
        ASSERT_EQ(p % 12, 11u);
        const Field F = Field::prime(p);
        const search::GridData G(p, DvForm::homogeneous);
        search::detail::Kernel K(p);
        for (int it = 0; it < 3; ++it) {
            const auto u = static_cast<ff::u32>(2 + rng() % (p - 3)), v = static_cast<ff::u32>(2 + rng() % (p - 3));
            std::array<ff::u64, 4> abcd{};
            const auto fast = search::ss5_check_pair_fast(G, K, u, v, &abcd);
            const auto rec = search::ss5_check_pair(p, F.element(u), F.element(v), PowerStrategy::recurrence);
            ASSERT_EQ(fast, rec.status);
            if (rec.abcd) {
                for (int i = 0; i < 4; ++i) EXPECT_EQ(abcd[i], (*rec.abcd)[i].re());
            }
        }
    }
}

TEST(Sweep, SmallPrimes) {
    for (ff::u32 p : {11u, 23u, 47u, 59u, 71u, 83u}) {
        const auto r = sweep(p, SweepMode::first);
        EXPECT_TRUE(r.found()) << p;
        EXPECT_EQ(r.solutions.size(), 1u);
    }
    const auto r107 = sweep(107, SweepMode::all);
    EXPECT_FALSE(r107.found());
    EXPECT_EQ(r107.counts.total(), 107u * 107u);
}

TEST(Sweep, SolutionsPassNaiveRecheckAndAreSuperspecial) {
    const auto r = sweep(23, SweepMode::all);
    ASSERT_TRUE(r.found());
    const Field F = Field::prime(23);
    for (const auto& s : r.solutions) {
        const auto u = F.element_at(s.u), v = F.element_at(s.v);
        EXPECT_EQ(search::ss5_check_pair(23, u, v, PowerStrategy::naive).status, PairStatus::solution);
        EXPECT_TRUE(cartier::is_superspecial(HyperellipticModel(search::ss5_polys(u, v).f)));
        const auto story = search::ss5_story(u, v);
        EXPECT_TRUE(story.ok());
    }
    EXPECT_EQ(r.story.checked, r.solutions.size());
    EXPECT_EQ(r.story.prank_zero, r.solutions.size());
    EXPECT_EQ(r.story.superspecial, r.solutions.size());
}

TEST(Sweep, FirstModeIsLexicographicallySmallest) {
    for (ff::u32 p : {11u, 23u, 47u, 59u}) {
        const auto all = sweep(p, SweepMode::all);
        const auto first = sweep(p, SweepMode::first, 3, 2);
        ASSERT_TRUE(all.found());
        EXPECT_EQ(first.solutions.front(), *std::min_element(all.solutions.begin(), all.solutions.end()));
        // counts cover exactly the pairs up to and including the solution
        EXPECT_EQ(first.counts.total(), first.solutions[0].u * p + first.solutions[0].v + 1);
        EXPECT_TRUE(std::is_sorted(all.solutions.begin(), all.solutions.end()));
    }
}

TEST(Sweep, DeterministicAcrossThreadsAndChunks) {
    for (ff::u32 p : {47u, 71u, 131u}) {
        for (SweepMode mode : {SweepMode::first, SweepMode::all}) {
            const auto base = sweep(p, mode, 1, 8);
            for (unsigned t : {2u, 4u, 7u})
                for (ff::u32 chunk : {1u, 5u, 64u}) {
                    const auto r = sweep(p, mode, t, chunk);
                    EXPECT_EQ(r.solutions, base.solutions) << p << " t=" << t << " chunk=" << chunk;
                    EXPECT_EQ(r.counts, base.counts);
                    EXPECT_EQ(r.story, base.story);
                }
        }
    }
}

TEST(Sweep, ExtensionGridContainsPrimeGridSolutions) {
    search::SweepConfig cfg;
    cfg.p = 11;
    cfg.mode = SweepMode::all;
    cfg.extension = true;
    cfg.threads = 2;
    const auto ext = search::ss5_sweep(cfg);
    EXPECT_EQ(ext.grid, 11u * 11u * 11u * 11u);
    EXPECT_EQ(ext.counts.total(), ext.grid);
    const auto base = sweep(11, SweepMode::all);
    const std::set<search::Solution> es(ext.solutions.begin(), ext.solutions.end());
    for (const auto& s : base.solutions) EXPECT_TRUE(es.count(s));  // GF(p) indices coincide with GF(p^2) indices
}

TEST(Sweep, ConfigValidation) {
    search::SweepConfig cfg;
    cfg.p = 9;
    EXPECT_THROW(search::ss5_sweep(cfg), std::invalid_argument);
    cfg.p = 11;
    cfg.threads = 0;
    EXPECT_THROW(search::ss5_sweep(cfg), std::invalid_argument);
}

TEST(Enumeration, NoSuperspecialOverGF9) {
    const auto r = search::superspecial_g2_enumeration(3, 9);
    EXPECT_TRUE(r.models.empty());
    EXPECT_EQ(r.candidates, 59049u + 531441u);
}

TEST(Enumeration, P5ModelsAreSuperspecial) {
    const auto r = search::superspecial_g2_enumeration(5, 5, {5});
    EXPECT_EQ(r.candidates, 3125u);
    const Field F = Field::prime(5);
    std::set<std::string> listed;
    for (const auto& f : r.models) {
        EXPECT_EQ(cartier::p_rank(HyperellipticModel(f)), 0u);
        EXPECT_TRUE(cartier::is_superspecial(HyperellipticModel(f)));
        listed.insert(f.to_string());
    }
    // closed under translation x -> x + s, which keeps the model monic
    for (const auto& f : r.models)
        for (const auto& s : F.elements()) EXPECT_TRUE(listed.count(f.shift(s).to_string()));
}

TEST(Enumeration, Guards) {
    EXPECT_THROW(search::superspecial_g2_enumeration(5, 25), std::invalid_argument);
    EXPECT_THROW(search::superspecial_g2_enumeration(5, 7), std::invalid_argument);
    EXPECT_THROW(search::superspecial_g2_enumeration(5, 5, {4}), std::invalid_argument);
}
