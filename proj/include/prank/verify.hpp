#pragma once

// Self-checks behind `verify <suite>` and the acceptance runner. Each suite
// returns a report with case and failure counts; failures carry a short
// description of the offending input.

#include <prank/cartier.hpp>
#include <prank/covers.hpp>
#include <prank/curves.hpp>
#include <prank/point_count.hpp>
#include <prank/search.hpp>
#include <prank/strata.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace prank::verify {

using cartier::HyperellipticModel;
using ff::Field;
using ff::FieldElement;
using ff::u32;
using ff::u64;
using poly::DensePoly;

inline constexpr u64 kDefaultSeed = 12345;

struct Options {
    u64 seed = kDefaultSeed;
    unsigned threads = 1;
};

struct Report {
    std::string suite;
    bool passed = true;
    u64 seed = kDefaultSeed;
    u64 cases = 0;
    u64 failures = 0;
    double elapsed_ms = 0;
    /// Suite-specific counters, in insertion order.
    std::vector<std::pair<std::string, long long>> counters;
    std::vector<std::string> notes;
    std::vector<std::string> failure_details;

    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok) {
            ++failures;
            passed = false;
            if (failure_details.size() < 50) failure_details.push_back(what);
        }
    }
    void counter(const std::string& key, long long v) {
        for (auto& [k, val] : counters)
            if (k == key) {
                val = v;
                return;
            }
        counters.emplace_back(key, v);
    }
};

inline std::vector<u32> odd_primes_upto(u32 hi, u32 lo = 3) {
    std::vector<u32> out;
    for (u32 p = std::max<u32>(lo, 3); p <= hi; ++p)
        if (ff::is_prime(p)) out.push_back(p);
    return out;
}

inline std::string join_u32(const std::vector<u32>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

namespace detail {

template <class F>
Report timed(const std::string& name, const Options& opt, F&& body) {
    Report r;
    r.suite = name;
    r.seed = opt.seed;
    const auto t0 = std::chrono::steady_clock::now();
    body(r);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string tag(std::initializer_list<std::pair<const char*, long long>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += (s.empty() ? "" : " ") + std::string(k) + "=" + std::to_string(v);
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Solutions over GF(p) for small p = 11 mod 12, none at 107.
inline Report ss5_small(const Options& opt = {}) {
    return detail::timed("ss5-small", opt, [&](Report& r) {
        for (u32 p : {11u, 23u, 47u, 59u, 71u, 83u, 107u}) {
            search::SweepConfig cfg;
            cfg.p = p;
            cfg.mode = p == 107 ? search::SweepMode::all : search::SweepMode::first;
            cfg.threads = opt.threads;
            const auto res = search::ss5_sweep(cfg);
            const bool expect = p != 107;
            r.check(res.found() == expect, "p=" + std::to_string(p) + (expect ? " no solution found" : " unexpected solution"));
            r.check(res.story.prank_zero == res.story.checked,
                    "p=" + std::to_string(p) + " solution with nonzero genus-5 p-rank");
            r.check(res.story.superspecial == res.story.checked, "p=" + std::to_string(p) + " solution not superspecial");
            if (res.found())
                r.notes.push_back("p=" + std::to_string(p) + " first (u,v)=(" + std::to_string(res.solutions[0].u) + "," +
                                  std::to_string(res.solutions[0].v) + ")");
            r.counter("tested_p" + std::to_string(p), static_cast<long long>(res.counts.tested));
        }
    });
}

/// Solution-free primes p = 11 mod 12 below `bound` must be exactly {107, 443, 491}.
inline Report ss5_extended(const Options& opt = {}, u32 bound = 1000) {
    return detail::timed("ss5-extended", opt, [&](Report& r) {
        const std::vector<u32> expected{107, 443, 491};
        std::vector<u32> empty;
        u64 story_bad = 0, primes = 0;
        for (u32 p = 11; p < bound; p += 12) {
            if (!ff::is_prime(p)) continue;
            search::SweepConfig cfg;
            cfg.p = p;
            cfg.mode = search::SweepMode::first;
            cfg.threads = opt.threads;
            const auto res = search::ss5_sweep(cfg);
            if (!res.found()) empty.push_back(p);
            story_bad += res.story.checked - res.story.prank_zero;
            ++primes;
        }
        r.counter("primes", static_cast<long long>(primes));
        r.notes.push_back("solution-free primes: " + join_u32(empty));
        r.check(empty == expected, "solution-free primes " + join_u32(empty) + " differ from " + join_u32(expected));
        r.check(story_bad == 0, "some solution has nonzero genus-5 p-rank");
    });
}

/// The GF(9) witness: three supersingular quartics, genus 3, p-rank 0.
inline Report char3_genus3(const Options& opt = {}) {
    return detail::timed("char3-genus3", opt, [&](Report& r) {
        const auto t = covers::char3_genus3_witness();
        const Field& F = t.f1.field();
        const FieldElement i = F.w();
        const DensePoly expected_d3(F, {F.one(), F.from_int(2) * i + F.from_int(2), F.zero(), i + F.from_int(2), F.one()});
        r.check(t.f3 == expected_d3, "D_3 = " + t.f3.to_string() + " differs from x^4+(i+2)x^3+(2i+2)x+1");
        int k = 0;
        for (const DensePoly* f : {&t.f1, &t.f2, &t.f3}) {
            ++k;
            r.check(f->degree() == 4 && poly::is_squarefree(*f), "quartic " + std::to_string(k) + " singular");
            r.check(curves::quartic_hasse_char3(*f).is_zero(), "quartic " + std::to_string(k) + " has nonzero x^2 coefficient");
            r.check(curves::hasse_invariant(*f).is_zero(), "quartic " + std::to_string(k) + " has nonzero Hasse invariant");
        }
        r.check(t.genus_total == 3, "genus " + std::to_string(t.genus_total) + " != 3");
        r.check(t.prank_total && *t.prank_total == 0, "p-rank nonzero");
    });
}

/// No superspecial genus-2 curve over GF(9).
inline Report ekedahl3(const Options& opt = {}) {
    return detail::timed("ekedahl3", opt, [&](Report& r) {
        const auto res = search::superspecial_g2_enumeration(3, 9);
        r.counter("candidates", static_cast<long long>(res.candidates));
        r.counter("squarefree", static_cast<long long>(res.squarefree));
        r.counter("superspecial", static_cast<long long>(res.models.size()));
        r.check(res.candidates == 59049 + 531441, "candidate count " + std::to_string(res.candidates));
        r.check(res.models.empty(), std::to_string(res.models.size()) + " superspecial models found");
        r.notes.push_back(std::to_string(res.models.size()) + " superspecial models found");
    });
}

/// z^2 = x^n - t^n: rank M = #S < g for p != 1 mod n, M = 0 for p = -1 mod n.
inline Report xn_family(const Options& opt = {}) {
    return detail::timed("lemma43", opt, [&](Report& r) {
        u64 zero_cases = 0;
        for (int n = 3; n <= 12; ++n)
            for (u32 p : odd_primes_upto(50)) {
                if (n % static_cast<int>(p) == 0 || p % static_cast<u32>(n) == 1) continue;
                const Field F = Field::prime(p);
                for (int t : {1, 2}) {
                    const auto C = covers::family_xn_tn(n, F.from_int(t));
                    const auto cm = cartier::cartier_matrix(C);
                    const std::size_t rk = cm.matrix.rank();
                    const std::size_t s = covers::xn_rank_set(n, p).size();
                    const std::string where = detail::tag({{"n", n}, {"p", p}, {"t", t}});
                    r.check(rk == s, where + " rank M=" + std::to_string(rk) + " #S=" + std::to_string(s));
                    r.check(rk < static_cast<std::size_t>(C.genus()), where + " M has full rank");
                    r.check(cm.p_rank < static_cast<std::size_t>(C.genus()), where + " ordinary");
                    if ((p + 1) % static_cast<u32>(n) == 0) {
                        ++zero_cases;
                        r.check(cm.matrix.is_zero(), where + " M not zero");
                    }
                }
            }
        r.counter("superspecial_cases", static_cast<long long>(zero_cases));
    });
}

/// Fiber product of two supersingular Legendre curves is a genus-2 curve of p-rank 0.
inline Report genus2_ss(const Options& opt = {}) {
    return detail::timed("genus2-ss", opt, [&](Report& r) {
        for (u32 p : {5u, 7u, 11u, 13u}) {
            const auto t = covers::genus2_supersingular_pair(p);
            const std::string where = "p=" + std::to_string(p);
            r.check(t.genus_total == 2, where + " genus " + std::to_string(t.genus_total));
            r.check(t.prank_total && *t.prank_total == 0, where + " p-rank nonzero");
            r.check(curves::hasse_invariant(t.f1).is_zero() && curves::hasse_invariant(t.f2).is_zero(),
                    where + " input curve not supersingular");
            r.check(t.f1 != t.f2, where + " lambdas coincide");
        }
    });
}

namespace detail {

/// First lambda in `candidates` with lambda not in {0, 1} satisfying `ok`.
inline std::optional<FieldElement> pick(const std::vector<FieldElement>& candidates, const std::function<bool(const FieldElement&)>& ok) {
    for (const auto& c : candidates)
        if (!c.is_zero() && !c.is_one() && ok(c)) return c;
    return std::nullopt;
}

inline int ceil_half(int a) { return (a + 1) / 2; }

}  // namespace detail

/// Double covers of E built from x^n - t^n and from the Mobius family.
/// Bounds are checked on f_new = f_{D_2} + f_{D_3}, and on f_D for a supersingular E.
inline Report double_cover_bounds(const Options& opt = {}) {
    return detail::timed("prop44", opt, [&](Report& r) {
        u64 case1 = 0, case2 = 0;
        for (int n = 3; n <= 7; ++n)
            for (u32 p : odd_primes_upto(50)) {
                if (n % static_cast<int>(p) == 0 || p % static_cast<u32>(n) == 1) continue;
                const Field F = Field::quadratic(p);
                const auto elems = F.elements();
                // t with t^n != 1 keeps x = 1 off the roots of x^n - t^n.
                const auto t = detail::pick(elems, [&](const FieldElement& x) { return !x.pow(static_cast<u64>(n)).is_one(); });
                if (!t) continue;
                const FieldElement tn = t->pow(static_cast<u64>(n));
                const auto lambdas = curves::supersingular_lambdas(p);
                const auto ok_lambda = [&](const FieldElement& l) { return l.pow(static_cast<u64>(n)) != tn; };
                const auto lam_ss = detail::pick(lambdas, ok_lambda);
                const auto lam_any = detail::pick(Field::prime(p).elements(), [&](const FieldElement& l) {
                    return ok_lambda(ff::embed(l, F)) && !curves::hasse_invariant(curves::LegendreCurve(ff::embed(l, F))).is_zero();
                });
                for (const auto& lam : {lam_ss, lam_any ? std::optional<FieldElement>(ff::embed(*lam_any, F)) : std::nullopt}) {
                    if (!lam) continue;
                    ++case1;
                    auto tr = covers::xn_family_triple(n, *lam, *t);
                    covers::attach_p_ranks(tr);
                    const auto& pr = *tr.p_ranks;
                    const bool ss = curves::hasse_invariant(tr.f1).is_zero();
                    const std::string where = detail::tag({{"case", 1}, {"n", n}, {"p", p}, {"ssE", ss}});
                    const int g_new = tr.genera[1] + tr.genera[2];
                    const auto f_new = static_cast<int>(pr[1] + pr[2]);
                    r.check(tr.f3.degree() == n + 3, where + " D_3 shares roots with E");
                    r.check(f_new < g_new, where + " Jac_new ordinary");
                    if ((p + 1) % static_cast<u32>(n) == 0) {
                        const int bound = detail::ceil_half(n + 1);
                        r.check(f_new <= bound, where + " f_new=" + std::to_string(f_new) + " > " + std::to_string(bound));
                        if (ss) r.check(static_cast<int>(*tr.prank_total) <= bound, where + " f_D exceeds bound");
                    }
                }
            }
        for (int n : {3, 5, 7})
            for (u32 p : odd_primes_upto(50)) {
                const u32 N = static_cast<u32>(n + 3);
                if ((p + 1) % N != 0) continue;
                const Field F = Field::quadratic(p);
                // Supersingular lambdas first, so that f_D = f_new; then any lambda.
                std::vector<FieldElement> lambdas = curves::supersingular_lambdas(p);
                for (const auto& l : F.elements())
                    if (!l.is_zero() && !l.is_one() && std::find(lambdas.begin(), lambdas.end(), l) == lambdas.end()) lambdas.push_back(l);
                bool built = false;
                for (const auto& lam : lambdas) {
                    // The x_i do not depend on t (rescaling t is absorbed by L); a few values suffice.
                    for (u64 ti = 1; ti <= 3 && !built; ++ti) {
                        std::optional<covers::QuotientTriple> built_triple;
                        try {
                            built_triple = covers::mobius_family_triple(n, lam, F.element_at(ti));
                        } catch (const std::domain_error&) {
                            continue;
                        }
                        auto& tr = *built_triple;
                        built = true;
                        ++case2;
                        covers::attach_p_ranks(tr);
                        const auto& pr = *tr.p_ranks;
                        const bool ss = curves::hasse_invariant(tr.f1).is_zero();
                        const std::string where = detail::tag({{"case", 2}, {"n", n}, {"p", p}, {"ssE", ss}});
                        const int bound = (n - 1) / 2;
                        r.check(static_cast<int>(pr[1] + pr[2]) <= bound, where + " f_new exceeds (n-1)/2");
                        if (ss) r.check(static_cast<int>(*tr.prank_total) <= bound, where + " f_D exceeds (n-1)/2");
                        r.check(cartier::is_superspecial(HyperellipticModel(tr.f3)), where + " D_3 not superspecial");
                    }
                    if (built) break;
                }
                r.check(built, "case 2 n=" + std::to_string(n) + " p=" + std::to_string(p) + ": no admissible (lambda, t)");
            }
        r.counter("case1_triples", static_cast<long long>(case1));
        r.counter("case2_triples", static_cast<long long>(case2));
    });
}

/// E against z^2 = x(x^(n-1) - 1): D_1 and Jac_new not ordinary; p-rank bound when p = -1 mod 2(n-1).
inline Report cyclic_cover_bounds(const Options& opt = {}) {
    return detail::timed("prop45", opt, [&](Report& r) {
        for (int n = 2; n <= 7; ++n)
            for (u32 p : odd_primes_upto(50)) {
                if (!covers::cyclic_cover_hypothesis(n, p)) continue;
                const Field F = Field::prime(p);
                const auto lam = detail::pick(F.elements(), [&](const FieldElement& l) { return !l.pow(static_cast<u64>(n - 1)).is_one(); });
                if (!lam) continue;
                const auto m = covers::cyclic_cover_models(n, *lam);
                const std::string where = detail::tag({{"n", n}, {"p", p}});
                const std::size_t f1 = covers::component_p_rank(m.d1);
                const std::size_t f2 = covers::component_p_rank(m.d2);
                r.check(m.genus_total == n - 1, where + " genus " + std::to_string(m.genus_total));
                r.check(static_cast<int>(f1) < m.g1, where + " D_1 ordinary");
                r.check(static_cast<int>(f1 + f2) < m.g1 + m.g2, where + " Jac_new ordinary");
                // Cross-check against the fiber product itself.
                const auto fp = covers::prank_fiber_product(curves::LegendreCurve(*lam).rhs(), m.d1);
                r.check(fp.genus == m.genus_total, where + " fiber-product genus mismatch");
                const u32 mod = 2 * static_cast<u32>(n - 1);
                if ((p + 1) % mod == 0) {
                    r.check(f1 == 0, where + " D_1 p-rank nonzero");
                    const int bound = detail::ceil_half(n - 1) - 1;
                    r.check(static_cast<int>(f1 + f2) <= bound, where + " f_new exceeds bound");
                }
            }
    });
}

namespace detail {

inline DensePoly random_poly(const Field& F, int deg, std::mt19937_64& rng) {
    std::vector<FieldElement> c;
    for (int i = 0; i <= deg; ++i) c.push_back(F.element_at(rng() % F.order()));
    if (c.back().is_zero()) c.back() = F.one();
    return DensePoly(F, c);
}

inline std::optional<DensePoly> random_squarefree(const Field& F, int deg, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        DensePoly f = random_poly(F, deg, rng);
        if (poly::is_squarefree(f)) return f;
    }
    return std::nullopt;
}

}  // namespace detail

/// Recurrence vs expansion, Cartier p-rank vs point counting, and invariance of the p-rank.
inline Report oracle(const Options& opt = {}) {
    return detail::timed("oracle", opt, [&](Report& r) {
        std::mt19937_64 rng(opt.seed);
        const auto primes50 = odd_primes_upto(50);
        u64 coeff_cases = 0;
        while (coeff_cases < 120) {
            const u32 p = primes50[rng() % primes50.size()];
            const Field F(p, rng() % 4 == 0 ? 2 : 1);
            const int deg = 1 + static_cast<int>(rng() % 8);
            const DensePoly f = detail::random_poly(F, deg, rng);
            const u64 m = 1 + rng() % ((p - 1) / 2);
            std::vector<std::size_t> idx;
            for (std::size_t k = 0; k <= m * static_cast<u64>(deg); ++k)
                if (cartier::recurrence_reachable(f, m, k)) idx.push_back(k);
            if (idx.empty()) continue;
            ++coeff_cases;
            const auto a = cartier::power_coeffs(f, m, idx, cartier::PowerStrategy::recurrence);
            const auto b = cartier::power_coeffs(f, m, idx, cartier::PowerStrategy::naive);
            r.check(a == b, "recurrence != naive for f=" + f.to_string() + " over " + F.name() + " m=" + std::to_string(m));
        }
        r.counter("coefficient_cases", static_cast<long long>(coeff_cases));

        const std::vector<u32> small{3, 5, 7, 11, 13};
        u64 oracle_cases = 0;
        while (oracle_cases < 60) {
            const u32 p = small[rng() % small.size()];
            const Field F = Field::prime(p);
            const int deg = 3 + static_cast<int>(rng() % 4);
            const auto f = detail::random_squarefree(F, deg, rng);
            if (!f) continue;
            ++oracle_cases;
            const HyperellipticModel C(*f);
            const auto rank = cartier::p_rank(C);
            const int expect = cartier::prank_oracle(C);
            const std::string where = "f=" + f->to_string() + " p=" + std::to_string(p);
            r.check(static_cast<int>(rank) == expect, where + " p_rank " + std::to_string(rank) + " oracle " + std::to_string(expect));
            const FieldElement s = F.element_at(rng() % p);
            const FieldElement c = F.element_at(1 + rng() % (p - 1));
            r.check(cartier::p_rank(HyperellipticModel(f->shift(s))) == rank, where + " not invariant under x -> x+" + s.to_string());
            r.check(cartier::p_rank(HyperellipticModel(*f * c)) == rank, where + " not invariant under f -> " + c.to_string() + "f");
        }
        r.counter("oracle_cases", static_cast<long long>(oracle_cases));
    });
}

/// Dimension formulas, boundary index ranges and the existence table for 2 <= g <= 8.
inline Report strata_tables(const Options& opt = {}) {
    using namespace prank::strata;
    return detail::timed("strata", opt, [&](Report& r) {
        for (int g = 2; g <= 8; ++g) {
            for (int fE = 0; fE <= 1; ++fE)
                for (int f = fE; f <= g - 1 + fE; ++f) {
                    const std::string where = detail::tag({{"g", g}, {"f", f}, {"fE", fE}});
                    const int beg = stratum_dim({g, f, fE, Space::B_Eg});
                    r.check(beg == g - 2 + f - fE, where + " B_Eg");
                    r.check(beg == stratum_dim({g, f, fE, Space::B_g}) - fE, where + " B_Eg != B_g - f_E");
                }
            for (int f = 0; f <= g; ++f) {
                r.check(stratum_dim({g, f, 0, Space::B_g}) == g - 2 + f, "B_g g=" + std::to_string(g));
                r.check(stratum_dim({g, f, 0, Space::H_g}) == g - 1 + f, "H_g g=" + std::to_string(g));
            }
            for (int fE = 0; fE <= 1; ++fE) {
                bool threw = false;
                try {
                    stratum_dim({g, g + fE, fE, Space::B_Eg});
                } catch (const std::out_of_range&) {
                    threw = true;
                }
                r.check(threw, "g=" + std::to_string(g) + " window not enforced");
            }

            const auto comps = boundary_components(g);
            r.check(comps.size() == static_cast<std::size_t>((g - 1) + (g - 2)), "g=" + std::to_string(g) + " component count");
            std::size_t i = 0;
            for (int g1 = 1; g1 <= g - 1; ++g1, ++i) {
                const auto& c = comps.at(i);
                r.check(c.kind == Kind::Xi && c.g1 == g1 && c.g2 == g - 1 - g1 && c.dim == 2 * g - 4, c.label() + " at g=" + std::to_string(g));
                r.check((g1 == 1) == (c.parts.size() == 2), c.label() + " split");
            }
            for (int g1 = 2; g1 <= g - 1; ++g1, ++i) {
                const auto& c = comps.at(i);
                r.check(c.kind == Kind::Delta && c.g1 == g1 && c.g2 == g - g1 && c.dim == 2 * g - 4, c.label() + " at g=" + std::to_string(g));
            }
            // V_f of boundary pieces sits one below the stratum, except delta at f_E = 0.
            const auto& split = comps.front().parts;
            for (int fE = 0; fE <= 1; ++fE)
                for (const auto& c : split) {
                    const Window w = c.vf_window(fE);
                    for (int f = w.lo; f <= w.hi; ++f) {
                        if (f < fE || f > g - 1 + fE) continue;
                        const int gap = stratum_dim({g, f, fE, Space::B_Eg}) - c.vf_dim(f, fE);
                        const int want = (c.kind == Kind::delta_ct && fE == 0) ? 0 : 1;
                        r.check(gap == want, c.label() + detail::tag({{" g", g}, {"f", f}, {"fE", fE}}) + " gap " + std::to_string(gap));
                    }
                }
        }
        for (u32 p : {3u, 5u, 7u, 11u})
            for (int g = 2; g <= 8; ++g)
                for (int fE = 0; fE <= 1; ++fE)
                    for (int f = -1; f <= g + 1; ++f) {
                        const bool want = fE == 1 ? (1 <= f && f <= g) : (0 <= f && f <= g - 1 && !(p == 3 && g == 2 && f == 0));
                        r.check(smooth_cover_exists(p, g, f, fE) == want,
                                "exists " + detail::tag({{"p", p}, {"g", g}, {"f", f}, {"fE", fE}}));
                    }
        r.check(!smooth_cover_exists(3, 2, 0, 0), "(3,2,0) exception");
    });
}

struct SuiteInfo {
    const char* name;
    Report (*run)(const Options&);
};

inline Report ss5_extended_default(const Options& o) { return ss5_extended(o); }

inline const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> all{
        {"lemma43", xn_family},
        {"char3-genus3", char3_genus3},
        {"ekedahl3", ekedahl3},
        {"genus2-ss", genus2_ss},
        {"prop44", double_cover_bounds},
        {"prop45", cyclic_cover_bounds},
        {"ss5-small", ss5_small},
        {"oracle", oracle},
        {"strata", strata_tables},
        {"ss5-extended", ss5_extended_default},
    };
    return all;
}

}  // namespace prank::verify
