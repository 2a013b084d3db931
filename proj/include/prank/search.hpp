#pragma once

// Genus-5 superspecial sweep over (u, v) and the genus-2 superspecial enumeration.
//
// For p = 11 mod 12 the sweep looks at
//   A_u = (x+u)^2 + (ux+1)^2
//   B_v = (x+v)^4 + (x+v)^2 (vx+1)^2 + (vx+1)^4        (DvForm::homogeneous)
//       = (x+v)^4 + (x+v)^2 + 1                         (DvForm::as_printed)
// and the genus-2 curve w^2 = f = A_u B_v. With c_k the coefficients of
// f^((p-1)/2) and a = c_{p-1}, b = c_{2p-1}, c = c_{p-2}, d = c_{2p-2},
// a pair is a solution when
//   ad - bc = 0,  a b^(p-1) + d^p = 0,  a^p + c^(p-1) d = 0.
// E_u: y^2 = A_u (x+u)^2-(ux+1)^2 and D_v: z^2 = B_v ((x+v)^2-(vx+1)^2) are the
// other two quotients of the genus-5 fiber product.

#include <prank/cartier.hpp>
#include <prank/covers.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace prank::search {

using cartier::HyperellipticModel;
using cartier::PowerStrategy;
using ff::Field;
using ff::FieldElement;
using ff::u32;
using ff::u64;
using poly::DensePoly;

enum class SweepMode { first, all };
enum class DvForm { homogeneous, as_printed };
enum class PairStatus { solution, excluded_uv, excluded_gcd, excluded_singular, not_solution };

inline std::string_view to_string(SweepMode m) { return m == SweepMode::first ? "first" : "all"; }
inline std::string_view to_string(DvForm f) { return f == DvForm::homogeneous ? "homogeneous" : "as-printed"; }
inline std::string_view to_string(PairStatus s) {
    switch (s) {
        case PairStatus::solution: return "solution";
        case PairStatus::excluded_uv: return "excluded_uv";
        case PairStatus::excluded_gcd: return "excluded_gcd";
        case PairStatus::excluded_singular: return "excluded_singular";
        case PairStatus::not_solution: return "not_solution";
    }
    return "?";
}
inline SweepMode parse_mode(std::string_view s) {
    if (s == "first") return SweepMode::first;
    if (s == "all") return SweepMode::all;
    throw std::invalid_argument("mode must be 'first' or 'all'");
}
inline DvForm parse_dv_form(std::string_view s) {
    if (s == "homogeneous") return DvForm::homogeneous;
    if (s == "as-printed") return DvForm::as_printed;
    throw std::invalid_argument("D_v form must be 'homogeneous' or 'as-printed'");
}

/// Largest characteristic the u64-accumulating kernel accepts.
inline constexpr u32 kSweepMaxPrime = 1u << 28;

inline void check_sweep_prime(u32 p) {
    if (!ff::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p % 12 != 11) throw std::invalid_argument("sweep needs p = 11 mod 12, got p = " + std::to_string(p));
    if (p >= kSweepMaxPrime) throw std::invalid_argument("p too large for the sweep kernel");
}

// ---------------------------------------------------------------------------
// Generic path: DensePoly over GF(p) or GF(p^2). Reference for the fast kernel.

struct Ss5Polys {
    DensePoly a_u;   // (x+u)^2 + (ux+1)^2
    DensePoly b_v;   // quartic factor of D_v
    DensePoly e_u;   // A_u ((x+u)^2 - (ux+1)^2)
    DensePoly d_v;   // B_v ((x+v)^2 - (vx+1)^2)
    DensePoly f;     // A_u B_v
};

inline Ss5Polys ss5_polys(const FieldElement& u, const FieldElement& v, DvForm form = DvForm::homogeneous) {
    const Field& F = u.field();
    const FieldElement one = F.one();
    const DensePoly xu(F, {u, one}), uxo(F, {one, u});
    const DensePoly xv(F, {v, one}), vxo(F, {one, v});
    const DensePoly xv2 = xv * xv, vxo2 = vxo * vxo;
    const DensePoly a_u = xu * xu + uxo * uxo;
    const DensePoly b_v = form == DvForm::homogeneous ? xv2 * xv2 + xv2 * vxo2 + vxo2 * vxo2
                                                      : xv2 * xv2 + xv2 + DensePoly::constant(one);
    const DensePoly e_u = a_u * (xu * xu - uxo * uxo);
    const DensePoly d_v = b_v * (xv2 - vxo2);
    return {a_u, b_v, e_u, d_v, a_u * b_v};
}

/// The three equations on a 2x2 matrix [[a, b], [c, d]].
inline bool ss5_equations(const FieldElement& a, const FieldElement& b, const FieldElement& c, const FieldElement& d) {
    const u64 p = a.field().characteristic();
    return (a * d - b * c).is_zero() && (a * b.pow(p - 1) + d.pow(p)).is_zero() && (a.pow(p) + c.pow(p - 1) * d).is_zero();
}

struct PairOutcome {
    PairStatus status = PairStatus::not_solution;
    /// a, b, c, d when the pair reached the equations.
    std::optional<std::array<FieldElement, 4>> abcd;
};

inline PairOutcome ss5_check_pair(u32 p, const FieldElement& u, const FieldElement& v,
                                  PowerStrategy strategy = PowerStrategy::automatic, DvForm form = DvForm::homogeneous) {
    check_sweep_prime(p);
    if (u.field().characteristic() != p || v.field() != u.field()) throw std::invalid_argument("u and v must lie in one field of characteristic p");
    const Field& F = u.field();
    const FieldElement one = F.one();
    if (u == one || u == -one || v == one || v == -one) return {PairStatus::excluded_uv, std::nullopt};
    const Ss5Polys P = ss5_polys(u, v, form);
    if (poly::gcd(P.a_u, P.b_v).degree() > 0) return {PairStatus::excluded_gcd, std::nullopt};
    if (P.f.degree() < 5 || !poly::is_squarefree(P.f)) return {PairStatus::excluded_singular, std::nullopt};

    const std::size_t idx[] = {p - 1, 2 * p - 1, p - 2, 2 * p - 2};
    const u64 m = (p - 1) / 2;
    // A pair the recurrence cannot reach falls back to full expansion.
    if (strategy == PowerStrategy::recurrence && cartier::resolve_strategy(P.f, m, idx) != PowerStrategy::recurrence)
        strategy = PowerStrategy::naive;
    const auto c = cartier::power_coeffs(P.f, m, idx, strategy);
    std::array<FieldElement, 4> abcd{c.at(p - 1), c.at(2 * p - 1), c.at(p - 2), c.at(2 * p - 2)};
    const bool ok = ss5_equations(abcd[0], abcd[1], abcd[2], abcd[3]);
    return {ok ? PairStatus::solution : PairStatus::not_solution, abcd};
}

/// Genus-5 p-rank bookkeeping for one solution.
struct SolutionStory {
    std::size_t prank_e = 0;
    std::size_t prank_d = 0;
    std::size_t prank_f = 0;
    std::size_t prank_total = 0;
    bool superspecial = false;
    bool ok() const { return prank_e == 0 && prank_d == 0 && prank_total == 0; }
};

inline SolutionStory ss5_story(const FieldElement& u, const FieldElement& v, DvForm form = DvForm::homogeneous) {
    const Ss5Polys P = ss5_polys(u, v, form);
    covers::QuotientTriple t = covers::kani_rosen_triple(P.e_u, P.d_v);
    covers::attach_p_ranks(t);
    SolutionStory s;
    s.prank_e = (*t.p_ranks)[0];
    s.prank_d = (*t.p_ranks)[1];
    s.prank_f = (*t.p_ranks)[2];
    s.prank_total = *t.prank_total;
    s.superspecial = cartier::is_superspecial(HyperellipticModel(P.f));
    return s;
}

// ---------------------------------------------------------------------------
// Fast kernel over GF(p), p < 2^28.

namespace detail {

using Poly32 = std::vector<u64>;  // ascending coefficients, entries < p

inline void trim(Poly32& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly32 mul(const Poly32& a, const Poly32& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly32 r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

inline Poly32 add(Poly32 a, const Poly32& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
    trim(a);
    return a;
}

// Degree of gcd(a, b); both nonzero.
inline int gcd_degree(Poly32 a, Poly32 b, u32 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        const u64 inv = ff::inv_mod(static_cast<u32>(b.back()), p);
        while (a.size() >= b.size()) {
            const u64 t = a.back() * inv % p;
            const std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (p - t) * b[j]) % p;
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

inline Poly32 derivative(const Poly32& a, u64 p) {
    Poly32 r;
    for (std::size_t k = 1; k < a.size(); ++k) r.push_back(a[k] * (k % p) % p);
    trim(r);
    return r;
}

/// Per-thread scratch for the two recurrence blocks.
struct Kernel {
    u32 p;
    u64 m;
    std::vector<u64> inv;  // inv[k] = k^-1 mod p
    std::vector<u64> h;

    explicit Kernel(u32 prime) : p(prime), m((prime - 1) / 2), inv(prime, 0), h(prime, 0) {
        inv[1] = 1;
        for (u64 k = 2; k < p; ++k) inv[k] = (p - (p / k) * inv[p % k] % p) % p;
    }

    // h_0..h_last of g^m for a degree-6 g with g_0 != 0; returns h_{last-1}, h_last.
    std::pair<u64, u64> block(const std::array<u64, 7>& g, std::size_t last) {
        const u64 P = p;
        std::array<u64, 7> w{};  // (m+1) j g_j
        for (u64 j = 1; j <= 6; ++j) w[j] = (m + 1) % P * j % P * g[j] % P;
        const u64 g0inv = inv[g[0]];
        h[0] = ff::pow_mod(static_cast<u32>(g[0]), m, p);
        for (std::size_t k = 1; k <= last; ++k) {
            u64 s1 = 0, s2 = 0;
            const std::size_t jmax = std::min<std::size_t>(6, k);
            for (std::size_t j = 1; j <= jmax; ++j) {
                s1 += w[j] * h[k - j];
                s2 += g[j] * h[k - j];
            }
            s1 %= P;
            s2 %= P;
            const u64 num = (s1 + P - (k % P) * s2 % P) % P;
            h[k] = num * inv[k] % P * g0inv % P;
        }
        return {h[last - 1], h[last]};
    }
};

}  // namespace detail

/// Per-u and per-v polynomial data for the GF(p) kernel.
struct GridData {
    u32 p;
    DvForm form;
    std::vector<detail::Poly32> a;  // A_u
    std::vector<detail::Poly32> b;  // B_v

    GridData(u32 prime, DvForm f) : p(prime), form(f), a(prime), b(prime) {
        const u64 P = p;
        for (u64 u = 0; u < P; ++u) {
            const u64 c = (1 + u * u) % P;
            a[u] = {c, 4 * u % P, c};
            detail::trim(a[u]);
        }
        for (u64 v = 0; v < P; ++v) {
            const detail::Poly32 xv{v, 1}, vxo{1, v};
            const auto xv2 = detail::mul(xv, xv, P);
            const auto vxo2 = detail::mul(vxo, vxo, P);
            if (form == DvForm::homogeneous)
                b[v] = detail::add(detail::add(detail::mul(xv2, xv2, P), detail::mul(xv2, vxo2, P), P), detail::mul(vxo2, vxo2, P), P);
            else
                b[v] = detail::add(detail::add(detail::mul(xv2, xv2, P), xv2, P), detail::Poly32{1}, P);
        }
    }
};

/// Fast classification of (u, v) in GF(p)^2; abcd receives a, b, c, d when the equations are reached.
inline PairStatus ss5_check_pair_fast(const GridData& G, detail::Kernel& K, u32 u, u32 v, std::array<u64, 4>* abcd = nullptr) {
    const u64 P = G.p;
    if (u == 1 || u == P - 1 || v == 1 || v == P - 1) return PairStatus::excluded_uv;
    const auto& A = G.a[u];
    const auto& B = G.b[v];
    if (detail::gcd_degree(A, B, G.p) > 0) return PairStatus::excluded_gcd;
    const auto f = detail::mul(A, B, P);
    if (f.size() != 7 || f[0] == 0) {
        // Off the fast path: defer to the generic implementation.
        const Field F = Field::prime(G.p);
        const auto r = ss5_check_pair(G.p, F.element(u), F.element(v), PowerStrategy::naive, G.form);
        if (abcd && r.abcd)
            for (int i = 0; i < 4; ++i) (*abcd)[i] = (*r.abcd)[i].re();
        return r.status;
    }
    if (detail::gcd_degree(f, detail::derivative(f, P), G.p) > 0) return PairStatus::excluded_singular;

    std::array<u64, 7> g, rg;
    for (int i = 0; i < 7; ++i) {
        g[i] = f[i];
        rg[i] = f[6 - i];
    }
    // top = 3(p-1); c_{p-2}, c_{p-1} from below, c_{2p-1} = r_{p-2}, c_{2p-2} = r_{p-1} from above.
    const auto [c, a] = K.block(g, P - 1);
    const auto [b, d] = K.block(rg, P - 1);
    if (abcd) *abcd = {a, b, c, d};
    const u32 p = G.p;
    const u64 e1 = (a * d % P + P - b * c % P) % P;
    const u64 e2 = (a * ff::pow_mod(static_cast<u32>(b), P - 1, p) % P + ff::pow_mod(static_cast<u32>(d), P, p)) % P;
    const u64 e3 = (ff::pow_mod(static_cast<u32>(a), P, p) + ff::pow_mod(static_cast<u32>(c), P - 1, p) * d % P) % P;
    return e1 == 0 && e2 == 0 && e3 == 0 ? PairStatus::solution : PairStatus::not_solution;
}

// ---------------------------------------------------------------------------
// Sweep driver.

struct SweepConfig {
    u32 p = 11;
    SweepMode mode = SweepMode::first;
    unsigned threads = 1;
    /// u-rows per work unit.
    u32 chunk = 8;
    DvForm form = DvForm::homogeneous;
    /// Search (u, v) over GF(p^2) with the generic path instead of GF(p).
    bool extension = false;
    /// Run the genus-5 p-rank check on every reported solution.
    bool check_story = true;

    void validate() const {
        check_sweep_prime(p);
        if (threads < 1) throw std::invalid_argument("threads must be >= 1");
        if (chunk < 1) throw std::invalid_argument("chunk must be >= 1");
    }
};

struct SweepCounts {
    u64 tested = 0;
    u64 excluded_uv = 0;
    u64 excluded_gcd = 0;
    u64 excluded_singular = 0;

    u64 total() const { return tested + excluded_uv + excluded_gcd + excluded_singular; }
    void add(PairStatus s) {
        switch (s) {
            case PairStatus::excluded_uv: ++excluded_uv; break;
            case PairStatus::excluded_gcd: ++excluded_gcd; break;
            case PairStatus::excluded_singular: ++excluded_singular; break;
            default: ++tested; break;
        }
    }
    SweepCounts& operator+=(const SweepCounts& o) {
        tested += o.tested;
        excluded_uv += o.excluded_uv;
        excluded_gcd += o.excluded_gcd;
        excluded_singular += o.excluded_singular;
        return *this;
    }
    bool operator==(const SweepCounts&) const = default;
};

/// Solution coordinates as field-enumeration indices (re + p im).
struct Solution {
    u64 u = 0;
    u64 v = 0;
    auto operator<=>(const Solution&) const = default;
};

struct StorySummary {
    u64 checked = 0;
    /// E_u, D_v and the genus-5 total all of p-rank 0.
    u64 prank_zero = 0;
    /// w^2 = A_u B_v has zero Cartier-Manin matrix.
    u64 superspecial = 0;
    bool operator==(const StorySummary&) const = default;
};

struct SearchResult {
    u32 p = 0;
    SweepMode mode = SweepMode::first;
    DvForm form = DvForm::homogeneous;
    bool extension = false;
    std::vector<Solution> solutions;
    SweepCounts counts;
    StorySummary story;
    /// Grid size: p^2, or p^4 with the extension flag.
    u64 grid = 0;
    double elapsed_ms = 0;

    bool found() const { return !solutions.empty(); }
};

namespace detail {

struct ChunkResult {
    SweepCounts counts;
    std::vector<Solution> solutions;
};

}  // namespace detail

/// Deterministic sweep: the grid is split into chunks of u-rows. In first
/// mode a chunk stops at its first solution and chunks after the earliest
/// solved chunk are skipped, so the reported solution is the
/// lexicographically smallest and the counts cover exactly the pairs up to it.
inline SearchResult ss5_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const u32 p = cfg.p;
    const Field F = cfg.extension ? Field::quadratic(p) : Field::prime(p);
    const u64 n = F.order();

    std::optional<GridData> grid;
    if (!cfg.extension) grid.emplace(p, cfg.form);

    const u64 nchunks = (n + cfg.chunk - 1) / cfg.chunk;
    std::vector<detail::ChunkResult> chunks(nchunks);
    std::atomic<u64> next{0};
    std::atomic<u64> first_hit{std::numeric_limits<u64>::max()};

    auto worker = [&] {
        std::optional<detail::Kernel> K;
        if (!cfg.extension) K.emplace(p);
        while (true) {
            const u64 ci = next.fetch_add(1);
            if (ci >= nchunks) return;
            if (cfg.mode == SweepMode::first && ci > first_hit.load()) continue;
            auto& out = chunks[ci];
            const u64 u_end = std::min(n, (ci + 1) * cfg.chunk);
            bool stop = false;
            for (u64 u = ci * cfg.chunk; u < u_end && !stop; ++u) {
                if (cfg.mode == SweepMode::first && ci > first_hit.load()) break;
                for (u64 v = 0; v < n; ++v) {
                    PairStatus s;
                    if (cfg.extension)
                        s = ss5_check_pair(p, F.element_at(u), F.element_at(v), PowerStrategy::automatic, cfg.form).status;
                    else
                        s = ss5_check_pair_fast(*grid, *K, static_cast<u32>(u), static_cast<u32>(v));
                    out.counts.add(s);
                    if (s == PairStatus::solution) {
                        out.solutions.push_back({u, v});
                        if (cfg.mode == SweepMode::first) {
                            u64 cur = first_hit.load();
                            while (ci < cur && !first_hit.compare_exchange_weak(cur, ci)) {
                            }
                            stop = true;
                            break;
                        }
                    }
                }
            }
        }
    };

    const unsigned nt = std::max(1u, cfg.threads);
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SearchResult r;
    r.p = p;
    r.mode = cfg.mode;
    r.form = cfg.form;
    r.extension = cfg.extension;
    r.grid = n * n;
    const u64 last = cfg.mode == SweepMode::first ? std::min(first_hit.load(), nchunks - 1) : nchunks - 1;
    for (u64 ci = 0; ci <= last && ci < nchunks; ++ci) {
        r.counts += chunks[ci].counts;
        r.solutions.insert(r.solutions.end(), chunks[ci].solutions.begin(), chunks[ci].solutions.end());
    }
    std::sort(r.solutions.begin(), r.solutions.end());

    if (cfg.check_story) {
        for (const auto& s : r.solutions) {
            const SolutionStory st = ss5_story(F.element_at(s.u), F.element_at(s.v), cfg.form);
            ++r.story.checked;
            if (st.ok()) ++r.story.prank_zero;
            if (st.superspecial) ++r.story.superspecial;
        }
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ---------------------------------------------------------------------------
// Genus-2 superspecial enumeration.

/// Cap on q^5 + q^6 candidates.
inline constexpr u64 kEnumerationMaxCandidates = u64{1} << 24;

struct EnumerationResult {
    std::vector<DensePoly> models;
    u64 candidates = 0;
    u64 squarefree = 0;
};

/// Monic squarefree f over GF(q) of the requested degrees (5, 6) with zero Cartier-Manin matrix.
inline EnumerationResult superspecial_g2_enumeration(u32 p, u64 q, std::vector<int> degrees = {5, 6}) {
    if (!ff::is_prime(p) || p == 2) throw std::invalid_argument("p must be an odd prime");
    if (q != p && q != u64{p} * p) throw std::invalid_argument("q must be p or p^2");
    const Field F(p, q == p ? 1 : 2);
    u64 total = 0;
    for (int d : degrees) {
        if (d != 5 && d != 6) throw std::invalid_argument("genus-2 models have degree 5 or 6");
        u64 c = 1;
        for (int i = 0; i < d; ++i) c *= q;
        total += c;
    }
    if (total > kEnumerationMaxCandidates)
        throw std::invalid_argument("enumeration guard: " + std::to_string(total) + " candidates exceed " +
                                    std::to_string(kEnumerationMaxCandidates));

    EnumerationResult out;
    const u64 m = (p - 1) / 2;
    const std::size_t idx[] = {p - 1, 2 * p - 1, p - 2, 2 * p - 2};
    for (int d : degrees) {
        u64 count = 1;
        for (int i = 0; i < d; ++i) count *= q;
        std::vector<FieldElement> coeffs(static_cast<std::size_t>(d) + 1, F.zero());
        coeffs[static_cast<std::size_t>(d)] = F.one();
        for (u64 code = 0; code < count; ++code) {
            u64 c = code;
            for (int i = 0; i < d; ++i) {
                coeffs[static_cast<std::size_t>(i)] = F.element_at(c % q);
                c /= q;
            }
            ++out.candidates;
            const DensePoly f(F, coeffs);
            const auto cm = cartier::power_coeffs(f, m, idx, PowerStrategy::naive);
            bool zero = true;
            for (const auto& [k, val] : cm)
                if (!val.is_zero()) zero = false;
            if (!poly::is_squarefree(f)) continue;
            ++out.squarefree;
            if (zero) out.models.push_back(f);
        }
    }
    return out;
}

}  // namespace prank::search
