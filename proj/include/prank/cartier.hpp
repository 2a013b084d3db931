#pragma once

// Cartier-Manin matrices of hyperelliptic models y^2 = f(x) and the p-rank.
//
// With c_k the coefficients of f^((p-1)/2), the matrix is M[i][j] = c_{pj-i}
// for 1 <= i, j <= g. The p-rank is the rank of the semilinear iterate
// M^(sigma^(g-1)) ... M^(sigma) M, where sigma raises entries to the p-th power.

#include <prank/ff.hpp>
#include <prank/matrix.hpp>
#include <prank/poly.hpp>

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prank::cartier {

using ff::Field;
using ff::FieldElement;
using ff::u32;
using ff::u64;
using poly::DensePoly;

/// ceil(deg/2) - 1
inline int genus_of_degree(int deg) { return deg < 1 ? 0 : (deg + 1) / 2 - 1; }

/// A curve y^2 = f(x) with f squarefree of degree >= 3.
class HyperellipticModel {
public:
    explicit HyperellipticModel(DensePoly f) : f_(std::move(f)) {
        if (f_.degree() < 3) throw std::invalid_argument("hyperelliptic model needs deg f >= 3, got " + std::to_string(f_.degree()));
        if (!poly::is_squarefree(f_)) throw std::domain_error("singular model: f is not squarefree");
        genus_ = genus_of_degree(f_.degree());
    }

    const DensePoly& f() const { return f_; }
    const Field& field() const { return f_.field(); }
    u32 characteristic() const { return f_.field().characteristic(); }
    int genus() const { return genus_; }

private:
    DensePoly f_;
    int genus_;
};

enum class PowerStrategy { naive, recurrence, automatic };

inline std::string_view to_string(PowerStrategy s) {
    switch (s) {
        case PowerStrategy::naive: return "naive";
        case PowerStrategy::recurrence: return "recurrence";
        case PowerStrategy::automatic: return "auto";
    }
    return "?";
}

/// Thrown when the recurrence path is requested for an index it cannot reach.
class RecurrenceUnavailable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// h = f^m satisfies f h' = m f' h, hence for 0 < k < p
//   k f_0 h_k = sum_{j=1}^{deg f} ((m+1) j - k) f_j h_{k-j},   h_0 = f_0^m.
// Returns h_0 .. h_last. Requires f_0 != 0 and last < p.
inline std::vector<FieldElement> forward_block(const DensePoly& f, u64 m, std::size_t last) {
    const Field& F = f.field();
    const u32 p = F.characteristic();
    const FieldElement f0_inv = f.coeff(0).inverse();
    const std::size_t d = static_cast<std::size_t>(f.degree());
    const u64 m1 = (m + 1) % p;
    std::vector<FieldElement> h;
    h.reserve(last + 1);
    h.push_back(f.coeff(0).pow(m));
    for (std::size_t k = 1; k <= last; ++k) {
        FieldElement s = F.zero();
        const std::size_t jmax = std::min(d, k);
        for (std::size_t j = 1; j <= jmax; ++j) {
            const FieldElement& fj = f.coeff(j);
            if (fj.is_zero()) continue;
            const u32 w = ff::sub_mod(static_cast<u32>(m1 * j % p), static_cast<u32>(k % p), p);
            s += fj * h[k - j] * F.element(w);
        }
        h.push_back(s * F.element(ff::inv_mod(static_cast<u32>(k), p)) * f0_inv);
    }
    return h;
}

}  // namespace detail

/// Index k of f^m is reachable by the recurrence from the bottom (k < p, f(0) != 0)
/// or from the top (m deg f - k < p).
inline bool recurrence_reachable(const DensePoly& f, u64 m, std::size_t k) {
    const u64 p = f.field().characteristic();
    const u64 top = m * static_cast<u64>(f.degree());
    if (k > top) return false;
    return (k < p && !f.coeff(0).is_zero()) || (top - k < p);
}

/// What `automatic` resolves to for this request.
inline PowerStrategy resolve_strategy(const DensePoly& f, u64 m, std::span<const std::size_t> indices) {
    if (f.is_zero() || m == 0) return PowerStrategy::naive;
    for (auto k : indices)
        if (!recurrence_reachable(f, m, k)) return PowerStrategy::naive;
    return PowerStrategy::recurrence;
}

/// Selected coefficients of f^m.
inline std::map<std::size_t, FieldElement> power_coeffs(const DensePoly& f, u64 m, std::span<const std::size_t> indices,
                                                        PowerStrategy strategy = PowerStrategy::automatic) {
    const Field& F = f.field();
    if (f.is_zero() && m > 0) throw std::invalid_argument("power_coeffs of the zero polynomial");
    const u64 top = m * static_cast<u64>(std::max(f.degree(), 0));
    for (auto k : indices)
        if (k > top) throw std::out_of_range("index " + std::to_string(k) + " exceeds deg f^m = " + std::to_string(top));

    if (strategy == PowerStrategy::automatic) strategy = resolve_strategy(f, m, indices);
    std::map<std::size_t, FieldElement> out;

    if (strategy == PowerStrategy::naive || m == 0) {
        const DensePoly h = poly::pow_naive(f, m);
        for (auto k : indices) out.emplace(k, h.coeff(k));
        return out;
    }

    const u64 p = F.characteristic();
    const bool bottom_ok = !f.coeff(0).is_zero();
    std::size_t need_low = 0, need_high = 0;
    bool any_low = false, any_high = false;
    for (auto k : indices) {
        if (bottom_ok && k < p) {
            any_low = true;
            need_low = std::max(need_low, k);
        } else if (top - k < p) {
            any_high = true;
            need_high = std::max<std::size_t>(need_high, top - k);
        } else {
            throw RecurrenceUnavailable("index " + std::to_string(k) + " of f^" + std::to_string(m) +
                                        " is not reachable by the recurrence");
        }
    }
    std::vector<FieldElement> low, high;
    if (any_low) low = detail::forward_block(f, m, need_low);
    if (any_high) high = detail::forward_block(f.reversed(), m, need_high);
    for (auto k : indices) {
        if (bottom_ok && k < p)
            out.emplace(k, low[k]);
        else
            out.emplace(k, high[top - k]);
    }
    return out;
}

struct CartierData {
    Matrix matrix;
    Matrix iterate;
    u32 p = 0;
    int genus = 0;
    std::size_t p_rank = 0;
    PowerStrategy strategy = PowerStrategy::naive;
};

/// Indices pj - i (1 <= i, j <= g) that lie inside [0, m deg f].
inline std::vector<std::size_t> cartier_indices(u32 p, int genus, int deg) {
    const long long top = static_cast<long long>((p - 1) / 2) * deg;
    std::vector<std::size_t> idx;
    for (int i = 1; i <= genus; ++i)
        for (int j = 1; j <= genus; ++j) {
            long long k = static_cast<long long>(p) * j - i;
            if (k >= 0 && k <= top) idx.push_back(static_cast<std::size_t>(k));
        }
    return idx;
}

inline CartierData cartier_matrix(const HyperellipticModel& C, PowerStrategy strategy = PowerStrategy::automatic) {
    const Field& F = C.field();
    const u32 p = F.characteristic();
    const int g = C.genus();
    const u64 m = (p - 1) / 2;
    const auto indices = cartier_indices(p, g, C.f().degree());
    if (strategy == PowerStrategy::automatic) strategy = resolve_strategy(C.f(), m, indices);
    const auto c = power_coeffs(C.f(), m, indices, strategy);

    Matrix M(F, g, g);
    for (int i = 1; i <= g; ++i)
        for (int j = 1; j <= g; ++j) {
            long long k = static_cast<long long>(p) * j - i;
            if (k < 0) continue;
            auto it = c.find(static_cast<std::size_t>(k));
            if (it != c.end()) M.at(i - 1, j - 1) = it->second;
        }

    Matrix iterate = M;
    for (int k = 1; k < g; ++k) iterate = M.frobenius_twist(static_cast<unsigned>(k)) * iterate;
    const std::size_t r = iterate.rank();
    return CartierData{std::move(M), std::move(iterate), p, g, r, strategy};
}

/// Rank of the semilinear iterate. When f(0) = 0 blocks the fast path, the
/// model is first translated by the smallest s with f(s) != 0; the matrix
/// changes under translation, its stable rank does not.
inline std::size_t p_rank(const HyperellipticModel& C) {
    const u64 m = (C.characteristic() - 1) / 2;
    const auto indices = cartier_indices(C.characteristic(), C.genus(), C.f().degree());
    if (C.f().coeff(0).is_zero() && resolve_strategy(C.f(), m, indices) == PowerStrategy::naive) {
        const Field& F = C.field();
        for (u64 i = 1; i < F.order(); ++i) {
            const FieldElement s = F.element_at(i);
            if (C.f().eval(s).is_zero()) continue;
            const DensePoly shifted = C.f().shift(s);
            if (resolve_strategy(shifted, m, indices) == PowerStrategy::recurrence)
                return cartier_matrix(HyperellipticModel(shifted), PowerStrategy::recurrence).p_rank;
            break;
        }
    }
    return cartier_matrix(C).p_rank;
}

/// Cartier-Manin matrix identically zero.
inline bool is_superspecial(const HyperellipticModel& C) { return cartier_matrix(C).matrix.is_zero(); }

}  // namespace prank::cartier
