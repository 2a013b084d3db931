#pragma once

// Independent p-rank oracle: count points of y^2 = f over GF(p^k) for
// k = 1..g, rebuild the L-polynomial with Newton's identities and read off
// deg(L mod p). Uses its own small extension-field arithmetic and shares
// nothing with the Cartier-Manin path except the input polynomial.

#include <prank/cartier.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace prank::cartier {

namespace detail {

// GF(p^k) = GF(p)[t]/(t^k + a_{k-1} t^{k-1} + ... + a_0), k <= 3.
class SmallExtension {
public:
    using Elem = std::array<std::uint64_t, 3>;

    SmallExtension(std::uint32_t p, int k) : p_(p), k_(k) {
        if (k < 1 || k > 3) throw std::invalid_argument("oracle extension degree must be 1..3");
        if (k == 1) return;
        // A monic quadratic or cubic without roots in GF(p) is irreducible.
        for (std::uint64_t a0 = 1; a0 < p; ++a0)
            for (std::uint64_t a1 = 0; a1 < p; ++a1) {
                std::array<std::uint64_t, 3> c{a0, a1, 0};
                bool root = false;
                for (std::uint64_t x = 0; x < p && !root; ++x) {
                    std::uint64_t v = 1;  // x^k
                    for (int i = 0; i < k; ++i) v = v * x % p;
                    std::uint64_t xi = 1;
                    for (int i = 0; i < k; ++i) {
                        v = (v + c[i] * xi) % p;
                        xi = xi * x % p;
                    }
                    root = v == 0;
                }
                if (!root) {
                    mod_ = c;
                    return;
                }
            }
        throw std::logic_error("no irreducible polynomial found");
    }

    std::uint64_t size() const {
        std::uint64_t q = 1;
        for (int i = 0; i < k_; ++i) q *= p_;
        return q;
    }

    Elem from_index(std::uint64_t idx) const {
        Elem e{0, 0, 0};
        for (int i = 0; i < k_; ++i) {
            e[i] = idx % p_;
            idx /= p_;
        }
        return e;
    }
    Elem scalar(std::uint64_t c) const { return {c % p_, 0, 0}; }

    Elem add(const Elem& a, const Elem& b) const {
        return {(a[0] + b[0]) % p_, (a[1] + b[1]) % p_, (a[2] + b[2]) % p_};
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::array<std::uint64_t, 5> prod{0, 0, 0, 0, 0};
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        // t^k = -(a_0 + a_1 t + ... )
        for (int d = 2 * k_ - 2; d >= k_; --d) {
            std::uint64_t c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (int i = 0; i < k_; ++i) prod[d - k_ + i] = (prod[d - k_ + i] + (p_ - c) * mod_[i]) % p_;
        }
        return {prod[0], prod[1], prod[2]};
    }

    Elem pow(Elem x, std::uint64_t e) const {
        Elem r = scalar(1);
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    bool is_zero(const Elem& a) const { return a[0] == 0 && a[1] == 0 && a[2] == 0; }
    bool is_one(const Elem& a) const { return a[0] == 1 && a[1] == 0 && a[2] == 0; }

    /// Quadratic character: 0, 1, -1.
    int chi(const Elem& a) const {
        if (is_zero(a)) return 0;
        return is_one(pow(a, (size() - 1) / 2)) ? 1 : -1;
    }

private:
    std::uint32_t p_;
    int k_;
    std::array<std::uint64_t, 3> mod_{0, 0, 0};
};

}  // namespace detail

inline constexpr int kOracleMaxGenus = 3;
inline constexpr std::uint32_t kOracleMaxPrime = 31;

/// #C(GF(p^k)) for the smooth model of y^2 = f, with f over GF(p).
inline std::int64_t count_points(const HyperellipticModel& C, int k) {
    const std::uint32_t p = C.characteristic();
    if (C.field().degree() != 1) throw std::invalid_argument("point-count oracle needs a prime base field");
    detail::SmallExtension K(p, k);
    std::vector<std::uint64_t> coeffs;
    for (const auto& c : C.f().coeffs()) coeffs.push_back(c.re());

    std::int64_t n = 0;
    const std::uint64_t q = K.size();
    for (std::uint64_t i = 0; i < q; ++i) {
        const auto x = K.from_index(i);
        auto v = K.scalar(0);
        for (std::size_t d = coeffs.size(); d-- > 0;) v = K.add(K.mul(v, x), K.scalar(coeffs[d]));
        n += 1 + K.chi(v);
    }
    if (C.f().degree() % 2 == 1)
        n += 1;
    else
        n += 1 + K.chi(K.scalar(C.f().leading().re()));
    return n;
}

/// Coefficients a_0 = 1, a_1, ..., a_g of L(T) = prod (1 - alpha_i T).
inline std::vector<std::int64_t> l_polynomial_head(const HyperellipticModel& C) {
    const int g = C.genus();
    const std::int64_t p = C.characteristic();
    std::vector<std::int64_t> s(g + 1, 0), a(g + 1, 0);
    std::int64_t pk = 1;
    for (int k = 1; k <= g; ++k) {
        pk *= p;
        s[k] = pk + 1 - count_points(C, k);
    }
    a[0] = 1;
    for (int k = 1; k <= g; ++k) {
        std::int64_t acc = 0;
        for (int j = 1; j <= k; ++j) acc += s[j] * a[k - j];
        if (acc % k != 0) throw std::logic_error("Newton identity produced a non-integer coefficient");
        a[k] = -acc / k;
    }
    return a;
}

/// p-rank as deg(L mod p). Guarded to genus <= 3, p <= 31, base field GF(p).
inline int prank_oracle(const HyperellipticModel& C) {
    if (C.genus() > kOracleMaxGenus || C.characteristic() > kOracleMaxPrime)
        throw std::invalid_argument("oracle guard: needs genus <= 3 and p <= 31");
    if (C.field().degree() != 1) throw std::invalid_argument("oracle guard: base field must be GF(p)");
    const auto a = l_polynomial_head(C);
    const std::int64_t p = C.characteristic();
    for (int k = C.genus(); k >= 1; --k)
        if (((a[k] % p) + p) % p != 0) return k;
    return 0;
}

}  // namespace prank::cartier
