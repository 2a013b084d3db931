#pragma once

// Double covers built as normalized fiber products over P^1.
//
// For y^2 = f1(x) and z^2 = f2(x) the normalized fiber product D carries a
// (Z/2)^2 action whose three quotients are y^2 = f1, z^2 = f2 and w^2 = f3,
// with f3 the squarefree part of f1 f2. Up to isogeny Jac(D) is the product of
// the three Jacobians, so genus and p-rank are sums over the quotients.

#include <prank/cartier.hpp>
#include <prank/curves.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prank::covers {

using cartier::HyperellipticModel;
using ff::Field;
using ff::FieldElement;
using ff::u32;
using ff::u64;
using poly::DensePoly;

struct QuotientTriple {
    DensePoly f1;  // E, or the first cover
    DensePoly f2;  // D_2
    DensePoly f3;  // D_3: squarefree part of f1 f2, made monic
    std::array<int, 3> genera{};
    int genus_total = 0;
    std::optional<std::array<std::size_t, 3>> p_ranks;
    std::optional<std::size_t> prank_total;
};

/// p-rank of y^2 = f; rational components (deg f <= 2) contribute 0.
inline std::size_t component_p_rank(const DensePoly& f) {
    if (f.degree() <= 2) {
        if (f.degree() >= 1 && !poly::is_squarefree(f)) throw std::domain_error("singular component");
        return 0;
    }
    return cartier::p_rank(HyperellipticModel(f));
}

inline QuotientTriple kani_rosen_triple(const DensePoly& f1, const DensePoly& f2) {
    if (f1.field() != f2.field()) throw std::invalid_argument("fiber product factors live in different fields");
    if (f1.degree() < 3 || f2.degree() < 3) throw std::invalid_argument("fiber product factors need degree >= 3");
    if (!poly::is_squarefree(f1) || !poly::is_squarefree(f2)) throw std::domain_error("singular input: factor not squarefree");
    const DensePoly common = poly::gcd(f1, f2);
    const auto [q, r] = (f1 * f2).divmod(common * common);
    if (!r.is_zero()) throw std::logic_error("gcd^2 does not divide f1 f2");
    if (q.degree() < 1) throw std::invalid_argument("f1 f2 is a square: the fiber product is disconnected");
    QuotientTriple t{f1, f2, q.monic(), {}, 0, std::nullopt, std::nullopt};
    t.genera = {cartier::genus_of_degree(f1.degree()), cartier::genus_of_degree(f2.degree()),
                cartier::genus_of_degree(t.f3.degree())};
    t.genus_total = t.genera[0] + t.genera[1] + t.genera[2];
    return t;
}

/// Fills the per-component p-ranks and their sum.
inline QuotientTriple& attach_p_ranks(QuotientTriple& t) {
    std::array<std::size_t, 3> r{component_p_rank(t.f1), component_p_rank(t.f2), component_p_rank(t.f3)};
    t.p_ranks = r;
    t.prank_total = r[0] + r[1] + r[2];
    return t;
}

struct FiberProductRank {
    int genus = 0;
    std::size_t p_rank = 0;
};

inline FiberProductRank prank_fiber_product(const DensePoly& f1, const DensePoly& f2) {
    QuotientTriple t = kani_rosen_triple(f1, f2);
    attach_p_ranks(t);
    return {t.genus_total, *t.prank_total};
}

/// z^2 = x^n - t^n
inline HyperellipticModel family_xn_tn(int n, const FieldElement& t) {
    const Field& F = t.field();
    if (n < 3) throw std::invalid_argument("family x^n - t^n needs n >= 3");
    if (n % static_cast<int>(F.characteristic()) == 0) throw std::invalid_argument("p divides n");
    if (t.is_zero()) throw std::invalid_argument("t must be nonzero");
    return HyperellipticModel(DensePoly::monomial(F.one(), static_cast<std::size_t>(n)) - DensePoly::constant(t.pow(n)));
}

/// Elements {1 <= i <= g : 1 <= p i mod n <= g} with g = ceil(n/2) - 1; its
/// size is the rank of the Cartier-Manin matrix of z^2 = x^n - t^n.
inline std::vector<int> xn_rank_set(int n, u32 p) {
    const int g = cartier::genus_of_degree(n);
    std::vector<int> s;
    for (int i = 1; i <= g; ++i) {
        const int r = static_cast<int>((static_cast<u64>(p) * i) % n);
        if (r >= 1 && r <= g) s.push_back(i);
    }
    return s;
}

/// z -> (a z + b) / (c z + d)
struct Mobius {
    FieldElement a, b, c, d;

    std::optional<FieldElement> operator()(const FieldElement& z) const {
        const FieldElement den = c * z + d;
        if (den.is_zero()) return std::nullopt;
        return (a * z + b) / den;
    }
    Mobius compose(const Mobius& inner) const {
        return {a * inner.a + b * inner.c, a * inner.b + b * inner.d, c * inner.a + d * inner.c, c * inner.b + d * inner.d};
    }
};

/// The Mobius map sending (z0, z1, z2) to (0, 1, lambda).
inline Mobius mobius_to_0_1_lambda(const FieldElement& z0, const FieldElement& z1, const FieldElement& z2,
                                   const FieldElement& lambda) {
    // phi sends (z0, z1, z2) to (0, 1, inf); psi^-1(s) = lambda s / (s - 1 + lambda) sends (0, 1, inf) to (0, 1, lambda).
    const FieldElement one = lambda.field().one();
    const FieldElement zero = lambda.field().zero();
    const Mobius phi{z1 - z2, -(z0 * (z1 - z2)), z1 - z0, -(z2 * (z1 - z0))};
    const Mobius psi_inv{lambda, zero, one, lambda - one};
    const Mobius L = psi_inv.compose(phi);
    if ((L.a * L.d - L.b * L.c).is_zero()) throw std::domain_error("degenerate linear fractional transformation");
    return L;
}

/// First element of exact multiplicative order n in GF(p^2), if any.
inline std::optional<FieldElement> primitive_root_of_unity(const Field& F, u64 n) {
    if ((F.order() - 1) % n != 0) return std::nullopt;
    std::vector<u64> prime_factors;
    for (u64 m = n, q = 2; m > 1; ++q) {
        if (q * q > m) q = m;
        if (m % q == 0) {
            prime_factors.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    for (u64 i = 1; i < F.order(); ++i) {
        const FieldElement z = F.element_at(i);
        if (!z.pow(n).is_one()) continue;
        bool primitive = true;
        for (u64 q : prime_factors)
            if (z.pow(n / q).is_one()) primitive = false;
        if (primitive) return z;
    }
    return std::nullopt;
}

/// Branch points x_i = L(zeta^(i+2) t), i = 1..n, where zeta has order n+3 and L
/// sends (t, zeta t, zeta^2 t) to (0, 1, lambda). Results live in GF(p^2).
inline std::vector<FieldElement> mobius_branch_points(int n, const FieldElement& lambda_in, const FieldElement& t_in) {
    const u32 p = lambda_in.field().characteristic();
    const Field F = Field::quadratic(p);
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd and positive");
    const u32 N = static_cast<u32>(n + 3);
    if (p % N == 0) throw std::invalid_argument("p divides n + 3");
    if ((p + 1) % N != 0) throw std::invalid_argument("needs p = -1 mod n + 3");
    const FieldElement lambda = ff::embed(lambda_in, F);
    const FieldElement t = ff::embed(t_in, F);
    if (lambda.is_zero() || lambda.is_one()) throw std::invalid_argument("lambda must avoid 0 and 1");
    if (t.is_zero()) throw std::invalid_argument("t must be nonzero");

    const auto zeta = primitive_root_of_unity(F, N);
    if (!zeta) throw std::domain_error("no primitive root of unity of order n + 3 in GF(p^2)");
    const Mobius L = mobius_to_0_1_lambda(t, *zeta * t, *zeta * *zeta * t, lambda);

    std::vector<FieldElement> xs;
    for (int i = 1; i <= n; ++i) {
        const auto x = L(zeta->pow(static_cast<u64>(i + 2)) * t);
        if (!x) throw std::domain_error("L sends zeta^" + std::to_string(i + 2) + " t to infinity; choose another lambda or t");
        if (x->is_zero() || x->is_one() || *x == lambda) throw std::domain_error("branch point collides with 0, 1 or lambda");
        for (const auto& y : xs)
            if (y == *x) throw std::domain_error("branch points are not distinct");
        xs.push_back(*x);
    }
    return xs;
}

/// E: y^2 = x(x-1)(x-lambda) against D_2: z^2 = prod (x - x_i) from mobius_branch_points.
inline QuotientTriple mobius_family_triple(int n, const FieldElement& lambda, const FieldElement& t) {
    if (n < 3) throw std::invalid_argument("needs n >= 3 for a curve D_2 of degree >= 3");
    const auto xs = mobius_branch_points(n, lambda, t);
    const Field F = xs.front().field();
    const curves::LegendreCurve E(ff::embed(lambda, F));
    return kani_rosen_triple(E.rhs(), DensePoly::from_roots(F, xs));
}

/// E: y^2 = x(x-1)(x-lambda) against D_2: z^2 = x^n - t^n.
inline QuotientTriple xn_family_triple(int n, const FieldElement& lambda, const FieldElement& t) {
    const curves::LegendreCurve E(lambda);
    return kani_rosen_triple(E.rhs(), family_xn_tn(n, t).f());
}

struct CyclicCoverModels {
    DensePoly d1;  // z^2 = x(x^(n-1) - 1)
    DensePoly d2;  // w^2 = (x - lambda)(x^(n-2) + ... + 1)
    int g1 = 0;
    int g2 = 0;
    /// 1 + g1 + g2
    int genus_total = 0;
};

inline bool cyclic_cover_hypothesis(int n, u32 p) {
    const u32 m = 2 * static_cast<u32>(n - 1);
    return n >= 2 && p % m != 0 && m % p != 0 && p % m != 1 % m && p % m != static_cast<u32>(n - 2) % m;
}

inline CyclicCoverModels cyclic_cover_models(int n, const FieldElement& lambda) {
    const Field& F = lambda.field();
    const u32 p = F.characteristic();
    if (n < 2) throw std::invalid_argument("needs n >= 2");
    if (!cyclic_cover_hypothesis(n, p))
        throw std::invalid_argument("hypothesis fails: need p not dividing 2(n-1) and p != 1, n-2 mod 2(n-1)");
    if (lambda.is_zero() || lambda.is_one()) throw std::invalid_argument("lambda must avoid 0 and 1");
    if (lambda.pow(static_cast<u64>(n - 1)).is_one()) throw std::invalid_argument("lambda is an (n-1)-th root of unity");

    const DensePoly x = DensePoly::x(F);
    const DensePoly d1 = x * (DensePoly::monomial(F.one(), static_cast<std::size_t>(n - 1)) - DensePoly::constant(F.one()));
    std::vector<FieldElement> ones(static_cast<std::size_t>(n - 1), F.one());
    const DensePoly d2 = DensePoly::linear_root(lambda) * DensePoly(F, ones);
    CyclicCoverModels out{d1, d2, cartier::genus_of_degree(d1.degree()), cartier::genus_of_degree(d2.degree())};
    out.genus_total = 1 + out.g1 + out.g2;
    return out;
}

/// The three supersingular quartics over GF(9) (i = w, w^2 = -1):
///   E:   x^4 + x^3 + x
///   D_2: x^4 + 2i x^3 + i x
/// with D_3 = x^4 + (i+2) x^3 + (2i+2) x + 1 recovered as the squarefree part of the product.
inline QuotientTriple char3_genus3_witness() {
    const Field F = Field::quadratic(3);
    const FieldElement i = F.w();
    const FieldElement z = F.zero(), one = F.one();
    const DensePoly e(F, {z, one, z, one, one});
    const DensePoly d2(F, {z, i, z, F.from_int(2) * i, one});
    QuotientTriple t = kani_rosen_triple(e, d2);
    attach_p_ranks(t);
    return t;
}

/// Fiber product of the Legendre curves of the first two supersingular lambdas.
inline QuotientTriple genus2_supersingular_pair(u32 p) {
    if (p <= 3) throw std::invalid_argument("needs characteristic p > 3");
    const auto lambdas = curves::supersingular_lambdas(p);
    if (lambdas.size() < 2) throw std::logic_error("fewer than two supersingular lambdas");
    QuotientTriple t = kani_rosen_triple(curves::LegendreCurve(lambdas[0]).rhs(), curves::LegendreCurve(lambdas[1]).rhs());
    attach_p_ranks(t);
    return t;
}

}  // namespace prank::covers
