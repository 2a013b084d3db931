#pragma once

// Elliptic curves: Legendre models, the Hasse invariant and supersingular lambdas.

#include <prank/cartier.hpp>

#include <array>
#include <stdexcept>
#include <vector>

namespace prank::curves {

using cartier::HyperellipticModel;
using ff::Field;
using ff::FieldElement;
using poly::DensePoly;

/// y^2 = x(x - 1)(x - lambda), lambda not in {0, 1}.
class LegendreCurve {
public:
    explicit LegendreCurve(const FieldElement& lambda) : lambda_(lambda) {
        if (lambda.is_zero() || lambda.is_one()) throw std::invalid_argument("Legendre parameter must avoid 0 and 1");
    }

    const FieldElement& lambda() const { return lambda_; }
    const Field& field() const { return lambda_.field(); }

    DensePoly rhs() const {
        const Field& F = field();
        const std::array<FieldElement, 3> roots{F.zero(), F.one(), lambda_};
        return DensePoly::from_roots(F, roots);
    }
    HyperellipticModel model() const { return HyperellipticModel(rhs()); }

private:
    FieldElement lambda_;
};

/// Coefficient of x^(p-1) in f^((p-1)/2) for a cubic or quartic f.
inline FieldElement hasse_invariant(const DensePoly& f) {
    const ff::u32 p = f.field().characteristic();
    const std::size_t idx[] = {p - 1};
    return cartier::power_coeffs(f, (p - 1) / 2, idx).at(p - 1);
}

inline FieldElement hasse_invariant(const LegendreCurve& E) { return hasse_invariant(E.rhs()); }

/// All lambda in GF(p^2) \ {0, 1} with vanishing Hasse invariant, in field enumeration order.
inline std::vector<FieldElement> supersingular_lambdas(ff::u32 p) {
    const Field F = Field::quadratic(p);
    std::vector<FieldElement> out;
    for (ff::u64 i = 0; i < F.order(); ++i) {
        const FieldElement lambda = F.element_at(i);
        if (lambda.is_zero() || lambda.is_one()) continue;
        if (hasse_invariant(LegendreCurve(lambda)).is_zero()) out.push_back(lambda);
    }
    return out;
}

/// In characteristic 3, y^2 = x^4 + a x^3 + b x^2 + c x + d has Hasse invariant b.
inline FieldElement quartic_hasse_char3(const DensePoly& f) {
    if (f.field().characteristic() != 3) throw std::invalid_argument("quartic criterion needs characteristic 3");
    if (f.degree() != 4) throw std::invalid_argument("quartic criterion needs deg f = 4");
    if (!poly::is_squarefree(f)) throw std::domain_error("singular model: f is not squarefree");
    return f.coeff(2);
}

}  // namespace prank::curves
