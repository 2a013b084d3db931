#pragma once

// Dense univariate polynomials over GF(p) or GF(p^2).

#include <prank/ff.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prank::poly {

using ff::Field;
using ff::FieldElement;
using ff::i64;
using ff::u32;
using ff::u64;

/// Upper bound on the number of coefficients any single polynomial may hold.
inline constexpr std::size_t kMaxCoefficients = std::size_t{1} << 24;

/// Coefficients in ascending degree, trailing zeros trimmed; the zero
/// polynomial has no coefficients and degree -1.
class DensePoly {
public:
    explicit DensePoly(const Field& field) : field_(field) {}
    DensePoly(const Field& field, std::vector<FieldElement> coeffs) : field_(field), c_(std::move(coeffs)) {
        for (const auto& e : c_)
            if (e.field() != field_) throw std::invalid_argument("coefficient field mismatch");
        trim();
    }

    static DensePoly from_ints(const Field& F, std::span<const i64> coeffs) {
        std::vector<FieldElement> v;
        v.reserve(coeffs.size());
        for (i64 c : coeffs) v.push_back(F.from_int(c));
        return DensePoly(F, std::move(v));
    }
    static DensePoly from_ints(const Field& F, std::initializer_list<i64> coeffs) {
        return from_ints(F, std::span<const i64>(coeffs.begin(), coeffs.size()));
    }
    static DensePoly constant(const FieldElement& c) { return DensePoly(c.field(), {c}); }
    static DensePoly monomial(const FieldElement& c, std::size_t k) {
        if (k >= kMaxCoefficients) throw std::length_error("polynomial degree too large");
        std::vector<FieldElement> v(k + 1, c.field().zero());
        v[k] = c;
        return DensePoly(c.field(), std::move(v));
    }
    static DensePoly x(const Field& F) { return monomial(F.one(), 1); }
    /// x - r
    static DensePoly linear_root(const FieldElement& r) { return DensePoly(r.field(), {-r, r.field().one()}); }
    static DensePoly from_roots(const Field& F, std::span<const FieldElement> roots) {
        DensePoly out = constant(F.one());
        for (const auto& r : roots) out = out * linear_root(r);
        return out;
    }
    static DensePoly from_roots(const Field& F, const std::vector<FieldElement>& roots) {
        return from_roots(F, std::span<const FieldElement>(roots));
    }
    /// Comma-separated coefficients, constant term first: "1,0,-2,w".
    static DensePoly parse(const Field& F, std::string_view text) {
        std::vector<FieldElement> v;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = text.find(',', start);
            const std::string_view tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            v.push_back(F.parse(tok));
            if (v.size() > kMaxCoefficients) throw std::length_error("too many coefficients");
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return DensePoly(F, std::move(v));
    }

    const Field& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::span<const FieldElement> coeffs() const { return c_; }
    FieldElement coeff(std::size_t k) const { return k < c_.size() ? c_[k] : field_.zero(); }
    FieldElement leading() const {
        if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
        return c_.back();
    }

    DensePoly operator+(const DensePoly& o) const {
        check(o);
        std::vector<FieldElement> v(std::max(c_.size(), o.c_.size()), field_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
        return DensePoly(field_, std::move(v));
    }
    DensePoly operator-() const {
        std::vector<FieldElement> v;
        v.reserve(c_.size());
        for (const auto& e : c_) v.push_back(-e);
        return DensePoly(field_, std::move(v));
    }
    DensePoly operator-(const DensePoly& o) const { return *this + (-o); }
    DensePoly operator*(const FieldElement& s) const {
        std::vector<FieldElement> v;
        v.reserve(c_.size());
        for (const auto& e : c_) v.push_back(e * s);
        return DensePoly(field_, std::move(v));
    }

    DensePoly operator*(const DensePoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return DensePoly(field_);
        const std::size_t n = c_.size() + o.c_.size() - 1;
        if (n > kMaxCoefficients) throw std::length_error("polynomial product too large");
        const u32 p = field_.characteristic();
        if (field_.degree() == 1) {
            // Accumulate in 64 bits and reduce only when the next term could overflow.
            const u64 limit = ~u64{0} - u64{p - 1} * (p - 1);
            std::vector<u64> acc(n, 0);
            for (std::size_t i = 0; i < c_.size(); ++i) {
                const u64 a = c_[i].re();
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.c_.size(); ++j) {
                    u64& t = acc[i + j];
                    t += a * o.c_[j].re();
                    if (t > limit) t %= p;
                }
            }
            std::vector<FieldElement> v;
            v.reserve(n);
            for (u64 t : acc) v.push_back(field_.element(static_cast<u32>(t % p)));
            return DensePoly(field_, std::move(v));
        }
        std::vector<FieldElement> v(n, field_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
        }
        return DensePoly(field_, std::move(v));
    }

    std::pair<DensePoly, DensePoly> divmod(const DensePoly& d) const {
        check(d);
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        if (degree() < d.degree()) return {DensePoly(field_), *this};
        std::vector<FieldElement> r = c_;
        std::vector<FieldElement> q(c_.size() - d.c_.size() + 1, field_.zero());
        const FieldElement inv = d.leading().inverse();
        const std::size_t dd = d.c_.size() - 1;
        for (std::size_t k = q.size(); k-- > 0;) {
            const FieldElement t = r[k + dd] * inv;
            q[k] = t;
            if (t.is_zero()) continue;
            for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= t * d.c_[j];
        }
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(dd), r.end());
        return {DensePoly(field_, std::move(q)), DensePoly(field_, std::move(r))};
    }
    DensePoly operator%(const DensePoly& d) const { return divmod(d).second; }

    DensePoly derivative() const {
        std::vector<FieldElement> v;
        for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * field_.from_int(static_cast<i64>(k)));
        return DensePoly(field_, std::move(v));
    }
    DensePoly monic() const {
        if (is_zero()) return *this;
        return *this * leading().inverse();
    }

    /// f(a); a may lie in an extension of the coefficient field.
    FieldElement eval(const FieldElement& a) const {
        FieldElement acc = a.field().zero();
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * a + ff::embed(c_[k], a.field());
        return acc;
    }

    /// f(x + s)
    DensePoly shift(const FieldElement& s) const {
        const DensePoly xs(field_, {s, field_.one()});
        DensePoly acc(field_);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * xs + constant(c_[k]);
        return acc;
    }

    /// x^deg f(1/x)
    DensePoly reversed() const {
        std::vector<FieldElement> v(c_.rbegin(), c_.rend());
        return DensePoly(field_, std::move(v));
    }

    DensePoly embed(const Field& target) const {
        std::vector<FieldElement> v;
        v.reserve(c_.size());
        for (const auto& e : c_) v.push_back(ff::embed(e, target));
        return DensePoly(target, std::move(v));
    }

    bool operator==(const DensePoly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const DensePoly& o) const { return !(*this == o); }

    /// Comma-separated coefficients, constant term first; "0" for the zero polynomial.
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += c_[i].to_string();
        }
        return s;
    }

private:
    void check(const DensePoly& o) const {
        if (field_ != o.field_) throw std::invalid_argument("polynomial field mismatch");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Field field_;
    std::vector<FieldElement> c_;
};

inline DensePoly pow_naive(const DensePoly& f, u64 m) {
    DensePoly r = DensePoly::constant(f.field().one());
    DensePoly b = f;
    while (m) {
        if (m & 1) r = r * b;
        m >>= 1;
        if (m) b = b * b;
    }
    return r;
}

/// Monic gcd.
inline DensePoly gcd(DensePoly a, DensePoly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        DensePoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// gcd(f, f') = 1. A polynomial with f' = 0 is a p-th power and never squarefree.
inline bool is_squarefree(const DensePoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("squarefree test needs a nonconstant polynomial");
    const DensePoly d = f.derivative();
    if (d.is_zero()) return false;
    return gcd(f, d).degree() == 0;
}

}  // namespace prank::poly
