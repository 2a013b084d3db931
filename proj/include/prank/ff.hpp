#pragma once

// Exact arithmetic in GF(p) and GF(p^2) for odd primes p < 2^31.
//
// GF(p^2) is represented as GF(p)[w]/(w^2 - nu). When p = 3 mod 4 the
// modulus is w^2 + 1 (nu = -1); otherwise nu is the smallest quadratic
// non-residue mod p. The choice is deterministic, so every printed element
// is reproducible across runs and machines.

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prank::ff {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u32 kMaxCharacteristic = 0x7fffffffu;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline u32 mul_mod(u32 a, u32 b, u32 p) { return static_cast<u32>(static_cast<u64>(a) * b % p); }
inline u32 add_mod(u32 a, u32 b, u32 p) {
    u64 s = static_cast<u64>(a) + b;
    return static_cast<u32>(s >= p ? s - p : s);
}
inline u32 sub_mod(u32 a, u32 b, u32 p) { return a >= b ? a - b : static_cast<u32>(static_cast<u64>(a) + p - b); }

inline u32 pow_mod(u32 a, u64 e, u32 p) {
    u64 r = 1 % p, x = a % p;
    while (e) {
        if (e & 1) r = r * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return static_cast<u32>(r);
}

// Extended Euclid; a must be nonzero mod p.
inline u32 inv_mod(u32 a, u32 p) {
    i64 t = 0, nt = 1, r = p, nr = a % p;
    if (nr == 0) throw std::domain_error("division by zero in GF(" + std::to_string(p) + ")");
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<u32>(t);
}

inline u32 reduce_signed(i64 v, u32 p) {
    i64 r = v % static_cast<i64>(p);
    return static_cast<u32>(r < 0 ? r + p : r);
}

class FieldElement;

/// Field context: GF(p) (degree 1) or GF(p^2) (degree 2). Small value type,
/// freely copyable and never mutated after construction.
class Field {
public:
    Field(u32 p, int ext_degree) : p_(p), degree_(ext_degree) {
        if (p > kMaxCharacteristic) throw std::invalid_argument("characteristic exceeds 2^31");
        if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
        if (ext_degree != 1 && ext_degree != 2)
            throw std::invalid_argument("unsupported extension degree " + std::to_string(ext_degree));
        if (ext_degree == 2) {
            if (p % 4 == 3) {
                nonresidue_ = p - 1;
            } else {
                for (u32 c = 2; c < p; ++c) {
                    if (pow_mod(c, (p - 1) / 2, p) == p - 1) {
                        nonresidue_ = c;
                        break;
                    }
                }
            }
        }
    }

    static Field prime(u32 p) { return Field(p, 1); }
    static Field quadratic(u32 p) { return Field(p, 2); }

    u32 characteristic() const { return p_; }
    int degree() const { return degree_; }
    /// nu with w^2 = nu; 0 for a prime field.
    u32 nonresidue() const { return nonresidue_; }
    u64 order() const { return degree_ == 1 ? u64{p_} : u64{p_} * p_; }

    /// Modulus polynomial of the quadratic extension, e.g. "x^2+1".
    std::string modulus_string() const {
        if (degree_ == 1) return "";
        if (nonresidue_ == p_ - 1) return "x^2+1";
        return "x^2-" + std::to_string(nonresidue_);
    }

    std::string name() const {
        return degree_ == 1 ? "GF(" + std::to_string(p_) + ")" : "GF(" + std::to_string(p_) + "^2)";
    }

    bool operator==(const Field& o) const { return p_ == o.p_ && degree_ == o.degree_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    inline FieldElement zero() const;
    inline FieldElement one() const;
    inline FieldElement from_int(i64 v) const;
    inline FieldElement element(u32 re, u32 im = 0) const;
    /// The adjoined root w of the quadratic modulus.
    inline FieldElement w() const;
    /// Element with index re + p*im; enumerates the field in a fixed order.
    inline FieldElement element_at(u64 index) const;
    inline std::vector<FieldElement> elements() const;
    inline FieldElement parse(std::string_view text) const;

private:
    u32 p_;
    int degree_;
    u32 nonresidue_ = 0;
};

class FieldElement {
public:
    FieldElement(const Field& field, u32 re, u32 im = 0)
        : field_(field), re_(re % field.characteristic()), im_(im % field.characteristic()) {
        if (field.degree() == 1 && im_ != 0) throw std::invalid_argument("prime-field element with nonzero w-coordinate");
    }

    const Field& field() const { return field_; }
    u32 re() const { return re_; }
    u32 im() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool in_prime_field() const { return im_ == 0; }
    /// Index in the field's enumeration order.
    u64 index() const { return re_ + u64{field_.characteristic()} * im_; }

    FieldElement operator+(const FieldElement& o) const {
        check(o);
        const u32 p = p_();
        return raw(add_mod(re_, o.re_, p), add_mod(im_, o.im_, p));
    }
    FieldElement operator-(const FieldElement& o) const {
        check(o);
        const u32 p = p_();
        return raw(sub_mod(re_, o.re_, p), sub_mod(im_, o.im_, p));
    }
    FieldElement operator-() const {
        const u32 p = p_();
        return raw(re_ ? p - re_ : 0, im_ ? p - im_ : 0);
    }
    FieldElement operator*(const FieldElement& o) const {
        check(o);
        const u32 p = p_();
        if (field_.degree() == 1) return raw(mul_mod(re_, o.re_, p), 0);
        // (a + b w)(c + d w) = (ac + nu bd) + (ad + bc) w
        u32 ac = mul_mod(re_, o.re_, p);
        u32 bd = mul_mod(im_, o.im_, p);
        u32 ad = mul_mod(re_, o.im_, p);
        u32 bc = mul_mod(im_, o.re_, p);
        return raw(add_mod(ac, mul_mod(bd, field_.nonresidue(), p), p), add_mod(ad, bc, p));
    }
    FieldElement operator/(const FieldElement& o) const {
        check(o);
        return *this * o.inverse();
    }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    FieldElement inverse() const {
        const u32 p = p_();
        if (is_zero()) throw std::domain_error("division by zero in " + field_.name());
        if (field_.degree() == 1) return raw(inv_mod(re_, p), 0);
        // (a + b w)^-1 = (a - b w) / (a^2 - nu b^2); the norm is nonzero since nu is a non-residue.
        u32 norm = sub_mod(mul_mod(re_, re_, p), mul_mod(field_.nonresidue(), mul_mod(im_, im_, p), p), p);
        u32 ni = inv_mod(norm, p);
        return raw(mul_mod(re_, ni, p), mul_mod(im_ ? p - im_ : 0, ni, p));
    }

    FieldElement pow(u64 e) const {
        FieldElement r = field_.one(), x = *this;
        while (e) {
            if (e & 1) r *= x;
            x *= x;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const FieldElement& o) const { return field_ == o.field_ && re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// Decimal for GF(p); "a+b*w" for GF(p^2).
    std::string to_string() const {
        if (field_.degree() == 1) return std::to_string(re_);
        return std::to_string(re_) + "+" + std::to_string(im_) + "*w";
    }

private:
    u32 p_() const { return field_.characteristic(); }
    FieldElement raw(u32 re, u32 im) const {
        FieldElement r(*this);
        r.re_ = re;
        r.im_ = im;
        return r;
    }
    void check(const FieldElement& o) const {
        if (field_ != o.field_)
            throw std::invalid_argument("field mismatch: " + field_.name() + " vs " + o.field_.name());
    }

    Field field_;
    u32 re_;
    u32 im_;
};

inline FieldElement Field::zero() const { return FieldElement(*this, 0, 0); }
inline FieldElement Field::one() const { return FieldElement(*this, 1, 0); }
inline FieldElement Field::from_int(i64 v) const { return FieldElement(*this, reduce_signed(v, p_), 0); }
inline FieldElement Field::element(u32 re, u32 im) const { return FieldElement(*this, re, im); }
inline FieldElement Field::w() const {
    if (degree_ != 2) throw std::invalid_argument("w exists only in GF(p^2)");
    return FieldElement(*this, 0, 1);
}
inline FieldElement Field::element_at(u64 index) const {
    if (index >= order()) throw std::out_of_range("field element index out of range");
    return FieldElement(*this, static_cast<u32>(index % p_), static_cast<u32>(index / p_));
}
inline std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> out;
    out.reserve(order());
    for (u64 i = 0; i < order(); ++i) out.push_back(element_at(i));
    return out;
}

// Accepts "17", "-1", "3+2*w", "2*w", "w", "4-w", with optional spaces.
inline FieldElement Field::parse(std::string_view text) const {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty field element");
    i64 re = 0, im = 0;
    std::size_t pos = 0;
    bool any = false;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (any) {
            throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
        }
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        i64 coeff = 1;
        bool has_digits = pos > start;
        if (has_digits) {
            if (pos - start > 12) throw std::invalid_argument("field element literal too long");
            coeff = std::stoll(s.substr(start, pos - start));
        }
        bool is_w = false;
        if (pos < s.size() && s[pos] == '*') {
            if (!has_digits) throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
            ++pos;
            if (pos >= s.size() || s[pos] != 'w') throw std::invalid_argument("expected 'w' in '" + std::string(text) + "'");
            is_w = true;
            ++pos;
        } else if (pos < s.size() && s[pos] == 'w') {
            if (has_digits) throw std::invalid_argument("use k*w, not kw, in '" + std::string(text) + "'");
            is_w = true;
            ++pos;
        } else if (!has_digits) {
            throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
        }
        if (is_w) {
            if (degree_ != 2) throw std::invalid_argument("'w' is only defined in GF(p^2)");
            im += sign * coeff;
        } else {
            re += sign * coeff;
        }
        any = true;
    }
    return FieldElement(*this, reduce_signed(re, p_), reduce_signed(im, p_));
}

/// a^p. Identity on GF(p); conjugation a + b w -> a - b w on GF(p^2).
inline FieldElement frobenius(const FieldElement& a) {
    if (a.field().degree() == 1) return a;
    return a.field().element(a.re(), a.im() ? a.field().characteristic() - a.im() : 0);
}

/// a^(p^k).
inline FieldElement frobenius_power(const FieldElement& a, unsigned k) {
    if (a.field().degree() == 1 || k % 2 == 0) return a;
    return frobenius(a);
}

/// Quadratic character in the element's own field: 0, +1 or -1.
inline int legendre(const FieldElement& a) {
    if (a.is_zero()) return 0;
    FieldElement r = a.pow((a.field().order() - 1) / 2);
    return r.is_one() ? 1 : -1;
}

/// Lifts a GF(p) element into a field of the same characteristic.
inline FieldElement embed(const FieldElement& a, const Field& target) {
    if (a.field() == target) return a;
    if (a.field().characteristic() != target.characteristic() || target.degree() < a.field().degree())
        throw std::invalid_argument("cannot embed " + a.field().name() + " into " + target.name());
    return target.element(a.re(), a.im());
}

}  // namespace prank::ff
