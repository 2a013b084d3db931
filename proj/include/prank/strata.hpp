#pragma once

// Integer dimension formulas for p-rank strata of bielliptic and
// hyperelliptic moduli, and the combinatorics of the boundary of the space
// of double covers of a fixed elliptic curve E.

#include <prank/ff.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prank::strata {

/// B_Eg: double covers of a fixed E; B_g: all bielliptic curves; H_g: hyperelliptic curves.
enum class Space { B_Eg, B_g, H_g };

inline std::string_view to_string(Space s) {
    switch (s) {
        case Space::B_Eg: return "B_Eg";
        case Space::B_g: return "B_g";
        case Space::H_g: return "H_g";
    }
    return "?";
}

inline Space parse_space(std::string_view s) {
    if (s == "B_Eg" || s == "BEg") return Space::B_Eg;
    if (s == "B_g" || s == "Bg") return Space::B_g;
    if (s == "H_g" || s == "Hg") return Space::H_g;
    throw std::invalid_argument("unknown space '" + std::string(s) + "' (B_Eg, B_g, H_g)");
}

struct StratumQuery {
    int g = 2;
    int f = 0;
    int f_E = 0;
    Space space = Space::B_Eg;
};

struct Window {
    int lo = 0;
    int hi = 0;
    bool contains(int f) const { return lo <= f && f <= hi; }
};

inline void check_genus(int g) {
    if (g < 2) throw std::invalid_argument("genus must be >= 2, got " + std::to_string(g));
}
inline void check_fE(int f_E) {
    if (f_E != 0 && f_E != 1) throw std::invalid_argument("f_E must be 0 or 1, got " + std::to_string(f_E));
}

inline Window stratum_window(const StratumQuery& q) {
    check_genus(q.g);
    if (q.space == Space::B_Eg) {
        check_fE(q.f_E);
        return {q.f_E, q.g - 1 + q.f_E};
    }
    return {0, q.g};
}

inline int stratum_dim(const StratumQuery& q) {
    const Window w = stratum_window(q);
    if (!w.contains(q.f))
        throw std::out_of_range("p-rank f = " + std::to_string(q.f) + " outside window " + std::to_string(w.lo) + ".." +
                                std::to_string(w.hi) + " for " + std::string(to_string(q.space)) + " at g = " + std::to_string(q.g));
    switch (q.space) {
        case Space::B_Eg: return q.g - 2 + q.f - q.f_E;
        case Space::B_g: return q.g - 2 + q.f;
        case Space::H_g: return q.g - 1 + q.f;
    }
    return 0;
}

/// Dimension of the ambient space.
inline int space_dim(Space s, int g) {
    check_genus(g);
    switch (s) {
        case Space::B_Eg: return 2 * g - 3;
        case Space::B_g: return 2 * g - 2;
        case Space::H_g: return 2 * g - 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Boundary of the compactified B_Eg.

/// Xi: unramified node; Delta: ramified node. The g1 = 1 case of Xi splits into
/// the compact-type delta_{1,g-2} and the non-compact-type xi_{1,g-2}.
enum class Kind { Xi, Delta, delta_ct, xi_nct };

inline std::string_view to_string(Kind k) {
    switch (k) {
        case Kind::Xi: return "Xi";
        case Kind::Delta: return "Delta";
        case Kind::delta_ct: return "delta";
        case Kind::xi_nct: return "xi";
    }
    return "?";
}

struct BoundaryComponent {
    Kind kind = Kind::Xi;
    int g = 2;
    int g1 = 1;
    int g2 = 0;
    /// 2g - 4
    int dim = 0;
    /// Boundary divisors Delta_i of the compactified M_g containing the image.
    std::vector<std::string> contained_in;
    /// Only for Xi_{1,g-2}: its delta and xi parts.
    std::vector<BoundaryComponent> parts;

    std::string label() const { return std::string(to_string(kind)) + "_{" + std::to_string(g1) + "," + std::to_string(g2) + "}"; }

    /// Admissible p-ranks f for V_f of this component.
    Window vf_window(int f_E) const {
        check_fE(f_E);
        switch (kind) {
            case Kind::delta_ct: return {2 * f_E, g - 2 + 2 * f_E};
            case Kind::xi_nct: return {f_E + 1, g - 1 + f_E};
            default: return {f_E, g - 1 + f_E};
        }
    }

    /// dim V_f of this component. Xi_{1,g-2} is not pure and has no single formula.
    int vf_dim(int f, int f_E) const {
        if (kind == Kind::Xi && g1 == 1) throw std::invalid_argument(label() + " splits; query delta or xi");
        const Window w = vf_window(f_E);
        if (!w.contains(f))
            throw std::out_of_range("p-rank f = " + std::to_string(f) + " outside window " + std::to_string(w.lo) + ".." +
                                    std::to_string(w.hi) + " for " + label());
        if (kind == Kind::delta_ct) return g - 2 + f - 2 * f_E;
        return g - 3 + f - f_E;
    }
};

inline std::string delta_label(int i) { return "Delta_" + std::to_string(i); }

/// Xi_{g1,g-1-g1} for g1 = 1..g-1, then Delta_{g1,g-g1} for g1 = 2..g-1.
inline std::vector<BoundaryComponent> boundary_components(int g) {
    check_genus(g);
    std::vector<BoundaryComponent> out;
    const int dim = 2 * g - 4;
    for (int g1 = 1; g1 <= g - 1; ++g1) {
        BoundaryComponent c{Kind::Xi, g, g1, g - 1 - g1, dim, {}, {}};
        if (g1 == 1) {
            BoundaryComponent d{Kind::delta_ct, g, 1, g - 2, dim, {delta_label(1)}, {}};
            if (g == 4) d.contained_in.push_back(delta_label(2));
            BoundaryComponent x{Kind::xi_nct, g, 1, g - 2, dim, {delta_label(0)}, {}};
            c.parts = {d, x};
        } else {
            c.contained_in = {delta_label(0)};
        }
        out.push_back(std::move(c));
    }
    for (int g1 = 2; g1 <= g - 1; ++g1) {
        BoundaryComponent c{Kind::Delta, g, g1, g - g1, dim, {}, {}};
        c.contained_in = {delta_label(g1 == g - 1 ? 1 : std::min(g1, g - g1))};
        out.push_back(std::move(c));
    }
    return out;
}

/// A smooth double cover of E of genus g and p-rank f exists (f_E the p-rank of E).
inline bool smooth_cover_exists(ff::u32 p, int g, int f, int f_E) {
    if (!ff::is_prime(p) || p == 2) throw std::invalid_argument("p must be an odd prime");
    check_genus(g);
    check_fE(f_E);
    if (f_E == 1) return 1 <= f && f <= g;
    return 0 <= f && f <= g - 1 && !(p == 3 && g == 2 && f == 0);
}

// ---------------------------------------------------------------------------
// Newton polygons of p-rank-0 double covers of a supersingular E, as slope lists.

struct NewtonPolygonTable {
    int g;
    std::vector<std::string> polygons;
};

inline const std::vector<NewtonPolygonTable>& newton_polygon_tables() {
    static const std::vector<NewtonPolygonTable> tables{
        {3, {"(1/2,1/2,1/2,1/2,1/2,1/2)"}},
        {4, {"(1/3,1/3,1/3,1/2,1/2,2/3,2/3,2/3)", "(1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2)"}},
        {5,
         {"(1/4,1/4,1/4,1/4,1/2,1/2,3/4,3/4,3/4,3/4)", "(1/3,1/3,1/3,1/2,1/2,1/2,1/2,2/3,2/3,2/3)",
          "(1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2)"}},
    };
    return tables;
}

}  // namespace prank::strata
