#include <prank/strata.hpp>

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace prank::strata;

TEST(StratumDim, Examples) {
    EXPECT_EQ(stratum_dim({2, 0, 0, Space::B_Eg}), 0);
    EXPECT_EQ(stratum_dim({2, 1, 1, Space::B_Eg}), 0);
    EXPECT_EQ(stratum_dim({4, 2, 0, Space::B_Eg}), 4);
    EXPECT_THROW(stratum_dim({3, 5, 1, Space::B_Eg}), std::out_of_range);
    EXPECT_THROW(stratum_dim({3, 0, 1, Space::B_Eg}), std::out_of_range);
    EXPECT_THROW(stratum_dim({1, 0, 0, Space::B_Eg}), std::invalid_argument);
    EXPECT_THROW(stratum_dim({3, 1, 2, Space::B_Eg}), std::invalid_argument);
}

// window endpoints and monotonicity; the top stratum fills the space
TEST(StratumDim, Invariants) {
    for (int g = 2; g <= 12; ++g) {
        for (int fE : {0, 1}) {
            const Window w = stratum_window({g, 0, fE, Space::B_Eg});
            EXPECT_EQ(w.lo, fE);
            EXPECT_EQ(w.hi, g - 1 + fE);
            EXPECT_EQ(stratum_dim({g, w.hi, fE, Space::B_Eg}), space_dim(Space::B_Eg, g));
            for (int f = w.lo + 1; f <= w.hi; ++f)
                EXPECT_EQ(stratum_dim({g, f, fE, Space::B_Eg}) - stratum_dim({g, f - 1, fE, Space::B_Eg}), 1);
        }
        EXPECT_EQ(stratum_dim({g, g, 0, Space::B_g}), space_dim(Space::B_g, g));
        EXPECT_EQ(stratum_dim({g, g, 0, Space::H_g}), space_dim(Space::H_g, g));
        for (int f = 0; f <= g; ++f) {
            EXPECT_EQ(stratum_dim({g, f, 0, Space::B_g}), g - 2 + f);
            EXPECT_EQ(stratum_dim({g, f, 0, Space::H_g}), g - 1 + f);
            // codimension of V_f is g - f in each space
            EXPECT_EQ(space_dim(Space::H_g, g) - stratum_dim({g, f, 0, Space::H_g}), g - f);
        }
    }
}

TEST(Boundary, Genus2And4) {
    const auto b2 = boundary_components(2);
    ASSERT_EQ(b2.size(), 1u);
    EXPECT_EQ(b2[0].label(), "Xi_{1,0}");
    ASSERT_EQ(b2[0].parts.size(), 2u);
    EXPECT_EQ(b2[0].parts[0].label(), "delta_{1,0}");
    EXPECT_EQ(b2[0].parts[1].label(), "xi_{1,0}");

    std::vector<std::string> labels;
    for (const auto& c : boundary_components(4)) labels.push_back(c.label());
    EXPECT_EQ(labels, (std::vector<std::string>{"Xi_{1,2}", "Xi_{2,1}", "Xi_{3,0}", "Delta_{2,2}", "Delta_{3,1}"}));

    for (const auto& c : boundary_components(3)) {
        if (c.kind == Kind::Delta && c.g1 == 2) {
            for (int f = 0; f <= 2; ++f) EXPECT_EQ(c.vf_dim(f, 0), 3 - 3 + f);
        }
    }
}

TEST(Boundary, IndexRangesAndDimensions) {
    for (int g = 2; g <= 8; ++g) {
        const auto comps = boundary_components(g);
        EXPECT_EQ(comps.size(), static_cast<std::size_t>((g - 1) + (g - 2)));
        std::set<std::pair<int, int>> xi, delta;
        for (const auto& c : comps) {
            EXPECT_EQ(c.dim, 2 * g - 4);
            if (c.kind == Kind::Xi) {
                EXPECT_EQ(c.g1 + c.g2, g - 1);
                xi.insert({c.g1, c.g2});
            } else {
                EXPECT_EQ(c.kind, Kind::Delta);
                EXPECT_EQ(c.g1 + c.g2, g);
                EXPECT_GE(c.g1, 2);
                delta.insert({c.g1, c.g2});
            }
            // V_f of a pure component: codimension one in the boundary at the top p-rank
            for (int fE : {0, 1})
                if (c.parts.empty()) {
                    const auto w = c.vf_window(fE);
                    EXPECT_EQ(c.vf_dim(w.hi, fE), c.dim);
                } else {
                    EXPECT_THROW(c.vf_dim(1, fE), std::invalid_argument);
                    for (const auto& part : c.parts) EXPECT_EQ(part.vf_dim(part.vf_window(fE).hi, fE), c.dim);
                }
        }
        EXPECT_EQ(xi.size(), static_cast<std::size_t>(g - 1));
        EXPECT_EQ(delta.size(), static_cast<std::size_t>(g - 2));
    }
}

TEST(Boundary, SplitWindows) {
    for (int g = 2; g <= 8; ++g) {
        const auto comps = boundary_components(g);
        const auto& c = comps[0];
        const auto& d = c.parts[0];
        const auto& x = c.parts[1];
        for (int fE : {0, 1}) {
            EXPECT_EQ(d.vf_window(fE).lo, 2 * fE);
            EXPECT_EQ(d.vf_window(fE).hi, g - 2 + 2 * fE);
            EXPECT_EQ(x.vf_window(fE).lo, fE + 1);
            EXPECT_EQ(x.vf_window(fE).hi, g - 1 + fE);
            for (int f = d.vf_window(fE).lo; f <= d.vf_window(fE).hi; ++f) EXPECT_EQ(d.vf_dim(f, fE), g - 2 + f - 2 * fE);
            for (int f = x.vf_window(fE).lo; f <= x.vf_window(fE).hi; ++f) EXPECT_EQ(x.vf_dim(f, fE), g - 3 + f - fE);
            EXPECT_THROW(d.vf_dim(d.vf_window(fE).hi + 1, fE), std::out_of_range);
        }
    }
}

TEST(Boundary, Containment) {
    const auto c4 = boundary_components(4);
    EXPECT_EQ(c4[0].parts[0].contained_in, (std::vector<std::string>{"Delta_1", "Delta_2"}));
    EXPECT_EQ(c4[0].parts[1].contained_in, (std::vector<std::string>{"Delta_0"}));
    const auto c6 = boundary_components(6);
    std::map<std::string, std::vector<std::string>> in;
    for (const auto& c : c6) in[c.label()] = c.contained_in;
    EXPECT_EQ(in["Xi_{2,3}"], (std::vector<std::string>{"Delta_0"}));
    EXPECT_EQ(in["Delta_{5,1}"], (std::vector<std::string>{"Delta_1"}));
    EXPECT_EQ(in["Delta_{2,4}"], (std::vector<std::string>{"Delta_2"}));
    EXPECT_EQ(in["Delta_{4,2}"], (std::vector<std::string>{"Delta_2"}));
    EXPECT_EQ(in["Delta_{3,3}"], (std::vector<std::string>{"Delta_3"}));
    EXPECT_EQ(boundary_components(6)[0].parts[0].contained_in, (std::vector<std::string>{"Delta_1"}));
}

TEST(SmoothCover, Existence) {
    EXPECT_FALSE(smooth_cover_exists(3, 2, 0, 0));
    EXPECT_TRUE(smooth_cover_exists(3, 3, 0, 0));
    EXPECT_TRUE(smooth_cover_exists(5, 2, 0, 0));
    for (unsigned p : {3u, 5u, 7u, 11u})
        for (int g = 2; g <= 8; ++g)
            for (int f = -1; f <= g + 1; ++f) {
                EXPECT_EQ(smooth_cover_exists(p, g, f, 1), f >= 1 && f <= g);
                const bool want0 = f >= 0 && f <= g - 1 && !(p == 3 && g == 2 && f == 0);
                EXPECT_EQ(smooth_cover_exists(p, g, f, 0), want0);
            }
    EXPECT_THROW(smooth_cover_exists(9, 3, 0, 0), std::invalid_argument);
}

TEST(NewtonPolygons, SlopesAreSymmetricAndSumToG) {
    for (const auto& t : newton_polygon_tables()) {
        for (const auto& np : t.polygons) {
            std::vector<double> s;
            std::string body = np.substr(1, np.size() - 2);
            std::size_t pos = 0;
            while (pos < body.size()) {
                auto comma = body.find(',', pos);
                const std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                const auto slash = tok.find('/');
                s.push_back(std::stod(tok.substr(0, slash)) / std::stod(tok.substr(slash + 1)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            ASSERT_EQ(s.size(), static_cast<std::size_t>(2 * t.g)) << np;
            double sum = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                sum += s[i];
                EXPECT_NEAR(s[i] + s[s.size() - 1 - i], 1.0, 1e-12) << np;
                if (i) {
                    EXPECT_LE(s[i - 1], s[i]);
                }
                EXPECT_GT(s[i], 0.0);  // p-rank 0: no slope-0 segment
            }
            EXPECT_NEAR(sum, t.g, 1e-12);
        }
    }
}

TEST(Space, Parse) {
    EXPECT_EQ(parse_space("B_Eg"), Space::B_Eg);
    EXPECT_EQ(parse_space("Hg"), Space::H_g);
    EXPECT_THROW(parse_space("M_g"), std::invalid_argument);
}
