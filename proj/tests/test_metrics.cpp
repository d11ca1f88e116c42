/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#include <gtest/gtest.h>

#include "support.hpp"

namespace mphx {
namespace {

using testing::Rng;

// Small instances of every family sized for exhaustive oracles.
const std::vector<std::string>& small_specs() {
    static const std::vector<std::string> specs{
        "ft3:k=4",
        "ft3:k=8",
        "mpft2:n=2,r=8,nics=32,switch_gbps=6400",
        "mpft2:n=1,r=8,nics=16,switch_gbps=12800",
        "dfly:p=2,a=4,h=2,g=9",
        "dfly:p=1,a=2,h=1,g=3",
        "dfly:p=3,a=1,h=2,g=3",
        "dfly:p=2,a=3,h=1,g=1",
        "dflyplus:leaves=2,spines=1,npl=1,g=2,up=1,global=1",
        "dflyplus:leaves=4,spines=4,npl=4,g=5,up=1,global=2",
        "dflyplus:leaves=3,spines=2,npl=2,g=1,up=1,global=0",
        "mphx:n=1,p=5,dims=5x5",
        "mphx:n=1,p=4,dims=4x4x4",
        "mphx:n=1,p=6,dims=6",
        "mphx:n=2,p=3,dims=3x2",
        "mphx:n=4,p=2,dims=3x3,links=4x2",
        "mphx:n=8,p=1,dims=2",
        "mphx:n=1,p=1,dims=1",
        "mphx:n=1,p=3,dims=1x4",
    };
    return specs;
}

// Counts ----------------------------------------------------------------------

TEST(Counts, RealizedMatchesAnalyticOnParityCleanGraphs) {
    for (const auto& spec : small_specs()) {
        const auto params = parse_spec(spec);
        EXPECT_EQ(tally(build(params)), analytic_counts(params)) << spec;
    }
    Rng rng(21);
    int checked = 0;
    while (checked < 120) {
        const auto params = testing::random_mphx(rng, 400);
        const auto topo = build(params);
        if (topo.report().link_shortfall != 0 || !topo.report().port_deficits.empty()) {
            continue;
        }
        ++checked;
        EXPECT_EQ(tally(topo), analytic_counts(params)) << format_spec(params);
    }
}

TEST(Counts, ShortfallAccountsForTheDifference) {
    // Odd line sums leave one port per odd line unused.
    const auto params = parse_spec("mphx:n=2,p=2,dims=2x9,links=1x13");
    const auto topo = build(params);
    const auto realized = tally(topo);
    const auto analytic = analytic_counts(params);
    ASSERT_GT(topo.report().link_shortfall, 0);
    EXPECT_EQ(analytic.total_optical_modules() - realized.total_optical_modules(), 2 * topo.report().link_shortfall);
    EXPECT_EQ(realized.nic_count, analytic.nic_count);
    EXPECT_EQ(realized.switch_count, analytic.switch_count);
}

TEST(Counts, OddFabricSumIsRejected) {
    // Three switches with one link each cannot be paired up.
    EXPECT_THROW(analytic_counts(parse_spec("mphx:n=1,p=1,dims=3,links=3")), InfeasibleError);
}

TEST(Counts, CopperAccessLinks) {
    const auto params = parse_spec("mphx:n=2,p=2,dims=3");
    const auto c = analytic_counts(params, Medium::copper);
    EXPECT_EQ(c.total_copper_links(), 12);
    EXPECT_EQ(c.total_optical_modules(), 2 * 6);
    EXPECT_EQ(tally(build(params), Medium::copper), c);
    EXPECT_EQ(tally(build(params, BuildOptions{Medium::copper, Medium::optical})), c);
}

TEST(Counts, FullScaleDragonflies) {
    const auto dfly = tally(build(parse_spec("dfly:p=16,a=32,h=16,g=128")));
    EXPECT_EQ(dfly.total_links(), 161792);
    EXPECT_EQ(dfly.total_optical_modules(), 323584);
    const auto plus = tally(build(parse_spec("dflyplus:leaves=16,spines=16,npl=32,g=128,up=2,global=32")));
    EXPECT_EQ(plus.total_links(), 163840);
    EXPECT_EQ(plus.total_optical_modules(), 327680);
}

TEST(Counts, FatTreeClosedForms) {
    const auto c = analytic_counts(parse_spec("ft3:k=4"));
    EXPECT_EQ(c.nic_count, 16);
    EXPECT_EQ(c.switch_count, 20);
    EXPECT_EQ(c.total_links(), 48);
    const auto big = analytic_counts(parse_spec("ft3:k=64"));
    EXPECT_EQ(big.total_optical_modules(), 2 * 3 * 65536);
}

// Diameter --------------------------------------------------------------------

TEST(Diameter, MatchesOracleAndClosedForm) {
    for (const auto& spec : small_specs()) {
        const auto params = parse_spec(spec);
        const auto topo = build(params);
        const int oracle = testing::oracle_diameter(topo);
        EXPECT_EQ(diameter_switch_hops(topo), oracle) << spec;
        EXPECT_EQ(diameter_switch_hops(topo, DiameterOptions{true}), oracle) << spec;
        EXPECT_EQ(analytic_diameter(params), oracle) << spec;
    }
}

TEST(Diameter, RandomMphxEqualsNonTrivialDimensionCount) {
    Rng rng(8);
    for (int i = 0; i < 40; ++i) {
        const auto params = testing::random_mphx(rng, 120);
        const auto topo = build(params);
        const auto& m = std::get<MphxParams>(params.family);
        const int nontrivial = static_cast<int>(std::count_if(m.dims.begin(), m.dims.end(), [](int d) { return d > 1; }));
        EXPECT_EQ(diameter_switch_hops(topo), nontrivial) << format_spec(params);
        EXPECT_EQ(analytic_diameter(params), nontrivial);
    }
}

TEST(Diameter, AsymmetricPlanesUseTheBestPlane) {
    // Two planes over 3 NICs: plane 0 is a path s0-s1-s2, plane 1 a triangle.
    const auto params = parse_spec("mphx:n=2,p=1,dims=3");
    std::vector<Node> nodes;
    for (NodeId j = 0; j < 3; ++j) {
        nodes.push_back({j, NodeKind::nic, -1, {}});
    }
    for (int q = 0; q < 2; ++q) {
        for (int c = 0; c < 3; ++c) {
            nodes.push_back({static_cast<NodeId>(nodes.size()), NodeKind::switch_node, q, {c}});
        }
    }
    const Rate r{800};
    std::vector<Link> links;
    for (NodeId j = 0; j < 3; ++j) {
        links.push_back({j, 3 + j, r, 1, Medium::optical});
        links.push_back({j, 6 + j, r, 1, Medium::optical});
    }
    links.push_back({3, 4, r, 1, Medium::optical});
    links.push_back({4, 5, r, 1, Medium::optical});
    const Topology path_only(params, 2, nodes, links);
    EXPECT_FALSE(planes_symmetric(path_only));
    EXPECT_THROW(diameter_switch_hops(path_only), InfeasibleError);  // plane 1 disconnected

    links.push_back({6, 7, r, 1, Medium::optical});
    links.push_back({7, 8, r, 1, Medium::optical});
    links.push_back({6, 8, r, 1, Medium::optical});
    const Topology mixed(params, 2, nodes, links);
    EXPECT_FALSE(planes_symmetric(mixed));
    EXPECT_EQ(diameter_switch_hops(mixed), 1);
    EXPECT_EQ(testing::oracle_diameter(mixed), 1);
}

TEST(Diameter, ClosedFormsForDegenerateShapes) {
    EXPECT_EQ(analytic_diameter(parse_spec("mphx:n=1,p=1,dims=1")), 0);
    EXPECT_EQ(analytic_diameter(parse_spec("mphx:n=1,p=2,dims=1x1x5")), 1);
    EXPECT_EQ(analytic_diameter(parse_spec("dfly:p=2,a=1,h=2,g=3")), 1);
    EXPECT_EQ(analytic_diameter(parse_spec("dfly:p=2,a=1,h=1,g=1")), 0);
    EXPECT_EQ(analytic_diameter(parse_spec("dflyplus:leaves=1,spines=1,npl=2,g=1,up=1,global=0")), 0);
}

// Bisection -----------------------------------------------------------------

TEST(Bisection, TwoSwitchMesh) {
    const auto params = parse_spec("mphx:n=1,p=2,dims=2");
    EXPECT_EQ(bisection_estimate(params), Rational(1, 2));
    EXPECT_EQ(bisection_bruteforce(build(params)), Rational(1, 2));
}

TEST(Bisection, OneDimensionalClosedForm) {
    // Even D, N/2 NICs per side: (D/2)^2 links of B against N/2 = pD/2 NICs.
    for (int d : {2, 4, 6, 8}) {
        for (int p : {1, 2}) {
            if (p * d > 16) {
                continue;
            }
            const auto params = parse_spec("mphx:n=1,p=" + std::to_string(p) + ",dims=" + std::to_string(d));
            const Rational formula = Rational((d / 2) * (d / 2), 1) / Rational(p * d, 2);
            const auto expected = std::min(formula, Rational(1));
            EXPECT_EQ(bisection_estimate(params), expected) << p << " " << d;
            EXPECT_EQ(bisection_bruteforce(build(params)), expected) << p << " " << d;
        }
    }
}

TEST(Bisection, SingleSwitchIsUnbounded) {
    EXPECT_FALSE(bisection_estimate(parse_spec("mphx:n=1,p=4,dims=1")).has_value());
    EXPECT_FALSE(bisection_bruteforce(build(parse_spec("mphx:n=1,p=4,dims=1"))).has_value());
    EXPECT_EQ(to_string(Bisection{}), "unbounded");
}

TEST(Bisection, EstimateBoundsExhaustiveSearch) {
    std::vector<std::string> specs;
    for (const auto& s : small_specs()) {
        const auto topo = build(parse_spec(s));
        if (topo.nic_count() <= bruteforce_max_nics && topo.switch_count() <= bruteforce_max_switches) {
            specs.push_back(s);
        }
    }
    Rng rng(13);
    while (specs.size() < small_specs().size() + 40) {
        const auto params = parse_spec(format_spec(testing::random_mphx(rng, 16)));
        const auto& m = std::get<MphxParams>(params.family);
        if (m.nic_count() <= bruteforce_max_nics && m.planes * m.switches_per_plane() <= bruteforce_max_switches) {
            specs.push_back(format_spec(params));
        }
    }
    for (const auto& s : specs) {
        const auto params = parse_spec(s);
        const auto exact = bisection_bruteforce(build(params));
        const auto estimate = bisection_estimate(params);
        ASSERT_EQ(exact.has_value(), estimate.has_value()) << s;
        if (exact) {
            EXPECT_GE(*estimate, *exact) << s;
        }
    }
}

TEST(Bisection, BruteForceRefusesLargeInstances) {
    EXPECT_THROW(bisection_bruteforce(build(parse_spec("mphx:n=1,p=2,dims=9"))), InfeasibleError);
    EXPECT_THROW(bisection_bruteforce(build(parse_spec("mphx:n=1,p=1,dims=21"))), InfeasibleError);
}

TEST(Bisection, TableScale) {
    // 1D 256-wide mesh: 128^2 links of B/8 over 8 planes against 32768 NICs.
    EXPECT_EQ(bisection_estimate(parse_spec("mphx:n=8,p=256,dims=256")), Rational(1, 2));
    EXPECT_EQ(bisection_estimate(parse_spec("mphx:n=1,p=16,dims=16x16x16")), Rational(1, 2));
    EXPECT_EQ(bisection_estimate(parse_spec("ft3:k=64")), Rational(1));
}

// Reports -------------------------------------------------------------------

TEST(Reports, MeasuredAndAnalyticAgree) {
    const auto params = parse_spec("mphx:n=2,p=3,dims=3x2");
    const auto measured = measured_report(build(params));
    const auto analytic = analytic_report(params);
    EXPECT_EQ(measured.counts, analytic.counts);
    EXPECT_EQ(measured.diameter_switch_hops, analytic.diameter_switch_hops);
    EXPECT_EQ(measured.relative_bisection, analytic.relative_bisection);
    EXPECT_EQ(measured.topology, "mphx:n=2,p=3,dims=3x2");
    EXPECT_FALSE(analytic.exact_bisection.has_value());
    EXPECT_FALSE(measured.exact_bisection.has_value());  // 18 NICs exceeds the exhaustive limit
    const auto small = measured_report(build(parse_spec("mphx:n=1,p=2,dims=3")));
    ASSERT_TRUE(small.exact_bisection.has_value());
    EXPECT_EQ(*small.exact_bisection, small.relative_bisection);
}

}  // namespace
}  // namespace mphx
