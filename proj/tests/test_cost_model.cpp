/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "support.hpp"

namespace mphx {
namespace {

using testing::Rng;

ComponentCounts counts_for(const std::string& spec) { return analytic_counts(parse_spec(spec)); }

TEST(Rationals, RoundingAndFormatting) {
    EXPECT_EQ(round_half_up(Rational(7, 2)), 4);
    EXPECT_EQ(round_half_up(Rational(5, 2)), 3);
    EXPECT_EQ(round_half_up(Rational(29175, 8)), 3647);  // 3646.875
    EXPECT_EQ(round_half_up(Rational(-5, 2)), -3);
    EXPECT_EQ(to_decimal(Rational(29175, 8), 2), "3646.88");
    EXPECT_EQ(to_decimal(Rational(1, 3), 4), "0.3333");
    EXPECT_EQ(to_decimal(Rational(5075), 2), "5075.00");
    EXPECT_EQ(with_commas(1570816), "1,570,816");
    EXPECT_EQ(with_commas(-1234), "-1,234");
    EXPECT_EQ(with_commas(12), "12");
}

TEST(Rationals, ExactDecimalParsing) {
    EXPECT_EQ(parse_decimal("0.1"), Rational(1, 10));
    EXPECT_EQ(parse_decimal("1200"), Rational(1200));
    EXPECT_EQ(parse_decimal("-2.5"), Rational(-5, 2));
    for (const char* bad : {"", "abc", "1.2.3", "--1", "1e3", "-", "."}) {
        EXPECT_THROW(parse_decimal(bad), ParseError) << bad;
    }
}

TEST(Rationals, CheckedArithmetic) {
    EXPECT_THROW(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), InfeasibleError);
    EXPECT_THROW(checked_add(std::numeric_limits<std::int64_t>::max(), 1), InfeasibleError);
    EXPECT_EQ(checked_mul(3, 4), 12);
}

TEST(Evaluate, OnePlaneHyperX) {
    // 4096 switches at $40,000 plus 315,392 modules at $1,200 over 65,536 NICs.
    const auto cost = evaluate(counts_for("mphx:n=1,p=16,dims=16x16x16"), PriceTable::defaults());
    EXPECT_EQ(cost.switches, Rational(4096LL * 40000));
    EXPECT_EQ(cost.optics, Rational(315392LL * 1200));
    EXPECT_EQ(cost.per_nic, Rational(8275));
}

TEST(Evaluate, EightPlaneOneDimension) {
    const auto cost = evaluate(counts_for("mphx:n=8,p=256,dims=256"), PriceTable::defaults());
    EXPECT_EQ(cost.per_nic, Rational(2048LL * 40000 + 1570816LL * 100, 65536));
    EXPECT_EQ(cost.per_nic_rounded(), 3647);
}

TEST(Evaluate, ZeroPricesZeroCost) {
    PriceTable zero;
    zero.switch_usd = 0;
    for (auto rate : {200, 400, 800, 1600}) {
        zero.transceiver_usd[Rate{rate}] = 0;
    }
    for (const auto& row : golden_table2) {
        EXPECT_EQ(evaluate(counts_for(std::string(row.spec)), zero).per_nic, Rational(0));
    }
}

TEST(Evaluate, MissingPricesAreErrors) {
    PriceTable p = PriceTable::defaults();
    p.transceiver_usd.erase(Rate{200});
    EXPECT_THROW(evaluate(counts_for("mphx:n=8,p=256,dims=256"), p), CostError);
    const auto copper = analytic_counts(parse_spec("mphx:n=1,p=2,dims=2"), Medium::copper);
    EXPECT_THROW(evaluate(copper, PriceTable::defaults()), CostError);
    p = PriceTable::defaults();
    p.copper_link_usd = Rational(25);
    // Two switches, one fabric link (2 modules), four copper access links.
    EXPECT_EQ(evaluate(copper, p).total, Rational(2 * 40000 + 2 * 1200 + 4 * 25));
    EXPECT_THROW(evaluate(ComponentCounts{}, PriceTable::defaults()), CostError);
}

TEST(Evaluate, DecomposesAndScalesLinearly) {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const auto params = testing::random_mphx(rng, 2000, false);
        ComponentCounts c;
        try {
            c = analytic_counts(params);
        } catch (const InfeasibleError&) {
            continue;
        }
        PriceTable p = PriceTable::defaults();
        p.switch_usd = Rational(testing::uniform(rng, 0, 90000));
        for (auto& [rate, price] : p.transceiver_usd) {
            price = Rational(testing::uniform(rng, 0, 3000), testing::uniform(rng, 1, 4));
        }
        const auto cost = evaluate(c, p);
        EXPECT_EQ(cost.total, cost.switches + cost.optics + cost.copper);
        EXPECT_EQ(cost.per_nic * c.nic_count, cost.total);

        PriceTable doubled = p;
        doubled.switch_usd *= 2;
        for (auto& [rate, price] : doubled.transceiver_usd) {
            price *= 2;
        }
        EXPECT_EQ(evaluate(c, doubled).total, 2 * cost.total);

        PriceTable switches_only = p;
        for (auto& [rate, price] : switches_only.transceiver_usd) {
            price = 0;
        }
        PriceTable optics_only = p;
        optics_only.switch_usd = 0;
        EXPECT_EQ(evaluate(c, switches_only).total + evaluate(c, optics_only).total, cost.total);
    }
}

TEST(Reduction, KnownValues) {
    EXPECT_EQ(reduction(Rational(5075), Rational(3647)), Rational(100 * 1428, 5075));
    EXPECT_EQ(to_decimal(reduction(Rational(5075), Rational(3647)), 2), "28.14");
    EXPECT_EQ(reduction(Rational(100), Rational(100)), Rational(0));
    EXPECT_LT(reduction(Rational(100), Rational(150)), Rational(0));
    EXPECT_THROW(reduction(Rational(0), Rational(1)), CostError);
}

// Price files ---------------------------------------------------------------

TEST(PriceFiles, KeyValueAndJson) {
    const auto kv = parse_price_table(
        "# comment\nswitch_usd = 35000\nxcvr_800g_usd: 400.50  # trailing\n\ncopper_link_usd=12\nxcvr_3200g_usd = 2000\n");
    EXPECT_EQ(kv.switch_usd, Rational(35000));
    EXPECT_EQ(kv.transceiver_usd.at(Rate{800}), Rational(801, 2));
    EXPECT_EQ(kv.transceiver_usd.at(Rate{200}), Rational(100));  // default kept
    EXPECT_EQ(kv.transceiver_usd.at(Rate{3200}), Rational(2000));
    EXPECT_EQ(kv.copper_link_usd, Rational(12));

    const auto json = parse_price_table(R"({"switch_usd": 1, "xcvr_200g_usd": "0.25"})");
    EXPECT_EQ(json.switch_usd, Rational(1));
    EXPECT_EQ(json.transceiver_usd.at(Rate{200}), Rational(1, 4));
    EXPECT_EQ(parse_price_table(""), PriceTable::defaults());
}

TEST(PriceFiles, Errors) {
    for (const char* bad : {"bogus = 1", "switch_usd", "switch_usd = x", "switch_usd = -1", "xcvr_abcg_usd = 1",
                            "{\"switch_usd\": [1]}", "{not json", "[1, 2]"}) {
        EXPECT_THROW(parse_price_table(bad), ParseError) << bad;
    }
    EXPECT_THROW(load_price_table("/nonexistent/prices.txt"), ParseError);
}

TEST(PriceFiles, LoadFromDisk) {
    const std::string path = ::testing::TempDir() + "prices_roundtrip.txt";
    {
        std::ofstream out(path);
        out << "switch_usd = 0\n";
    }
    EXPECT_EQ(load_price_table(path).switch_usd, Rational(0));
    std::remove(path.c_str());
}

}  // namespace
}  // namespace mphx
