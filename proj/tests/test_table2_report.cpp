/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

namespace mphx {
namespace {

Table2Row row_named(const Table2Result& r, std::string_view label) {
    for (const auto& row : r.rows) {
        if (row.golden->label == label) {
            return row;
        }
    }
    throw std::runtime_error("no row " + std::string(label));
}

TEST(Table2, AllRowsMatch) {
    const auto result = reproduce_table2();
    ASSERT_EQ(result.rows.size(), 8u);
    for (const auto& row : result.rows) {
        EXPECT_TRUE(row.mismatches.empty()) << row.golden->label;
    }
    EXPECT_TRUE(result.all_match());
}

TEST(Table2, EightPlaneRow) {
    const auto& row = row_named(reproduce_table2(), "8-Plane 1D HyperX (MPHX(8,256,256))");
    EXPECT_EQ(row.diameter, 1);
    EXPECT_EQ(row.counts.nic_count, 65536);
    EXPECT_EQ(row.counts.switch_count, 2048);
    EXPECT_EQ(row.counts.total_optical_modules(), 1570816);
    EXPECT_EQ(row.cost.per_nic_rounded(), 3647);
}

TEST(Table2, DragonflyRow) {
    const auto& row = row_named(reproduce_table2(), "Dragonfly");
    EXPECT_EQ(row.diameter, 3);
    EXPECT_EQ(row.counts.switch_count, 4096);
    EXPECT_EQ(row.counts.total_optical_modules(), 323584);
    EXPECT_EQ(row.cost.per_nic_rounded(), 8425);
}

TEST(Table2, FatTreeModuleCountIsFootnoted) {
    const auto& row = row_named(reproduce_table2(), "3-layer Fat-Tree");
    EXPECT_EQ(row.counts.total_optical_modules(), 393216);
    EXPECT_FALSE(row.footnote.empty());
    ASSERT_TRUE(row.cost_at_published_modules.has_value());
    EXPECT_EQ(row.cost_at_published_modules->per_nic_rounded(), 10323);
    EXPECT_EQ(row.cost.per_nic_rounded(), 10325);
}

TEST(Table2, ZeroPricesKeepCounts) {
    PriceTable zero;
    for (auto rate : {200, 400, 800, 1600}) {
        zero.transceiver_usd[Rate{rate}] = 0;
    }
    const auto result = reproduce_table2(zero);
    EXPECT_FALSE(result.prices_are_default);
    EXPECT_TRUE(result.all_match());
    const auto reference = reproduce_table2();
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        EXPECT_EQ(result.rows[i].cost.per_nic, Rational(0));
        EXPECT_EQ(result.rows[i].counts, reference.rows[i].counts);
    }
}

TEST(Table2, MarkdownFollowsTheTableLayout) {
    std::ostringstream os;
    write_table2(reproduce_table2(), OutputFormat::md, os);
    const auto text = os.str();
    EXPECT_EQ(text.rfind("| Topologies | d | Switch configuration | N | N_s | N_o | Cost per NIC [$] | Check |", 0), 0u);
    EXPECT_NE(text.find("| 8-Plane 1D HyperX (MPHX(8,256,256)) | 1 | 512x200G | 65,536 | 2,048 | 1,570,816 (200G) | 3,647 | ok |"),
              std::string::npos);
    EXPECT_NE(text.find("393,216 (1.6T) [1]"), std::string::npos);
    EXPECT_NE(text.find("[1] 3-layer Fat-Tree: N_o derived 393,216 vs published 393,126"), std::string::npos);
}

TEST(Table2, CsvAndJson) {
    std::ostringstream csv;
    write_table2(reproduce_table2(), OutputFormat::csv, csv);
    EXPECT_NE(csv.str().find("\"8-Plane 1D HyperX (MPHX(8,256,256))\",1,512x200G,65536,2048,1570816,200G,3646.88,ok"),
              std::string::npos);
    std::ostringstream json;
    write_table2(reproduce_table2(), OutputFormat::json, json);
    const auto doc = nlohmann::json::parse(json.str());
    ASSERT_EQ(doc["rows"].size(), 8u);
    EXPECT_EQ(doc["rows"][7]["N_o"], 1570816);
    EXPECT_EQ(doc["rows"][0]["N_o"], 393216);
    EXPECT_EQ(doc["footnotes"].size(), 1u);
}

TEST(ReportIo, FormatsAndEscaping) {
    EXPECT_EQ(parse_format("csv"), OutputFormat::csv);
    EXPECT_THROW(parse_format("xml"), ParseError);
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(ReportIo, MetricsTableOptionalColumns) {
    auto report = measured_report(build(parse_spec("mphx:n=1,p=2,dims=2")));
    report.cost_per_nic_usd = evaluate(report.counts, PriceTable::defaults()).per_nic;
    const auto t = metrics_table({report});
    EXPECT_EQ(t.columns, (std::vector<std::string>{"topology", "d", "N", "N_s", "N_o", "rate", "beta",
                                                   "cost_per_nic_usd", "beta_exact"}));
    std::ostringstream os;
    write_table(t, OutputFormat::csv, os);
    EXPECT_EQ(os.str(),
              "topology,d,N,N_s,N_o,rate,beta,cost_per_nic_usd,beta_exact\n"
              "\"mphx:n=1,p=2,dims=2\",1,4,2,10,1.6T,0.5,23000.0,0.5\n");

    const auto shortfall = measured_report(build(parse_spec("mphx:n=1,p=2,dims=2x9,links=1x13")));
    const auto t2 = metrics_table({shortfall});
    EXPECT_NE(std::find(t2.columns.begin(), t2.columns.end(), "link_shortfall"), t2.columns.end());
    const auto analytic = metrics_table({analytic_report(parse_spec("ft3:k=4"))});
    EXPECT_EQ(analytic.rows[0][7].display, "-");
}

TEST(ReportIo, FlattenTable) {
    const auto t = flatten_table(flatten_trace(frontier_state(), 1));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[1].back().display, "HyperX2D");
    EXPECT_EQ(t.rows[0].back().display, "Dragonfly");
}

}  // namespace
}  // namespace mphx
