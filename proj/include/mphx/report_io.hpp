/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mphx/cost_model.hpp"
#include "mphx/error.hpp"
#include "mphx/flattening.hpp"
#include "mphx/metrics.hpp"
#include "mphx/table2.hpp"

namespace mphx {

enum class OutputFormat { csv, json, md };

inline OutputFormat parse_format(const std::string& text) {
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    if (text == "md") {
        return OutputFormat::md;
    }
    throw ParseError("unknown output format '" + text + "' (expected csv, json or md)");
}

/// One cell: the typed value used for JSON/CSV and the text shown in Markdown.
struct Cell {
    nlohmann::ordered_json value;
    std::string display;

    Cell() = default;
    Cell(std::string s) : value(s), display(std::move(s)) {}
    Cell(const char* s) : Cell(std::string(s)) {}
    Cell(nlohmann::ordered_json v, std::string d) : value(std::move(v)), display(std::move(d)) {}

    std::string plain() const {
        if (value.is_null()) {
            return {};
        }
        return value.is_string() ? value.get<std::string>() : value.dump();
    }
};

inline Cell count_cell(std::int64_t v) { return Cell(nlohmann::ordered_json(v), with_commas(v)); }
inline Cell int_cell(std::int64_t v) { return Cell(nlohmann::ordered_json(v), std::to_string(v)); }

inline Cell decimal_cell(const Rational& v, int places) {
    const auto text = to_decimal(v, places);
    return Cell(nlohmann::ordered_json(std::stod(text)), text);
}

inline Cell bisection_cell(const Bisection& beta) {
    if (!beta) {
        return Cell("unbounded");
    }
    return decimal_cell(*beta, 4);
}

inline Cell usd_cell(const Rational& v) {
    const auto text = to_decimal(v, 2);
    return Cell(nlohmann::ordered_json(std::stod(text)), with_commas(round_half_up(v)));
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::string> md_headers;  // optional, defaults to columns
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> footnotes;
};

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

inline void write_table(const Table& t, OutputFormat format, std::ostream& os) {
    switch (format) {
        case OutputFormat::csv: {
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                os << (i ? "," : "") << t.columns[i];
            }
            os << '\n';
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    os << (i ? "," : "") << csv_escape(row[i].plain());
                }
                os << '\n';
            }
            for (const auto& note : t.footnotes) {
                os << "# " << note << '\n';
            }
            break;
        }
        case OutputFormat::json: {
            nlohmann::ordered_json doc;
            doc["rows"] = nlohmann::ordered_json::array();
            for (const auto& row : t.rows) {
                nlohmann::ordered_json obj;
                for (std::size_t i = 0; i < row.size(); ++i) {
                    obj[t.columns[i]] = row[i].value;
                }
                doc["rows"].push_back(std::move(obj));
            }
            if (!t.footnotes.empty()) {
                doc["footnotes"] = t.footnotes;
            }
            os << doc.dump(2) << '\n';
            break;
        }
        case OutputFormat::md: {
            const auto& headers = t.md_headers.empty() ? t.columns : t.md_headers;
            os << '|';
            for (const auto& h : headers) {
                os << ' ' << h << " |";
            }
            os << "\n|";
            for (std::size_t i = 0; i < headers.size(); ++i) {
                os << "---|";
            }
            os << '\n';
            for (const auto& row : t.rows) {
                os << '|';
                for (const auto& cell : row) {
                    os << ' ' << cell.display << " |";
                }
                os << '\n';
            }
            if (!t.footnotes.empty()) {
                os << '\n';
                for (std::size_t i = 0; i < t.footnotes.size(); ++i) {
                    os << '[' << (i + 1) << "] " << t.footnotes[i] << '\n';
                }
            }
            break;
        }
    }
}

// Metrics -------------------------------------------------------------------

inline std::string rates_label(const ComponentCounts& c) {
    std::string out;
    for (const auto& [rate, count] : c.links_by_rate) {
        out += (out.empty() ? "" : "+") + rate_label(rate);
    }
    return out.empty() ? "-" : out;
}

/// Columns: topology, d, N, N_s, N_o, rate, beta, cost_per_nic_usd, then
/// beta_exact / link_shortfall / copper_links when any row carries them.
inline Table metrics_table(const std::vector<MetricsReport>& reports) {
    Table t;
    t.columns = {"topology", "d", "N", "N_s", "N_o", "rate", "beta", "cost_per_nic_usd"};
    const bool any_exact = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.exact_bisection.has_value(); });
    const bool any_short = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.link_shortfall != 0; });
    const bool any_copper = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.counts.total_copper_links() != 0; });
    if (any_exact) {
        t.columns.push_back("beta_exact");
    }
    if (any_short) {
        t.columns.push_back("link_shortfall");
    }
    if (any_copper) {
        t.columns.push_back("copper_links");
    }
    for (const auto& r : reports) {
        std::vector<Cell> row{Cell(r.topology),
                              int_cell(r.diameter_switch_hops),
                              count_cell(r.counts.nic_count),
                              count_cell(r.counts.switch_count),
                              count_cell(r.counts.total_optical_modules()),
                              Cell(rates_label(r.counts)),
                              bisection_cell(r.relative_bisection),
                              r.cost_per_nic_usd ? usd_cell(*r.cost_per_nic_usd) : Cell(nlohmann::ordered_json(), "-")};
        if (any_exact) {
            row.push_back(r.exact_bisection ? bisection_cell(*r.exact_bisection) : Cell(nlohmann::ordered_json(), "-"));
        }
        if (any_short) {
            row.push_back(int_cell(r.link_shortfall));
        }
        if (any_copper) {
            row.push_back(count_cell(r.counts.total_copper_links()));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Table 2 -------------------------------------------------------------------

inline Table table2_table(const Table2Result& result) {
    Table t;
    t.columns = {"topology", "d", "switch_config", "N", "N_s", "N_o", "rate", "cost_per_nic_usd", "status"};
    t.md_headers = {"Topologies", "d", "Switch configuration", "N", "N_s", "N_o", "Cost per NIC [$]", "Check"};
    for (const auto& row : result.rows) {
        const auto modules = row.counts.total_optical_modules();
        std::string modules_text = with_commas(modules) + " (" + row.module_rate + ")";
        if (!row.footnote.empty()) {
            t.footnotes.push_back(std::string(row.golden->label) + ": " + row.footnote +
                                  "; cost at the published count " +
                                  with_commas(row.cost_at_published_modules->per_nic_rounded()) + " $/NIC");
            modules_text += " [" + std::to_string(t.footnotes.size()) + "]";
        }
        std::string status = "ok";
        if (!row.mismatches.empty()) {
            status = "MISMATCH:";
            for (const auto& m : row.mismatches) {
                status += " " + m;
            }
        }
        std::vector<Cell> cells{Cell(std::string(row.golden->label)),
                                int_cell(row.diameter),
                                Cell(row.switch_config),
                                count_cell(row.counts.nic_count),
                                count_cell(row.counts.switch_count),
                                Cell(nlohmann::ordered_json(modules), modules_text),
                                Cell(row.module_rate),
                                usd_cell(row.cost.per_nic),
                                Cell(status)};
        // md drops the separate rate column; the rate is in the N_o cell.
        t.rows.push_back(std::move(cells));
    }
    return t;
}

inline void write_table2(const Table2Result& result, OutputFormat format, std::ostream& os) {
    auto t = table2_table(result);
    if (format == OutputFormat::md) {
        for (auto& row : t.rows) {
            row.erase(row.begin() + 6);
        }
    }
    if (!result.prices_are_default) {
        t.footnotes.push_back("custom prices: cost cells not compared with published values");
    }
    write_table(t, format, os);
}

// Flattening ----------------------------------------------------------------

inline Table flatten_table(const std::vector<FlatteningStep>& trace) {
    Table t;
    t.columns = {"step", "variant", "radix", "nics_per_switch", "switches_per_group", "global_ports", "nics_per_group",
                 "groups", "class"};
    for (const auto& s : trace) {
        t.rows.push_back({int_cell(s.step), Cell(to_string(s.state.variant)), int_cell(s.state.radix),
                          int_cell(s.state.nics_per_switch), int_cell(s.state.switches_per_group),
                          int_cell(s.state.global_ports), count_cell(s.state.nics_per_group()),
                          int_cell(s.state.groups), Cell(to_string(s.cls))});
    }
    return t;
}

}  // namespace mphx
