/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

// mphx_cli: cost and structure reports for multi-plane HyperX and reference
// topologies.
//
// Exit codes: 0 success, 1 usage or parse error, 2 infeasible parameters,
// 3 Table 2 golden mismatch.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mphx/mphx.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_mismatch = 3;

struct Globals {
    std::string format = "md";
    std::string prices_path;
    std::string out_path;
};

mphx::PriceTable load_prices(const std::string& path) {
    return path.empty() ? mphx::PriceTable::defaults() : mphx::load_price_table(path);
}

/// Writes `text` to --out when given, otherwise to stdout.
void emit(const Globals& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) {
        throw mphx::ParseError("cannot write '" + g.out_path + "'");
    }
    out << text;
}

std::string render(const mphx::Table& t, mphx::OutputFormat format) {
    std::ostringstream os;
    mphx::write_table(t, format, os);
    return os.str();
}

struct AccessMedium {
    mphx::Medium medium = mphx::Medium::optical;
    std::optional<mphx::Rational> copper_usd;
};

// optical | copper | copper:<usd>
AccessMedium parse_access_medium(const std::string& text) {
    if (text == "optical") {
        return {};
    }
    if (text == "copper") {
        return {mphx::Medium::copper, std::nullopt};
    }
    if (text.starts_with("copper:")) {
        return {mphx::Medium::copper, mphx::parse_decimal(text.substr(7))};
    }
    throw mphx::ParseError("unknown access medium '" + text + "' (expected optical, copper or copper:<usd>)");
}

void insert_column(mphx::Table& t, std::size_t at, const std::string& name, const std::vector<mphx::Cell>& cells) {
    t.columns.insert(t.columns.begin() + static_cast<std::ptrdiff_t>(at), name);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        t.rows[i].insert(t.rows[i].begin() + static_cast<std::ptrdiff_t>(at), cells[i]);
    }
}

mphx::Cell null_cell() { return mphx::Cell(nlohmann::ordered_json(), "-"); }

// Commands ------------------------------------------------------------------

int cmd_table2(const Globals& g) {
    const auto result = mphx::reproduce_table2(load_prices(g.prices_path));
    std::ostringstream os;
    mphx::write_table2(result, mphx::parse_format(g.format), os);
    emit(g, os.str());
    return result.all_match() ? exit_ok : exit_mismatch;
}

struct AnalyzeArgs {
    std::string spec;
    bool analytic_only = false;
    std::string access_medium = "optical";
};

int cmd_analyze(const Globals& g, const AnalyzeArgs& a) {
    const auto format = mphx::parse_format(g.format);
    auto prices = load_prices(g.prices_path);
    const auto access = parse_access_medium(a.access_medium);
    if (access.copper_usd) {
        prices.copper_link_usd = access.copper_usd;
    }
    const auto params = mphx::parse_spec(a.spec);
    mphx::check_feasible(params);

    mphx::MetricsReport report;
    if (a.analytic_only) {
        if (!g.out_path.empty()) {
            throw mphx::ParseError("--out needs a realized graph; drop --analytic-only");
        }
        report = mphx::analytic_report(params, access.medium);
    } else {
        const auto topo = mphx::build(params, mphx::BuildOptions{access.medium, mphx::Medium::optical});
        report = mphx::measured_report(topo, access.medium);
        if (!g.out_path.empty()) {
            std::ofstream out(g.out_path, std::ios::binary);
            if (!out) {
                throw mphx::ParseError("cannot write '" + g.out_path + "'");
            }
            mphx::export_topology(topo, out);
        }
    }
    report.cost_per_nic_usd = mphx::evaluate(report.counts, prices).per_nic;
    std::cout << render(mphx::metrics_table({report}), format);
    return exit_ok;
}

struct CompareConfig {
    std::vector<std::string> specs;
    std::optional<mphx::PriceTable> prices;
};

// Either JSON {"specs": [...], "prices": "<path>" | {...}} or one spec per
// line with an optional `prices = <path>` line. Relative paths resolve
// against the config file's directory.
CompareConfig load_compare_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw mphx::ParseError("cannot open compare config '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        const std::filesystem::path fp(p);
        return (fp.is_absolute() ? fp : base / fp).string();
    };

    CompareConfig cfg;
    const auto body = mphx::detail::trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw mphx::ParseError(std::string("compare config is not valid JSON: ") + e.what());
        }
        if (!doc.contains("specs") || !doc["specs"].is_array()) {
            throw mphx::ParseError("compare config needs a \"specs\" array");
        }
        for (const auto& s : doc["specs"]) {
            if (!s.is_string()) {
                throw mphx::ParseError("compare config specs must be strings");
            }
            cfg.specs.push_back(s.get<std::string>());
        }
        if (doc.contains("prices")) {
            const auto& p = doc["prices"];
            if (p.is_string()) {
                cfg.prices = mphx::load_price_table(resolve(p.get<std::string>()));
            } else if (p.is_object()) {
                cfg.prices = mphx::parse_price_table(p.dump());
            } else {
                throw mphx::ParseError("compare config \"prices\" must be a path or an object");
            }
        }
    } else {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.resize(hash);
            }
            const auto content = mphx::detail::trim(line);
            if (content.empty()) {
                continue;
            }
            if (content.starts_with("prices")) {
                const auto sep = content.find_first_of("=:");
                if (sep == std::string::npos) {
                    throw mphx::ParseError("compare config: expected 'prices = <path>'");
                }
                cfg.prices = mphx::load_price_table(resolve(mphx::detail::trim(content.substr(sep + 1))));
                continue;
            }
            cfg.specs.push_back(content);
        }
    }
    if (cfg.specs.empty()) {
        throw mphx::ParseError("compare config lists no topology specs");
    }
    return cfg;
}

int cmd_compare(const Globals& g, const std::string& config_path) {
    const auto format = mphx::parse_format(g.format);
    const auto cfg = load_compare_config(config_path);
    const auto prices = cfg.prices ? *cfg.prices : load_prices(g.prices_path);

    struct Entry {
        std::string spec;
        std::optional<mphx::MetricsReport> report;
        std::string error;
    };
    std::vector<Entry> entries;
    for (const auto& spec : cfg.specs) {
        Entry e{spec, std::nullopt, {}};
        try {
            auto r = mphx::analytic_report(mphx::parse_spec(spec));
            r.cost_per_nic_usd = mphx::evaluate(r.counts, prices).per_nic;
            e.report = std::move(r);
        } catch (const mphx::Error& ex) {
            e.error = ex.what();
        }
        entries.push_back(std::move(e));
    }

    std::vector<mphx::MetricsReport> ok;
    for (const auto& e : entries) {
        if (e.report) {
            ok.push_back(*e.report);
        }
    }
    // Column layout comes from the successful rows; failed rows are padded.
    mphx::Table t = mphx::metrics_table(ok);
    if (ok.empty()) {
        t = mphx::metrics_table({});
    }
    std::vector<std::vector<mphx::Cell>> rows;
    std::size_t next = 0;
    bool any_error = false;
    for (const auto& e : entries) {
        if (e.report) {
            rows.push_back(t.rows[next++]);
        } else {
            any_error = true;
            std::vector<mphx::Cell> row(t.columns.size(), null_cell());
            row[0] = mphx::Cell(e.spec);
            rows.push_back(std::move(row));
        }
    }
    t.rows = std::move(rows);

    if (entries.size() > 1) {
        std::vector<mphx::Cell> cells;
        const auto& base = entries.front().report;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i == 0 || !base || !entries[i].report) {
                cells.push_back(null_cell());
                continue;
            }
            const auto pct = mphx::reduction(*base->cost_per_nic_usd, *entries[i].report->cost_per_nic_usd);
            cells.push_back(mphx::decimal_cell(pct, 2));
        }
        insert_column(t, t.columns.size(), "reduction_pct", cells);
    }
    if (any_error) {
        std::vector<mphx::Cell> cells;
        for (const auto& e : entries) {
            cells.push_back(e.error.empty() ? null_cell() : mphx::Cell(e.error));
        }
        insert_column(t, t.columns.size(), "error", cells);
    }
    emit(g, render(t, format));
    return any_error ? exit_infeasible : exit_ok;
}

struct FlattenArgs {
    std::int64_t radix = 64;
    std::int64_t h = 16;
    std::int64_t nics_per_group = 512;
    std::int64_t g = 80;
    std::optional<std::int64_t> p;
    std::optional<std::int64_t> a;
    std::string variant = "dragonfly";
    int steps = 1;
};

mphx::DragonflyVariant parse_variant(const std::string& text) {
    if (text == "dragonfly" || text == "dfly") {
        return mphx::DragonflyVariant::dragonfly;
    }
    if (text == "dragonfly_plus" || text == "dragonfly+" || text == "dflyplus") {
        return mphx::DragonflyVariant::dragonfly_plus;
    }
    throw mphx::ParseError("unknown variant '" + text + "' (expected dragonfly or dragonfly_plus)");
}

int cmd_flatten(const Globals& g, const FlattenArgs& f) {
    const auto format = mphx::parse_format(g.format);
    const auto variant = parse_variant(f.variant);
    mphx::DragonflyState start;
    if (f.p || f.a) {
        const std::int64_t p = f.p.value_or(f.h);
        const std::int64_t a = f.a.value_or(p > 0 ? f.nics_per_group / p : 0);
        if (p < 1 || a < 1 || p * a != f.nics_per_group) {
            throw mphx::InfeasibleError("--p times --a must equal --nics-per-group");
        }
        start = mphx::DragonflyState{f.radix, p, a, f.h, f.g, variant};
        start.check();
    } else {
        start = mphx::balanced_state(f.radix, f.h, f.nics_per_group, f.g, variant);
    }
    emit(g, render(mphx::flatten_table(mphx::flatten_trace(start, f.steps)), format));
    return exit_ok;
}

struct SearchArgs {
    std::int64_t target_nics = 65536;
    std::vector<int> planes{1, 2, 4, 8};
    int max_dims = 3;
    std::string slack = "0.1";
    bool full_port_use = false;
    int limit = 20;
    std::int64_t nic_gbps = mphx::default_nic_gbps;
    std::int64_t switch_gbps = mphx::default_switch_gbps;
};

int cmd_search(const Globals& g, const SearchArgs& s) {
    const auto format = mphx::parse_format(g.format);
    mphx::SearchConstraints c;
    c.target_nics = s.target_nics;
    c.plane_choices = s.planes;
    c.max_dimensions = s.max_dims;
    c.slack = mphx::parse_decimal(s.slack);
    c.nic_gbps = s.nic_gbps;
    c.switch_gbps = s.switch_gbps;
    c.require_full_port_use = s.full_port_use;
    const auto results = mphx::search(c, load_prices(g.prices_path));

    std::vector<mphx::MetricsReport> reports;
    std::vector<mphx::Cell> ranks;
    std::vector<mphx::Cell> labels;
    for (const auto& r : results) {
        if (s.limit > 0 && static_cast<int>(reports.size()) >= s.limit) {
            break;
        }
        reports.push_back(r.report);
        ranks.push_back(mphx::int_cell(static_cast<std::int64_t>(reports.size())));
        labels.push_back(mphx::Cell(mphx::family_label(r.params)));
    }
    auto t = mphx::metrics_table(reports);
    insert_column(t, 0, "rank", ranks);
    insert_column(t, 2, "label", labels);
    emit(g, render(t, format));
    return exit_ok;
}

struct GenerateArgs {
    std::string spec;
    std::string access_medium = "optical";
};

int cmd_generate(const Globals& g, const GenerateArgs& a) {
    const auto params = mphx::parse_spec(a.spec);
    mphx::check_feasible(params);
    const auto access = parse_access_medium(a.access_medium);
    const auto topo = mphx::build(params, mphx::BuildOptions{access.medium, mphx::Medium::optical});
    emit(g, mphx::export_topology(topo));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost, diameter and bisection reports for multi-plane HyperX and reference topologies"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format: csv, json or md")
        ->check(CLI::IsMember({"csv", "json", "md"}))
        ->capture_default_str();
    app.add_option("--prices", g.prices_path, "Price table file (key = value lines or JSON)");
    app.add_option("--out", g.out_path, "Output path (analyze: topology export; others: the report)");

    auto* table2 = app.add_subcommand("table2", "Reproduce the 65K-NIC cost comparison table");

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Metrics and cost for one topology spec");
    analyze->add_option("spec", analyze_args.spec, "Topology spec, e.g. mphx:n=8,p=256,dims=256")->required();
    analyze->add_flag("--analytic-only", analyze_args.analytic_only, "Use closed forms; do not build the graph");
    analyze->add_option("--access-medium", analyze_args.access_medium, "optical, copper or copper:<usd per link>")
        ->capture_default_str();

    std::string compare_path;
    auto* compare = app.add_subcommand("compare", "Metrics and cost reductions for a list of specs");
    compare->add_option("config", compare_path, "Config: one spec per line plus optional 'prices = <path>', or JSON")
        ->required();

    FlattenArgs flatten_args;
    auto* flatten = app.add_subcommand("flatten", "Trace a dragonfly through radix-doubling breakout steps");
    flatten->set_help_flag("--help", "Print this help message and exit");
    flatten->add_option("--radix", flatten_args.radix, "Switch radix")->capture_default_str();
    flatten->add_option("--h", flatten_args.h, "Global ports per switch")->capture_default_str();
    flatten->add_option("--nics-per-group", flatten_args.nics_per_group, "NICs per group")->capture_default_str();
    flatten->add_option("--g", flatten_args.g, "Group count")->capture_default_str();
    flatten->add_option("--p", flatten_args.p, "NICs per switch (default h)");
    flatten->add_option("--a", flatten_args.a, "Switches per group (default nics-per-group / p)");
    flatten->add_option("--variant", flatten_args.variant, "dragonfly or dragonfly_plus")->capture_default_str();
    flatten->add_option("--steps", flatten_args.steps, "Breakout steps")->capture_default_str();

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "Rank MPHX configurations near a target NIC count by cost");
    search->add_option("--target-nics", search_args.target_nics, "Minimum NIC count")->capture_default_str();
    search->add_option("--planes", search_args.planes, "Plane counts to try")->delimiter(',')->capture_default_str();
    search->add_option("--max-dims", search_args.max_dims, "Maximum dimension count")->capture_default_str();
    search->add_option("--slack", search_args.slack, "Admit N < target * (1 + slack)")->capture_default_str();
    search->add_flag("--full-port-use", search_args.full_port_use, "Give every spare switch port to the last dimension");
    search->add_option("--limit", search_args.limit, "Rows to print (0 = all)")->capture_default_str();
    search->add_option("--nic-gbps", search_args.nic_gbps, "NIC bandwidth")->capture_default_str();
    search->add_option("--switch-gbps", search_args.switch_gbps, "Switch bandwidth")->capture_default_str();

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand("generate", "Build a topology and write its export");
    generate->add_option("spec", generate_args.spec, "Topology spec")->required();
    generate->add_option("--access-medium", generate_args.access_medium, "optical or copper")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*table2) {
            return cmd_table2(g);
        }
        if (*analyze) {
            return cmd_analyze(g, analyze_args);
        }
        if (*compare) {
            return cmd_compare(g, compare_path);
        }
        if (*flatten) {
            return cmd_flatten(g, flatten_args);
        }
        if (*search) {
            return cmd_search(g, search_args);
        }
        if (*generate) {
            return cmd_generate(g, generate_args);
        }
    } catch (const mphx::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const mphx::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
