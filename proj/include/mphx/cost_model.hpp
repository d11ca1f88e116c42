/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mphx/error.hpp"
#include "mphx/metrics.hpp"
#include "mphx/rational.hpp"
#include "mphx/topo_model.hpp"

namespace mphx {

struct PriceTable {
    Rational switch_usd;
    std::map<Rate, Rational> transceiver_usd;
    std::optional<Rational> copper_link_usd;

    /// 102.4 Tbps switch at $40,000; 200G/400G/800G/1.6T optics at $100/$200/$450/$1,200.
    static PriceTable defaults() {
        PriceTable p;
        p.switch_usd = Rational(40000);
        p.transceiver_usd = {
            {Rate{200}, Rational(100)},
            {Rate{400}, Rational(200)},
            {Rate{800}, Rational(450)},
            {Rate{1600}, Rational(1200)},
        };
        return p;
    }

    bool operator==(const PriceTable&) const = default;
};

struct CostBreakdown {
    Rational switches;
    Rational optics;
    Rational copper;
    Rational total;
    Rational per_nic;

    std::int64_t per_nic_rounded() const { return round_half_up(per_nic); }
};

inline CostBreakdown evaluate(const ComponentCounts& counts, const PriceTable& prices) {
    if (counts.nic_count < 1) {
        throw CostError("cost per NIC is undefined for a network without NICs");
    }
    CostBreakdown out;
    out.switches = prices.switch_usd * counts.switch_count;
    for (const auto& [rate, modules] : counts.optical_modules_by_rate) {
        if (modules == 0) {
            continue;
        }
        const auto it = prices.transceiver_usd.find(rate);
        if (it == prices.transceiver_usd.end()) {
            throw CostError("no transceiver price for " + rate_label(rate));
        }
        out.optics += it->second * modules;
    }
    const auto copper = counts.total_copper_links();
    if (copper > 0) {
        if (!prices.copper_link_usd) {
            throw CostError("copper links present but no copper_link_usd price given");
        }
        out.copper = *prices.copper_link_usd * copper;
    }
    out.total = out.switches + out.optics + out.copper;
    out.per_nic = out.total / counts.nic_count;
    return out;
}

/// Percentage saved by `candidate` relative to `baseline`.
inline Rational reduction(const Rational& baseline, const Rational& candidate) {
    if (baseline <= 0) {
        throw CostError("reduction needs a positive baseline");
    }
    return Rational(100) * (baseline - candidate) / baseline;
}

// Price files ---------------------------------------------------------------

namespace detail {

inline void apply_price(PriceTable& table, const std::string& key, const Rational& value) {
    if (value < 0) {
        throw ParseError("price '" + key + "' must be non-negative");
    }
    if (key == "switch_usd") {
        table.switch_usd = value;
        return;
    }
    if (key == "copper_link_usd") {
        table.copper_link_usd = value;
        return;
    }
    // xcvr_<gbps>g_usd
    constexpr std::string_view prefix = "xcvr_";
    constexpr std::string_view suffix = "g_usd";
    if (key.size() > prefix.size() + suffix.size() && key.starts_with(prefix) && key.ends_with(suffix)) {
        const auto digits = key.substr(prefix.size(), key.size() - prefix.size() - suffix.size());
        if (std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
            table.transceiver_usd[Rate{std::stoll(digits)}] = value;
            return;
        }
    }
    throw ParseError("unknown price key '" + key + "'");
}

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace detail

/// Parses a price table, starting from the defaults. Accepts a JSON object or
/// `key = value` / `key: value` lines with '#' comments.
inline PriceTable parse_price_table(std::string_view text) {
    PriceTable table = PriceTable::defaults();
    const auto body = detail::trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("price table is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) {
            throw ParseError("price table JSON must be an object");
        }
        for (const auto& [key, value] : doc.items()) {
            if (value.is_number()) {
                detail::apply_price(table, key, parse_decimal(value.dump()));
            } else if (value.is_string()) {
                detail::apply_price(table, key, parse_decimal(value.get<std::string>()));
            } else {
                throw ParseError("price '" + key + "' must be a number");
            }
        }
        return table;
    }
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        const auto content = detail::trim(line);
        if (content.empty()) {
            continue;
        }
        const auto sep = content.find_first_of("=:");
        if (sep == std::string::npos) {
            throw ParseError("price table line " + std::to_string(line_no) + ": expected key = value");
        }
        detail::apply_price(table, detail::trim(content.substr(0, sep)), parse_decimal(detail::trim(content.substr(sep + 1))));
    }
    return table;
}

inline PriceTable load_price_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open price table '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_price_table(buf.str());
}

}  // namespace mphx
