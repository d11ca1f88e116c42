/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <charconv>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mphx/error.hpp"
#include "mphx/topo_model.hpp"

// Compact topology descriptors:
//   mphx:n=8,p=256,dims=256            mphx:n=4,p=86,dims=86x9,links=85x85
//   ft3:k=64                           mpft2:n=8,r=512,nics=65536
//   dfly:p=16,a=32,h=16,g=128          dflyplus:leaves=16,spines=16,npl=32,g=128
// Optional on every family: nic_gbps=<B>, switch_gbps=<B*k>.

namespace mphx {

namespace detail {

inline std::int64_t parse_int(std::string_view key, std::string_view text, std::int64_t min = 1) {
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ParseError("value for '" + std::string(key) + "' is not an integer: '" + std::string(text) + "'");
    }
    if (value < min) {
        throw ParseError("value for '" + std::string(key) + "' must be at least " + std::to_string(min));
    }
    return value;
}

inline int parse_small(std::string_view key, std::string_view text, std::int64_t min = 1) {
    const auto value = parse_int(key, text, min);
    if (value > std::numeric_limits<int>::max()) {
        throw ParseError("value for '" + std::string(key) + "' is too large");
    }
    return static_cast<int>(value);
}

inline std::vector<int> parse_int_list(std::string_view key, std::string_view text, std::int64_t min = 1) {
    std::vector<int> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find('x', start);
        out.push_back(parse_small(key, text.substr(start, pos == std::string_view::npos ? text.npos : pos - start), min));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline std::string join_list(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "x" : "") + std::to_string(values[i]);
    }
    return out;
}

class KeyValues {
  public:
    KeyValues(std::string_view family, std::string_view body) : family_(family) {
        std::size_t start = 0;
        while (start <= body.size() && !body.empty()) {
            const auto comma = body.find(',', start);
            const auto item = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw ParseError("expected key=value in '" + std::string(item) + "'");
            }
            std::string key(item.substr(0, eq));
            if (!values_.emplace(key, std::string(item.substr(eq + 1))).second) {
                throw ParseError("duplicate key '" + key + "'");
            }
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
    }

    std::optional<std::string> take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) {
            return std::nullopt;
        }
        auto value = it->second;
        values_.erase(it);
        return value;
    }

    std::string require(const std::string& key) {
        auto value = take(key);
        if (!value) {
            throw ParseError(std::string(family_) + " spec is missing required key '" + key + "'");
        }
        return *value;
    }

    void finish() const {
        if (!values_.empty()) {
            throw ParseError("unknown key '" + values_.begin()->first + "' for " + std::string(family_) + " spec");
        }
    }

  private:
    std::string_view family_;
    std::map<std::string, std::string> values_;
};

}  // namespace detail

inline TopologyParams parse_spec(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("topology spec '" + std::string(spec) + "' must look like family:key=value,...");
    }
    const auto family = spec.substr(0, colon);
    detail::KeyValues kv(family, spec.substr(colon + 1));

    auto hardware = [&](Family fam) {
        const auto nic_text = kv.take("nic_gbps");
        const auto sw_text = kv.take("switch_gbps");
        const auto nic_gbps = nic_text ? detail::parse_int("nic_gbps", *nic_text) : default_nic_gbps;
        const auto sw_gbps = sw_text ? detail::parse_int("switch_gbps", *sw_text) : default_switch_gbps;
        return with_hardware(std::move(fam), nic_gbps, sw_gbps);
    };

    TopologyParams out;
    if (family == "mphx") {
        MphxParams m;
        m.planes = detail::parse_small("n", kv.require("n"));
        m.nic_ports_per_switch = detail::parse_small("p", kv.require("p"));
        m.dims = detail::parse_int_list("dims", kv.require("dims"));
        const auto links = kv.take("links");
        const auto mult = kv.take("mult");
        if (links && mult) {
            throw ParseError("mphx spec may give 'links' or 'mult', not both");
        }
        if (links) {
            m.dim_links = detail::parse_int_list("links", *links, 0);
        } else if (mult) {
            m = mphx_with_multiplicities(m.planes, m.nic_ports_per_switch, m.dims, detail::parse_int_list("mult", *mult));
        }
        if (!m.dim_links.empty() && m.dim_links.size() != m.dims.size()) {
            throw ParseError("mphx 'links' list must have one entry per dimension");
        }
        out = hardware(m.normalized());
    } else if (family == "ft3") {
        out = hardware(FatTree3LParams{detail::parse_small("k", kv.require("k"))});
    } else if (family == "mpft2") {
        MpFatTree2LParams f;
        f.planes = detail::parse_small("n", kv.require("n"));
        f.radix = detail::parse_small("r", kv.require("r"));
        f.nics = detail::parse_int("nics", kv.require("nics"));
        out = hardware(f);
    } else if (family == "dfly") {
        DragonflyParams d;
        d.nics_per_switch = detail::parse_small("p", kv.require("p"));
        d.switches_per_group = detail::parse_small("a", kv.require("a"));
        d.global_ports = detail::parse_small("h", kv.require("h"));
        d.groups = detail::parse_small("g", kv.require("g"));
        out = hardware(d);
    } else if (family == "dflyplus") {
        DragonflyPlusParams d;
        d.leaves = detail::parse_small("leaves", kv.require("leaves"));
        d.spines = detail::parse_small("spines", kv.require("spines"));
        d.nics_per_leaf = detail::parse_small("npl", kv.require("npl"));
        d.groups = detail::parse_small("g", kv.require("g"));
        const auto up = kv.take("up");
        const auto global = kv.take("global");
        out = hardware(d);
        // Unspecified leaf/spine and global counts fill the switch radix.
        const int radix = out.sw.breakout_port_count;
        auto& dp = std::get<DragonflyPlusParams>(out.family);
        dp.uplinks_per_pair = up ? detail::parse_small("up", *up) : std::max(1, (radix - d.nics_per_leaf) / d.spines);
        dp.global_ports = global ? detail::parse_small("global", *global, 0) : radix - d.leaves * dp.uplinks_per_pair;
    } else {
        throw ParseError("unknown topology family '" + std::string(family) + "'");
    }
    kv.finish();
    return out;
}

/// Canonical spec string; parse_spec(format_spec(p)) == p.
inline std::string format_spec(const TopologyParams& params) {
    std::string out = std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, MphxParams>) {
                const auto m = f.normalized();
                std::string s = "mphx:n=" + std::to_string(m.planes) + ",p=" + std::to_string(m.nic_ports_per_switch) +
                                ",dims=" + detail::join_list(m.dims);
                if (!m.dim_links.empty()) {
                    s += ",links=" + detail::join_list(m.dim_links);
                }
                return s;
            } else if constexpr (std::is_same_v<T, FatTree3LParams>) {
                return "ft3:k=" + std::to_string(f.radix);
            } else if constexpr (std::is_same_v<T, MpFatTree2LParams>) {
                return "mpft2:n=" + std::to_string(f.planes) + ",r=" + std::to_string(f.radix) +
                       ",nics=" + std::to_string(f.nics);
            } else if constexpr (std::is_same_v<T, DragonflyParams>) {
                return "dfly:p=" + std::to_string(f.nics_per_switch) + ",a=" + std::to_string(f.switches_per_group) +
                       ",h=" + std::to_string(f.global_ports) + ",g=" + std::to_string(f.groups);
            } else {
                return "dflyplus:leaves=" + std::to_string(f.leaves) + ",spines=" + std::to_string(f.spines) +
                       ",npl=" + std::to_string(f.nics_per_leaf) + ",g=" + std::to_string(f.groups) +
                       ",up=" + std::to_string(f.uplinks_per_pair) + ",global=" + std::to_string(f.global_ports);
            }
        },
        params.family);
    if (params.nic.total_bandwidth_gbps != default_nic_gbps) {
        out += ",nic_gbps=" + std::to_string(params.nic.total_bandwidth_gbps);
    }
    if (params.sw.total_bandwidth_gbps != default_switch_gbps) {
        out += ",switch_gbps=" + std::to_string(params.sw.total_bandwidth_gbps);
    }
    return out;
}

/// Human label in the MPHX(n,p,D1,...) notation for HyperX families.
inline std::string family_label(const TopologyParams& params) {
    if (const auto* m = std::get_if<MphxParams>(&params.family)) {
        std::string s = "MPHX(" + std::to_string(m->planes) + "," + std::to_string(m->nic_ports_per_switch);
        for (int d : m->dims) {
            s += "," + std::to_string(d);
        }
        return s + ")";
    }
    return format_spec(params);
}

}  // namespace mphx
