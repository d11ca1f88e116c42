/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "mphx/cost_model.hpp"
#include "mphx/error.hpp"
#include "mphx/metrics.hpp"
#include "mphx/topo_model.hpp"

namespace mphx {

class NoFeasibleConfiguration : public InfeasibleError {
  public:
    using InfeasibleError::InfeasibleError;
};

struct SearchConstraints {
    std::int64_t target_nics = 65536;
    std::vector<int> plane_choices{1, 2, 4, 8};
    int max_dimensions = 3;
    Rational slack{1, 10};  // admit N in [target, target * (1 + slack))
    std::int64_t nic_gbps = default_nic_gbps;
    std::int64_t switch_gbps = default_switch_gbps;
    // Put every spare switch port into the last dimension instead of listing
    // the one-link-per-neighbour layout alongside the dimension-equalized one.
    bool require_full_port_use = false;
};

struct SearchResult {
    TopologyParams params;
    MetricsReport report;
    CostBreakdown cost;
};

namespace detail {

inline bool within_slack(std::int64_t nics, const SearchConstraints& c) {
    if (nics < c.target_nics) {
        return false;
    }
    // nics < target * (1 + slack)
    const Rational limit = Rational(c.target_nics) * (Rational(1) + c.slack);
    return Rational(nics) < limit;
}

/// Non-increasing dimension tuples with D1 as NIC ports per switch.
inline void enumerate_shapes(int radix, int dims_left, std::vector<int>& dims, std::int64_t product, int ports,
                             const SearchConstraints& c, std::vector<MphxParams>& out, int planes) {
    const int p = dims.front();
    const Rational upper = Rational(c.target_nics) * (Rational(1) + c.slack);
    if (Rational(product) >= upper) {
        return;
    }
    if (product >= c.target_nics) {
        out.push_back(MphxParams{planes, p, dims, {}});
    }
    if (dims_left == 0) {
        return;
    }
    for (int d = dims.back(); d >= 2; --d) {
        if (ports + d - 1 > radix) {
            continue;
        }
        dims.push_back(d);
        enumerate_shapes(radix, dims_left - 1, dims, product * d, ports + d - 1, c, out, planes);
        dims.pop_back();
    }
}

inline std::vector<MphxParams> variants_of(const MphxParams& shape, int radix, bool full_port_use) {
    int used = shape.nic_ports_per_switch;
    for (std::size_t i = 0; i < shape.dims.size(); ++i) {
        used += shape.links_in_dim(i);
    }
    const int spare = radix - used;
    std::vector<MphxParams> out;
    if (full_port_use) {
        MphxParams v = shape;
        if (spare > 0 && shape.dims.back() > 1) {
            v.dim_links.clear();
            for (std::size_t i = 0; i < shape.dims.size(); ++i) {
                v.dim_links.push_back(shape.links_in_dim(i));
            }
            v.dim_links.back() += spare;
        }
        out.push_back(v.normalized());
        return out;
    }
    out.push_back(shape);
    // Lower dimensions keep as many links per switch as the first, as far as
    // spare ports allow.
    if (shape.dims.size() >= 2 && spare > 0) {
        MphxParams v = shape;
        v.dim_links.clear();
        int left = spare;
        const int target = shape.dims.front() - 1;
        for (std::size_t i = 0; i < shape.dims.size(); ++i) {
            int links = shape.links_in_dim(i);
            if (i > 0 && links < target) {
                const int add = std::min(left, target - links);
                links += add;
                left -= add;
            }
            v.dim_links.push_back(links);
        }
        v = v.normalized();
        if (!(v == shape)) {
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace detail

/// MPHX configurations near a target NIC count, cheapest first. Ties break
/// on smaller diameter, then smaller N, then the parameters themselves.
inline std::vector<SearchResult> search(const SearchConstraints& c, const PriceTable& prices) {
    if (c.target_nics < 1) {
        throw InfeasibleError("target NIC count must be positive");
    }
    if (c.plane_choices.empty()) {
        throw InfeasibleError("at least one plane count is required");
    }
    if (c.max_dimensions < 1) {
        throw InfeasibleError("at least one dimension is required");
    }
    std::vector<SearchResult> results;
    for (int planes : c.plane_choices) {
        NicSpec nic{c.nic_gbps, planes};
        nic.check();
        const auto sw = matching_switch(c.switch_gbps, nic);
        const int radix = sw.breakout_port_count;
        std::vector<MphxParams> shapes;
        for (int d1 = 1; d1 <= radix; ++d1) {
            // p = D1 plus D1 - 1 mesh links must fit.
            if (2 * d1 - 1 > radix) {
                break;
            }
            std::vector<int> dims{d1};
            const std::int64_t product = static_cast<std::int64_t>(d1) * d1;
            const Rational upper = Rational(c.target_nics) * (Rational(1) + c.slack);
            if (Rational(product) >= upper) {
                break;
            }
            if (d1 == 1) {
                if (product >= c.target_nics) {
                    shapes.push_back(MphxParams{planes, 1, {1}, {}});
                }
                continue;
            }
            detail::enumerate_shapes(radix, c.max_dimensions - 1, dims, product, 2 * d1 - 1, c, shapes, planes);
        }
        for (const auto& shape : shapes) {
            for (const auto& m : detail::variants_of(shape, radix, c.require_full_port_use)) {
                TopologyParams params{m, nic, sw};
                try {
                    SearchResult r{params, analytic_report(params), {}};
                    r.cost = evaluate(r.report.counts, prices);
                    r.report.cost_per_nic_usd = r.cost.per_nic;
                    results.push_back(std::move(r));
                } catch (const InfeasibleError&) {
                    // odd fabric port sums cannot be wired
                }
            }
        }
    }
    if (results.empty()) {
        throw NoFeasibleConfiguration("no feasible MPHX configuration for " + std::to_string(c.target_nics) + " NICs");
    }
    std::sort(results.begin(), results.end(), [](const SearchResult& x, const SearchResult& y) {
        const auto& mx = std::get<MphxParams>(x.params.family);
        const auto& my = std::get<MphxParams>(y.params.family);
        const auto lx = mx.normalized();
        const auto ly = my.normalized();
        return std::tie(x.cost.per_nic, x.report.diameter_switch_hops, x.report.counts.nic_count, lx.planes, lx.dims,
                        lx.dim_links, lx.nic_ports_per_switch) <
               std::tie(y.cost.per_nic, y.report.diameter_switch_hops, y.report.counts.nic_count, ly.planes, ly.dims,
                        ly.dim_links, ly.nic_ports_per_switch);
    });
    return results;
}

}  // namespace mphx
