/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

// Hand-rolled parameter generators and graph oracles that share no code with
// the library beyond the Topology container.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "mphx/mphx.hpp"

namespace mphx::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random feasible MPHX with p*prod(D) switch-count bound `max_switches`.
/// Link budgets are left at the default or raised within the radix.
inline TopologyParams random_mphx(Rng& rng, std::int64_t max_switches, bool allow_extra_links = true) {
    static constexpr int plane_choices[] = {1, 2, 4, 8};
    const int planes = plane_choices[uniform(rng, 0, 3)];
    const NicSpec nic{default_nic_gbps, planes};
    const auto sw = matching_switch(default_switch_gbps, nic);
    const int radix = sw.breakout_port_count;
    for (;;) {
        const int dcount = uniform(rng, 1, 3);
        std::vector<int> dims;
        std::int64_t product = 1;
        for (int i = 0; i < dcount; ++i) {
            const int cap = static_cast<int>(std::min<std::int64_t>(40, max_switches / product));
            if (cap < 1) {
                break;
            }
            const int d = uniform(rng, 1, cap);
            dims.push_back(d);
            product *= d;
        }
        if (dims.empty()) {
            continue;
        }
        int ports = 0;
        for (int d : dims) {
            ports += d - 1;
        }
        if (ports >= radix) {
            continue;
        }
        const int p = uniform(rng, 1, std::min(radix - ports, 64));
        MphxParams m{planes, p, dims, {}};
        int spare = radix - ports - p;
        if (allow_extra_links && spare > 0 && uniform(rng, 0, 1) == 1) {
            for (std::size_t i = 0; i < dims.size(); ++i) {
                m.dim_links.push_back(dims[i] - 1);
            }
            const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(dims.size()) - 1));
            if (dims[i] > 1) {
                m.dim_links[i] += uniform(rng, 0, spare);
            }
            m = m.normalized();
        }
        return TopologyParams{m, nic, sw};
    }
}

/// Per-node port usage counted directly from the link list.
inline std::vector<std::int64_t> port_usage(const Topology& topo) {
    std::vector<std::int64_t> used(topo.nodes().size(), 0);
    for (const auto& l : topo.links()) {
        used[static_cast<std::size_t>(l.a)] += l.multiplicity;
        used[static_cast<std::size_t>(l.b)] += l.multiplicity;
    }
    return used;
}

inline std::int64_t total_links(const Topology& topo) {
    std::int64_t total = 0;
    for (const auto& l : topo.links()) {
        total += l.multiplicity;
    }
    return total;
}

inline std::int64_t access_links(const Topology& topo) {
    std::int64_t total = 0;
    for (const auto& l : topo.links()) {
        if (topo.is_nic(l.a) || topo.is_nic(l.b)) {
            total += l.multiplicity;
        }
    }
    return total;
}

/// Inter-switch hops between two NICs: min over planes of the shortest
/// switch path, measured with a plain BFS on an adjacency-set graph.
inline int oracle_diameter(const Topology& topo) {
    const auto n = topo.nodes().size();
    std::vector<std::set<NodeId>> adj(n);
    for (const auto& l : topo.links()) {
        adj[static_cast<std::size_t>(l.a)].insert(l.b);
        adj[static_cast<std::size_t>(l.b)].insert(l.a);
    }
    auto switch_bfs = [&](NodeId src) {
        std::vector<int> dist(n, -1);
        std::queue<NodeId> q;
        dist[static_cast<std::size_t>(src)] = 0;
        q.push(src);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto v : adj[static_cast<std::size_t>(u)]) {
                if (!topo.is_nic(v) && dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
            }
        }
        return dist;
    };
    std::map<NodeId, std::vector<int>> cache;
    auto dist_from = [&](NodeId sw) -> const std::vector<int>& {
        auto it = cache.find(sw);
        if (it == cache.end()) {
            it = cache.emplace(sw, switch_bfs(sw)).first;
        }
        return it->second;
    };
    std::vector<NodeId> nics;
    for (const auto& node : topo.nodes()) {
        if (node.kind == NodeKind::nic) {
            nics.push_back(node.id);
        }
    }
    int worst = 0;
    for (std::size_t i = 0; i < nics.size(); ++i) {
        for (std::size_t j = i + 1; j < nics.size(); ++j) {
            int best = -1;
            for (auto s : adj[static_cast<std::size_t>(nics[i])]) {
                const auto& d = dist_from(s);
                for (auto t : adj[static_cast<std::size_t>(nics[j])]) {
                    if (topo.node(s).plane != topo.node(t).plane) {
                        continue;
                    }
                    const int h = d[static_cast<std::size_t>(t)];
                    if (h >= 0 && (best < 0 || h < best)) {
                        best = h;
                    }
                }
            }
            worst = std::max(worst, best);
        }
    }
    return worst;
}

/// Copy of `topo` with link `index` reduced by one (removed at multiplicity 1).
inline Topology without_one_link(const Topology& topo, std::size_t index) {
    std::vector<Node> nodes(topo.nodes().begin(), topo.nodes().end());
    std::vector<Link> links(topo.links().begin(), topo.links().end());
    if (links[index].multiplicity > 1) {
        --links[index].multiplicity;
    } else {
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(index));
    }
    return Topology(topo.params(), topo.planes(), std::move(nodes), std::move(links), topo.report());
}

inline bool has_violation(const ValidationReport& report, ViolationKind kind, NodeId subject) {
    return std::any_of(report.begin(), report.end(),
                       [&](const Violation& v) { return v.kind == kind && v.subject == subject; });
}

inline bool has_violation(const ValidationReport& report, ViolationKind kind) {
    return std::any_of(report.begin(), report.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace mphx::testing
