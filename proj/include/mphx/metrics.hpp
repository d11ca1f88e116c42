/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mphx/error.hpp"
#include "mphx/generators.hpp"
#include "mphx/rational.hpp"
#include "mphx/spec_string.hpp"
#include "mphx/topo_model.hpp"

namespace mphx {

struct ComponentCounts {
    std::int64_t nic_count = 0;     // N
    std::int64_t switch_count = 0;  // N_s
    std::map<Rate, std::int64_t> links_by_rate;            // every link, weighted by multiplicity
    std::map<Rate, std::int64_t> optical_modules_by_rate;  // N_o, two per optical link
    std::map<Rate, std::int64_t> copper_links_by_rate;

    std::int64_t total_links() const { return sum(links_by_rate); }
    std::int64_t total_optical_modules() const { return sum(optical_modules_by_rate); }
    std::int64_t total_copper_links() const { return sum(copper_links_by_rate); }

    bool operator==(const ComponentCounts&) const = default;

  private:
    static std::int64_t sum(const std::map<Rate, std::int64_t>& m) {
        std::int64_t out = 0;
        for (const auto& [rate, count] : m) {
            out += count;
        }
        return out;
    }
};

namespace detail {

inline void add_links(ComponentCounts& c, Rate rate, std::int64_t count, Medium medium) {
    if (count == 0) {
        return;
    }
    c.links_by_rate[rate] += count;
    if (medium == Medium::optical) {
        c.optical_modules_by_rate[rate] += 2 * count;
    } else {
        c.copper_links_by_rate[rate] += count;
    }
}

}  // namespace detail

/// Counts the realized graph. With `access_medium` copper every NIC link is
/// treated as copper regardless of how it was built.
inline ComponentCounts tally(const Topology& topo, Medium access_medium = Medium::optical) {
    ComponentCounts out;
    out.nic_count = topo.nic_count();
    out.switch_count = topo.switch_count();
    for (const auto& link : topo.links()) {
        const bool access = topo.is_nic(link.a) || topo.is_nic(link.b);
        const Medium medium = (access && access_medium == Medium::copper) ? Medium::copper : link.medium;
        detail::add_links(out, link.rate, link.multiplicity, medium);
    }
    return out;
}

/// Closed-form port accounting: access links + (switch fabric ports) / 2.
inline ComponentCounts analytic_counts(const TopologyParams& params, Medium access_medium = Medium::optical) {
    check_feasible(params);
    ComponentCounts out;
    const Rate rate = params.nic.port_rate();
    std::int64_t access = 0;
    std::int64_t fabric_endpoints = 0;
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, MphxParams>) {
                const auto per_plane = f.switches_per_plane();
                std::int64_t ports = 0;
                for (std::size_t i = 0; i < f.dims.size(); ++i) {
                    ports += f.links_in_dim(i);
                }
                out.nic_count = f.nic_count();
                out.switch_count = checked_mul(f.planes, per_plane);
                access = checked_mul(out.nic_count, f.planes);
                fabric_endpoints = checked_mul(out.switch_count, ports);
            } else if constexpr (std::is_same_v<T, FatTree3LParams>) {
                const std::int64_t k = f.radix;
                out.nic_count = k * k * k / 4;
                out.switch_count = 5 * k * k / 4;
                access = out.nic_count;
                fabric_endpoints = 4 * out.nic_count;  // edge-agg and agg-core layers, k^3/4 links each
            } else if constexpr (std::is_same_v<T, MpFatTree2LParams>) {
                out.nic_count = f.nics;
                out.switch_count = f.planes * (f.leaves() + f.spines());
                access = f.nics * f.planes;
                fabric_endpoints = 2 * f.planes * f.leaves() * (f.radix / 2);
            } else if constexpr (std::is_same_v<T, DragonflyParams>) {
                const std::int64_t a = f.switches_per_group;
                const std::int64_t g = f.groups;
                out.nic_count = static_cast<std::int64_t>(f.nics_per_switch) * a * g;
                out.switch_count = a * g;
                access = out.nic_count;
                fabric_endpoints = g * a * (a - 1) + (g > 1 ? a * g * f.global_ports : 0);
            } else {
                const std::int64_t g = f.groups;
                out.nic_count = static_cast<std::int64_t>(f.nics_per_leaf) * f.leaves * g;
                out.switch_count = static_cast<std::int64_t>(f.leaves + f.spines) * g;
                access = out.nic_count;
                fabric_endpoints = 2 * g * f.leaves * f.spines * f.uplinks_per_pair +
                                   (g > 1 ? g * f.spines * f.global_ports : 0);
            }
        },
        params.family);
    if (fabric_endpoints % 2 != 0) {
        throw InfeasibleError("switch fabric ports sum to an odd number; no link layout can use them all");
    }
    detail::add_links(out, rate, access, access_medium);
    detail::add_links(out, rate, fabric_endpoints / 2, Medium::optical);
    return out;
}

// Diameter ------------------------------------------------------------------

struct DiameterOptions {
    bool force_all_planes = false;  // skip the plane-symmetry shortcut
};

namespace detail {

/// Compressed adjacency of one plane's switches (local indices).
struct PlaneGraph {
    std::vector<NodeId> ids;  // local -> global
    std::vector<std::int64_t> offsets;
    std::vector<std::int64_t> targets;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // local, a < b, sorted
};

struct SwitchView {
    std::vector<PlaneGraph> planes;
    std::vector<std::int64_t> local;                 // global switch id -> local index (-1 for NICs)
    std::vector<std::vector<std::int64_t>> attach;   // NIC -> local switch per plane (-1 if none)
};

inline SwitchView switch_view(const Topology& topo) {
    SwitchView view;
    const int planes = topo.planes();
    view.planes.resize(static_cast<std::size_t>(planes));
    view.local.assign(topo.nodes().size(), -1);
    for (const auto& node : topo.nodes()) {
        if (node.kind == NodeKind::switch_node && node.plane >= 0 && node.plane < planes) {
            auto& pg = view.planes[static_cast<std::size_t>(node.plane)];
            view.local[static_cast<std::size_t>(node.id)] = static_cast<std::int64_t>(pg.ids.size());
            pg.ids.push_back(node.id);
        }
    }
    view.attach.assign(static_cast<std::size_t>(topo.nic_count()),
                       std::vector<std::int64_t>(static_cast<std::size_t>(planes), -1));
    for (const auto& link : topo.links()) {
        const auto& na = topo.node(link.a);
        const auto& nb = topo.node(link.b);
        if (na.kind == NodeKind::nic && nb.kind == NodeKind::switch_node) {
            view.attach[static_cast<std::size_t>(na.id)][static_cast<std::size_t>(nb.plane)] =
                view.local[static_cast<std::size_t>(nb.id)];
        } else if (nb.kind == NodeKind::nic && na.kind == NodeKind::switch_node) {
            view.attach[static_cast<std::size_t>(nb.id)][static_cast<std::size_t>(na.plane)] =
                view.local[static_cast<std::size_t>(na.id)];
        } else if (na.kind == NodeKind::switch_node && na.plane == nb.plane) {
            auto& pg = view.planes[static_cast<std::size_t>(na.plane)];
            pg.edges.emplace_back(view.local[static_cast<std::size_t>(na.id)], view.local[static_cast<std::size_t>(nb.id)]);
        }
    }
    for (auto& pg : view.planes) {
        const auto n = pg.ids.size();
        std::vector<std::int64_t> degree(n, 0);
        for (auto& [u, v] : pg.edges) {
            if (u > v) {
                std::swap(u, v);
            }
            ++degree[static_cast<std::size_t>(u)];
            ++degree[static_cast<std::size_t>(v)];
        }
        std::sort(pg.edges.begin(), pg.edges.end());
        pg.offsets.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            pg.offsets[i + 1] = pg.offsets[i] + degree[i];
        }
        pg.targets.assign(static_cast<std::size_t>(pg.offsets[n]), 0);
        std::vector<std::int64_t> fill(pg.offsets.begin(), pg.offsets.end() - 1);
        for (const auto& [u, v] : pg.edges) {
            pg.targets[static_cast<std::size_t>(fill[static_cast<std::size_t>(u)]++)] = v;
            pg.targets[static_cast<std::size_t>(fill[static_cast<std::size_t>(v)]++)] = u;
        }
    }
    return view;
}

inline void bfs(const PlaneGraph& pg, std::int64_t source, std::vector<int>& dist, std::vector<std::int64_t>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    dist[static_cast<std::size_t>(source)] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto u = queue[head];
        const int next = dist[static_cast<std::size_t>(u)] + 1;
        for (auto e = pg.offsets[static_cast<std::size_t>(u)]; e < pg.offsets[static_cast<std::size_t>(u) + 1]; ++e) {
            const auto v = pg.targets[static_cast<std::size_t>(e)];
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = next;
                queue.push_back(v);
            }
        }
    }
}

inline bool planes_match(const SwitchView& view) {
    if (view.planes.size() <= 1) {
        return true;
    }
    const auto& first = view.planes.front();
    for (std::size_t q = 1; q < view.planes.size(); ++q) {
        if (view.planes[q].ids.size() != first.ids.size() || view.planes[q].edges != first.edges) {
            return false;
        }
    }
    for (const auto& per_plane : view.attach) {
        for (std::size_t q = 1; q < per_plane.size(); ++q) {
            if (per_plane[q] != per_plane[0]) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace detail

/// True when every plane's switch graph and NIC attachment equal plane 0's
/// under the identity map on local switch index.
inline bool planes_symmetric(const Topology& topo) {
    return detail::planes_match(detail::switch_view(topo));
}

/// Max over NIC pairs of the fewest switch-to-switch links on any path, the
/// minimum taken over planes. NICs sharing an access switch contribute 0.
inline int diameter_switch_hops(const Topology& topo, DiameterOptions options = {}) {
    const auto view = detail::switch_view(topo);
    const int planes = topo.planes();
    for (const auto& per_plane : view.attach) {
        for (int q = 0; q < planes; ++q) {
            if (per_plane[static_cast<std::size_t>(q)] < 0) {
                throw InfeasibleError("a NIC has no port in plane " + std::to_string(q));
            }
        }
    }
    const bool shortcut = !options.force_all_planes && detail::planes_match(view);
    const int used_planes = shortcut ? std::min(planes, 1) : planes;

    // Distinct attachment signatures (one access switch per used plane).
    std::vector<std::vector<std::int64_t>> signatures;
    signatures.reserve(view.attach.size());
    for (const auto& per_plane : view.attach) {
        signatures.emplace_back(per_plane.begin(), per_plane.begin() + used_planes);
    }
    std::sort(signatures.begin(), signatures.end());
    signatures.erase(std::unique(signatures.begin(), signatures.end()), signatures.end());
    if (signatures.size() <= 1) {
        return 0;
    }

    std::vector<std::vector<int>> dist(static_cast<std::size_t>(used_planes));
    for (int q = 0; q < used_planes; ++q) {
        dist[static_cast<std::size_t>(q)].resize(view.planes[static_cast<std::size_t>(q)].ids.size());
    }
    std::vector<std::int64_t> queue;
    int diameter = 0;
    for (const auto& src : signatures) {
        for (int q = 0; q < used_planes; ++q) {
            detail::bfs(view.planes[static_cast<std::size_t>(q)], src[static_cast<std::size_t>(q)],
                        dist[static_cast<std::size_t>(q)], queue);
        }
        for (const auto& dst : signatures) {
            int best = std::numeric_limits<int>::max();
            for (int q = 0; q < used_planes; ++q) {
                const int d = dist[static_cast<std::size_t>(q)][static_cast<std::size_t>(dst[static_cast<std::size_t>(q)])];
                if (d < 0) {
                    throw InfeasibleError("plane " + std::to_string(q) + " is disconnected");
                }
                best = std::min(best, d);
            }
            diameter = std::max(diameter, best);
        }
    }
    return diameter;
}

/// Closed-form diameter per family.
inline int analytic_diameter(const TopologyParams& params) {
    check_feasible(params);
    return std::visit(
        [](const auto& f) -> int {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, MphxParams>) {
                return static_cast<int>(std::count_if(f.dims.begin(), f.dims.end(), [](int d) { return d > 1; }));
            } else if constexpr (std::is_same_v<T, FatTree3LParams>) {
                return 4;
            } else if constexpr (std::is_same_v<T, MpFatTree2LParams>) {
                return 2;
            } else if constexpr (std::is_same_v<T, DragonflyParams>) {
                if (f.groups == 1) {
                    return f.switches_per_group > 1 ? 1 : 0;
                }
                return f.switches_per_group > 1 ? 3 : 1;
            } else {
                if (f.groups == 1) {
                    return f.leaves > 1 ? 2 : 0;
                }
                return 3;
            }
        },
        params.family);
}

// Bisection -----------------------------------------------------------------

/// Relative bisection bandwidth; nullopt when no inter-switch cut exists.
using Bisection = std::optional<Rational>;

inline std::string to_string(const Bisection& beta, int places = 4) {
    return beta ? to_decimal(*beta, places) : "unbounded";
}

namespace detail {

/// Cheapest balanced cut that sends `s` of `units` blocks to one side; a block
/// holds `nics_per_unit` NICs and the blocks are joined by `cut(s)` bandwidth.
/// NICs whose block sits on the far side pay one unit of NIC bandwidth each.
template <typename CutFn>
Rational best_block_cut(std::int64_t units, std::int64_t nics_per_unit, std::int64_t nics, CutFn cut) {
    const std::int64_t half = nics / 2;
    std::optional<Rational> best;
    for (std::int64_t s = 0; s <= units; ++s) {
        const auto moved = nics_per_unit * s - half;
        const Rational value = cut(s) + Rational(moved < 0 ? -moved : moved);
        if (!best || value < *best) {
            best = value;
        }
    }
    return *best;
}

}  // namespace detail

/// Balanced-cut estimate from parameters. Every candidate evaluated is a
/// realizable balanced bipartition, so the result bounds the true minimum
/// from above. Bandwidth is counted in units of full NIC bandwidth B.
inline Bisection bisection_estimate(const TopologyParams& params) {
    check_feasible(params);
    return std::visit(
        [&](const auto& f) -> Bisection {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, MphxParams>) {
                const auto nics = f.nic_count();
                if (f.switches_per_plane() <= 1 || nics < 2) {
                    return std::nullopt;
                }
                std::optional<Rational> best;
                for (std::size_t i = 0; i < f.dims.size(); ++i) {
                    const std::int64_t d = f.dims[i];
                    if (d <= 1) {
                        continue;
                    }
                    const std::int64_t slice = f.switches_per_plane() / d;
                    // One plane's links carry B/n; all n planes are cut alike.
                    const Rational m = f.multiplicity(i);
                    const auto value = detail::best_block_cut(d, slice * f.nic_ports_per_switch, nics, [&](std::int64_t s) {
                        return m * (s * (d - s) * slice);
                    });
                    if (!best || value < *best) {
                        best = value;
                    }
                }
                return *best / Rational(nics, 2);
            } else if constexpr (std::is_same_v<T, FatTree3LParams> || std::is_same_v<T, MpFatTree2LParams>) {
                return Rational(1);
            } else if constexpr (std::is_same_v<T, DragonflyParams>) {
                const std::int64_t a = f.switches_per_group;
                const std::int64_t g = f.groups;
                const std::int64_t nics = f.nics_per_switch * a * g;
                if (a * g <= 1 || nics < 2) {
                    return std::nullopt;
                }
                Rational value;
                if (g == 1) {
                    value = detail::best_block_cut(a, f.nics_per_switch, nics,
                                                   [&](std::int64_t s) { return Rational(s * (a - s)); });
                } else {
                    const Rational per_pair(a * f.global_ports, g - 1);
                    value = detail::best_block_cut(g, f.nics_per_switch * a, nics,
                                                   [&](std::int64_t s) { return per_pair * (s * (g - s)); });
                }
                return value / Rational(nics, 2);
            } else {
                const std::int64_t L = f.leaves;
                const std::int64_t g = f.groups;
                const std::int64_t nics = f.nics_per_leaf * L * g;
                if (nics < 2) {
                    return std::nullopt;
                }
                Rational value;
                if (g == 1) {
                    // Each spine sits with the larger leaf side.
                    value = detail::best_block_cut(L, f.nics_per_leaf, nics, [&](std::int64_t s) {
                        return Rational(static_cast<std::int64_t>(f.spines) * f.uplinks_per_pair * std::min(s, L - s));
                    });
                } else {
                    const Rational per_pair(static_cast<std::int64_t>(f.spines) * f.global_ports, g - 1);
                    value = detail::best_block_cut(g, f.nics_per_leaf * L, nics,
                                                   [&](std::int64_t s) { return per_pair * (s * (g - s)); });
                }
                return value / Rational(nics, 2);
            }
        },
        params.family);
}

inline constexpr std::int64_t bruteforce_max_nics = 16;
inline constexpr std::int64_t bruteforce_max_switches = 20;

/// Exact minimum balanced-cut bandwidth by exhaustive search over switch side
/// assignments. For a fixed switch assignment each NIC's crossing cost on
/// either side is known, so the optimal balanced NIC split takes the floor(N/2)
/// NICs with the smallest (cost on A - cost on B) for side A.
inline Bisection bisection_bruteforce(const Topology& topo) {
    const auto nics = topo.nic_count();
    const auto switches = topo.switch_count();
    if (nics > bruteforce_max_nics || switches > bruteforce_max_switches) {
        throw InfeasibleError("exhaustive bisection is limited to " + std::to_string(bruteforce_max_nics) + " NICs and " +
                              std::to_string(bruteforce_max_switches) + " switches");
    }
    struct NicLink {
        std::int64_t nic;
        std::int64_t sw;  // switch index 0..switches-1
        std::int64_t bw;
    };
    struct FabricLink {
        std::int64_t u, v, bw;
    };
    std::vector<NicLink> access;
    std::vector<FabricLink> fabric;
    for (const auto& link : topo.links()) {
        const auto bw = link.rate.gbps * link.multiplicity;
        const bool a_nic = topo.is_nic(link.a);
        const bool b_nic = topo.is_nic(link.b);
        if (a_nic && !b_nic) {
            access.push_back({link.a, link.b - nics, bw});
        } else if (b_nic && !a_nic) {
            access.push_back({link.b, link.a - nics, bw});
        } else if (!a_nic && !b_nic) {
            fabric.push_back({link.a - nics, link.b - nics, bw});
        }
    }
    if (fabric.empty() || nics < 2) {
        return std::nullopt;
    }
    const std::int64_t half = nics / 2;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> cost_a(static_cast<std::size_t>(nics));
    std::vector<std::int64_t> cost_b(static_cast<std::size_t>(nics));
    std::vector<std::int64_t> delta(static_cast<std::size_t>(nics));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << switches); ++mask) {
        const auto on_a = [&](std::int64_t sw) { return ((mask >> sw) & 1U) != 0; };
        std::int64_t cut = 0;
        for (const auto& e : fabric) {
            if (on_a(e.u) != on_a(e.v)) {
                cut += e.bw;
            }
        }
        std::fill(cost_a.begin(), cost_a.end(), 0);
        std::fill(cost_b.begin(), cost_b.end(), 0);
        for (const auto& e : access) {
            // NIC on A crosses to switches on B and vice versa.
            (on_a(e.sw) ? cost_b : cost_a)[static_cast<std::size_t>(e.nic)] += e.bw;
        }
        std::int64_t base = 0;
        for (std::int64_t j = 0; j < nics; ++j) {
            base += cost_b[static_cast<std::size_t>(j)];
            delta[static_cast<std::size_t>(j)] = cost_a[static_cast<std::size_t>(j)] - cost_b[static_cast<std::size_t>(j)];
        }
        std::nth_element(delta.begin(), delta.begin() + half, delta.end());
        std::int64_t total = cut + base;
        for (std::int64_t j = 0; j < half; ++j) {
            total += delta[static_cast<std::size_t>(j)];
        }
        best = std::min(best, total);
    }
    const auto nic_bw = topo.params().nic.total_bandwidth_gbps;
    return Rational(best, 1) / (Rational(nics, 2) * nic_bw);
}

// Reports -------------------------------------------------------------------

struct MetricsReport {
    std::string topology;  // canonical spec string
    ComponentCounts counts;
    int diameter_switch_hops = 0;
    Bisection relative_bisection;
    std::optional<Bisection> exact_bisection;  // set when brute force ran
    std::optional<Rational> cost_per_nic_usd;
    std::int64_t link_shortfall = 0;
    TopologyParams params;
};

/// Report from closed forms only.
inline MetricsReport analytic_report(const TopologyParams& params, Medium access_medium = Medium::optical) {
    MetricsReport r;
    r.topology = format_spec(params);
    r.counts = analytic_counts(params, access_medium);
    r.diameter_switch_hops = analytic_diameter(params);
    r.relative_bisection = bisection_estimate(params);
    r.params = params;
    return r;
}

/// Report measured on a realized graph; brute-force bisection runs when the
/// instance is small enough.
inline MetricsReport measured_report(const Topology& topo, Medium access_medium = Medium::optical) {
    MetricsReport r;
    r.params = topo.params();
    r.topology = format_spec(r.params);
    r.counts = tally(topo, access_medium);
    r.diameter_switch_hops = diameter_switch_hops(topo);
    r.relative_bisection = bisection_estimate(r.params);
    r.link_shortfall = topo.report().link_shortfall;
    if (topo.nic_count() <= bruteforce_max_nics && topo.switch_count() <= bruteforce_max_switches) {
        r.exact_bisection = bisection_bruteforce(topo);
    }
    return r;
}

}  // namespace mphx
