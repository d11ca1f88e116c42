/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <tuple>
#include <variant>
#include <vector>

#include "mphx/error.hpp"
#include "mphx/rational.hpp"

namespace mphx {

using NodeId = std::int64_t;

/// Bandwidth of one port, link or transceiver.
struct Rate {
    std::int64_t gbps = 0;

    auto operator<=>(const Rate&) const = default;
};

/// "200G", "800G", "1.6T".
inline std::string rate_label(Rate rate) {
    if (rate.gbps >= 1000 && rate.gbps % 100 == 0) {
        const auto tenths = rate.gbps / 100;
        std::string out = std::to_string(tenths / 10);
        if (tenths % 10 != 0) {
            out += "." + std::to_string(tenths % 10);
        }
        return out + "T";
    }
    return std::to_string(rate.gbps) + "G";
}

enum class Medium { optical, copper };

inline const char* to_string(Medium medium) {
    return medium == Medium::optical ? "optical" : "copper";
}

/// A NIC with total outbound bandwidth B split evenly over n ports.
struct NicSpec {
    std::int64_t total_bandwidth_gbps = 1600;
    int port_count = 1;

    static constexpr int max_ports = 8;

    Rate port_rate() const { return Rate{total_bandwidth_gbps / port_count}; }

    void check() const {
        if (port_count < 1 || port_count > max_ports) {
            throw InfeasibleError("NIC port count must be in [1, 8], got " + std::to_string(port_count));
        }
        if (total_bandwidth_gbps <= 0 || total_bandwidth_gbps % port_count != 0) {
            throw InfeasibleError("NIC bandwidth " + std::to_string(total_bandwidth_gbps) + " Gbps does not split into " +
                                  std::to_string(port_count) + " equal ports");
        }
    }

    auto operator<=>(const NicSpec&) const = default;
};

/// A switch of total bandwidth B*k operated at one breakout granularity.
struct SwitchSpec {
    std::int64_t total_bandwidth_gbps = 102400;
    int breakout_port_count = 64;
    Rate breakout_rate{1600};

    std::string config_label() const {
        return std::to_string(breakout_port_count) + "x" + rate_label(breakout_rate);
    }

    void check() const {
        if (breakout_port_count < 1 || breakout_rate.gbps <= 0 ||
            static_cast<std::int64_t>(breakout_port_count) * breakout_rate.gbps != total_bandwidth_gbps) {
            throw InfeasibleError("switch breakout " + config_label() + " does not match total bandwidth " +
                                  std::to_string(total_bandwidth_gbps) + " Gbps");
        }
    }

    /// Base radix k at full NIC bandwidth.
    std::int64_t base_radix(const NicSpec& nic) const {
        if (total_bandwidth_gbps % nic.total_bandwidth_gbps != 0) {
            throw InfeasibleError("switch bandwidth is not an integer multiple of NIC bandwidth");
        }
        return total_bandwidth_gbps / nic.total_bandwidth_gbps;
    }

    auto operator<=>(const SwitchSpec&) const = default;
};

/// Switch configured so that its port rate equals the NIC port rate.
inline SwitchSpec matching_switch(std::int64_t switch_total_gbps, const NicSpec& nic) {
    const Rate rate = nic.port_rate();
    if (rate.gbps <= 0 || switch_total_gbps % rate.gbps != 0) {
        throw InfeasibleError("switch bandwidth " + std::to_string(switch_total_gbps) +
                              " Gbps is not divisible by port rate " + rate_label(rate));
    }
    return SwitchSpec{switch_total_gbps, static_cast<int>(switch_total_gbps / rate.gbps), rate};
}

struct BreakoutOption {
    int port_count = 0;
    Rate rate;

    auto operator<=>(const BreakoutOption&) const = default;
};

/// Every (n'k, B/n') switch breakout that pairs with a NIC split into n' ports,
/// n' in {1, 2, 4, 8} and n' dividing the NIC's configured port count.
inline std::vector<BreakoutOption> breakout_options(std::int64_t switch_total_gbps, const NicSpec& nic) {
    std::vector<BreakoutOption> out;
    for (int split : {1, 2, 4, 8}) {
        if (split > nic.port_count || nic.port_count % split != 0) {
            continue;
        }
        if (nic.total_bandwidth_gbps % split != 0) {
            continue;
        }
        const Rate rate{nic.total_bandwidth_gbps / split};
        if (switch_total_gbps % rate.gbps != 0) {
            continue;
        }
        out.push_back({static_cast<int>(switch_total_gbps / rate.gbps), rate});
    }
    return out;
}

// Family descriptors --------------------------------------------------------

/// MPHX(n, p, D1..DD). `dim_links[i]` is the number of links each switch
/// spends in dimension i; when empty every dimension uses one link per
/// neighbour (D_i - 1).
struct MphxParams {
    int planes = 1;
    int nic_ports_per_switch = 1;
    std::vector<int> dims;
    std::vector<int> dim_links;

    int links_in_dim(std::size_t i) const {
        return dim_links.empty() ? dims[i] - 1 : dim_links[i];
    }

    /// Average links per neighbour pair in dimension i.
    Rational multiplicity(std::size_t i) const {
        if (dims[i] <= 1) {
            return Rational(0);
        }
        return Rational(links_in_dim(i), dims[i] - 1);
    }

    std::int64_t switches_per_plane() const {
        std::int64_t out = 1;
        for (int d : dims) {
            out = checked_mul(out, d);
        }
        return out;
    }

    std::int64_t nic_count() const { return checked_mul(nic_ports_per_switch, switches_per_plane()); }

    /// Drops explicit link budgets that equal the default.
    MphxParams normalized() const {
        MphxParams out = *this;
        bool all_default = true;
        for (std::size_t i = 0; i < dims.size() && !dim_links.empty(); ++i) {
            all_default = all_default && dim_links[i] == dims[i] - 1;
        }
        if (all_default) {
            out.dim_links.clear();
        }
        return out;
    }

    bool operator==(const MphxParams& other) const {
        const auto a = normalized();
        const auto b = other.normalized();
        return a.planes == b.planes && a.nic_ports_per_switch == b.nic_ports_per_switch && a.dims == b.dims &&
               a.dim_links == b.dim_links;
    }
};

/// Equivalent of MPHX(n, p, D...) with one link per neighbour pair multiplied by `multiplicities`.
inline MphxParams mphx_with_multiplicities(int planes, int p, std::vector<int> dims, const std::vector<int>& mults) {
    MphxParams out{planes, p, std::move(dims), {}};
    if (!mults.empty()) {
        if (mults.size() != out.dims.size()) {
            throw InfeasibleError("multiplicity list length must match dimension count");
        }
        for (std::size_t i = 0; i < mults.size(); ++i) {
            out.dim_links.push_back((out.dims[i] - 1) * mults[i]);
        }
    }
    return out.normalized();
}

/// k-ary three-layer fat-tree.
struct FatTree3LParams {
    int radix = 0;

    bool operator==(const FatTree3LParams&) const = default;
};

/// n parallel two-layer leaf/spine planes serving `nics` NICs.
struct MpFatTree2LParams {
    int planes = 1;
    int radix = 0;
    std::int64_t nics = 0;

    std::int64_t leaves() const { return nics / (radix / 2); }
    std::int64_t spines() const { return leaves() / 2; }

    bool operator==(const MpFatTree2LParams&) const = default;
};

struct DragonflyParams {
    int nics_per_switch = 0;     // p
    int switches_per_group = 0;  // a
    int global_ports = 0;        // h
    int groups = 0;              // g

    bool operator==(const DragonflyParams&) const = default;
};

struct DragonflyPlusParams {
    int leaves = 0;
    int spines = 0;
    int nics_per_leaf = 0;
    int groups = 0;
    int uplinks_per_pair = 1;  // links between each leaf/spine pair
    int global_ports = 0;      // per spine

    bool operator==(const DragonflyPlusParams&) const = default;
};

using Family = std::variant<MphxParams, FatTree3LParams, MpFatTree2LParams, DragonflyParams, DragonflyPlusParams>;

struct TopologyParams {
    Family family;
    NicSpec nic;
    SwitchSpec sw;

    bool operator==(const TopologyParams&) const = default;
};

inline constexpr std::int64_t default_nic_gbps = 1600;
inline constexpr std::int64_t default_switch_gbps = 102400;

inline int family_planes(const Family& family) {
    if (const auto* m = std::get_if<MphxParams>(&family)) {
        return m->planes;
    }
    if (const auto* f = std::get_if<MpFatTree2LParams>(&family)) {
        return f->planes;
    }
    return 1;
}

/// Pairs a family with NICs split into one port per plane and switches broken
/// out to the matching port rate.
inline TopologyParams with_hardware(Family family, std::int64_t nic_gbps = default_nic_gbps,
                                    std::int64_t switch_gbps = default_switch_gbps) {
    NicSpec nic{nic_gbps, family_planes(family)};
    nic.check();
    SwitchSpec sw = matching_switch(switch_gbps, nic);
    return TopologyParams{std::move(family), nic, sw};
}

// Explicit graph ------------------------------------------------------------

enum class NodeKind { nic, switch_node };

struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::nic;
    int plane = -1;           // switches only
    std::vector<int> coords;  // switches only

    bool operator==(const Node&) const = default;
};

struct Link {
    NodeId a = 0;
    NodeId b = 0;
    Rate rate;
    int multiplicity = 1;
    Medium medium = Medium::optical;

    bool operator==(const Link&) const = default;
};

/// Generator bookkeeping: ports a construction rule could not fill.
struct BuildReport {
    std::int64_t link_shortfall = 0;
    std::vector<std::pair<NodeId, int>> port_deficits;  // (switch id, unused ports), id ascending
    std::vector<std::string> notes;

    int deficit_of(NodeId id) const {
        auto it = std::lower_bound(port_deficits.begin(), port_deficits.end(), std::pair<NodeId, int>{id, 0},
                                   [](const auto& x, const auto& y) { return x.first < y.first; });
        return (it != port_deficits.end() && it->first == id) ? it->second : 0;
    }

    bool operator==(const BuildReport&) const = default;
};

/// Immutable multi-plane graph. Node ids are dense (node i has id i); links
/// are stored once per endpoint pair with a < b, sorted by (a, b), parallel
/// links folded into the multiplicity.
class Topology {
  public:
    Topology() = default;

    Topology(TopologyParams params, int planes, std::vector<Node> nodes, std::vector<Link> links,
             BuildReport report = {})
        : params_(std::move(params)), planes_(planes), nodes_(std::move(nodes)), report_(std::move(report)) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].id != static_cast<NodeId>(i)) {
                throw Error("topology node ids must be dense and ordered");
            }
            if (nodes_[i].kind == NodeKind::nic) {
                ++nic_count_;
            }
        }
        for (auto& link : links) {
            if (link.a > link.b) {
                std::swap(link.a, link.b);
            }
        }
        std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) {
            return std::tie(x.a, x.b, x.rate, x.medium) < std::tie(y.a, y.b, y.rate, y.medium);
        });
        for (const auto& link : links) {
            if (!links_.empty()) {
                auto& last = links_.back();
                if (last.a == link.a && last.b == link.b && last.rate == link.rate && last.medium == link.medium) {
                    last.multiplicity += link.multiplicity;
                    continue;
                }
            }
            links_.push_back(link);
        }
    }

    const TopologyParams& params() const { return params_; }
    int planes() const { return planes_; }
    std::span<const Node> nodes() const { return nodes_; }
    std::span<const Link> links() const { return links_; }
    const BuildReport& report() const { return report_; }

    std::int64_t nic_count() const { return nic_count_; }
    std::int64_t switch_count() const { return static_cast<std::int64_t>(nodes_.size()) - nic_count_; }

    bool is_nic(NodeId id) const { return nodes_[static_cast<std::size_t>(id)].kind == NodeKind::nic; }
    const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }

  private:
    TopologyParams params_;
    int planes_ = 0;
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    BuildReport report_;
    std::int64_t nic_count_ = 0;
};

// Validation ----------------------------------------------------------------

enum class ViolationKind {
    dangling_endpoint,
    bad_multiplicity,
    nic_port_count,
    nic_plane_ports,
    switch_port_overflow,
    switch_port_mismatch,
    plane_disconnected,
    nic_to_nic_link,
    cross_plane_link,
};

inline const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::dangling_endpoint: return "dangling_endpoint";
        case ViolationKind::bad_multiplicity: return "bad_multiplicity";
        case ViolationKind::nic_port_count: return "nic_port_count";
        case ViolationKind::nic_plane_ports: return "nic_plane_ports";
        case ViolationKind::switch_port_overflow: return "switch_port_overflow";
        case ViolationKind::switch_port_mismatch: return "switch_port_mismatch";
        case ViolationKind::plane_disconnected: return "plane_disconnected";
        case ViolationKind::nic_to_nic_link: return "nic_to_nic_link";
        case ViolationKind::cross_plane_link: return "cross_plane_link";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::int64_t subject = 0;  // node id, link index, or plane depending on kind
    std::string message;
};

using ValidationReport = std::vector<Violation>;

namespace detail {

/// Number of ports the family's construction rule assigns to a switch.
inline std::int64_t nominal_switch_ports(const TopologyParams& params, const Node& sw) {
    return std::visit(
        [&](const auto& family) -> std::int64_t {
            using T = std::decay_t<decltype(family)>;
            if constexpr (std::is_same_v<T, MphxParams>) {
                std::int64_t ports = family.nic_ports_per_switch;
                for (std::size_t i = 0; i < family.dims.size(); ++i) {
                    ports += family.links_in_dim(i);
                }
                return ports;
            } else if constexpr (std::is_same_v<T, FatTree3LParams>) {
                return family.radix;
            } else if constexpr (std::is_same_v<T, MpFatTree2LParams>) {
                return family.radix;
            } else if constexpr (std::is_same_v<T, DragonflyParams>) {
                return static_cast<std::int64_t>(family.nics_per_switch) + family.switches_per_group - 1 +
                       (family.groups > 1 ? family.global_ports : 0);
            } else {
                const bool leaf = sw.coords.size() >= 2 && sw.coords[1] < family.leaves;
                if (leaf) {
                    return static_cast<std::int64_t>(family.nics_per_leaf) +
                           static_cast<std::int64_t>(family.spines) * family.uplinks_per_pair;
                }
                return static_cast<std::int64_t>(family.leaves) * family.uplinks_per_pair +
                       (family.groups > 1 ? family.global_ports : 0);
            }
        },
        params.family);
}

struct DisjointSet {
    std::vector<std::int64_t> parent;

    explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::int64_t find(std::int64_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& p = parent[static_cast<std::size_t>(x)];
            p = parent[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }

    void unite(std::int64_t a, std::int64_t b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace detail

/// Checks every structural invariant of a multi-plane topology. Violations
/// are returned as data; an empty report means the graph is well formed.
inline ValidationReport validate(const Topology& topo) {
    ValidationReport out;
    const auto nodes = topo.nodes();
    const auto links = topo.links();
    const auto node_count = static_cast<NodeId>(nodes.size());
    const int planes = topo.planes();
    const int nic_ports = topo.params().nic.port_count;

    std::vector<std::int64_t> used(nodes.size(), 0);
    // per NIC, per plane port counts
    std::vector<int> nic_plane(static_cast<std::size_t>(topo.nic_count()) * static_cast<std::size_t>(std::max(planes, 1)), 0);
    detail::DisjointSet components(nodes.size() * static_cast<std::size_t>(std::max(planes, 1)));
    // Node (id, plane) component index; NICs participate in every plane.
    const auto slot = [&](NodeId id, int plane) {
        return static_cast<std::int64_t>(plane) * node_count + id;
    };

    for (std::size_t li = 0; li < links.size(); ++li) {
        const auto& link = links[li];
        const auto index = static_cast<std::int64_t>(li);
        if (link.a < 0 || link.b < 0 || link.a >= node_count || link.b >= node_count) {
            out.push_back({ViolationKind::dangling_endpoint, index,
                           "link " + std::to_string(li) + " references a node that does not exist"});
            continue;
        }
        if (link.multiplicity < 1) {
            out.push_back({ViolationKind::bad_multiplicity, index,
                           "link " + std::to_string(li) + " has multiplicity " + std::to_string(link.multiplicity)});
        }
        used[static_cast<std::size_t>(link.a)] += link.multiplicity;
        used[static_cast<std::size_t>(link.b)] += link.multiplicity;
        const auto& na = nodes[static_cast<std::size_t>(link.a)];
        const auto& nb = nodes[static_cast<std::size_t>(link.b)];
        if (na.kind == NodeKind::nic && nb.kind == NodeKind::nic) {
            out.push_back({ViolationKind::nic_to_nic_link, index,
                           "link " + std::to_string(li) + " joins NICs " + std::to_string(link.a) + " and " +
                               std::to_string(link.b)});
            continue;
        }
        if (na.kind == NodeKind::switch_node && nb.kind == NodeKind::switch_node) {
            if (na.plane != nb.plane) {
                out.push_back({ViolationKind::cross_plane_link, index,
                               "link " + std::to_string(li) + " joins switches in planes " +
                                   std::to_string(na.plane) + " and " + std::to_string(nb.plane)});
                continue;
            }
            if (na.plane >= 0 && na.plane < planes) {
                components.unite(slot(link.a, na.plane), slot(link.b, na.plane));
            }
            continue;
        }
        const auto& nic = na.kind == NodeKind::nic ? na : nb;
        const auto& sw = na.kind == NodeKind::nic ? nb : na;
        if (sw.plane >= 0 && sw.plane < planes) {
            nic_plane[static_cast<std::size_t>(nic.id) * static_cast<std::size_t>(planes) +
                      static_cast<std::size_t>(sw.plane)] += link.multiplicity;
            components.unite(slot(nic.id, sw.plane), slot(sw.id, sw.plane));
        }
    }

    for (const auto& node : nodes) {
        const auto id = node.id;
        if (node.kind == NodeKind::nic) {
            if (used[static_cast<std::size_t>(id)] != nic_ports) {
                out.push_back({ViolationKind::nic_port_count, id,
                               "NIC " + std::to_string(id) + " uses " + std::to_string(used[static_cast<std::size_t>(id)]) +
                                   " ports, expected " + std::to_string(nic_ports)});
            }
            for (int q = 0; q < planes; ++q) {
                const int count = nic_plane[static_cast<std::size_t>(id) * static_cast<std::size_t>(planes) +
                                            static_cast<std::size_t>(q)];
                if (count != 1) {
                    out.push_back({ViolationKind::nic_plane_ports, id,
                                   "NIC " + std::to_string(id) + " has " + std::to_string(count) +
                                       " ports in plane " + std::to_string(q) + ", expected 1"});
                }
            }
            continue;
        }
        const auto ports = used[static_cast<std::size_t>(id)];
        if (ports > topo.params().sw.breakout_port_count) {
            out.push_back({ViolationKind::switch_port_overflow, id,
                           "switch " + std::to_string(id) + " uses " + std::to_string(ports) + " ports, radix is " +
                               std::to_string(topo.params().sw.breakout_port_count)});
        }
        const auto expected = detail::nominal_switch_ports(topo.params(), node) - topo.report().deficit_of(id);
        if (ports != expected) {
            out.push_back({ViolationKind::switch_port_mismatch, id,
                           "switch " + std::to_string(id) + " uses " + std::to_string(ports) +
                               " ports, construction rule assigns " + std::to_string(expected)});
        }
    }

    for (int q = 0; q < planes; ++q) {
        std::int64_t root = -1;
        bool connected = true;
        for (const auto& node : nodes) {
            if (node.kind == NodeKind::switch_node && node.plane != q) {
                continue;
            }
            const auto c = components.find(slot(node.id, q));
            if (root < 0) {
                root = c;
            } else if (c != root) {
                connected = false;
                break;
            }
        }
        if (!connected) {
            out.push_back({ViolationKind::plane_disconnected, q, "plane " + std::to_string(q) + " is not connected"});
        }
    }
    return out;
}

}  // namespace mphx
