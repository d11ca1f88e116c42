/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <map>
#include <string>
#include <vector>

#include "mphx/error.hpp"
#include "mphx/topo_model.hpp"

namespace mphx {

struct BuildOptions {
    Medium access_medium = Medium::optical;  // NIC-to-switch links
    Medium fabric_medium = Medium::optical;  // switch-to-switch links
};

// Feasibility ---------------------------------------------------------------

namespace detail {

inline void check_hardware(const NicSpec& nic, const SwitchSpec& sw, int planes) {
    nic.check();
    sw.check();
    if (nic.port_count != planes) {
        throw InfeasibleError("NIC has " + std::to_string(nic.port_count) + " ports but the topology has " +
                              std::to_string(planes) + " planes");
    }
    if (sw.breakout_rate != nic.port_rate()) {
        throw InfeasibleError("switch port rate " + rate_label(sw.breakout_rate) + " does not match NIC port rate " +
                              rate_label(nic.port_rate()));
    }
}

inline void check_radix(std::int64_t needed, int radix, const std::string& what) {
    if (needed > radix) {
        throw InfeasibleError(what + " needs " + std::to_string(needed) + " ports, switch radix is " +
                              std::to_string(radix));
    }
}

}  // namespace detail

inline void check_feasible(const MphxParams& m, const NicSpec& nic, const SwitchSpec& sw) {
    if (m.planes < 1 || m.planes > NicSpec::max_ports) {
        throw InfeasibleError("MPHX plane count must be in [1, 8], got " + std::to_string(m.planes));
    }
    detail::check_hardware(nic, sw, m.planes);
    if (m.nic_ports_per_switch < 1) {
        throw InfeasibleError("MPHX needs at least one NIC port per switch");
    }
    if (m.dims.empty()) {
        throw InfeasibleError("MPHX needs at least one dimension");
    }
    if (!m.dim_links.empty() && m.dim_links.size() != m.dims.size()) {
        throw InfeasibleError("MPHX link budget list must have one entry per dimension");
    }
    std::int64_t ports = m.nic_ports_per_switch;
    for (std::size_t i = 0; i < m.dims.size(); ++i) {
        const auto name = "dimension " + std::to_string(i + 1);
        if (m.dims[i] < 1) {
            throw InfeasibleError(name + " must have at least one switch");
        }
        const int links = m.links_in_dim(i);
        if (links < m.dims[i] - 1) {
            throw InfeasibleError(name + " has " + std::to_string(links) + " links per switch, a full mesh needs " +
                                  std::to_string(m.dims[i] - 1));
        }
        if (m.dims[i] == 1 && links != 0) {
            throw InfeasibleError(name + " has a single switch and cannot carry links");
        }
        ports += links;
        if (ports > sw.breakout_port_count) {
            throw InfeasibleError("MPHX port budget exceeded in " + name + ": " + std::to_string(ports) +
                                  " ports needed, switch radix is " + std::to_string(sw.breakout_port_count));
        }
    }
    (void)m.nic_count();  // overflow check
}

inline void check_feasible(const FatTree3LParams& f, const NicSpec& nic, const SwitchSpec& sw) {
    detail::check_hardware(nic, sw, 1);
    if (f.radix < 2 || f.radix % 2 != 0) {
        throw InfeasibleError("3-layer fat-tree radix must be even and >= 2, got " + std::to_string(f.radix));
    }
    detail::check_radix(f.radix, sw.breakout_port_count, "3-layer fat-tree switch");
}

inline void check_feasible(const MpFatTree2LParams& f, const NicSpec& nic, const SwitchSpec& sw) {
    if (f.planes < 1 || f.planes > NicSpec::max_ports) {
        throw InfeasibleError("plane count must be in [1, 8], got " + std::to_string(f.planes));
    }
    detail::check_hardware(nic, sw, f.planes);
    if (f.radix < 2 || f.radix % 2 != 0) {
        throw InfeasibleError("2-layer fat-tree radix must be even and >= 2, got " + std::to_string(f.radix));
    }
    detail::check_radix(f.radix, sw.breakout_port_count, "2-layer fat-tree switch");
    const std::int64_t down = f.radix / 2;
    if (f.nics < 1 || f.nics % down != 0) {
        throw InfeasibleError("NIC count " + std::to_string(f.nics) + " is not a multiple of leaf down-ports " +
                              std::to_string(down));
    }
    const auto leaves = f.nics / down;
    if (leaves > f.radix) {
        throw InfeasibleError("NIC count " + std::to_string(f.nics) + " exceeds the 2-layer maximum r^2/2 = " +
                              std::to_string(static_cast<std::int64_t>(f.radix) * f.radix / 2));
    }
    if (leaves % 2 != 0) {
        throw InfeasibleError("leaf count " + std::to_string(leaves) + " must be even");
    }
    if (down % (leaves / 2) != 0) {
        throw InfeasibleError("leaf up-ports " + std::to_string(down) + " do not divide evenly over " +
                              std::to_string(leaves / 2) + " spines");
    }
}

inline void check_feasible(const DragonflyParams& d, const NicSpec& nic, const SwitchSpec& sw) {
    detail::check_hardware(nic, sw, 1);
    if (d.nics_per_switch < 1 || d.switches_per_group < 1 || d.global_ports < 0 || d.groups < 1) {
        throw InfeasibleError("dragonfly parameters must be positive");
    }
    detail::check_radix(static_cast<std::int64_t>(d.nics_per_switch) + d.switches_per_group - 1 + d.global_ports,
                        sw.breakout_port_count, "dragonfly switch");
    const auto group_ports = static_cast<std::int64_t>(d.switches_per_group) * d.global_ports;
    if (d.groups > group_ports + 1) {
        throw InfeasibleError("dragonfly with " + std::to_string(d.groups) + " groups needs g <= a*h+1 = " +
                              std::to_string(group_ports + 1));
    }
}

inline void check_feasible(const DragonflyPlusParams& d, const NicSpec& nic, const SwitchSpec& sw) {
    detail::check_hardware(nic, sw, 1);
    if (d.leaves < 1 || d.spines < 1 || d.nics_per_leaf < 1 || d.groups < 1 || d.uplinks_per_pair < 1 ||
        d.global_ports < 0) {
        throw InfeasibleError("dragonfly+ parameters must be positive");
    }
    detail::check_radix(static_cast<std::int64_t>(d.nics_per_leaf) + static_cast<std::int64_t>(d.spines) * d.uplinks_per_pair,
                        sw.breakout_port_count, "dragonfly+ leaf");
    detail::check_radix(static_cast<std::int64_t>(d.leaves) * d.uplinks_per_pair + d.global_ports,
                        sw.breakout_port_count, "dragonfly+ spine");
    const auto group_ports = static_cast<std::int64_t>(d.spines) * d.global_ports;
    if (d.groups > group_ports + 1) {
        throw InfeasibleError("dragonfly+ with " + std::to_string(d.groups) + " groups needs g <= spines*global+1 = " +
                              std::to_string(group_ports + 1));
    }
}

inline void check_feasible(const TopologyParams& params) {
    std::visit([&](const auto& f) { check_feasible(f, params.nic, params.sw); }, params.family);
}

// Construction helpers ------------------------------------------------------

namespace detail {

/// Per-pair link multiplicities for one HyperX dimension of `size` switches
/// where every switch spends `links` ports. Uniform base multiplicity plus a
/// circulant spread of the remainder; odd degree sums leave one switch short.
struct DimensionMesh {
    int size = 1;
    std::vector<int> mult;          // size*size, symmetric
    std::vector<int> short_coords;  // coordinates left one port short

    int at(int u, int v) const { return mult[static_cast<std::size_t>(u) * static_cast<std::size_t>(size) + static_cast<std::size_t>(v)]; }
};

inline DimensionMesh dimension_mesh(int size, int links) {
    DimensionMesh mesh;
    mesh.size = size;
    mesh.mult.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
    if (size <= 1) {
        return mesh;
    }
    const auto add = [&](int u, int v) {
        ++mesh.mult[static_cast<std::size_t>(u) * static_cast<std::size_t>(size) + static_cast<std::size_t>(v)];
        ++mesh.mult[static_cast<std::size_t>(v) * static_cast<std::size_t>(size) + static_cast<std::size_t>(u)];
    };
    const int base = links / (size - 1);
    const int extra = links % (size - 1);
    for (int u = 0; u < size; ++u) {
        for (int v = u + 1; v < size; ++v) {
            for (int i = 0; i < base; ++i) {
                add(u, v);
            }
        }
    }
    // Offsets 1..extra/2 in both directions give every switch 2*(extra/2) more.
    for (int offset = 1; offset <= extra / 2; ++offset) {
        for (int c = 0; c < size; ++c) {
            add(c, (c + offset) % size);
        }
    }
    if (extra % 2 == 1) {
        if (size % 2 == 0) {
            for (int c = 0; c < size / 2; ++c) {
                add(c, c + size / 2);
            }
        } else {
            // Alternate edges of the offset-(size-1)/2 Hamiltonian cycle; the
            // closing edge back to coordinate 0 is dropped.
            const int step = (size - 1) / 2;
            std::vector<int> cycle(static_cast<std::size_t>(size));
            for (int i = 0; i < size; ++i) {
                cycle[static_cast<std::size_t>(i)] = static_cast<int>((static_cast<std::int64_t>(i) * step) % size);
            }
            for (int i = 0; i + 1 < size; i += 2) {
                add(cycle[static_cast<std::size_t>(i)], cycle[static_cast<std::size_t>(i + 1)]);
            }
            mesh.short_coords.push_back(cycle.back());
        }
    }
    return mesh;
}

/// Group-pair global link multiplicities: uniform base, remaining ports handed
/// out one link at a time over pairs in (min, max) order until no pair can
/// take another. `leftover[x]` counts ports of group x that stayed unused.
struct GlobalPlan {
    int groups = 1;
    std::vector<int> mult;  // groups*groups, symmetric
    std::vector<std::int64_t> leftover;

    int at(int x, int y) const { return mult[static_cast<std::size_t>(x) * static_cast<std::size_t>(groups) + static_cast<std::size_t>(y)]; }
};

inline GlobalPlan plan_global_links(int groups, std::int64_t ports_per_group) {
    GlobalPlan plan;
    plan.groups = groups;
    plan.mult.assign(static_cast<std::size_t>(groups) * static_cast<std::size_t>(groups), 0);
    plan.leftover.assign(static_cast<std::size_t>(groups), groups > 1 ? ports_per_group : 0);
    if (groups <= 1) {
        return plan;
    }
    const auto base = static_cast<int>(ports_per_group / (groups - 1));
    auto bump = [&](int x, int y, int by) {
        plan.mult[static_cast<std::size_t>(x) * static_cast<std::size_t>(groups) + static_cast<std::size_t>(y)] += by;
        plan.mult[static_cast<std::size_t>(y) * static_cast<std::size_t>(groups) + static_cast<std::size_t>(x)] += by;
        plan.leftover[static_cast<std::size_t>(x)] -= by;
        plan.leftover[static_cast<std::size_t>(y)] -= by;
    };
    for (int x = 0; x < groups; ++x) {
        for (int y = x + 1; y < groups; ++y) {
            bump(x, y, base);
        }
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (int x = 0; x < groups; ++x) {
            if (plan.leftover[static_cast<std::size_t>(x)] == 0) {
                continue;
            }
            for (int y = x + 1; y < groups && plan.leftover[static_cast<std::size_t>(x)] > 0; ++y) {
                if (plan.leftover[static_cast<std::size_t>(y)] > 0) {
                    bump(x, y, 1);
                    progress = true;
                }
            }
        }
    }
    return plan;
}

class GraphBuilder {
  public:
    GraphBuilder(std::int64_t nic_count, Rate rate, BuildOptions options)
        : rate_(rate), options_(options) {
        nodes_.reserve(static_cast<std::size_t>(nic_count));
        for (std::int64_t j = 0; j < nic_count; ++j) {
            nodes_.push_back(Node{j, NodeKind::nic, -1, {}});
        }
    }

    NodeId add_switch(int plane, std::vector<int> coords) {
        const auto id = static_cast<NodeId>(nodes_.size());
        nodes_.push_back(Node{id, NodeKind::switch_node, plane, std::move(coords)});
        return id;
    }

    void access(NodeId nic, NodeId sw) { links_.push_back(Link{nic, sw, rate_, 1, options_.access_medium}); }

    void fabric(NodeId a, NodeId b, int multiplicity) {
        if (multiplicity > 0) {
            links_.push_back(Link{a, b, rate_, multiplicity, options_.fabric_medium});
        }
    }

    void deficit(NodeId sw, int ports) {
        if (ports > 0) {
            deficits_[sw] += ports;
        }
    }

    void reserve_links(std::size_t n) { links_.reserve(n); }

    Topology finish(TopologyParams params, int planes, std::vector<std::string> notes = {}) {
        BuildReport report;
        std::int64_t missing = 0;
        for (const auto& [id, ports] : deficits_) {
            report.port_deficits.emplace_back(id, ports);
            missing += ports;
        }
        report.link_shortfall = missing / 2;
        report.notes = std::move(notes);
        return Topology(std::move(params), planes, std::move(nodes_), std::move(links_), std::move(report));
    }

  private:
    Rate rate_;
    BuildOptions options_;
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::map<NodeId, int> deficits_;
};

}  // namespace detail

// Generators ----------------------------------------------------------------

/// Explicit n-plane HyperX. Switch (plane q, coordinates c) has id
/// N + q*S + linear(c), c[0] most significant; NIC j's port in every plane
/// attaches to the switch of linear index j / p.
inline Topology build_mphx(const MphxParams& params, const NicSpec& nic, const SwitchSpec& sw,
                           BuildOptions options = {}) {
    check_feasible(params, nic, sw);
    const auto dims_count = params.dims.size();
    const std::int64_t per_plane = params.switches_per_plane();
    const std::int64_t nics = params.nic_count();
    const int p = params.nic_ports_per_switch;

    std::vector<std::int64_t> stride(dims_count, 1);
    for (std::size_t i = dims_count; i-- > 1;) {
        stride[i - 1] = stride[i] * params.dims[i];
    }
    std::vector<detail::DimensionMesh> meshes;
    std::int64_t fabric_per_switch = 0;
    for (std::size_t i = 0; i < dims_count; ++i) {
        meshes.push_back(detail::dimension_mesh(params.dims[i], params.links_in_dim(i)));
        fabric_per_switch += params.dims[i] - 1;
    }

    detail::GraphBuilder g(nics, nic.port_rate(), options);
    g.reserve_links(static_cast<std::size_t>(params.planes) *
                    static_cast<std::size_t>(nics + per_plane * fabric_per_switch / 2));
    std::vector<int> coords(dims_count);
    for (int q = 0; q < params.planes; ++q) {
        for (std::int64_t s = 0; s < per_plane; ++s) {
            for (std::size_t i = 0; i < dims_count; ++i) {
                coords[i] = static_cast<int>((s / stride[i]) % params.dims[i]);
            }
            g.add_switch(q, coords);
        }
    }
    const auto switch_id = [&](int q, std::int64_t s) { return nics + q * per_plane + s; };
    for (int q = 0; q < params.planes; ++q) {
        for (std::int64_t s = 0; s < per_plane; ++s) {
            const auto self = switch_id(q, s);
            for (int k = 0; k < p; ++k) {
                g.access(s * p + k, self);
            }
            for (std::size_t i = 0; i < dims_count; ++i) {
                const auto& mesh = meshes[i];
                const int c = static_cast<int>((s / stride[i]) % params.dims[i]);
                for (int v = c + 1; v < params.dims[i]; ++v) {
                    g.fabric(self, switch_id(q, s + (v - c) * stride[i]), mesh.at(c, v));
                }
                for (int short_c : mesh.short_coords) {
                    if (short_c == c) {
                        g.deficit(self, 1);
                    }
                }
            }
        }
    }
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < dims_count; ++i) {
        if (!meshes[i].short_coords.empty()) {
            notes.push_back("dimension " + std::to_string(i + 1) + ": " + std::to_string(params.links_in_dim(i)) +
                            " links per switch over " + std::to_string(params.dims[i]) +
                            " switches has an odd degree sum; one port per mesh left unused");
        }
    }
    return g.finish(TopologyParams{params, nic, sw}, params.planes, std::move(notes));
}

/// k-ary fat-tree: k pods of k/2 edge + k/2 aggregation switches, (k/2)^2 cores.
/// Switch coordinates are (layer, index) with layer 0 = edge, 1 = aggregation, 2 = core.
inline Topology build_fat_tree_3layer(int k, const NicSpec& nic, const SwitchSpec& sw, BuildOptions options = {}) {
    const FatTree3LParams params{k};
    check_feasible(params, nic, sw);
    const std::int64_t half = k / 2;
    const std::int64_t nics = static_cast<std::int64_t>(k) * half * half;
    const std::int64_t per_layer = static_cast<std::int64_t>(k) * half;
    detail::GraphBuilder g(nics, nic.port_rate(), options);
    g.reserve_links(static_cast<std::size_t>(3 * nics));
    for (int layer = 0; layer < 2; ++layer) {
        for (std::int64_t i = 0; i < per_layer; ++i) {
            g.add_switch(0, {layer, static_cast<int>(i)});
        }
    }
    for (std::int64_t i = 0; i < half * half; ++i) {
        g.add_switch(0, {2, static_cast<int>(i)});
    }
    const auto edge = [&](std::int64_t i) { return nics + i; };
    const auto agg = [&](std::int64_t i) { return nics + per_layer + i; };
    const auto core = [&](std::int64_t i) { return nics + 2 * per_layer + i; };
    for (std::int64_t j = 0; j < nics; ++j) {
        g.access(j, edge(j / half));
    }
    for (std::int64_t pod = 0; pod < k; ++pod) {
        for (std::int64_t e = 0; e < half; ++e) {
            for (std::int64_t a = 0; a < half; ++a) {
                g.fabric(edge(pod * half + e), agg(pod * half + a), 1);
            }
        }
        for (std::int64_t a = 0; a < half; ++a) {
            for (std::int64_t c = 0; c < half; ++c) {
                g.fabric(agg(pod * half + a), core(a * half + c), 1);
            }
        }
    }
    return g.finish(TopologyParams{params, nic, sw}, 1);
}

/// n independent leaf/spine planes. Coordinates (layer, index), layer 0 = leaf.
inline Topology build_mp_fat_tree_2layer(int planes, int radix, std::int64_t nics, const NicSpec& nic,
                                         const SwitchSpec& sw, BuildOptions options = {}) {
    const MpFatTree2LParams params{planes, radix, nics};
    check_feasible(params, nic, sw);
    const std::int64_t down = radix / 2;
    const std::int64_t leaves = params.leaves();
    const std::int64_t spines = params.spines();
    const int mult = static_cast<int>(down / spines);
    detail::GraphBuilder g(nics, nic.port_rate(), options);
    g.reserve_links(static_cast<std::size_t>(planes) * static_cast<std::size_t>(nics + leaves * spines));
    for (int q = 0; q < planes; ++q) {
        for (std::int64_t i = 0; i < leaves; ++i) {
            g.add_switch(q, {0, static_cast<int>(i)});
        }
        for (std::int64_t i = 0; i < spines; ++i) {
            g.add_switch(q, {1, static_cast<int>(i)});
        }
    }
    const std::int64_t per_plane = leaves + spines;
    for (int q = 0; q < planes; ++q) {
        const auto leaf = [&](std::int64_t i) { return nics + q * per_plane + i; };
        const auto spine = [&](std::int64_t i) { return nics + q * per_plane + leaves + i; };
        for (std::int64_t j = 0; j < nics; ++j) {
            g.access(j, leaf(j / down));
        }
        for (std::int64_t l = 0; l < leaves; ++l) {
            for (std::int64_t s = 0; s < spines; ++s) {
                g.fabric(leaf(l), spine(s), mult);
            }
        }
    }
    return g.finish(TopologyParams{params, nic, sw}, planes);
}

namespace detail {

/// Realizes a GlobalPlan: group x's global ports are slots 0..ports-1, slot k
/// belonging to gateway switch k / ports_per_switch. Pairs are walked in
/// (min, max) order and each link takes the next free slot on both sides.
template <typename GatewayId>
void wire_global_links(GraphBuilder& g, const GlobalPlan& plan, int ports_per_switch, GatewayId gateway) {
    const int groups = plan.groups;
    std::vector<std::int64_t> cursor(static_cast<std::size_t>(groups), 0);
    for (int x = 0; x < groups; ++x) {
        for (int y = x + 1; y < groups; ++y) {
            for (int i = 0; i < plan.at(x, y); ++i) {
                const auto sx = cursor[static_cast<std::size_t>(x)]++ / ports_per_switch;
                const auto sy = cursor[static_cast<std::size_t>(y)]++ / ports_per_switch;
                g.fabric(gateway(x, sx), gateway(y, sy), 1);
            }
        }
    }
    for (int x = 0; x < groups; ++x) {
        const auto total = cursor[static_cast<std::size_t>(x)] + plan.leftover[static_cast<std::size_t>(x)];
        for (auto slot = cursor[static_cast<std::size_t>(x)]; slot < total; ++slot) {
            g.deficit(gateway(x, slot / ports_per_switch), 1);
        }
    }
}

}  // namespace detail

/// Dragonfly: g fully meshed groups of a switches, p NICs and h global ports
/// per switch. Coordinates (group, index).
inline Topology build_dragonfly(int p, int a, int h, int g, const NicSpec& nic, const SwitchSpec& sw,
                                BuildOptions options = {}) {
    const DragonflyParams params{p, a, h, g};
    check_feasible(params, nic, sw);
    const std::int64_t nics = static_cast<std::int64_t>(p) * a * g;
    detail::GraphBuilder b(nics, nic.port_rate(), options);
    for (int x = 0; x < g; ++x) {
        for (int i = 0; i < a; ++i) {
            b.add_switch(0, {x, i});
        }
    }
    const auto sw_id = [&](std::int64_t x, std::int64_t i) { return nics + x * a + i; };
    for (std::int64_t j = 0; j < nics; ++j) {
        b.access(j, nics + j / p);
    }
    for (int x = 0; x < g; ++x) {
        for (int i = 0; i < a; ++i) {
            for (int k = i + 1; k < a; ++k) {
                b.fabric(sw_id(x, i), sw_id(x, k), 1);
            }
        }
    }
    std::vector<std::string> notes;
    if (g > 1) {
        const auto plan = detail::plan_global_links(g, static_cast<std::int64_t>(a) * h);
        detail::wire_global_links(b, plan, h, sw_id);
    }
    return b.finish(TopologyParams{params, nic, sw}, 1, std::move(notes));
}

/// Dragonfly+: groups are leaf/spine bipartite; NICs sit on leaves, global
/// links on spines. Coordinates (group, index), leaves first within a group.
inline Topology build_dragonfly_plus(const DragonflyPlusParams& params, const NicSpec& nic, const SwitchSpec& sw,
                                     BuildOptions options = {}) {
    check_feasible(params, nic, sw);
    const int L = params.leaves;
    const int S = params.spines;
    const int per_group = L + S;
    const std::int64_t nics = static_cast<std::int64_t>(params.nics_per_leaf) * L * params.groups;
    detail::GraphBuilder b(nics, nic.port_rate(), options);
    for (int x = 0; x < params.groups; ++x) {
        for (int i = 0; i < per_group; ++i) {
            b.add_switch(0, {x, i});
        }
    }
    const auto leaf = [&](std::int64_t x, std::int64_t i) { return nics + x * per_group + i; };
    const auto spine = [&](std::int64_t x, std::int64_t i) { return nics + x * per_group + L + i; };
    for (std::int64_t j = 0; j < nics; ++j) {
        const auto leaf_index = j / params.nics_per_leaf;
        b.access(j, leaf(leaf_index / L, leaf_index % L));
    }
    for (int x = 0; x < params.groups; ++x) {
        for (int l = 0; l < L; ++l) {
            for (int s = 0; s < S; ++s) {
                b.fabric(leaf(x, l), spine(x, s), params.uplinks_per_pair);
            }
        }
    }
    if (params.groups > 1) {
        const auto plan = detail::plan_global_links(params.groups, static_cast<std::int64_t>(S) * params.global_ports);
        detail::wire_global_links(b, plan, params.global_ports, spine);
    }
    return b.finish(TopologyParams{params, nic, sw}, 1);
}

/// Builds any family from a full parameter set.
inline Topology build(const TopologyParams& params, BuildOptions options = {}) {
    return std::visit(
        [&](const auto& f) -> Topology {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, MphxParams>) {
                return build_mphx(f, params.nic, params.sw, options);
            } else if constexpr (std::is_same_v<T, FatTree3LParams>) {
                return build_fat_tree_3layer(f.radix, params.nic, params.sw, options);
            } else if constexpr (std::is_same_v<T, MpFatTree2LParams>) {
                return build_mp_fat_tree_2layer(f.planes, f.radix, f.nics, params.nic, params.sw, options);
            } else if constexpr (std::is_same_v<T, DragonflyParams>) {
                return build_dragonfly(f.nics_per_switch, f.switches_per_group, f.global_ports, f.groups, params.nic,
                                       params.sw, options);
            } else {
                return build_dragonfly_plus(f, params.nic, params.sw, options);
            }
        },
        params.family);
}

/// Largest balanced MPHX for the hardware: p = D1 = ... = DD = nk/(D+1),
/// where nk is the per-plane switch radix.
inline MphxParams balanced_mphx_params(const NicSpec& nic, const SwitchSpec& sw, int dimensions) {
    if (dimensions < 1) {
        throw InfeasibleError("balanced MPHX needs at least one dimension");
    }
    const int radix = sw.breakout_port_count;
    if (radix < dimensions + 1) {
        throw InfeasibleError("switch radix " + std::to_string(radix) + " is too small for " +
                              std::to_string(dimensions) + " dimensions");
    }
    const int side = radix / (dimensions + 1);
    return MphxParams{nic.port_count, side, std::vector<int>(static_cast<std::size_t>(dimensions), side), {}};
}

}  // namespace mphx
