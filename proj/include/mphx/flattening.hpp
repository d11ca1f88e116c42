/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mphx/error.hpp"
#include "mphx/topo_model.hpp"

namespace mphx {

enum class DragonflyVariant { dragonfly, dragonfly_plus };

inline const char* to_string(DragonflyVariant v) {
    return v == DragonflyVariant::dragonfly ? "dragonfly" : "dragonfly_plus";
}

/// Radix-level view of a Dragonfly-family system. For Dragonfly+ the global
/// ports are those of a spine.
struct DragonflyState {
    std::int64_t radix = 0;
    std::int64_t nics_per_switch = 0;     // p
    std::int64_t switches_per_group = 0;  // a
    std::int64_t global_ports = 0;        // h
    std::int64_t groups = 0;              // g
    DragonflyVariant variant = DragonflyVariant::dragonfly;

    std::int64_t nics_per_group() const { return nics_per_switch * switches_per_group; }
    std::int64_t nic_capacity() const { return nics_per_group() * groups; }

    void check() const {
        if (radix < 1 || nics_per_switch < 1 || switches_per_group < 1 || global_ports < 1 || groups < 1) {
            throw InfeasibleError("dragonfly state fields must all be positive");
        }
    }

    bool operator==(const DragonflyState&) const = default;
};

/// Balanced state (a = 2p = 2h) from the quantities usually quoted for a machine.
inline DragonflyState balanced_state(std::int64_t radix, std::int64_t global_ports, std::int64_t nics_per_group,
                                     std::int64_t groups, DragonflyVariant variant = DragonflyVariant::dragonfly) {
    if (global_ports < 1 || nics_per_group % global_ports != 0) {
        throw InfeasibleError("NICs per group must be a multiple of the global port count");
    }
    DragonflyState s{radix, global_ports, nics_per_group / global_ports, global_ports, groups, variant};
    s.check();
    return s;
}

/// Frontier: radix 64, 16 global ports per switch, 512 NICs per group, 80 groups.
inline DragonflyState frontier_state() { return balanced_state(64, 16, 512, 80); }

enum class FlatteningClass { Dragonfly, DragonflyPlus, HyperX1D, HyperX2D, FatTreePlusHyperX, MultiPlaneFatTree };

inline const char* to_string(FlatteningClass c) {
    switch (c) {
        case FlatteningClass::Dragonfly: return "Dragonfly";
        case FlatteningClass::DragonflyPlus: return "DragonflyPlus";
        case FlatteningClass::HyperX1D: return "HyperX1D";
        case FlatteningClass::HyperX2D: return "HyperX2D";
        case FlatteningClass::FatTreePlusHyperX: return "FatTreePlusHyperX";
        case FlatteningClass::MultiPlaneFatTree: return "MultiPlaneFatTree";
    }
    return "unknown";
}

/// Doubling the switch radix through breakout doubles p, a and h (4x NICs per
/// group) while the group count drops to a quarter, rounded up.
inline DragonflyState breakout_step(const DragonflyState& s) {
    s.check();
    DragonflyState out = s;
    out.radix *= 2;
    out.nics_per_switch *= 2;
    out.switches_per_group *= 2;
    out.global_ports *= 2;
    out.groups = (s.groups + 3) / 4;
    return out;
}

inline FlatteningClass classify(const DragonflyState& s) {
    s.check();
    const bool reaches_all = s.global_ports >= s.groups - 1;
    if (s.variant == DragonflyVariant::dragonfly) {
        if (s.groups == 1) {
            return FlatteningClass::HyperX1D;
        }
        return reaches_all ? FlatteningClass::HyperX2D : FlatteningClass::Dragonfly;
    }
    if (s.groups == 1) {
        return FlatteningClass::MultiPlaneFatTree;
    }
    return reaches_all ? FlatteningClass::FatTreePlusHyperX : FlatteningClass::DragonflyPlus;
}

struct FlatteningStep {
    int step = 0;
    DragonflyState state;
    FlatteningClass cls;
};

/// The starting state followed by `steps` breakout steps.
inline std::vector<FlatteningStep> flatten_trace(const DragonflyState& start, int steps) {
    if (steps < 0 || steps > 40) {
        throw InfeasibleError("step count must be in [0, 40]");
    }
    std::vector<FlatteningStep> out;
    DragonflyState s = start;
    out.push_back({0, s, classify(s)});
    for (int i = 1; i <= steps; ++i) {
        s = breakout_step(s);
        out.push_back({i, s, classify(s)});
    }
    return out;
}

/// A flattened Dragonfly as a single-plane 2D HyperX: dimension 1 is the
/// group's full mesh, dimension 2 joins equal-index switches across groups
/// using all h global ports.
inline TopologyParams as_hyperx(const DragonflyState& s, std::int64_t nic_gbps = default_nic_gbps) {
    if (s.variant != DragonflyVariant::dragonfly || classify(s) != FlatteningClass::HyperX2D) {
        throw InfeasibleError("only a dragonfly state classified HyperX2D maps onto a 2D HyperX");
    }
    MphxParams m{1, static_cast<int>(s.nics_per_switch),
                 {static_cast<int>(s.switches_per_group), static_cast<int>(s.groups)},
                 {static_cast<int>(s.switches_per_group - 1), static_cast<int>(s.global_ports)}};
    return with_hardware(m.normalized(), nic_gbps, nic_gbps * s.radix);
}

}  // namespace mphx
