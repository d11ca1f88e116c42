/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "mphx/spec_string.hpp"
#include "mphx/topo_model.hpp"

namespace mphx {

/// Line-oriented dump: '#' header lines echo the parameters, then NODE records
/// by id and LINK records by (a, b). Byte-stable for equal inputs.
inline void export_topology(const Topology& topo, std::ostream& os) {
    const auto& params = topo.params();
    os << "# topology " << format_spec(params) << '\n';
    os << "# nic total_gbps=" << params.nic.total_bandwidth_gbps << " ports=" << params.nic.port_count << '\n';
    os << "# switch total_gbps=" << params.sw.total_bandwidth_gbps << " breakout=" << params.sw.breakout_port_count
       << 'x' << params.sw.breakout_rate.gbps << '\n';
    os << "# planes " << topo.planes() << '\n';
    if (topo.report().link_shortfall != 0) {
        os << "# link_shortfall " << topo.report().link_shortfall << '\n';
    }
    for (const auto& node : topo.nodes()) {
        if (node.kind == NodeKind::nic) {
            os << "NODE " << node.id << " nic - -\n";
            continue;
        }
        os << "NODE " << node.id << " switch " << node.plane << ' ';
        for (std::size_t i = 0; i < node.coords.size(); ++i) {
            os << (i ? "," : "") << node.coords[i];
        }
        if (node.coords.empty()) {
            os << '-';
        }
        os << '\n';
    }
    for (const auto& link : topo.links()) {
        os << "LINK " << link.a << ' ' << link.b << ' ' << link.rate.gbps << ' ' << link.multiplicity << ' '
           << to_string(link.medium) << '\n';
    }
}

inline std::string export_topology(const Topology& topo) {
    std::ostringstream os;
    export_topology(topo, os);
    return os.str();
}

}  // namespace mphx
