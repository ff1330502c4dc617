#ifndef PIPEROUTE_MPS_EXPORT_HPP
#define PIPEROUTE_MPS_EXPORT_HPP

#include <cstdint>
#include <string>

#include "piperoute/cost_model.hpp"
#include "piperoute/routing_graph.hpp"
#include "piperoute/scenario.hpp"

namespace piperoute {

struct MpsStats {
    std::int64_t columns = 0;
    std::int64_t rows = 0;        // constraint rows, objective excluded
    std::int64_t dist_rows = 0;   // only with include_all_cuts
    std::int64_t elbow_rows = 0;  // only with include_all_cuts
};

// Writes the master model in fixed-format MPS with binary marker blocks.
// Variables of per-service unusable edges are fixed to zero in BOUNDS.
// include_all_cuts additionally enumerates every Dist and Elbow-R row,
// which is O(|A|^2 |K|); reserve it for small graphs.
MpsStats export_model(const RoutingGraph& g, const EdgeCostTable& costs,
                      const Scenario& scenario, bool include_all_cuts,
                      const std::string& path);

} // namespace piperoute

#endif
