#ifndef PIPEROUTE_GEOMETRY_EXPORT_HPP
#define PIPEROUTE_GEOMETRY_EXPORT_HPP

#include <string>

#include "piperoute/routing_graph.hpp"
#include "piperoute/scenario.hpp"
#include "piperoute/solution.hpp"

namespace piperoute {

struct ObjExportOptions {
    bool tubes = false;  // also emit a tube mesh of radius R^k per service
    int tube_sides = 8;
};

// Wavefront OBJ: one object per obstacle/zone (boxes) and per service
// (polyline as line elements, plus an optional tube mesh).
void export_geometry(const Scenario& scenario, const RoutingGraph& g, const Solution& sol,
                     const std::string& path, const ObjExportOptions& options = {});

} // namespace piperoute

#endif
