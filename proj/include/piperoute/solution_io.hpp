#ifndef PIPEROUTE_SOLUTION_IO_HPP
#define PIPEROUTE_SOLUTION_IO_HPP

#include <string>

#include "piperoute/routing_graph.hpp"
#include "piperoute/solution.hpp"

namespace piperoute {

// Lossless JSON round-trip of per-service arc lists, polylines, cost
// breakdowns and solver metadata.
void save_solution(const Solution& sol, const RoutingGraph& g, const std::string& path);
Solution load_solution(const RoutingGraph& g, const std::string& path);

std::string solution_to_json_string(const Solution& sol, const RoutingGraph& g);
Solution solution_from_json_string(const RoutingGraph& g, const std::string& text);

// Turn points of a path: virtual arcs collapse onto their node.
std::vector<Point3> path_polyline(const RoutingGraph& g, const std::vector<ArcId>& arcs);

} // namespace piperoute

#endif
