#ifndef PIPEROUTE_TESTS_ORACLES_HPP
#define PIPEROUTE_TESTS_ORACLES_HPP

#include <optional>
#include <vector>

#include "piperoute/cost_model.hpp"
#include "piperoute/exact_solver.hpp"
#include "piperoute/geometry.hpp"
#include "piperoute/routing_graph.hpp"
#include "piperoute/scenario.hpp"

namespace piperoute::testing {

// Dense-sampling oracle for the segment-segment distance: evaluates the
// point-point distance on a parameter grid refined around the best coarse
// cell. Equivalent to a full grid of pitch 1/fine_total but far cheaper;
// sound because the squared distance is jointly convex in the parameters.
double sampled_segment_distance(const Segment3& s1, const Segment3& s2, int coarse = 200,
                                int refine = 200);

// Full 10^4 x 10^4 grid scan (slow; used to spot-check the refined sampler).
double brute_segment_distance(const Segment3& s1, const Segment3& s2, int grid = 10000);

// Sampling oracle for segment-to-cuboid distance.
double sampled_cuboid_segment_distance(const Cuboid& c, const Segment3& s,
                                       int coarse = 4000, int refine = 4000);

// ---------------------------------------------------------------------------
// Exhaustive oracle for tiny instances: per-service simple paths are
// enumerated in nondecreasing cost order (Yen) and combined best-first; the
// first combination passing the joint feasibility checks is optimal.

struct OracleResult {
    bool feasible = false;
    bool exhausted = false;  // enumeration cap hit before finding a combination
    double objective = 0.0;
    std::vector<std::vector<ArcId>> paths;
};

// Joint feasibility of a candidate (node capacity, pairwise clearance,
// consecutive elbow spacing), measured geometrically.
bool oracle_feasible(const RoutingGraph& g, const Scenario& sc,
                     const std::vector<std::vector<ArcId>>& paths);

OracleResult enumerate_optimum(const RoutingGraph& g, const EdgeCostTable& costs,
                               const Scenario& sc, int max_paths_per_service = 4000,
                               std::size_t max_combinations = 4000000);

// All simple s->t paths of one service in nondecreasing cost order, capped.
std::vector<std::vector<ArcId>> k_shortest_paths(const RoutingGraph& g,
                                                 const EdgeCostTable& costs, ServiceId k,
                                                 int max_paths);

// Evaluates a materialized cut on a candidate solution.
bool cut_satisfied(const RoutingGraph& g, const Cut& cut,
                   const std::vector<std::vector<ArcId>>& paths);

} // namespace piperoute::testing

#endif
