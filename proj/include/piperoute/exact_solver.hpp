#ifndef PIPEROUTE_EXACT_SOLVER_HPP
#define PIPEROUTE_EXACT_SOLVER_HPP

#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "piperoute/cost_model.hpp"
#include "piperoute/routing_graph.hpp"
#include "piperoute/scenario.hpp"
#include "piperoute/solution.hpp"

namespace piperoute {

// A lazily separated constraint instance.
struct Cut {
    enum class Kind { Dist, ElbowR };
    Kind kind = Kind::Dist;
    ServiceId k = -1;

    // Dist: triggering non-virtual arc, its big-M, and every (service, arc)
    // pair within the pairwise clearance radius of it.
    ArcId arc = -1;
    double big_m = 0.0;
    std::vector<std::pair<ServiceId, ArcId>> conflict_arcs;

    // ElbowR: physical nodes of the two incompatible virtual-arc groups
    // (equal when the cut forbids a double turn at one node).
    NodeId group_a = -1;
    NodeId group_b = -1;
};

// Big-M for the Dist constraint of (arc, service): 2(|K|-1) * N + 1 with N
// the number of edges meeting the cuboid centered at the arc's midpoint with
// edge length length(a) + 2 max_{k'!=k} R^{kk'}.
double big_m(const RoutingGraph& g, const Scenario& scenario, ArcId a, ServiceId k);

// Violated Dist cuts of an integral candidate (one cut per violating
// (arc, service), deduplicated).
std::vector<Cut> separate_dist(const RoutingGraph& g, const Scenario& scenario,
                               const std::vector<std::vector<ArcId>>& paths);

// Violated reinforced elbow cuts: virtual arcs are ordered along each path
// and consecutive pairs closer than the service's elbow clearance yield one
// cut over their RE groups.
std::vector<Cut> separate_elbow(const RoutingGraph& g, const Scenario& scenario,
                                const std::vector<std::vector<ArcId>>& paths);

struct ExactConfig {
    double time_limit_s = std::numeric_limits<double>::infinity();
    std::int64_t max_nodes = -1;  // unlimited when negative
    bool warm_start = true;
    bool dist_cuts = true;   // disable for the plain multicommodity relaxation
    bool elbow_cuts = true;
    // Optional restriction masks (dimension [service][edge]); arcs of
    // disallowed edges are fixed to zero.
    const std::vector<std::vector<std::uint8_t>>* allowed_edges = nullptr;
    // When set, every cut added to the pool is materialized here (with its
    // full conflict set); meant for audits on small instances.
    std::vector<Cut>* collect_cuts = nullptr;
    std::ostream* log = nullptr;
    std::int64_t log_every = 2000;
};

struct ExactResult {
    SolveStatus status = SolveStatus::Infeasible;
    Solution solution;
    double lower_bound = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    std::int64_t nodes_explored = 0;
    int cuts_dist = 0;
    int cuts_elbow = 0;
    double wall_time_s = 0.0;
};

// Branch-and-cut for the routing problem. The node relaxation drops the
// node-capacity, Dist and Elbow-R constraints and bounds by the sum of
// independent per-service shortest paths under the node's arc fixings;
// integral candidates are accepted only after separation finds no violation.
ExactResult solve_exact(const RoutingGraph& g, const EdgeCostTable& costs,
                        const Scenario& scenario, const ExactConfig& config = {});

// Single service with elbow constraints enforced (the per-commodity
// subproblem used for warm starts and by the heuristics).
ExactResult solve_single_commodity(const RoutingGraph& g, const EdgeCostTable& costs,
                                   const Scenario& scenario, ServiceId k,
                                   const ExactConfig& config = {});

struct MasterModel {
    std::int64_t n_vars = 0;         // |A| * |K|
    std::int64_t n_constraints = 0;  // static rows of the multicommodity master
};

MasterModel master_model_stats(const RoutingGraph& g, std::int32_t n_services);

} // namespace piperoute

#endif
