#ifndef PIPEROUTE_MATHEURISTICS_HPP
#define PIPEROUTE_MATHEURISTICS_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "piperoute/cost_model.hpp"
#include "piperoute/exact_solver.hpp"
#include "piperoute/routing_graph.hpp"
#include "piperoute/scenario.hpp"
#include "piperoute/solution.hpp"

namespace piperoute {

// ---------------------------------------------------------------------------
// Building blocks

struct ElbowTestResult {
    bool ok = false;
    std::vector<ArcId> arcs;
    int dijkstra_calls = 0;
    int restarts = 0;  // source/destination swaps after cycling
};

// Iterated shortest path passing the elbow-spacing test: on failure the path
// is truncated at the last passing elbow, the failing elbow's cost is
// inflated, and the search resumes from there; detected cycling restarts the
// whole search with source and destination swapped (keeping inflated costs).
ElbowTestResult spp_elbow_test(const RoutingGraph& g, CostOverlay& overlay,
                               const Scenario& scenario, ServiceId k, int max_iters);

// Closure of the path vertices under adjacency expansion limited to distance
// < delta from some path vertex. Returns a sorted vertex set.
std::vector<VNodeId> covering_list(const RoutingGraph& g, const std::vector<VNodeId>& path,
                                   double delta);

// Unordered pairs (k, k') with intersecting covering lists.
std::vector<std::pair<ServiceId, ServiceId>> conflict_pairs(
    const std::vector<std::vector<VNodeId>>& coverings);

// ---------------------------------------------------------------------------
// H2: decomposition heuristic

struct H2Config {
    int maxit = 20;
    // Fraction of iterations per type, in schedule order par, cluster, seq.
    double frac_par = 0.1;
    double frac_cluster = 0.8;
    double frac_seq = 0.1;
    double gamma = 10.0;      // conflict-edge cost := gamma * max base cost
    double gamma_seq = 1.5;   // sequential iterations multiply by this
    int elbow_max_iters = 60;
    std::optional<double> fallback_spacing;  // coarser grid when unsolved
    int threads = 1;
    std::ostream* log = nullptr;
};

enum class H2IterationType { Par, Cluster, Seq };

struct H2IterationTrace {
    int it = 0;
    H2IterationType type = H2IterationType::Par;
    std::vector<ServiceId> routed;
    int conflicts = 0;
};

struct H2Result {
    SolveStatus status = SolveStatus::HeuristicFailed;
    Solution solution;
    int iterations = 0;
    bool used_fallback = false;
    std::vector<H2IterationTrace> trace;
    double wall_time_s = 0.0;
};

H2Result run_h2(const RoutingGraph& g, const EdgeCostTable& base_costs,
                const Scenario& scenario, const H2Config& config = {});

// ---------------------------------------------------------------------------
// H1: dimensionality reduction

struct H1Config {
    // Tube half-width around each independent path; defaults to R^k + Delta^k
    // per service, or to max_k (R^k + Delta^k) with the max rule.
    std::optional<double> delta_init;
    bool delta_max_rule = false;
    std::optional<double> delta_step;  // defaults to the grid spacing
    std::vector<std::vector<Cuboid>> init_zones;  // optional Init-Sol_k
    double iter_time_limit_s = std::numeric_limits<double>::infinity();
    double time_limit_s = std::numeric_limits<double>::infinity();
    std::ostream* log = nullptr;
};

struct H1Result {
    SolveStatus status = SolveStatus::HeuristicFailed;
    Solution solution;
    int growth_iterations = 0;     // restricted solves performed
    std::int64_t restricted_vars = 0;  // variables of the last restricted model
    std::int64_t full_vars = 0;
    double wall_time_s = 0.0;
};

H1Result run_h1(const RoutingGraph& g, const EdgeCostTable& base_costs,
                const Scenario& scenario, const H1Config& config = {});

} // namespace piperoute

#endif
