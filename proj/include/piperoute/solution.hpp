#ifndef PIPEROUTE_SOLUTION_HPP
#define PIPEROUTE_SOLUTION_HPP

#include <string>
#include <vector>

#include "piperoute/cost_model.hpp"
#include "piperoute/routing_graph.hpp"

namespace piperoute {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit, HeuristicFailed };

const char* solve_status_name(SolveStatus s);
SolveStatus solve_status_from_name(const std::string& name);

// One arc path per service plus objective and solver metadata.
struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<std::vector<ArcId>> paths;  // aligned with scenario.services
    double objective = 0.0;
    std::vector<CostBreakdown> breakdown;  // per service

    std::string method;
    double wall_time_s = 0.0;
    std::int64_t nodes_explored = 0;
    int cuts_dist = 0;
    int cuts_elbow = 0;
    double lower_bound = 0.0;
    double gap = 0.0;

    bool has_paths() const {
        for (const auto& p : paths)
            if (!p.empty()) return true;
        return false;
    }
};

// Fills objective and per-service breakdown from the scenario's cost model.
void finalize_solution_costs(Solution& sol, const RoutingGraph& g, const Scenario& scenario);

} // namespace piperoute

#endif
