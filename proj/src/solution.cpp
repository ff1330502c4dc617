#include "piperoute/solution.hpp"

namespace piperoute {

const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::TimeLimit: return "time_limit";
        default: return "heuristic_failed";
    }
}

SolveStatus solve_status_from_name(const std::string& name) {
    if (name == "optimal") return SolveStatus::Optimal;
    if (name == "feasible") return SolveStatus::Feasible;
    if (name == "infeasible") return SolveStatus::Infeasible;
    if (name == "time_limit") return SolveStatus::TimeLimit;
    if (name == "heuristic_failed") return SolveStatus::HeuristicFailed;
    throw std::runtime_error("unknown solve status: " + name);
}

void finalize_solution_costs(Solution& sol, const RoutingGraph& g, const Scenario& scenario) {
    ObjectiveResult obj = compute_objective(g, scenario, sol.paths);
    sol.objective = obj.total;
    sol.breakdown = std::move(obj.per_service);
}

} // namespace piperoute
