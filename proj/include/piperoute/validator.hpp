#ifndef PIPEROUTE_VALIDATOR_HPP
#define PIPEROUTE_VALIDATOR_HPP

#include <string>
#include <vector>

#include "piperoute/cost_model.hpp"
#include "piperoute/routing_graph.hpp"
#include "piperoute/scenario.hpp"
#include "piperoute/solution.hpp"

namespace piperoute {

struct Witness {
    ServiceId k = -1, k2 = -1;
    ArcId a = -1, a2 = -1;
    double measured = 0.0, required = 0.0;
    std::string detail;
};

struct ValidationCheck {
    std::string name;
    bool pass = true;
    std::vector<Witness> witnesses;
};

// Independent feasibility certificate: every constraint family re-checked
// from geometry, with no reuse of solver bookkeeping.
struct ValidationReport {
    ValidationCheck path_structure;     // s->t walks, one commodity per node
    ValidationCheck dist_clearance;     // cross-service arc pairs >= R^{kk'}
    ValidationCheck elbow_spacing;      // consecutive elbows > D^k
    ValidationCheck obstacle_clearance; // no crossing, clearance >= R^k+Delta^k
    ValidationCheck objective_check;    // stored objective matches recomputation
    double recomputed_objective = 0.0;

    bool pass() const {
        return path_structure.pass && dist_clearance.pass && elbow_spacing.pass &&
               obstacle_clearance.pass && objective_check.pass;
    }
    std::string summary() const;
};

ValidationReport validate(const RoutingGraph& g, const Scenario& scenario,
                          const EdgeCostTable& costs, const Solution& sol);

} // namespace piperoute

#endif
