#ifndef PIPEROUTE_COST_MODEL_HPP
#define PIPEROUTE_COST_MODEL_HPP

#include <vector>

#include "piperoute/routing_graph.hpp"
#include "piperoute/scenario.hpp"

namespace piperoute {

struct CostError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-edge criteria feeding the additive cost structure.
struct EdgeCriteria {
    double d = 0.0;   // edge length
    double H = 0.0;   // distance below the ceiling, XY-parallel edges only
    bool El = false;  // elbow (virtual edge)
    bool Ch = false;  // vertical edge
    bool Pr = false;  // inside a preference zone
    bool Pc = false;  // crosses a penetrable zone
    bool Cl = false;  // elbow close to a terminal of the service
};

EdgeCriteria edge_criteria(const RoutingGraph& g, const Scenario& scenario, EdgeId e,
                           ServiceId k);

// c = (a1 + a5*Pr)*d + a2*El + a3*H + a4*Ch + a6*Pc + a7*Cl
double case_study_cost(const EdgeCriteria& c, const std::array<double, 7>& alpha);

// Simplified benchmark cost: c = a1 * (d + 10*El + 2*Ch)
double random_cost(const EdgeCriteria& c, int alpha1);

// Dense (edge, service) cost table; arc costs equal the underlying edge cost
// in both orientations.
struct EdgeCostTable {
    std::int32_t n_edges = 0;
    std::int32_t n_services = 0;
    std::vector<double> c;  // [k * n_edges + e]
    double max_cost = 0.0;

    double edge_cost(EdgeId e, ServiceId k) const { return c[static_cast<std::size_t>(k) * n_edges + e]; }
    double arc_cost(ArcId a, ServiceId k) const { return edge_cost(RoutingGraph::edge_of(a), k); }
};

EdgeCostTable build_cost_table(const RoutingGraph& g, const Scenario& scenario);

// Mutable per-service view used by the heuristics; the base table is never
// modified.
struct CostOverlay {
    std::vector<double> c;  // per edge

    void reset(const EdgeCostTable& base, ServiceId k) {
        c.assign(base.c.begin() + static_cast<std::size_t>(k) * base.n_edges,
                 base.c.begin() + static_cast<std::size_t>(k + 1) * base.n_edges);
    }
    double edge_cost(EdgeId e) const { return c[e]; }
    double arc_cost(ArcId a) const { return c[RoutingGraph::edge_of(a)]; }
};

// Objective contribution split by criterion.
struct CostBreakdown {
    double length = 0.0;
    double preference = 0.0;
    double elbow = 0.0;
    double height = 0.0;
    double vertical = 0.0;
    double penetrable = 0.0;
    double closeness = 0.0;

    double total() const {
        return length + preference + elbow + height + vertical + penetrable + closeness;
    }
    CostBreakdown& operator+=(const CostBreakdown& o) {
        length += o.length;
        preference += o.preference;
        elbow += o.elbow;
        height += o.height;
        vertical += o.vertical;
        penetrable += o.penetrable;
        closeness += o.closeness;
        return *this;
    }
};

CostBreakdown edge_cost_breakdown(const EdgeCriteria& cr, const Service& s,
                                  CostModelKind model);

double path_cost(const EdgeCostTable& costs, ServiceId k, const std::vector<ArcId>& arcs);

struct ObjectiveResult {
    double total = 0.0;
    std::vector<CostBreakdown> per_service;
};

// Recomputes the objective of a set of service paths from criteria.
ObjectiveResult compute_objective(const RoutingGraph& g, const Scenario& scenario,
                                  const std::vector<std::vector<ArcId>>& paths);

} // namespace piperoute

#endif
