#include "piperoute/cost_model.hpp"

#include <cmath>

namespace piperoute {

EdgeCriteria edge_criteria(const RoutingGraph& g, const Scenario& scenario, EdgeId e,
                           ServiceId k) {
    const RoutingGraph::Edge& re = g.edges[e];
    EdgeCriteria cr;
    cr.El = re.is_virtual;
    cr.d = re.length;
    cr.Pc = g.zone_touch[e];

    Segment3 seg = g.edge_segment(e);
    if (!re.is_virtual) {
        cr.Ch = re.axis == Axis::Z;
        if (re.axis != Axis::Z) cr.H = scenario.max_height() - seg.a.z;
    }
    for (const Cuboid& z : scenario.preference_zones) {
        if (cuboid_contains(z, seg.a) && cuboid_contains(z, seg.b)) {
            cr.Pr = true;
            break;
        }
    }
    if (re.is_virtual) {
        const Service& s = scenario.services[k];
        double rho = scenario.closeness_radius_value();
        double d2 = std::min(point_distance_sq(seg.a, s.source),
                             point_distance_sq(seg.a, s.destination));
        cr.Cl = d2 <= rho * rho;
    }
    return cr;
}

double case_study_cost(const EdgeCriteria& c, const std::array<double, 7>& alpha) {
    double cost = (alpha[0] + (c.Pr ? alpha[4] : 0.0)) * c.d + (c.El ? alpha[1] : 0.0) +
                  alpha[2] * c.H + (c.Ch ? alpha[3] : 0.0) + (c.Pc ? alpha[5] : 0.0) +
                  (c.Cl ? alpha[6] : 0.0);
    if (cost < 0.0) throw CostError("negative edge cost; check alpha parameters");
    return cost;
}

double random_cost(const EdgeCriteria& c, int alpha1) {
    return alpha1 * (c.d + (c.El ? 10.0 : 0.0) + (c.Ch ? 2.0 : 0.0));
}

EdgeCostTable build_cost_table(const RoutingGraph& g, const Scenario& scenario) {
    EdgeCostTable t;
    t.n_edges = g.n_edges();
    t.n_services = static_cast<std::int32_t>(scenario.services.size());
    t.c.resize(static_cast<std::size_t>(t.n_edges) * t.n_services);
    for (ServiceId k = 0; k < t.n_services; ++k) {
        const Service& s = scenario.services[k];
        for (EdgeId e = 0; e < t.n_edges; ++e) {
            EdgeCriteria cr = edge_criteria(g, scenario, e, k);
            double c = scenario.cost_model == CostModelKind::CaseStudy
                           ? case_study_cost(cr, s.alpha)
                           : random_cost(cr, static_cast<int>(s.alpha[0]));
            t.c[static_cast<std::size_t>(k) * t.n_edges + e] = c;
            t.max_cost = std::max(t.max_cost, c);
        }
    }
    return t;
}

CostBreakdown edge_cost_breakdown(const EdgeCriteria& cr, const Service& s,
                                  CostModelKind model) {
    CostBreakdown b;
    if (model == CostModelKind::CaseStudy) {
        b.length = s.alpha[0] * cr.d;
        b.preference = cr.Pr ? s.alpha[4] * cr.d : 0.0;
        b.elbow = cr.El ? s.alpha[1] : 0.0;
        b.height = s.alpha[2] * cr.H;
        b.vertical = cr.Ch ? s.alpha[3] : 0.0;
        b.penetrable = cr.Pc ? s.alpha[5] : 0.0;
        b.closeness = cr.Cl ? s.alpha[6] : 0.0;
    } else {
        double a1 = s.alpha[0];
        b.length = a1 * cr.d;
        b.elbow = cr.El ? 10.0 * a1 : 0.0;
        b.vertical = cr.Ch ? 2.0 * a1 : 0.0;
    }
    return b;
}

double path_cost(const EdgeCostTable& costs, ServiceId k, const std::vector<ArcId>& arcs) {
    double c = 0.0;
    for (ArcId a : arcs) c += costs.arc_cost(a, k);
    return c;
}

ObjectiveResult compute_objective(const RoutingGraph& g, const Scenario& scenario,
                                  const std::vector<std::vector<ArcId>>& paths) {
    ObjectiveResult r;
    r.per_service.resize(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) {
        for (ArcId a : paths[k]) {
            EdgeCriteria cr = edge_criteria(g, scenario, RoutingGraph::edge_of(a),
                                            static_cast<ServiceId>(k));
            r.per_service[k] +=
                edge_cost_breakdown(cr, scenario.services[k], scenario.cost_model);
        }
        r.total += r.per_service[k].total();
    }
    return r;
}

} // namespace piperoute
