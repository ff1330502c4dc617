#include "piperoute/validator.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace piperoute {

namespace {

void fail(ValidationCheck& check, Witness w) {
    check.pass = false;
    check.witnesses.push_back(std::move(w));
}

std::string arc_text(const RoutingGraph& g, ArcId a) {
    Segment3 s = g.arc_segment(a);
    std::ostringstream os;
    os << "arc " << a << " (" << s.a.x << "," << s.a.y << "," << s.a.z << ")->(" << s.b.x
       << "," << s.b.y << "," << s.b.z << ")";
    return os.str();
}

} // namespace

ValidationReport validate(const RoutingGraph& g, const Scenario& scenario,
                          const EdgeCostTable& costs, const Solution& sol) {
    (void)costs;
    ValidationReport rep;
    rep.path_structure.name = "path_structure";
    rep.dist_clearance.name = "dist_clearance";
    rep.elbow_spacing.name = "elbow_spacing";
    rep.obstacle_clearance.name = "obstacle_clearance";
    rep.objective_check.name = "objective";

    const auto K = static_cast<ServiceId>(scenario.services.size());
    const bool expects_paths =
        sol.status == SolveStatus::Optimal || sol.status == SolveStatus::Feasible;

    // --- path structure and node capacity ---------------------------------
    std::map<VNodeId, std::pair<ServiceId, ArcId>> outgoing;
    for (ServiceId k = 0; k < K && k < static_cast<ServiceId>(sol.paths.size()); ++k) {
        const auto& path = sol.paths[k];
        if (path.empty()) {
            if (expects_paths)
                fail(rep.path_structure, {k, -1, -1, -1, 0, 0, "service has no path"});
            continue;
        }
        bool ids_ok = true;
        for (ArcId a : path) {
            if (a < 0 || a >= g.n_arcs()) {
                fail(rep.path_structure, {k, -1, a, -1, 0, 0, "arc id outside graph"});
                ids_ok = false;
            }
        }
        if (!ids_ok) continue;
        if (g.tail(path.front()) != g.source_vnode[k])
            fail(rep.path_structure,
                 {k, -1, path.front(), -1, 0, 0, "path does not start at the source"});
        if (g.head(path.back()) != g.target_vnode[k])
            fail(rep.path_structure,
                 {k, -1, path.back(), -1, 0, 0, "path does not end at the destination"});
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            if (g.head(path[i]) != g.tail(path[i + 1]))
                fail(rep.path_structure,
                     {k, -1, path[i], path[i + 1], 0, 0, "arcs are not chained"});
        }
        for (ArcId a : path) {
            auto [it, fresh] = outgoing.emplace(g.tail(a), std::make_pair(k, a));
            if (!fresh)
                fail(rep.path_structure,
                     {it->second.first, k, it->second.second, a, 0, 0,
                      "two active arcs leave one node"});
        }
    }

    // --- pairwise service clearance ----------------------------------------
    for (ServiceId k = 0; k < K; ++k) {
        for (ServiceId k2 = k + 1; k2 < K; ++k2) {
            if (k >= static_cast<ServiceId>(sol.paths.size()) ||
                k2 >= static_cast<ServiceId>(sol.paths.size()))
                break;
            double R = scenario.pair_clearance(scenario.services[k], scenario.services[k2]);
            for (ArcId a : sol.paths[k]) {
                for (ArcId a2 : sol.paths[k2]) {
                    if (g.is_virtual_arc(a) && g.is_virtual_arc(a2)) continue;
                    double d2 = arc_distance_sq(g, a, a2);
                    if (d2 < R * R)
                        fail(rep.dist_clearance,
                             {k, k2, a, a2, std::sqrt(d2), R,
                              arc_text(g, a) + " vs " + arc_text(g, a2)});
                }
            }
        }
    }

    // --- elbow spacing ------------------------------------------------------
    for (ServiceId k = 0; k < K && k < static_cast<ServiceId>(sol.paths.size()); ++k) {
        double D = scenario.services[k].elbow_min;
        ArcId prev = -1;
        for (ArcId a : sol.paths[k]) {
            if (!g.is_virtual_arc(a)) continue;
            if (prev >= 0) {
                double d2 = arc_distance_sq(g, prev, a);
                if (d2 <= D * D)
                    fail(rep.elbow_spacing,
                         {k, -1, prev, a, std::sqrt(d2), D, "consecutive elbows too close"});
            }
            prev = a;
        }
    }

    // --- obstacle clearance (recomputed from scenario geometry) -------------
    for (ServiceId k = 0; k < K && k < static_cast<ServiceId>(sol.paths.size()); ++k) {
        double need = scenario.services[k].radius + scenario.services[k].safety;
        for (ArcId a : sol.paths[k]) {
            Segment3 seg = g.arc_segment(a);
            bool zone_touch = false;
            for (const Cuboid& z : scenario.penetrable_zones)
                if (!clip_segment(seg, z).empty()) zone_touch = true;
            for (std::size_t o = 0; o < scenario.obstacles.size(); ++o) {
                const Cuboid& box = scenario.obstacles[o];
                if (segment_intersects_interior(seg, box)) {
                    ClipRange cr = clip_segment(seg, box);
                    bool covered = false;
                    for (const Cuboid& z : scenario.penetrable_zones) {
                        if (cuboid_contains(z, seg.at(cr.t0)) &&
                            cuboid_contains(z, seg.at(cr.t1))) {
                            covered = true;
                            break;
                        }
                    }
                    if (!covered)
                        fail(rep.obstacle_clearance,
                             {k, -1, a, -1, 0.0, 0.0,
                              "crosses obstacle " + std::to_string(o)});
                } else if (!zone_touch) {
                    double d2 = cuboid_segment_distance_sq(box, seg);
                    if (d2 < need * need)
                        fail(rep.obstacle_clearance,
                             {k, -1, a, -1, std::sqrt(d2), need,
                              "too close to obstacle " + std::to_string(o)});
                }
            }
        }
    }

    // --- objective recomputation --------------------------------------------
    ObjectiveResult obj = compute_objective(g, scenario, sol.paths);
    rep.recomputed_objective = obj.total;
    double tol = 1e-6 * std::max(1.0, std::abs(obj.total));
    if (std::abs(obj.total - sol.objective) > tol)
        fail(rep.objective_check,
             {-1, -1, -1, -1, sol.objective, obj.total, "stored objective mismatch"});

    return rep;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const ValidationCheck* c :
         {&path_structure, &dist_clearance, &elbow_spacing, &obstacle_clearance,
          &objective_check}) {
        os << c->name << ": " << (c->pass ? "pass" : "FAIL");
        if (!c->pass) os << " (" << c->witnesses.size() << " witnesses)";
        os << "\n";
        std::size_t shown = 0;
        for (const Witness& w : c->witnesses) {
            if (shown++ >= 5) {
                os << "  ...\n";
                break;
            }
            os << "  service " << w.k;
            if (w.k2 >= 0) os << " vs " << w.k2;
            if (w.required > 0)
                os << " measured " << w.measured << " required " << w.required;
            os << ": " << w.detail << "\n";
        }
    }
    os << "recomputed objective: " << recomputed_objective << "\n";
    return os.str();
}

} // namespace piperoute
