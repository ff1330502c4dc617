#include "piperoute/exact_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <queue>
#include <set>

#include "piperoute/dijkstra.hpp"

namespace piperoute {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// The six virtual arcs at a physical node (the RE group of any of them).
std::array<ArcId, 6> re_group(const RoutingGraph& g, NodeId n) {
    EdgeId base = g.n_real_edges + 3 * n;
    return {RoutingGraph::arc_of(base, 0),     RoutingGraph::arc_of(base, 1),
            RoutingGraph::arc_of(base + 1, 0), RoutingGraph::arc_of(base + 1, 1),
            RoutingGraph::arc_of(base + 2, 0), RoutingGraph::arc_of(base + 2, 1)};
}

struct NodeConflict {
    VNodeId v = -1;
    ServiceId k1 = -1, k2 = -1;
    int count = 0;
};

struct DistViolation {
    ServiceId k = -1, k2 = -1;
    ArcId a = -1, a2 = -1;
    double amount = 0.0;  // R^{kk'} - d
};

struct ElbowViolation {
    ServiceId k = -1;
    ArcId a = -1, a2 = -1;
    double amount = 0.0;  // D^k - d
};

struct ConflictScan {
    std::optional<NodeConflict> node;
    std::optional<DistViolation> dist;
    std::optional<ElbowViolation> elbow;

    bool feasible() const { return !node && !dist && !elbow; }
};

// Ordered virtual arcs of a path.
std::vector<ArcId> virtual_arcs(const RoutingGraph& g, const std::vector<ArcId>& path) {
    std::vector<ArcId> out;
    for (ArcId a : path)
        if (g.is_virtual_arc(a)) out.push_back(a);
    return out;
}

ConflictScan scan_conflicts(const RoutingGraph& g, const Scenario& sc,
                            const std::vector<ServiceId>& services,
                            const std::vector<std::vector<ArcId>>& paths, bool check_dist,
                            bool check_elbow) {
    ConflictScan out;

    // Node-capacity conflicts: more than one outgoing active arc at a node.
    std::map<VNodeId, std::vector<ServiceId>> outgoing;
    for (ServiceId k : services)
        for (ArcId a : paths[k]) outgoing[g.tail(a)].push_back(k);
    for (const auto& [v, ks] : outgoing) {
        if (ks.size() < 2) continue;
        if (!out.node || static_cast<int>(ks.size()) > out.node->count) {
            std::vector<ServiceId> sorted = ks;
            std::sort(sorted.begin(), sorted.end());
            out.node = NodeConflict{v, sorted[0], sorted[1], static_cast<int>(ks.size())};
        }
    }

    if (check_dist) {
        for (std::size_t i = 0; i < services.size(); ++i) {
            for (std::size_t j = i + 1; j < services.size(); ++j) {
                ServiceId k = services[i], k2 = services[j];
                double R = sc.pair_clearance(sc.services[k], sc.services[k2]);
                double R2 = R * R;
                for (ArcId a : paths[k]) {
                    for (ArcId a2 : paths[k2]) {
                        if (g.is_virtual_arc(a) && g.is_virtual_arc(a2)) continue;
                        double d2 = arc_distance_sq(g, a, a2);
                        if (d2 < R2) {
                            double amount = R - std::sqrt(d2);
                            if (!out.dist || amount > out.dist->amount)
                                out.dist = DistViolation{k, k2, a, a2, amount};
                        }
                    }
                }
            }
        }
    }

    if (check_elbow) {
        for (ServiceId k : services) {
            double D = sc.services[k].elbow_min;
            std::vector<ArcId> els = virtual_arcs(g, paths[k]);
            for (std::size_t i = 0; i + 1 < els.size(); ++i) {
                double d2 = arc_distance_sq(g, els[i], els[i + 1]);
                if (d2 <= D * D) {
                    double amount = D - std::sqrt(d2);
                    if (!out.elbow || amount > out.elbow->amount)
                        out.elbow = ElbowViolation{k, els[i], els[i + 1], amount};
                }
            }
        }
    }
    return out;
}

} // namespace

double big_m(const RoutingGraph& g, const Scenario& scenario, ArcId a, ServiceId k) {
    const auto n_services = static_cast<std::int32_t>(scenario.services.size());
    if (n_services <= 1) return 1.0;

    double max_r = 0.0;
    for (std::int32_t k2 = 0; k2 < n_services; ++k2) {
        if (k2 == k) continue;
        max_r = std::max(max_r,
                         scenario.pair_clearance(scenario.services[k], scenario.services[k2]));
    }
    Segment3 seg = g.arc_segment(a);
    Point3 mid = seg.at(0.5);
    double half = 0.5 * seg.length() + max_r;
    Cuboid box{{mid.x - half, mid.y - half, mid.z - half},
               {mid.x + half, mid.y + half, mid.z + half}};

    std::int64_t n = 0;
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
        if (!clip_segment(g.edge_segment(e), box).empty()) ++n;
    }
    return 2.0 * (n_services - 1) * static_cast<double>(n) + 1.0;
}

std::vector<Cut> separate_dist(const RoutingGraph& g, const Scenario& scenario,
                               const std::vector<std::vector<ArcId>>& paths) {
    const auto n_services = static_cast<std::int32_t>(paths.size());
    std::set<std::pair<ServiceId, ArcId>> seen;
    std::vector<Cut> cuts;
    for (ServiceId k = 0; k < n_services; ++k) {
        for (ArcId a : paths[k]) {
            if (g.is_virtual_arc(a)) continue;
            bool violated = false;
            for (ServiceId k2 = 0; k2 < n_services && !violated; ++k2) {
                if (k2 == k) continue;
                double R = scenario.pair_clearance(scenario.services[k], scenario.services[k2]);
                for (ArcId a2 : paths[k2]) {
                    if (arc_distance_sq(g, a, a2) < R * R) {
                        violated = true;
                        break;
                    }
                }
            }
            if (!violated || !seen.emplace(k, a).second) continue;

            Cut cut;
            cut.kind = Cut::Kind::Dist;
            cut.k = k;
            cut.arc = a;
            cut.big_m = big_m(g, scenario, a, k);
            for (ServiceId k2 = 0; k2 < n_services; ++k2) {
                if (k2 == k) continue;
                double R = scenario.pair_clearance(scenario.services[k], scenario.services[k2]);
                for (ArcId a2 = 0; a2 < g.n_arcs(); ++a2) {
                    if (arc_distance_sq(g, a, a2) < R * R) cut.conflict_arcs.emplace_back(k2, a2);
                }
            }
            cuts.push_back(std::move(cut));
        }
    }
    return cuts;
}

std::vector<Cut> separate_elbow(const RoutingGraph& g, const Scenario& scenario,
                                const std::vector<std::vector<ArcId>>& paths) {
    std::set<std::tuple<ServiceId, NodeId, NodeId>> seen;
    std::vector<Cut> cuts;
    for (ServiceId k = 0; k < static_cast<ServiceId>(paths.size()); ++k) {
        double D = scenario.services[k].elbow_min;
        std::vector<ArcId> els = virtual_arcs(g, paths[k]);
        for (std::size_t i = 0; i + 1 < els.size(); ++i) {
            if (arc_distance_sq(g, els[i], els[i + 1]) > D * D) continue;
            NodeId na = RoutingGraph::phys_of(g.tail(els[i]));
            NodeId nb = RoutingGraph::phys_of(g.tail(els[i + 1]));
            NodeId lo = std::min(na, nb), hi = std::max(na, nb);
            if (!seen.emplace(k, lo, hi).second) continue;
            Cut cut;
            cut.kind = Cut::Kind::ElbowR;
            cut.k = k;
            cut.group_a = lo;
            cut.group_b = hi;
            cuts.push_back(cut);
        }
    }
    return cuts;
}

MasterModel master_model_stats(const RoutingGraph& g, std::int32_t n_services) {
    MasterModel m;
    m.n_vars = static_cast<std::int64_t>(g.n_arcs()) * n_services;
    // node capacity + flow conservation + source/sink rows
    m.n_constraints = g.n_vnodes() +
                      static_cast<std::int64_t>(n_services) * (g.n_vnodes() - 2) +
                      2 * static_cast<std::int64_t>(n_services);
    return m;
}

namespace {

// Conflict branch-and-bound engine over a subset of the services.
class Engine {
public:
    Engine(const RoutingGraph& g, const EdgeCostTable& costs, const Scenario& sc,
           const ExactConfig& cfg, std::vector<ServiceId> services)
        : g_(g), costs_(costs), sc_(sc), cfg_(cfg), services_(std::move(services)), dij_(g) {}

    ExactResult run() {
        t0_ = Clock::now();
        ExactResult res;

        if (cfg_.warm_start && services_.size() > 1) warm_start();

        BBNode root;
        root.parent = -1;
        root.service = -1;
        root.paths.resize(sc_.services.size());
        root.path_costs.assign(sc_.services.size(), 0.0);
        bool root_ok = true;
        for (ServiceId k : services_) {
            ShortestPathResult sp = route(k, -1);
            if (!sp.found) {
                root_ok = false;
                break;
            }
            root.paths[k] = std::move(sp.arcs);
            root.path_costs[k] = sp.cost;
            root.bound += sp.cost;
        }

        if (root_ok) {
            arena_.push_back(std::move(root));
            open_.push({arena_[0].bound, 0});
            best_bound_ = arena_[0].bound;
            search();
        }

        res.nodes_explored = nodes_explored_;
        res.cuts_dist = static_cast<int>(dist_pool_.size());
        res.cuts_elbow = static_cast<int>(elbow_pool_.size());
        res.wall_time_s = seconds_since(t0_);

        if (stopped_early_) {
            res.status = SolveStatus::TimeLimit;
            res.lower_bound = best_bound_;
        } else if (incumbent_set_) {
            res.status = SolveStatus::Optimal;
            res.lower_bound = incumbent_value_;
        } else {
            res.status = SolveStatus::Infeasible;
            res.lower_bound = 0.0;
            return res;
        }

        if (incumbent_set_) {
            res.solution.status = res.status == SolveStatus::Optimal ? SolveStatus::Optimal
                                                                     : SolveStatus::Feasible;
            res.solution.paths = incumbent_paths_;
            res.solution.objective = incumbent_value_;
            res.solution.nodes_explored = nodes_explored_;
            res.solution.cuts_dist = res.cuts_dist;
            res.solution.cuts_elbow = res.cuts_elbow;
            res.gap = incumbent_value_ > 0.0
                          ? (incumbent_value_ - res.lower_bound) / incumbent_value_
                          : 0.0;
            if (res.status == SolveStatus::Optimal) res.gap = 0.0;
            res.solution.lower_bound = res.lower_bound;
            res.solution.gap = res.gap;
        }
        return res;
    }

private:
    struct BBNode {
        std::int64_t parent = -1;
        ServiceId service = -1;           // service constrained by `forbidden`
        std::vector<ArcId> forbidden;     // delta w.r.t. the parent
        double bound = 0.0;
        std::vector<std::vector<ArcId>> paths;
        std::vector<double> path_costs;
    };

    struct OpenEntry {
        double bound;
        std::int64_t id;
        bool operator>(const OpenEntry& o) const {
            return bound > o.bound || (bound == o.bound && id > o.id);
        }
    };

    // Shortest path for k with the forbidden arcs accumulated along the
    // ancestry of `node_id` (plus any restriction mask from the config).
    ShortestPathResult route(ServiceId k, std::int64_t node_id) {
        std::vector<ArcId> marked;
        for (std::int64_t cur = node_id; cur >= 0; cur = arena_[cur].parent) {
            if (arena_[cur].service != k) continue;
            for (ArcId a : arena_[cur].forbidden) {
                if (!forb_scratch_[a]) {
                    forb_scratch_[a] = 1;
                    marked.push_back(a);
                }
            }
        }
        ArcFilter filter;
        filter.forbidden_arcs = &forb_scratch_;
        if (cfg_.allowed_edges) filter.allowed_edges = &(*cfg_.allowed_edges)[k];
        ShortestPathResult sp =
            dij_.solve(g_.source_vnode[k], g_.target_vnode[k], k,
                       &costs_.c[static_cast<std::size_t>(k) * costs_.n_edges], filter);
        for (ArcId a : marked) forb_scratch_[a] = 0;
        return sp;
    }

    void warm_start() {
        std::vector<std::vector<ArcId>> paths(sc_.services.size());
        for (ServiceId k : services_) {
            ExactConfig sub = cfg_;
            sub.warm_start = false;
            sub.log = nullptr;
            Engine single(g_, costs_, sc_, sub, {k});
            ExactResult r = single.run();
            if (r.status != SolveStatus::Optimal) return;
            paths[k] = r.solution.paths[k];
        }
        ConflictScan scan =
            scan_conflicts(g_, sc_, services_, paths, cfg_.dist_cuts, cfg_.elbow_cuts);
        if (scan.feasible()) {
            double value = 0.0;
            for (ServiceId k : services_) value += path_cost(costs_, k, paths[k]);
            incumbent_set_ = true;
            incumbent_value_ = value;
            incumbent_paths_ = paths;
            log_line("warm start incumbent " + std::to_string(value));
        }
    }

    void search() {
        forb_scratch_.assign(g_.n_arcs(), 0);
        while (!open_.empty()) {
            if (seconds_since(t0_) > cfg_.time_limit_s ||
                (cfg_.max_nodes >= 0 && nodes_explored_ >= cfg_.max_nodes)) {
                stopped_early_ = true;
                // Best-first order: the heap top is the global bound.
                double lb = open_.top().bound;
                if (incumbent_set_) lb = std::min(lb, incumbent_value_);
                best_bound_ = std::max(best_bound_, lb);
                return;
            }
            auto [bound, id] = open_.top();
            open_.pop();
            best_bound_ = std::max(best_bound_, bound);
            if (incumbent_set_ && bound >= incumbent_value_) {
                // Best-first order: nothing better remains anywhere.
                best_bound_ = incumbent_value_;
                return;
            }
            expand(id);
            ++nodes_explored_;
            if (cfg_.log && nodes_explored_ % cfg_.log_every == 0) {
                log_line("node " + std::to_string(nodes_explored_) + " open " +
                         std::to_string(open_.size()) + " bound " + std::to_string(bound) +
                         (incumbent_set_ ? " incumbent " + std::to_string(incumbent_value_)
                                         : std::string(" incumbent -")) +
                         " cuts " + std::to_string(dist_pool_.size()) + "+" +
                         std::to_string(elbow_pool_.size()));
            }
        }
        if (incumbent_set_) best_bound_ = incumbent_value_;
    }

    void expand(std::int64_t id) {
        ConflictScan scan = scan_conflicts(g_, sc_, services_, arena_[id].paths,
                                           cfg_.dist_cuts, cfg_.elbow_cuts);
        if (scan.feasible()) {
            if (!incumbent_set_ || arena_[id].bound < incumbent_value_) {
                incumbent_set_ = true;
                incumbent_value_ = arena_[id].bound;
                incumbent_paths_ = arena_[id].paths;
                log_line("incumbent " + std::to_string(incumbent_value_) + " at node " +
                         std::to_string(nodes_explored_));
            }
            release(id);
            return;
        }

        // Shared nodes first, then the most violated cut.
        std::vector<std::pair<ServiceId, std::vector<ArcId>>> children;
        if (scan.node) {
            const NodeConflict& c = *scan.node;
            std::vector<ArcId> out_arcs(g_.adj_arcs.begin() + g_.adj_start[c.v],
                                        g_.adj_arcs.begin() + g_.adj_start[c.v + 1]);
            children.emplace_back(c.k1, out_arcs);
            children.emplace_back(c.k2, out_arcs);
        } else {
            bool use_dist = scan.dist &&
                            (!scan.elbow || scan.dist->amount >= scan.elbow->amount);
            if (use_dist) {
                const DistViolation& v = *scan.dist;
                ArcId ra = !g_.is_virtual_arc(v.a) ? v.a : v.a2;
                ServiceId rk = !g_.is_virtual_arc(v.a) ? v.k : v.k2;
                if (dist_pool_.emplace(rk, std::min(ra, RoutingGraph::reverse(ra))).second &&
                    cfg_.collect_cuts)
                    materialize_dist_cut(rk, ra);
                children.emplace_back(
                    v.k, std::vector<ArcId>{v.a, RoutingGraph::reverse(v.a)});
                children.emplace_back(
                    v.k2, std::vector<ArcId>{v.a2, RoutingGraph::reverse(v.a2)});
            } else {
                const ElbowViolation& v = *scan.elbow;
                NodeId na = RoutingGraph::phys_of(g_.tail(v.a));
                NodeId nb = RoutingGraph::phys_of(g_.tail(v.a2));
                if (elbow_pool_.emplace(v.k, std::min(na, nb), std::max(na, nb)).second &&
                    cfg_.collect_cuts) {
                    Cut cut;
                    cut.kind = Cut::Kind::ElbowR;
                    cut.k = v.k;
                    cut.group_a = std::min(na, nb);
                    cut.group_b = std::max(na, nb);
                    cfg_.collect_cuts->push_back(std::move(cut));
                }
                if (na != nb) {
                    auto ga = re_group(g_, na), gb = re_group(g_, nb);
                    children.emplace_back(v.k, std::vector<ArcId>(ga.begin(), ga.end()));
                    children.emplace_back(v.k, std::vector<ArcId>(gb.begin(), gb.end()));
                } else {
                    // Double turn at one node: branch on the two virtual edges.
                    children.emplace_back(
                        v.k, std::vector<ArcId>{v.a, RoutingGraph::reverse(v.a)});
                    children.emplace_back(
                        v.k, std::vector<ArcId>{v.a2, RoutingGraph::reverse(v.a2)});
                }
            }
        }

        for (auto& [k, arcs] : children) {
            BBNode child;
            child.parent = id;
            child.service = k;
            child.forbidden = std::move(arcs);

            // Temporarily install the child delta for the reroute.
            const auto arena_id = static_cast<std::int64_t>(arena_.size());
            arena_.push_back(std::move(child));
            ShortestPathResult sp = route(k, arena_id);
            BBNode& stored = arena_[arena_id];
            if (!sp.found) {
                stored.paths.clear();
                continue;
            }
            stored.bound = arena_[id].bound - arena_[id].path_costs[k] + sp.cost;
            if (incumbent_set_ && stored.bound >= incumbent_value_) {
                stored.paths.clear();
                continue;
            }
            stored.paths = arena_[id].paths;
            stored.path_costs = arena_[id].path_costs;
            stored.paths[k] = std::move(sp.arcs);
            stored.path_costs[k] = sp.cost;
            open_.push({stored.bound, arena_id});
        }
        release(id);
    }

    void materialize_dist_cut(ServiceId k, ArcId a) {
        Cut cut;
        cut.kind = Cut::Kind::Dist;
        cut.k = k;
        cut.arc = a;
        cut.big_m = big_m(g_, sc_, a, k);
        for (ServiceId k2 : services_) {
            if (k2 == k) continue;
            double R = sc_.pair_clearance(sc_.services[k], sc_.services[k2]);
            for (ArcId a2 = 0; a2 < g_.n_arcs(); ++a2) {
                if (arc_distance_sq(g_, a, a2) < R * R) cut.conflict_arcs.emplace_back(k2, a2);
            }
        }
        cfg_.collect_cuts->push_back(std::move(cut));
    }

    void release(std::int64_t id) {
        arena_[id].paths.clear();
        arena_[id].paths.shrink_to_fit();
        arena_[id].path_costs.clear();
        arena_[id].path_costs.shrink_to_fit();
    }

    void log_line(const std::string& msg) {
        if (cfg_.log) *cfg_.log << "[exact] " << msg << "\n";
    }

    const RoutingGraph& g_;
    const EdgeCostTable& costs_;
    const Scenario& sc_;
    const ExactConfig& cfg_;
    std::vector<ServiceId> services_;
    Dijkstra dij_;

    std::vector<BBNode> arena_;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<>> open_;
    std::vector<std::uint8_t> forb_scratch_;

    Clock::time_point t0_;
    bool incumbent_set_ = false;
    double incumbent_value_ = 0.0;
    std::vector<std::vector<ArcId>> incumbent_paths_;
    double best_bound_ = 0.0;
    std::int64_t nodes_explored_ = 0;
    bool stopped_early_ = false;
    std::set<std::pair<ServiceId, ArcId>> dist_pool_;
    std::set<std::tuple<ServiceId, NodeId, NodeId>> elbow_pool_;
};

} // namespace

ExactResult solve_exact(const RoutingGraph& g, const EdgeCostTable& costs,
                        const Scenario& scenario, const ExactConfig& config) {
    std::vector<ServiceId> all(scenario.services.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<ServiceId>(k);
    Engine engine(g, costs, scenario, config, std::move(all));
    ExactResult r = engine.run();
    r.solution.method = "exact";
    r.solution.wall_time_s = r.wall_time_s;
    return r;
}

ExactResult solve_single_commodity(const RoutingGraph& g, const EdgeCostTable& costs,
                                   const Scenario& scenario, ServiceId k,
                                   const ExactConfig& config) {
    ExactConfig sub = config;
    sub.warm_start = false;
    Engine engine(g, costs, scenario, sub, {k});
    ExactResult r = engine.run();
    r.solution.method = "exact_single";
    r.solution.wall_time_s = r.wall_time_s;
    return r;
}

} // namespace piperoute
