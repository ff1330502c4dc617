#include "piperoute/matheuristics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <thread>
#include <unordered_map>

#include "piperoute/dijkstra.hpp"

namespace piperoute {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<ArcId> reverse_path(const std::vector<ArcId>& arcs) {
    std::vector<ArcId> out(arcs.rbegin(), arcs.rend());
    for (ArcId& a : out) a = RoutingGraph::reverse(a);
    return out;
}

// Index positions (into the arc list) of the first consecutive virtual-arc
// pair violating the elbow spacing; {-1,-1} when the path passes.
std::pair<int, int> first_elbow_failure(const RoutingGraph& g, double elbow_min,
                                        const std::vector<ArcId>& arcs) {
    int prev = -1;
    for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
        if (!g.is_virtual_arc(arcs[i])) continue;
        if (prev >= 0 &&
            arc_distance_sq(g, arcs[prev], arcs[i]) <= elbow_min * elbow_min)
            return {prev, i};
        prev = i;
    }
    return {-1, -1};
}

} // namespace

ElbowTestResult spp_elbow_test(const RoutingGraph& g, CostOverlay& overlay,
                               const Scenario& scenario, ServiceId k, int max_iters) {
    ElbowTestResult res;
    Dijkstra dij(g);
    const double D = scenario.services[k].elbow_min;

    VNodeId cur_src = g.source_vnode[k], cur_dst = g.target_vnode[k];
    bool swapped = false;
    std::vector<ArcId> prefix;
    VNodeId start = cur_src;
    std::vector<char> blocked(g.n_vnodes(), 0);
    std::set<std::pair<VNodeId, EdgeId>> cycle_guard;

    auto swap_restart = [&] {
        std::swap(cur_src, cur_dst);
        swapped = !swapped;
        prefix.clear();
        std::fill(blocked.begin(), blocked.end(), 0);
        cycle_guard.clear();
        start = cur_src;
        ++res.restarts;
    };

    for (int iter = 0; iter < max_iters; ++iter) {
        ArcFilter filter;
        filter.blocked_vnodes = &blocked;
        ShortestPathResult sp = dij.solve(start, cur_dst, k, overlay.c.data(), filter);
        ++res.dijkstra_calls;
        if (!sp.found) {
            if (prefix.empty()) return res;  // terminals disconnected
            swap_restart();                  // truncation painted us into a corner
            continue;
        }

        std::vector<ArcId> full = prefix;
        full.insert(full.end(), sp.arcs.begin(), sp.arcs.end());
        auto [pass_idx, fail_idx] = first_elbow_failure(g, D, full);
        if (fail_idx < 0) {
            res.ok = true;
            res.arcs = swapped ? reverse_path(full) : std::move(full);
            return res;
        }

        EdgeId fail_edge = RoutingGraph::edge_of(full[fail_idx]);
        overlay.c[fail_edge] = overlay.c[fail_edge] > 0.0 ? overlay.c[fail_edge] * 10.0 : 1.0;

        VNodeId trunc = g.head(full[pass_idx]);
        if (!cycle_guard.emplace(trunc, fail_edge).second) {
            swap_restart();
            continue;
        }
        prefix.assign(full.begin(), full.begin() + pass_idx + 1);
        start = trunc;
        std::fill(blocked.begin(), blocked.end(), 0);
        for (VNodeId v : path_vnodes(g, prefix)) blocked[v] = 1;
        blocked[trunc] = 0;
    }
    return res;  // iteration cap reached
}

std::vector<VNodeId> covering_list(const RoutingGraph& g, const std::vector<VNodeId>& path,
                                   double delta) {
    std::set<VNodeId> members(path.begin(), path.end());
    const double d2max = delta * delta;
    for (VNodeId v0 : path) {
        Point3 anchor = g.point(v0);
        std::vector<VNodeId> queue(members.begin(), members.end());
        for (std::size_t idx = 0; idx < queue.size(); ++idx) {
            VNodeId v = queue[idx];
            for (std::int32_t i = g.adj_start[v]; i < g.adj_start[v + 1]; ++i) {
                VNodeId w = g.head(g.adj_arcs[i]);
                if (members.count(w)) continue;
                if (point_distance_sq(g.point(w), anchor) < d2max) {
                    members.insert(w);
                    queue.push_back(w);
                }
            }
        }
    }
    return {members.begin(), members.end()};
}

std::vector<std::pair<ServiceId, ServiceId>> conflict_pairs(
    const std::vector<std::vector<VNodeId>>& coverings) {
    std::vector<std::pair<ServiceId, ServiceId>> out;
    for (std::size_t i = 0; i < coverings.size(); ++i) {
        for (std::size_t j = i + 1; j < coverings.size(); ++j) {
            const auto &a = coverings[i], &b = coverings[j];
            std::size_t x = 0, y = 0;
            while (x < a.size() && y < b.size()) {
                if (a[x] < b[y]) {
                    ++x;
                } else if (b[y] < a[x]) {
                    ++y;
                } else {
                    out.emplace_back(static_cast<ServiceId>(i), static_cast<ServiceId>(j));
                    break;
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// H2

namespace {

struct PairConflict {
    std::vector<VNodeId> shared;        // covering intersection
    std::vector<EdgeId> edges_first;    // violating edges of the lower-id service
    std::vector<EdgeId> edges_second;
};

class H2Engine {
public:
    H2Engine(const RoutingGraph& g, const EdgeCostTable& base, const Scenario& sc,
             const H2Config& cfg)
        : g_(g), base_(base), sc_(sc), cfg_(cfg),
          K_(static_cast<ServiceId>(sc.services.size())) {}

    H2Result run() {
        Clock::time_point t0 = Clock::now();
        H2Result res;
        overlay_.resize(K_);
        paths_.assign(K_, {});
        cover_.assign(K_, {});
        path_len_.assign(K_, 0.0);
        for (ServiceId k = 0; k < K_; ++k) overlay_[k].reset(base_, k);

        std::vector<ServiceId> all(K_);
        for (ServiceId k = 0; k < K_; ++k) all[k] = k;
        std::vector<ServiceId> k_it = all, next_k = all;

        const int n_par = schedule_count(cfg_.frac_par);
        const int n_seq = schedule_count(cfg_.frac_seq);

        bool solved = false;
        for (int it = 1; it <= cfg_.maxit; ++it) {
            H2IterationType type = it <= n_par ? H2IterationType::Par
                                   : it <= cfg_.maxit - n_seq ? H2IterationType::Cluster
                                                              : H2IterationType::Seq;
            if (type == H2IterationType::Seq) {
                k_it = all;
            } else {
                k_it = next_k;
            }
            next_k = all;

            if (!route_iteration(type, k_it)) {
                res.iterations = it;
                return finish_failed(res, t0);  // elbow test gave up
            }

            std::map<std::pair<ServiceId, ServiceId>, PairConflict> conflicts;
            collect_conflicts(conflicts);

            H2IterationTrace tr;
            tr.it = it;
            tr.type = type;
            tr.routed = k_it;
            tr.conflicts = static_cast<int>(conflicts.size());
            res.trace.push_back(tr);
            if (cfg_.log)
                *cfg_.log << "[h2] it " << it << " type "
                          << (type == H2IterationType::Par       ? "par"
                              : type == H2IterationType::Cluster ? "cluster"
                                                                 : "seq")
                          << " routed " << k_it.size() << " conflicts "
                          << conflicts.size() << "\n";

            if (conflicts.empty()) {
                res.iterations = it;
                solved = true;
                break;
            }

            if (type == H2IterationType::Par) {
                apply_par_penalties(k_it, conflicts);
            } else if (type == H2IterationType::Cluster) {
                next_k = apply_cluster_penalties(k_it, conflicts);
            }
            res.iterations = it;
        }

        if (!solved) return finish_failed(res, t0);

        res.status = SolveStatus::Feasible;
        res.solution.status = SolveStatus::Feasible;
        res.solution.method = "h2";
        res.solution.paths = paths_;
        for (ServiceId k = 0; k < K_; ++k)
            res.solution.objective += path_cost(base_, k, paths_[k]);
        res.wall_time_s = seconds_since(t0);
        res.solution.wall_time_s = res.wall_time_s;
        return res;
    }

private:
    int schedule_count(double frac) const {
        return static_cast<int>(std::lround(frac * cfg_.maxit));
    }

    // Routes every service in k_it; sequential iterations also apply the
    // within-iteration inflation to the not-yet-routed services.
    bool route_iteration(H2IterationType type, const std::vector<ServiceId>& k_it) {
        if (type == H2IterationType::Seq) {
            for (ServiceId k = 0; k < K_; ++k) overlay_[k].reset(base_, k);
            for (std::size_t pos = 0; pos < k_it.size(); ++pos) {
                ServiceId k = k_it[pos];
                if (!route_one(k)) return false;
                std::vector<EdgeId> edges = edges_within(cover_[k]);
                for (std::size_t rest = pos + 1; rest < k_it.size(); ++rest) {
                    CostOverlay& ov = overlay_[k_it[rest]];
                    for (EdgeId e : edges) ov.c[e] *= cfg_.gamma_seq;
                }
            }
            return true;
        }

        if (cfg_.threads > 1 && k_it.size() > 1) {
            std::vector<char> ok(k_it.size(), 1);
            std::vector<std::thread> pool;
            const int n_workers =
                std::min<int>(cfg_.threads, static_cast<int>(k_it.size()));
            for (int w = 0; w < n_workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t i = w; i < k_it.size(); i += n_workers)
                        ok[i] = route_one(k_it[i]) ? 1 : 0;
                });
            }
            for (auto& t : pool) t.join();
            return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
        }
        for (ServiceId k : k_it)
            if (!route_one(k)) return false;
        return true;
    }

    bool route_one(ServiceId k) {
        ElbowTestResult r = spp_elbow_test(g_, overlay_[k], sc_, k, cfg_.elbow_max_iters);
        if (!r.ok) return false;
        paths_[k] = std::move(r.arcs);
        double len = 0.0;
        for (ArcId a : paths_[k]) len += g_.edges[RoutingGraph::edge_of(a)].length;
        path_len_[k] = len;
        cover_[k] = covering_list(g_, path_vnodes(g_, paths_[k]),
                                  sc_.services[k].radius + sc_.services[k].safety);
        return true;
    }

    // Covering intersections plus a direct geometric clearance scan. The
    // covering test alone cannot see violations between lattice lines closer
    // than the clearance radius, so measured violations feed back as
    // conflicts too.
    void collect_conflicts(std::map<std::pair<ServiceId, ServiceId>, PairConflict>& out) {
        for (ServiceId i = 0; i < K_; ++i) {
            for (ServiceId j = i + 1; j < K_; ++j) {
                if (paths_[i].empty() || paths_[j].empty()) continue;
                PairConflict pc;
                std::set_intersection(cover_[i].begin(), cover_[i].end(),
                                      cover_[j].begin(), cover_[j].end(),
                                      std::back_inserter(pc.shared));
                double R = sc_.pair_clearance(sc_.services[i], sc_.services[j]);
                for (ArcId a : paths_[i]) {
                    for (ArcId b : paths_[j]) {
                        if (g_.is_virtual_arc(a) && g_.is_virtual_arc(b)) continue;
                        if (arc_distance_sq(g_, a, b) < R * R) {
                            pc.edges_first.push_back(RoutingGraph::edge_of(a));
                            pc.edges_second.push_back(RoutingGraph::edge_of(b));
                        }
                    }
                }
                if (!pc.shared.empty() || !pc.edges_first.empty())
                    out.emplace(std::make_pair(i, j), std::move(pc));
            }
        }
    }

    std::vector<EdgeId> edges_within(const std::vector<VNodeId>& verts) const {
        std::vector<EdgeId> out;
        for (VNodeId v : verts) {
            for (std::int32_t i = g_.adj_start[v]; i < g_.adj_start[v + 1]; ++i) {
                ArcId a = g_.adj_arcs[i];
                if (a & 1) continue;  // one orientation per edge
                if (std::binary_search(verts.begin(), verts.end(), g_.head(a)))
                    out.push_back(RoutingGraph::edge_of(a));
            }
        }
        return out;
    }

    void penalize(ServiceId k, const std::vector<VNodeId>& verts,
                  const std::vector<EdgeId>& extra_edges) {
        overlay_[k].reset(base_, k);
        double penalty = cfg_.gamma * std::max(base_.max_cost, 1.0);
        for (EdgeId e : edges_within(verts)) overlay_[k].c[e] = penalty;
        for (EdgeId e : extra_edges) overlay_[k].c[e] = penalty;
    }

    void apply_par_penalties(
        const std::vector<ServiceId>& k_it,
        const std::map<std::pair<ServiceId, ServiceId>, PairConflict>& conflicts) {
        for (ServiceId k : k_it) {
            std::set<VNodeId> verts;
            std::vector<EdgeId> extra;
            for (const auto& [pair, pc] : conflicts) {
                if (pair.first != k && pair.second != k) continue;
                verts.insert(pc.shared.begin(), pc.shared.end());
                const auto& own = pair.first == k ? pc.edges_first : pc.edges_second;
                extra.insert(extra.end(), own.begin(), own.end());
            }
            penalize(k, {verts.begin(), verts.end()}, extra);
        }
    }

    // Keeps the highest-priority side of every conflicting pair and returns
    // the services to reroute next iteration.
    std::vector<ServiceId> apply_cluster_penalties(
        const std::vector<ServiceId>& k_it,
        const std::map<std::pair<ServiceId, ServiceId>, PairConflict>& conflicts) {
        std::set<ServiceId> routed(k_it.begin(), k_it.end());
        auto priority_beats = [&](ServiceId a, ServiceId b) {
            // shorter current path wins; ties to the smaller id
            return std::make_pair(path_len_[a], a) < std::make_pair(path_len_[b], b);
        };
        std::set<ServiceId> losers;
        for (const auto& [pair, pc] : conflicts) {
            (void)pc;
            auto [a, b] = pair;
            bool a_open = routed.count(a) > 0, b_open = routed.count(b) > 0;
            if (a_open && !b_open) {
                losers.insert(a);
            } else if (!a_open && b_open) {
                losers.insert(b);
            } else {
                losers.insert(priority_beats(a, b) ? b : a);
            }
        }
        for (ServiceId k : losers) {
            std::set<VNodeId> verts;
            std::vector<EdgeId> extra;
            for (const auto& [pair, pc] : conflicts) {
                ServiceId other = pair.first == k ? pair.second
                                  : pair.second == k ? pair.first
                                                     : -1;
                if (other < 0 || losers.count(other)) continue;
                verts.insert(pc.shared.begin(), pc.shared.end());
                const auto& own = pair.first == k ? pc.edges_first : pc.edges_second;
                extra.insert(extra.end(), own.begin(), own.end());
            }
            penalize(k, {verts.begin(), verts.end()}, extra);
        }
        return {losers.begin(), losers.end()};
    }

    H2Result finish_failed(H2Result& res, Clock::time_point t0) {
        res.status = SolveStatus::HeuristicFailed;
        res.wall_time_s = seconds_since(t0);
        return res;
    }

    const RoutingGraph& g_;
    const EdgeCostTable& base_;
    const Scenario& sc_;
    const H2Config& cfg_;
    ServiceId K_;
    std::vector<CostOverlay> overlay_;
    std::vector<std::vector<ArcId>> paths_;
    std::vector<std::vector<VNodeId>> cover_;
    std::vector<double> path_len_;
};

// Rewrites a coarse-grid path onto the native grid by splitting every arc at
// the native lattice crossings.
bool remap_fallback_paths(const RoutingGraph& fine, const RoutingGraph& coarse,
                          const Scenario& sc, std::vector<std::vector<ArcId>>& paths) {
    std::unordered_map<std::int64_t, EdgeId> edge_lookup;
    for (EdgeId e = 0; e < fine.n_real_edges; ++e) {
        const auto& pe = fine.pg.edges[e];
        edge_lookup[static_cast<std::int64_t>(pe.u) * fine.pg.node_count() + pe.v] = e;
    }
    auto find_edge = [&](NodeId u, NodeId v) -> EdgeId {
        NodeId lo = std::min(u, v), hi = std::max(u, v);
        auto it = edge_lookup.find(static_cast<std::int64_t>(lo) * fine.pg.node_count() + hi);
        return it == edge_lookup.end() ? -1 : it->second;
    };

    const double s = fine.pg.spacing[0];
    for (std::size_t k = 0; k < paths.size(); ++k) {
        std::vector<ArcId> fine_arcs;
        for (ArcId a : paths[k]) {
            if (coarse.is_virtual_arc(a)) {
                Point3 p = coarse.point(coarse.tail(a));
                NodeId n = fine.pg.find_node(p);
                if (n < 0) return false;
                Axis ta = RoutingGraph::axis_of(coarse.tail(a));
                Axis ha = RoutingGraph::axis_of(coarse.head(a));
                VNodeId u = RoutingGraph::vnode(n, ta), v = RoutingGraph::vnode(n, ha);
                // virtual edges are identified by node and axis pair
                Axis lo = std::min(ta, ha), hi = std::max(ta, ha);
                int off = (lo == Axis::X && hi == Axis::Y) ? 0
                          : (lo == Axis::X && hi == Axis::Z) ? 1
                                                             : 2;
                EdgeId ve = fine.n_real_edges + 3 * n + off;
                ArcId fa = RoutingGraph::arc_of(ve, ta < ha ? 0 : 1);
                if (fine.tail(fa) != u || fine.head(fa) != v) return false;
                if (!fine.arc_usable(fa, static_cast<ServiceId>(k))) return false;
                fine_arcs.push_back(fa);
                continue;
            }
            Point3 from = coarse.point(coarse.tail(a));
            Point3 to = coarse.point(coarse.head(a));
            int axis = 0;
            for (int c = 0; c < 3; ++c)
                if (from[c] != to[c]) axis = c;
            // native lattice crossings strictly between the endpoints
            std::vector<Point3> stops{from};
            double lo_coord = sc.region.lo[axis];
            double a0 = from[axis], a1 = to[axis];
            double step = a1 > a0 ? s : -s;
            std::int64_t i0 = static_cast<std::int64_t>(
                std::floor((std::min(a0, a1) - lo_coord) / s + 1e-9));
            std::int64_t i1 = static_cast<std::int64_t>(
                std::ceil((std::max(a0, a1) - lo_coord) / s - 1e-9));
            (void)step;
            std::vector<double> coords;
            for (std::int64_t i = i0; i <= i1; ++i) {
                double c = lo_coord + static_cast<double>(i) * s;
                if (c > std::min(a0, a1) + 1e-9 * s && c < std::max(a0, a1) - 1e-9 * s)
                    coords.push_back(c);
            }
            if (a1 < a0) std::reverse(coords.begin(), coords.end());
            for (double c : coords) {
                Point3 p = from;
                p[axis] = c;
                stops.push_back(p);
            }
            stops.push_back(to);
            for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
                NodeId u = fine.pg.find_node(stops[i]);
                NodeId v = fine.pg.find_node(stops[i + 1]);
                if (u < 0 || v < 0) return false;
                EdgeId e = find_edge(u, v);
                if (e < 0) return false;
                if (!fine.usable(e, static_cast<ServiceId>(k))) return false;
                ArcId fa = RoutingGraph::arc_of(
                    e, fine.pg.edges[e].u == u ? 0 : 1);
                fine_arcs.push_back(fa);
            }
        }
        paths[k] = std::move(fine_arcs);
    }
    return true;
}

} // namespace

H2Result run_h2(const RoutingGraph& g, const EdgeCostTable& base_costs,
                const Scenario& scenario, const H2Config& config) {
    H2Engine engine(g, base_costs, scenario, config);
    H2Result res = engine.run();
    if (res.status == SolveStatus::Feasible || !config.fallback_spacing) return res;

    // Coarse-grid fallback: solve on a sparser lattice (whose nodes are a
    // subset of the native one) and translate the paths back.
    double fb = *config.fallback_spacing;
    double ratio = fb / g.pg.spacing[0];
    if (!(fb > g.pg.spacing[0]) ||
        std::abs(ratio - std::lround(ratio)) > 1e-9) {
        return res;
    }
    if (config.log) *config.log << "[h2] falling back to spacing " << fb << "\n";

    H2Result coarse_res;
    try {
        RoutingGraph coarse = build_routing_graph(scenario, fb);
        EdgeCostTable coarse_costs = build_cost_table(coarse, scenario);
        H2Config sub = config;
        sub.fallback_spacing.reset();
        coarse_res = run_h2(coarse, coarse_costs, scenario, sub);
        if (coarse_res.status != SolveStatus::Feasible) return res;
        if (!remap_fallback_paths(g, coarse, scenario, coarse_res.solution.paths))
            return res;
    } catch (const ScenarioError&) {
        return res;
    }

    coarse_res.used_fallback = true;
    coarse_res.solution.objective = 0.0;
    for (ServiceId k = 0; k < static_cast<ServiceId>(coarse_res.solution.paths.size()); ++k)
        coarse_res.solution.objective +=
            path_cost(base_costs, k, coarse_res.solution.paths[k]);
    coarse_res.trace.insert(coarse_res.trace.begin(), res.trace.begin(), res.trace.end());
    coarse_res.iterations += res.iterations;
    return coarse_res;
}

H1Result run_h1(const RoutingGraph& g, const EdgeCostTable& base_costs,
                const Scenario& scenario, const H1Config& config) {
    Clock::time_point t0 = Clock::now();
    H1Result res;
    const auto K = static_cast<ServiceId>(scenario.services.size());
    res.full_vars = static_cast<std::int64_t>(g.n_arcs()) * K;

    auto remaining = [&] { return config.time_limit_s - seconds_since(t0); };

    // Independent optimal paths with the elbow constraints enforced.
    std::vector<std::vector<Segment3>> tube_segments(K);
    for (ServiceId k = 0; k < K; ++k) {
        ExactConfig ec;
        ec.time_limit_s = remaining();
        ExactResult r = solve_single_commodity(g, base_costs, scenario, k, ec);
        if (r.status != SolveStatus::Optimal) {
            res.status = r.status == SolveStatus::Infeasible ? SolveStatus::Infeasible
                                                             : SolveStatus::TimeLimit;
            res.wall_time_s = seconds_since(t0);
            return res;
        }
        for (ArcId a : r.solution.paths[k]) tube_segments[k].push_back(g.arc_segment(a));
    }

    std::vector<double> delta(K);
    for (ServiceId k = 0; k < K; ++k) {
        if (config.delta_init) {
            delta[k] = *config.delta_init;
        } else if (config.delta_max_rule) {
            double m = 0.0;
            for (const Service& s : scenario.services)
                m = std::max(m, s.radius + s.safety);
            delta[k] = m;
        } else {
            delta[k] = scenario.services[k].radius + scenario.services[k].safety;
        }
    }
    const double step = config.delta_step ? *config.delta_step : g.pg.spacing[0];

    auto inside_region = [&](ServiceId k, const Point3& p) {
        for (const Segment3& s : tube_segments[k]) {
            double d = delta[k];
            if (p.x >= std::min(s.a.x, s.b.x) - d && p.x <= std::max(s.a.x, s.b.x) + d &&
                p.y >= std::min(s.a.y, s.b.y) - d && p.y <= std::max(s.a.y, s.b.y) + d &&
                p.z >= std::min(s.a.z, s.b.z) - d && p.z <= std::max(s.a.z, s.b.z) + d)
                return true;
        }
        if (k < static_cast<ServiceId>(config.init_zones.size())) {
            for (const Cuboid& c : config.init_zones[k])
                if (cuboid_contains(c, p)) return true;
        }
        return false;
    };

    std::vector<std::vector<std::uint8_t>> allowed(K);
    std::int64_t prev_allowed = -1;
    for (;;) {
        // Node-based trimming: an edge stays when both endpoints lie in the
        // service's allowed region.
        std::int64_t n_allowed = 0;
        bool all_full = true;
        for (ServiceId k = 0; k < K; ++k) {
            allowed[k].assign(g.n_edges(), 0);
            std::vector<char> node_in(g.pg.node_count(), 0);
            for (NodeId n = 0; n < static_cast<NodeId>(g.pg.node_count()); ++n)
                node_in[n] = inside_region(k, g.pg.nodes[n]) ? 1 : 0;
            for (EdgeId e = 0; e < g.n_edges(); ++e) {
                NodeId u = RoutingGraph::phys_of(g.edges[e].u);
                NodeId v = RoutingGraph::phys_of(g.edges[e].v);
                if (node_in[u] && node_in[v]) {
                    allowed[k][e] = 1;
                    ++n_allowed;
                } else {
                    all_full = false;
                }
            }
        }

        if (n_allowed == prev_allowed && !all_full) {
            // The grown tube admitted nothing new; grow again before solving.
            for (ServiceId k = 0; k < K; ++k) delta[k] += step;
            continue;
        }
        prev_allowed = n_allowed;

        ExactConfig ec;
        ec.allowed_edges = &allowed;
        ec.time_limit_s = std::min(config.iter_time_limit_s, remaining());
        ec.log = config.log;
        ExactResult r = solve_exact(g, base_costs, scenario, ec);
        ++res.growth_iterations;
        res.restricted_vars = 2 * n_allowed;
        if (config.log)
            *config.log << "[h1] iteration " << res.growth_iterations << " delta "
                        << delta[0] << " vars " << res.restricted_vars << " status "
                        << solve_status_name(r.status) << "\n";

        if (r.status == SolveStatus::Optimal ||
            (r.status == SolveStatus::TimeLimit &&
             r.solution.status == SolveStatus::Feasible)) {
            res.status = SolveStatus::Feasible;
            res.solution = r.solution;
            res.solution.status = SolveStatus::Feasible;
            res.solution.method = "h1";
            res.wall_time_s = seconds_since(t0);
            res.solution.wall_time_s = res.wall_time_s;
            return res;
        }
        if (r.status == SolveStatus::Infeasible) {
            if (all_full) {
                res.status = SolveStatus::Infeasible;  // exact verdict
                res.wall_time_s = seconds_since(t0);
                return res;
            }
            for (ServiceId k = 0; k < K; ++k) delta[k] += step;
            continue;
        }
        res.status = SolveStatus::TimeLimit;
        res.wall_time_s = seconds_since(t0);
        return res;
    }
}

} // namespace piperoute
