#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "piperoute/dijkstra.hpp"

namespace piperoute::testing {

namespace {

double grid_min(const Segment3& s1, const Segment3& s2, double a0, double a1, double b0,
                double b1, int n, int& bi, int& bj) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        double u = a0 + (a1 - a0) * i / n;
        Point3 p = s1.at(u);
        for (int j = 0; j <= n; ++j) {
            double v = b0 + (b1 - b0) * j / n;
            double d2 = point_distance_sq(p, s2.at(v));
            if (d2 < best) {
                best = d2;
                bi = i;
                bj = j;
            }
        }
    }
    return best;
}

} // namespace

double sampled_segment_distance(const Segment3& s1, const Segment3& s2, int coarse,
                                int refine) {
    int bi = 0, bj = 0;
    double best = grid_min(s1, s2, 0.0, 1.0, 0.0, 1.0, coarse, bi, bj);
    // The squared distance is convex over the parameter square, so the true
    // minimizer lies within one coarse cell of the sampled argmin.
    double a0 = std::max(0.0, (bi - 2.0) / coarse), a1 = std::min(1.0, (bi + 2.0) / coarse);
    double b0 = std::max(0.0, (bj - 2.0) / coarse), b1 = std::min(1.0, (bj + 2.0) / coarse);
    int ri = 0, rj = 0;
    double refined = grid_min(s1, s2, a0, a1, b0, b1, refine, ri, rj);
    return std::sqrt(std::min(best, refined));
}

double brute_segment_distance(const Segment3& s1, const Segment3& s2, int grid) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        Point3 p = s1.at(static_cast<double>(i) / grid);
        for (int j = 0; j <= grid; ++j) {
            best = std::min(best, point_distance_sq(p, s2.at(static_cast<double>(j) / grid)));
        }
    }
    return std::sqrt(best);
}

double sampled_cuboid_segment_distance(const Cuboid& c, const Segment3& s, int coarse,
                                       int refine) {
    auto scan = [&](double t0, double t1, int n, int& bi) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i) {
            double t = t0 + (t1 - t0) * i / n;
            double d2 = point_cuboid_distance_sq(s.at(t), c);
            if (d2 < best) {
                best = d2;
                bi = i;
            }
        }
        return best;
    };
    int bi = 0;
    double best = scan(0.0, 1.0, coarse, bi);
    double t0 = std::max(0.0, (bi - 2.0) / coarse), t1 = std::min(1.0, (bi + 2.0) / coarse);
    int ri = 0;
    double refined = scan(t0, t1, refine, ri);
    return std::sqrt(std::min(best, refined));
}

// ---------------------------------------------------------------------------

bool oracle_feasible(const RoutingGraph& g, const Scenario& sc,
                     const std::vector<std::vector<ArcId>>& paths) {
    // one commodity per node
    std::set<VNodeId> tails;
    for (const auto& path : paths) {
        for (ArcId a : path) {
            if (!tails.insert(g.tail(a)).second) return false;
        }
    }
    // pairwise clearance
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            double R = sc.pair_clearance(sc.services[i], sc.services[j]);
            for (ArcId a : paths[i]) {
                for (ArcId b : paths[j]) {
                    if (g.is_virtual_arc(a) && g.is_virtual_arc(b)) continue;
                    if (arc_distance_sq(g, a, b) < R * R) return false;
                }
            }
        }
    }
    // consecutive elbow spacing
    for (std::size_t k = 0; k < paths.size(); ++k) {
        double D = sc.services[k].elbow_min;
        ArcId prev = -1;
        for (ArcId a : paths[k]) {
            if (!g.is_virtual_arc(a)) continue;
            if (prev >= 0 && arc_distance_sq(g, prev, a) <= D * D) return false;
            prev = a;
        }
    }
    return true;
}

namespace {

// Simple s->t paths of one service in nondecreasing cost order (Yen's
// algorithm with deterministic tie-breaking by the arc sequence).
class YenStream {
public:
    YenStream(const RoutingGraph& g, const EdgeCostTable& costs, ServiceId k, int max_paths)
        : g_(g), costs_(costs), k_(k), max_paths_(max_paths), dij_(g),
          forb_(g.n_arcs(), 0), blocked_(g.n_vnodes(), 0) {
        ShortestPathResult first = dij_.solve(g_.source_vnode[k_], g_.target_vnode[k_], k_,
                                              row(), {});
        if (first.found) candidates_.emplace(recost(first.arcs), std::move(first.arcs));
    }

    const std::vector<ArcId>* path(std::size_t idx) {
        while (accepted_.size() <= idx) {
            if (static_cast<int>(accepted_.size()) >= max_paths_) {
                capped_ = capped_ || !candidates_.empty();
                return nullptr;
            }
            if (!advance()) return nullptr;
        }
        return &accepted_[idx].second;
    }

    double cost(std::size_t idx) const { return accepted_[idx].first; }
    bool capped() const { return capped_; }

private:
    double recost(const std::vector<ArcId>& arcs) const {
        double c = 0.0;
        for (ArcId a : arcs) c += row()[RoutingGraph::edge_of(a)];
        return c;
    }

    const double* row() const {
        return &costs_.c[static_cast<std::size_t>(k_) * costs_.n_edges];
    }

    bool advance() {
        if (candidates_.empty()) return false;
        auto it = candidates_.begin();
        accepted_.emplace_back(it->first, it->second);
        candidates_.erase(it);
        spur_from(accepted_.back().second);
        return true;
    }

    void spur_from(const std::vector<ArcId>& base) {
        std::vector<ArcId> root;
        for (std::size_t j = 0; j < base.size(); ++j) {
            VNodeId spur_node = g_.tail(base[j]);

            std::vector<ArcId> forb_marked;
            for (const auto& [c, acc] : accepted_) {
                (void)c;
                if (acc.size() > j && std::equal(root.begin(), root.end(), acc.begin())) {
                    if (!forb_[acc[j]]) {
                        forb_[acc[j]] = 1;
                        forb_marked.push_back(acc[j]);
                    }
                }
            }
            std::vector<VNodeId> blocked_marked;
            for (ArcId a : root) {
                VNodeId v = g_.tail(a);
                if (!blocked_[v]) {
                    blocked_[v] = 1;
                    blocked_marked.push_back(v);
                }
            }

            ArcFilter filter;
            filter.forbidden_arcs = &forb_;
            filter.blocked_vnodes = &blocked_;
            ShortestPathResult sp =
                dij_.solve(spur_node, g_.target_vnode[k_], k_, row(), filter);

            for (ArcId a : forb_marked) forb_[a] = 0;
            for (VNodeId v : blocked_marked) blocked_[v] = 0;

            if (sp.found) {
                std::vector<ArcId> cand = root;
                cand.insert(cand.end(), sp.arcs.begin(), sp.arcs.end());
                candidates_.emplace(recost(cand), std::move(cand));
            }
            root.push_back(base[j]);
        }
    }

    const RoutingGraph& g_;
    const EdgeCostTable& costs_;
    ServiceId k_;
    int max_paths_;
    Dijkstra dij_;
    std::vector<std::uint8_t> forb_;
    std::vector<char> blocked_;
    std::vector<std::pair<double, std::vector<ArcId>>> accepted_;
    std::set<std::pair<double, std::vector<ArcId>>> candidates_;
    bool capped_ = false;
};

} // namespace

std::vector<std::vector<ArcId>> k_shortest_paths(const RoutingGraph& g,
                                                 const EdgeCostTable& costs, ServiceId k,
                                                 int max_paths) {
    YenStream stream(g, costs, k, max_paths);
    std::vector<std::vector<ArcId>> out;
    for (std::size_t i = 0; stream.path(i); ++i) out.push_back(*stream.path(i));
    return out;
}

OracleResult enumerate_optimum(const RoutingGraph& g, const EdgeCostTable& costs,
                               const Scenario& sc, int max_paths_per_service,
                               std::size_t max_combinations) {
    OracleResult res;
    const auto K = static_cast<ServiceId>(sc.services.size());
    std::vector<YenStream> streams;
    streams.reserve(K);
    for (ServiceId k = 0; k < K; ++k)
        streams.emplace_back(g, costs, k, max_paths_per_service);

    std::vector<std::size_t> start(K, 0);
    for (ServiceId k = 0; k < K; ++k) {
        if (!streams[k].path(0)) return res;  // a service has no path at all
    }

    auto total_cost = [&](const std::vector<std::size_t>& idx) {
        double c = 0.0;
        for (ServiceId k = 0; k < K; ++k) c += streams[k].cost(idx[k]);
        return c;
    };

    using Entry = std::pair<double, std::vector<std::size_t>>;
    std::set<Entry> heap;  // ordered pops, deterministic ties
    std::set<std::vector<std::size_t>> seen;
    heap.emplace(total_cost(start), start);
    seen.insert(start);

    std::size_t pops = 0;
    while (!heap.empty()) {
        if (++pops > max_combinations) {
            res.exhausted = true;
            return res;
        }
        auto [cost, idx] = *heap.begin();
        (void)cost;
        heap.erase(heap.begin());

        std::vector<std::vector<ArcId>> paths(K);
        for (ServiceId k = 0; k < K; ++k) paths[k] = *streams[k].path(idx[k]);
        if (oracle_feasible(g, sc, paths)) {
            res.feasible = true;
            res.objective = 0.0;
            for (ServiceId k = 0; k < K; ++k)
                res.objective += path_cost(costs, k, paths[k]);
            res.paths = std::move(paths);
            return res;
        }

        for (ServiceId k = 0; k < K; ++k) {
            std::vector<std::size_t> next = idx;
            ++next[k];
            if (seen.count(next)) continue;
            if (!streams[k].path(next[k])) continue;
            seen.insert(next);
            heap.emplace(total_cost(next), next);
        }
    }
    for (ServiceId k = 0; k < K; ++k) res.exhausted = res.exhausted || streams[k].capped();
    return res;
}

} // namespace piperoute::testing

namespace piperoute::testing {

bool cut_satisfied(const RoutingGraph& g, const Cut& cut,
                   const std::vector<std::vector<ArcId>>& paths) {
    auto active = [&](ServiceId k, ArcId a) {
        const auto& p = paths[k];
        return std::find(p.begin(), p.end(), a) != p.end();
    };
    if (cut.kind == Cut::Kind::Dist) {
        long lhs = 0;
        for (const auto& [k2, a2] : cut.conflict_arcs)
            if (active(k2, a2)) ++lhs;
        double rhs = cut.big_m * (active(cut.k, cut.arc) ? 0.0 : 1.0);
        return static_cast<double>(lhs) <= rhs;
    }
    long used = 0;
    for (NodeId grp : {cut.group_a, cut.group_b}) {
        EdgeId base = g.n_real_edges + 3 * grp;
        for (EdgeId e = base; e < base + 3; ++e)
            for (int dir = 0; dir < 2; ++dir)
                if (active(cut.k, RoutingGraph::arc_of(e, dir))) ++used;
        if (cut.group_b == cut.group_a) break;
    }
    return used <= 1;
}

} // namespace piperoute::testing
