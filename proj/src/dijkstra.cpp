#include "piperoute/dijkstra.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace piperoute {

Dijkstra::Dijkstra(const RoutingGraph& g)
    : g_(g),
      dist_(g.n_vnodes(), 0.0),
      parent_(g.n_vnodes(), -1),
      stamp_(g.n_vnodes(), 0) {}

ShortestPathResult Dijkstra::solve(VNodeId s, VNodeId t, ServiceId k,
                                   const double* edge_costs, const ArcFilter& filter) {
    ++epoch_;
    using Entry = std::pair<double, VNodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

    auto reach = [&](VNodeId v, double d, ArcId via) {
        if (stamp_[v] == epoch_ && dist_[v] <= d) return;
        stamp_[v] = epoch_;
        dist_[v] = d;
        parent_[v] = via;
        queue.emplace(d, v);
    };

    reach(s, 0.0, -1);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (stamp_[v] != epoch_ || d != dist_[v]) continue;
        if (v == t) break;
        for (std::int32_t i = g_.adj_start[v]; i < g_.adj_start[v + 1]; ++i) {
            ArcId a = g_.adj_arcs[i];
            if (!g_.arc_usable(a, k) || !filter.passes(g_, a)) continue;
            reach(g_.head(a), d + edge_costs[RoutingGraph::edge_of(a)], a);
        }
    }

    ShortestPathResult r;
    if (stamp_[t] != epoch_) return r;
    r.found = true;
    VNodeId v = t;
    while (parent_[v] >= 0) {
        r.arcs.push_back(parent_[v]);
        v = g_.tail(parent_[v]);
    }
    std::reverse(r.arcs.begin(), r.arcs.end());
    double c = 0.0;
    for (ArcId a : r.arcs) c += edge_costs[RoutingGraph::edge_of(a)];
    r.cost = c;
    return r;
}

} // namespace piperoute
