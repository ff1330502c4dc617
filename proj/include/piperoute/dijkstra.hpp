#ifndef PIPEROUTE_DIJKSTRA_HPP
#define PIPEROUTE_DIJKSTRA_HPP

#include <cstdint>
#include <vector>

#include "piperoute/routing_graph.hpp"

namespace piperoute {

// Optional restrictions applied on top of the service's clearance mask.
struct ArcFilter {
    const std::vector<std::uint8_t>* forbidden_arcs = nullptr;  // size n_arcs
    const std::vector<std::uint8_t>* allowed_edges = nullptr;   // size n_edges
    const std::vector<char>* blocked_vnodes = nullptr;          // size n_vnodes

    bool passes(const RoutingGraph& g, ArcId a) const {
        if (forbidden_arcs && (*forbidden_arcs)[a]) return false;
        if (allowed_edges && !(*allowed_edges)[RoutingGraph::edge_of(a)]) return false;
        if (blocked_vnodes && (*blocked_vnodes)[g.head(a)]) return false;
        return true;
    }
};

struct ShortestPathResult {
    bool found = false;
    double cost = 0.0;
    std::vector<ArcId> arcs;
};

// Deterministic Dijkstra over the exploded graph. Ties in the queue resolve
// by node id; parents update only on strict improvement, so identical inputs
// give identical paths. Reusable across queries via epoch stamping.
class Dijkstra {
public:
    explicit Dijkstra(const RoutingGraph& g);

    // edge_costs indexes edges, not arcs (both orientations share a cost).
    ShortestPathResult solve(VNodeId s, VNodeId t, ServiceId k, const double* edge_costs,
                             const ArcFilter& filter = {});

private:
    const RoutingGraph& g_;
    std::vector<double> dist_;
    std::vector<ArcId> parent_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

} // namespace piperoute

#endif
