#ifndef PIPEROUTE_ROUTING_GRAPH_HPP
#define PIPEROUTE_ROUTING_GRAPH_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "piperoute/geometry.hpp"
#include "piperoute/scenario.hpp"

namespace piperoute {

using NodeId = std::int32_t;   // physical node
using VNodeId = std::int32_t;  // virtual node, 3 * physical + axis
using EdgeId = std::int32_t;
using ArcId = std::int32_t;    // 2 * edge + direction
using ServiceId = std::int32_t;

struct InfeasibleScenarioError : ScenarioError {
    using ScenarioError::ScenarioError;
};

// Axis-parallel grid over the region with obstacle-intersecting elements
// removed. Node ids follow lexicographic (x, y, z) order.
struct PhysicalGraph {
    struct Edge {
        NodeId u = -1, v = -1;  // u < v
        Axis axis = Axis::X;
    };

    std::vector<Point3> nodes;
    std::vector<Edge> edges;
    std::array<double, 3> spacing{1, 1, 1};

    // Minimum distance to any obstacle; +inf when no obstacle applies or the
    // clearance requirement is waived by a penetrable zone.
    std::vector<double> edge_clearance;
    // Edge meets some penetrable zone (also waives the clearance rule).
    std::vector<bool> edge_zone_touch;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }

    Segment3 segment(EdgeId e) const { return {nodes[edges[e].u], nodes[edges[e].v]}; }
    double edge_length(EdgeId e) const { return segment(e).length(); }

    // Exact-coordinate lookup; -1 if absent.
    NodeId find_node(const Point3& p) const;
};

PhysicalGraph build_grid(const Scenario& scenario, double spacing);

// Exploded graph: three co-located virtual nodes per physical node joined by
// zero-length virtual edges; every physical edge re-attached to the virtual
// nodes matching its axis. Arcs are both orientations of every edge.
struct RoutingGraph {
    struct Edge {
        VNodeId u = -1, v = -1;
        std::int32_t phys_ref = -1;  // edge id when real, node id when virtual
        double length = 0.0;
        bool is_virtual = false;
        Axis axis = Axis::X;  // axis tag; unused for virtual edges
    };

    PhysicalGraph pg;
    std::vector<Edge> edges;  // real edges first, then 3 per node
    EdgeId n_real_edges = 0;

    // CSR adjacency over virtual nodes: arcs leaving each node.
    std::vector<std::int32_t> adj_start;
    std::vector<ArcId> adj_arcs;

    // Obstacle metadata per (exploded) edge.
    std::vector<double> clearance;
    std::vector<bool> zone_touch;

    // Per-service data filled by attach_services.
    std::vector<VNodeId> source_vnode;
    std::vector<VNodeId> target_vnode;
    std::vector<double> service_need;  // R^k + Delta^k

    std::int32_t n_vnodes() const { return static_cast<std::int32_t>(3 * pg.node_count()); }
    EdgeId n_edges() const { return static_cast<EdgeId>(edges.size()); }
    ArcId n_arcs() const { return static_cast<ArcId>(2 * edges.size()); }
    std::int32_t n_services() const { return static_cast<std::int32_t>(source_vnode.size()); }

    static NodeId phys_of(VNodeId v) { return v / 3; }
    static Axis axis_of(VNodeId v) { return static_cast<Axis>(v % 3); }
    static VNodeId vnode(NodeId n, Axis a) { return 3 * n + static_cast<VNodeId>(a); }

    Point3 point(VNodeId v) const { return pg.nodes[phys_of(v)]; }

    static EdgeId edge_of(ArcId a) { return a >> 1; }
    static ArcId arc_of(EdgeId e, int dir) { return 2 * e + dir; }
    static ArcId reverse(ArcId a) { return a ^ 1; }

    VNodeId tail(ArcId a) const {
        const Edge& e = edges[edge_of(a)];
        return (a & 1) ? e.v : e.u;
    }
    VNodeId head(ArcId a) const {
        const Edge& e = edges[edge_of(a)];
        return (a & 1) ? e.u : e.v;
    }

    bool is_virtual_edge(EdgeId e) const { return edges[e].is_virtual; }
    bool is_virtual_arc(ArcId a) const { return edges[edge_of(a)].is_virtual; }

    Segment3 edge_segment(EdgeId e) const {
        const Edge& r = edges[e];
        Point3 p = pg.nodes[phys_of(r.u)];
        if (r.is_virtual) return {p, p};
        return {p, pg.nodes[phys_of(r.v)]};
    }
    Segment3 arc_segment(ArcId a) const { return edge_segment(edge_of(a)); }

    // Service k may route through edge e.
    bool usable(EdgeId e, ServiceId k) const {
        return zone_touch[e] || clearance[e] >= service_need[k];
    }
    bool arc_usable(ArcId a, ServiceId k) const { return usable(edge_of(a), k); }
};

RoutingGraph explode(PhysicalGraph pg);

// Resolves terminal virtual nodes and per-service clearance requirements.
// Terminal axis defaults to the dominant direction toward the opposite
// terminal unless overridden in the service definition.
void attach_services(RoutingGraph& g, const Scenario& scenario);

// build_grid + explode + attach_services at the scenario's grid spacing.
RoutingGraph build_routing_graph(const Scenario& scenario);
RoutingGraph build_routing_graph(const Scenario& scenario, double spacing);

// Euclidean distance between the underlying edge geometry of two arcs.
double arc_distance(const RoutingGraph& g, ArcId a, ArcId b);
double arc_distance_sq(const RoutingGraph& g, ArcId a, ArcId b);

// Virtual node sequence visited by an arc path.
std::vector<VNodeId> path_vnodes(const RoutingGraph& g, const std::vector<ArcId>& arcs);

} // namespace piperoute

#endif
