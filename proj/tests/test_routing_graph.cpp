#include <doctest.h>

#include <algorithm>
#include <set>

#include "piperoute/cost_model.hpp"
#include "piperoute/dijkstra.hpp"
#include "piperoute/routing_graph.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace piperoute;
using namespace piperoute::testing;

namespace {

EdgeId find_edge(const RoutingGraph& g, const Point3& a, const Point3& b) {
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
        Segment3 s = g.edge_segment(e);
        if (g.is_virtual_edge(e)) continue;
        if ((s.a == a && s.b == b) || (s.a == b && s.b == a)) return e;
    }
    return -1;
}

} // namespace

TEST_CASE("obstacle-free lattice counts") {
    Scenario sc = make_box_scenario({128, 128, 128}, 8.0);
    PhysicalGraph pg = build_grid(sc, 8.0);
    CHECK(pg.node_count() == 17 * 17 * 17);
    CHECK(pg.edge_count() == 3 * 17 * 17 * 16);
}

TEST_CASE("pillar scenario prunes exactly the interior lattice") {
    Scenario sc = example_one_scenario();
    PhysicalGraph pg = build_grid(sc, 1.0);

    // independent lattice scan
    std::size_t expect = 0;
    for (int x = 0; x <= 6; ++x)
        for (int y = 0; y <= 6; ++y)
            for (int z = 0; z <= 4; ++z)
                if (!cuboid_contains_interior(sc.obstacles[0],
                                              {double(x), double(y), double(z)}))
                    ++expect;
    CHECK(pg.node_count() == expect);

    // no kept edge crosses the pillar interior and all respect the clearance
    double min_need = sc.min_service_clearance();
    for (EdgeId e = 0; e < static_cast<EdgeId>(pg.edge_count()); ++e) {
        Segment3 seg = pg.segment(e);
        CHECK_FALSE(segment_intersects_interior(seg, sc.obstacles[0]));
        CHECK(cuboid_segment_distance(sc.obstacles[0], seg) >= min_need);
    }
}

TEST_CASE("off-lattice terminal is inserted and connected") {
    Scenario sc = make_box_scenario({4, 4, 4}, 1.0);
    sc.services.push_back(make_service(0, {0.5, 0.25, 0.75}, {4, 4, 4}, 0.1, 0.0));
    RoutingGraph g = build_routing_graph(sc);  // throws if disconnected

    CHECK(g.pg.find_node({0.5, 0.25, 0.75}) >= 0);
    // staircase snaps one coordinate at a time toward the lower tie
    CHECK(g.pg.find_node({0, 0.25, 0.75}) >= 0);
    CHECK(g.pg.find_node({0, 0, 0.75}) >= 0);
    CHECK(g.pg.node_count() == 125 + 3);

    // reachability from the terminal to the opposite corner
    EdgeCostTable costs = build_cost_table(g, sc);
    Dijkstra dij(g);
    ShortestPathResult sp = dij.solve(g.source_vnode[0], g.target_vnode[0], 0,
                                      costs.c.data(), {});
    CHECK(sp.found);
}

TEST_CASE("terminal inside an obstacle is rejected") {
    Scenario sc = make_box_scenario({4, 4, 4}, 1.0);
    sc.obstacles.push_back({{1, 1, 1}, {3, 3, 3}});
    sc.services.push_back(make_service(0, {2, 2, 2}, {0, 0, 0}));
    CHECK_THROWS_AS(build_grid(sc, 1.0), ScenarioError);
}

TEST_CASE("walled-off terminal raises the infeasible-scenario error") {
    Scenario sc = make_box_scenario({4, 4, 1}, 1.0);
    // wall across the whole box with no hole
    sc.obstacles.push_back({{1.2, 0, 0}, {1.8, 4, 1}});
    sc.services.push_back(make_service(0, {0, 0, 0}, {4, 4, 0}, 0.1, 0.0));
    CHECK_THROWS_AS(build_routing_graph(sc), InfeasibleScenarioError);
}

TEST_CASE("explosion counts on the obstacle-free lattice") {
    Scenario sc = make_box_scenario({128, 128, 128}, 8.0);
    RoutingGraph g = explode(build_grid(sc, 8.0));
    CHECK(g.n_vnodes() == 14739);
    CHECK(g.n_edges() == 13872 + 14739);
    CHECK(g.n_arcs() == 2 * 28611);

    // exactly three zero-length virtual edges per node, axis-matched reattachment
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
        const auto& re = g.edges[e];
        if (re.is_virtual) {
            CHECK(RoutingGraph::phys_of(re.u) == RoutingGraph::phys_of(re.v));
            CHECK(re.length == 0.0);
        } else {
            CHECK(RoutingGraph::axis_of(re.u) == g.pg.edges[re.phys_ref].axis);
            CHECK(RoutingGraph::axis_of(re.v) == g.pg.edges[re.phys_ref].axis);
        }
    }
}

TEST_CASE("single physical node explodes into a virtual triangle") {
    PhysicalGraph pg;
    pg.nodes = {{1, 2, 3}};
    RoutingGraph g = explode(std::move(pg));
    CHECK(g.n_vnodes() == 3);
    CHECK(g.n_edges() == 3);
    std::set<std::pair<VNodeId, VNodeId>> seen;
    for (const auto& e : g.edges) {
        CHECK(e.is_virtual);
        seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    }
    CHECK(seen == std::set<std::pair<VNodeId, VNodeId>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("explosion is reversible") {
    Scenario sc = example_one_scenario();
    PhysicalGraph pg = build_grid(sc, 1.0);
    PhysicalGraph original = pg;
    RoutingGraph g = explode(std::move(pg));

    CHECK(g.pg.node_count() == original.node_count());
    std::vector<PhysicalGraph::Edge> rebuilt;
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
        if (g.is_virtual_edge(e)) continue;
        rebuilt.push_back({RoutingGraph::phys_of(g.edges[e].u),
                           RoutingGraph::phys_of(g.edges[e].v), g.edges[e].axis});
    }
    REQUIRE(rebuilt.size() == original.edge_count());
    for (std::size_t i = 0; i < rebuilt.size(); ++i) {
        CHECK(rebuilt[i].u == original.edges[i].u);
        CHECK(rebuilt[i].v == original.edges[i].v);
        CHECK(rebuilt[i].axis == original.edges[i].axis);
    }
}

TEST_CASE("a turn uses exactly the matching virtual edge") {
    // Path a -> v -> b turning from a Y-edge onto a Z-edge must traverse the
    // (v_Y, v_Z) virtual edge of the corner node.
    Scenario sc = make_box_scenario({2, 2, 2}, 1.0);
    sc.services.push_back(make_service(0, {1, 0, 1}, {1, 1, 2}, 0.1, 0.0));
    sc.services[0].source_axis = Axis::Y;
    sc.services[0].destination_axis = Axis::Z;
    RoutingGraph g = build_routing_graph(sc);
    EdgeCostTable costs = build_cost_table(g, sc);
    Dijkstra dij(g);
    ShortestPathResult sp =
        dij.solve(g.source_vnode[0], g.target_vnode[0], 0, costs.c.data(), {});
    REQUIRE(sp.found);
    int virtuals = 0;
    for (ArcId a : sp.arcs) {
        if (!g.is_virtual_arc(a)) continue;
        ++virtuals;
        CHECK(RoutingGraph::axis_of(g.tail(a)) == Axis::Y);
        CHECK(RoutingGraph::axis_of(g.head(a)) == Axis::Z);
        CHECK(g.point(g.tail(a)) == Point3{1, 1, 1});
    }
    CHECK(virtuals == 1);
}

TEST_CASE("paths alternate axes only through virtual edges") {
    Scenario sc = example_one_scenario();
    RoutingGraph g = build_routing_graph(sc);
    EdgeCostTable costs = build_cost_table(g, sc);
    Dijkstra dij(g);
    for (ServiceId k = 0; k < 3; ++k) {
        ShortestPathResult sp =
            dij.solve(g.source_vnode[k], g.target_vnode[k], k,
                      &costs.c[static_cast<std::size_t>(k) * costs.n_edges], {});
        REQUIRE(sp.found);
        ArcId prev_real = -1;
        for (ArcId a : sp.arcs) {
            if (g.is_virtual_arc(a)) {
                prev_real = -1;
                continue;
            }
            if (prev_real >= 0)
                CHECK(g.edges[RoutingGraph::edge_of(a)].axis ==
                      g.edges[RoutingGraph::edge_of(prev_real)].axis);
            prev_real = a;
        }
    }
}

TEST_CASE("virtual node degree is at most four") {
    Scenario sc = example_one_scenario();
    RoutingGraph g = build_routing_graph(sc);
    for (VNodeId v = 0; v < g.n_vnodes(); ++v)
        CHECK(g.adj_start[v + 1] - g.adj_start[v] <= 4);
}

TEST_CASE("arc distances") {
    Scenario sc = make_box_scenario({16, 16, 16}, 8.0);
    RoutingGraph g = explode(build_grid(sc, 8.0));

    EdgeId e1 = find_edge(g, {0, 0, 0}, {8, 0, 0});
    EdgeId e2 = find_edge(g, {0, 8, 0}, {8, 8, 0});
    REQUIRE(e1 >= 0);
    REQUIRE(e2 >= 0);

    // opposite orientations of one edge
    CHECK(arc_distance(g, RoutingGraph::arc_of(e1, 0), RoutingGraph::arc_of(e1, 1)) == 0.0);
    // parallel arcs one spacing apart
    CHECK(arc_distance(g, RoutingGraph::arc_of(e1, 0), RoutingGraph::arc_of(e2, 0)) == 8.0);

    // virtual arc against a far real arc equals the point-to-segment oracle
    NodeId corner = g.pg.find_node({16, 16, 16});
    REQUIRE(corner >= 0);
    EdgeId ve = g.n_real_edges + 3 * corner;
    Segment3 far = g.edge_segment(e1);
    double want =
        testing::sampled_cuboid_segment_distance({{16, 16, 16}, {16, 16, 16}}, far);
    CHECK(arc_distance(g, RoutingGraph::arc_of(ve, 0), RoutingGraph::arc_of(e1, 0)) ==
          doctest::Approx(want).epsilon(1e-6));
}
