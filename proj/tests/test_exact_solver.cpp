#include <doctest.h>

#include <cmath>

#include "piperoute/dijkstra.hpp"
#include "piperoute/exact_solver.hpp"
#include "piperoute/validator.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace piperoute;
using namespace piperoute::testing;

namespace {

// Hand-built two-corridor graph for the separation surface: one X-edge at
// y = 0 and a parallel one at the given offset.
struct ParallelPair {
    RoutingGraph g;
    std::vector<std::vector<ArcId>> paths;
};

ParallelPair parallel_arcs(double offset) {
    PhysicalGraph pg;
    pg.nodes = {{0, 0, 0}, {0, offset, 0}, {100, 0, 0}, {100, offset, 0}};
    pg.edges.push_back({0, 2, Axis::X});
    pg.edges.push_back({1, 3, Axis::X});
    ParallelPair p{explode(std::move(pg)), {}};
    p.paths = {{RoutingGraph::arc_of(0, 0)}, {RoutingGraph::arc_of(1, 0)}};
    return p;
}

Scenario two_service_dummy(double r1, double r2, double safety) {
    Scenario sc = make_box_scenario({1000, 1000, 1000}, 100.0);
    sc.services.push_back(make_service(0, {0, 0, 0}, {1000, 0, 0}, r1, safety));
    sc.services.push_back(make_service(1, {0, 100, 0}, {1000, 100, 0}, r2, safety));
    return sc;
}

} // namespace

TEST_CASE("big-M formula") {
    Scenario sc = make_box_scenario({4, 4, 4}, 1.0);
    sc.services.push_back(make_service(0, {0, 0, 0}, {4, 4, 4}, 0.4, 0.1));
    RoutingGraph g0 = build_routing_graph(sc);
    // single service: the constraint is vacuous
    CHECK(big_m(g0, sc, RoutingGraph::arc_of(0, 0), 0) == 1.0);

    sc.services.push_back(make_service(1, {0, 4, 0}, {4, 0, 4}, 0.4, 0.1));
    sc.services.push_back(make_service(2, {0, 2, 0}, {4, 2, 4}, 0.5, 0.2));
    RoutingGraph g = build_routing_graph(sc);

    for (ArcId a : {RoutingGraph::arc_of(0, 0), RoutingGraph::arc_of(40, 1)}) {
        // independent N: edges meeting the cuboid around the arc
        double max_r = 0.0;
        for (ServiceId k2 = 1; k2 < 3; ++k2)
            max_r = std::max(max_r, sc.pair_clearance(sc.services[0], sc.services[k2]));
        Segment3 seg = g.arc_segment(a);
        Point3 mid = seg.at(0.5);
        double half = 0.5 * seg.length() + max_r;
        Cuboid box{{mid.x - half, mid.y - half, mid.z - half},
                   {mid.x + half, mid.y + half, mid.z + half}};
        std::int64_t n = 0;
        for (EdgeId e = 0; e < g.n_edges(); ++e)
            if (!clip_segment(g.edge_segment(e), box).empty()) ++n;
        CHECK(big_m(g, sc, a, 0) == 2.0 * 2.0 * static_cast<double>(n) + 1.0);
    }

    // monotone in the largest pairwise clearance
    Scenario wider = sc;
    wider.services[2].radius = 1.0;
    CHECK(big_m(build_routing_graph(wider), wider, RoutingGraph::arc_of(0, 0), 0) >=
          big_m(g, sc, RoutingGraph::arc_of(0, 0), 0));
}

TEST_CASE("distance separation triggers strictly below the clearance") {
    // R^{kk'} = 50 + 75 + max(50, 50) = 175
    Scenario sc = two_service_dummy(50, 75, 50);

    ParallelPair close = parallel_arcs(174);
    auto cuts = separate_dist(close.g, sc, close.paths);
    CHECK(cuts.size() == 2);  // one per violating (arc, service)
    for (const Cut& c : cuts) {
        CHECK(c.kind == Cut::Kind::Dist);
        CHECK(c.big_m > 0);
        CHECK_FALSE(c.conflict_arcs.empty());
    }

    ParallelPair apart = parallel_arcs(175);
    CHECK(separate_dist(apart.g, sc, apart.paths).empty());

    // single service: nothing to separate
    Scenario one = make_box_scenario({1000, 1000, 1000}, 100.0);
    one.services.push_back(make_service(0, {0, 0, 0}, {1000, 0, 0}, 50, 50));
    CHECK(separate_dist(close.g, one, {close.paths[0]}).empty());
}

TEST_CASE("elbow separation orders virtual arcs along the path") {
    PhysicalGraph pg;
    pg.nodes = {{0, 0, 0}, {40, 0, 0}, {40, 40, 0}, {80, 40, 0}};
    pg.edges.push_back({0, 1, Axis::X});
    pg.edges.push_back({1, 2, Axis::Y});
    pg.edges.push_back({2, 3, Axis::X});
    RoutingGraph g = explode(std::move(pg));

    // x-run, turn, y-run, turn, x-run; elbows 40 apart
    EdgeId v1 = g.n_real_edges + 3 * 1 + 0;  // node 1, X-Y edge
    EdgeId v2 = g.n_real_edges + 3 * 2 + 0;  // node 2, X-Y edge
    std::vector<ArcId> path{RoutingGraph::arc_of(0, 0), RoutingGraph::arc_of(v1, 0),
                            RoutingGraph::arc_of(1, 0), RoutingGraph::arc_of(v2, 1),
                            RoutingGraph::arc_of(2, 0)};

    Scenario sc = make_box_scenario({1000, 1000, 1000}, 40.0);
    sc.services.push_back(make_service(0, {0, 0, 0}, {80, 40, 0}, 10, 0, 50.0));

    auto cuts = separate_elbow(g, sc, {path});
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].kind == Cut::Kind::ElbowR);
    CHECK(cuts[0].group_a == 1);
    CHECK(cuts[0].group_b == 2);

    // a generous clearance passes
    sc.services[0].elbow_min = 39.0;
    CHECK(separate_elbow(g, sc, {path}).empty());

    // straight path, no virtual arcs, no cuts
    std::vector<ArcId> straight{RoutingGraph::arc_of(0, 0)};
    sc.services[0].elbow_min = 50.0;
    CHECK(separate_elbow(g, sc, {straight}).empty());
}

TEST_CASE("solve_exact matches the enumeration oracle on micro instances") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        Scenario sc = make_micro_instance(seed);
        RoutingGraph g = build_routing_graph(sc);
        EdgeCostTable costs = build_cost_table(g, sc);

        ExactResult r = solve_exact(g, costs, sc);
        OracleResult oracle = enumerate_optimum(g, costs, sc);
        REQUIRE_FALSE(oracle.exhausted);

        if (oracle.feasible) {
            REQUIRE(r.status == SolveStatus::Optimal);
            CHECK(r.solution.objective == oracle.objective);  // integer costs, exact
            CHECK(oracle_feasible(g, sc, r.solution.paths));
        } else {
            CHECK(r.status == SolveStatus::Infeasible);
        }
    }
}

TEST_CASE("emitted cuts never exclude an enumerated feasible solution") {
    Scenario sc = make_micro_instance(21);
    RoutingGraph g = build_routing_graph(sc);
    EdgeCostTable costs = build_cost_table(g, sc);

    std::vector<Cut> cuts;
    ExactConfig ec;
    ec.collect_cuts = &cuts;
    ExactResult r = solve_exact(g, costs, sc, ec);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(!cuts.empty());

    // collect a batch of feasible solutions from the oracle's streams
    auto paths0 = k_shortest_paths(g, costs, 0, 60);
    auto paths1 = k_shortest_paths(g, costs, 1, 60);
    int feasible_found = 0;
    for (const auto& p0 : paths0) {
        for (const auto& p1 : paths1) {
            std::vector<std::vector<ArcId>> cand{p0, p1};
            if (!oracle_feasible(g, sc, cand)) continue;
            ++feasible_found;
            for (const Cut& cut : cuts) CHECK(cut_satisfied(g, cut, cand));
        }
    }
    CHECK(feasible_found > 0);
}

TEST_CASE("single service reduces to a shortest path when no elbow binds") {
    Scenario sc = make_box_scenario({4, 4, 4}, 1.0);
    sc.services.push_back(make_service(0, {0, 2, 2}, {4, 2, 2}, 0.4, 0.1, 0.0, 3));
    RoutingGraph g = build_routing_graph(sc);
    EdgeCostTable costs = build_cost_table(g, sc);

    ExactResult r = solve_exact(g, costs, sc);
    REQUIRE(r.status == SolveStatus::Optimal);

    Dijkstra dij(g);
    ShortestPathResult sp =
        dij.solve(g.source_vnode[0], g.target_vnode[0], 0, costs.c.data(), {});
    CHECK(r.solution.objective == sp.cost);
    CHECK(r.solution.objective == 3.0 * 4.0);  // straight corridor
}

TEST_CASE("plain multicommodity relaxation is cheaper and violates clearances") {
    Scenario sc = example_one_scenario();
    RoutingGraph g = build_routing_graph(sc);
    EdgeCostTable costs = build_cost_table(g, sc);

    ExactConfig relaxed;
    relaxed.dist_cuts = false;
    relaxed.elbow_cuts = false;
    ExactResult mcmnfp = solve_exact(g, costs, sc, relaxed);
    REQUIRE(mcmnfp.status == SolveStatus::Optimal);

    ExactResult full = solve_exact(g, costs, sc);
    REQUIRE(full.status == SolveStatus::Optimal);

    CHECK(full.solution.objective > mcmnfp.solution.objective);

    finalize_solution_costs(mcmnfp.solution, g, sc);
    ValidationReport vr = validate(g, sc, costs, mcmnfp.solution);
    CHECK_FALSE(vr.dist_clearance.pass);

    finalize_solution_costs(full.solution, g, sc);
    CHECK(validate(g, sc, costs, full.solution).pass());
}

TEST_CASE("lower bound is reported and gap closes at optimality") {
    Scenario sc = make_micro_instance(33);
    RoutingGraph g = build_routing_graph(sc);
    EdgeCostTable costs = build_cost_table(g, sc);
    ExactResult r = solve_exact(g, costs, sc);
    if (r.status == SolveStatus::Optimal) {
        CHECK(r.gap == 0.0);
        CHECK(r.lower_bound == r.solution.objective);
    }
}
