#include "piperoute/routing_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <tuple>

namespace piperoute {

namespace {

struct LatticeAxis {
    double origin = 0.0;
    double step = 1.0;
    std::int64_t count = 1;

    double coord(std::int64_t i) const { return origin + static_cast<double>(i) * step; }

    // Nearest lattice index; ties resolved toward the lower index.
    std::int64_t nearest(double x) const {
        double t = (x - origin) / step;
        auto i = static_cast<std::int64_t>(std::ceil(t - 0.5));
        return std::clamp<std::int64_t>(i, 0, count - 1);
    }
};

struct Lattice {
    std::array<LatticeAxis, 3> ax;
    double tol = 0.0;

    Lattice(const Cuboid& region, double spacing) {
        for (int c = 0; c < 3; ++c) {
            ax[c].origin = region.lo[c];
            ax[c].step = spacing;
            ax[c].count =
                static_cast<std::int64_t>(std::floor(region.extent(c) / spacing + 1e-9)) + 1;
        }
        tol = 1e-9 * spacing;
    }

    std::int64_t index(std::int64_t i, std::int64_t j, std::int64_t k) const {
        return (i * ax[1].count + j) * ax[2].count + k;
    }

    bool on_axis(double x, int c, std::int64_t& idx) const {
        idx = ax[c].nearest(x);
        return std::abs(x - ax[c].coord(idx)) <= tol;
    }

    // Snaps coordinates already within tolerance of a lattice plane onto it.
    Point3 snap(const Point3& p) const {
        Point3 q = p;
        for (int c = 0; c < 3; ++c) {
            std::int64_t idx;
            if (on_axis(p[c], c, idx)) q[c] = ax[c].coord(idx);
        }
        return q;
    }
};

bool lex_less(const Point3& a, const Point3& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
}

bool inside_any_interior(const std::vector<Cuboid>& boxes, const Point3& p) {
    for (const Cuboid& b : boxes)
        if (cuboid_contains_interior(b, p)) return true;
    return false;
}

// Staircase of axis-parallel steps from a terminal to its nearest lattice
// node, one coordinate at a time.
std::vector<Point3> terminal_chain(const Lattice& lat, const Point3& p) {
    std::vector<Point3> chain;
    Point3 cur = lat.snap(p);
    chain.push_back(cur);
    for (int c = 0; c < 3; ++c) {
        std::int64_t idx;
        if (lat.on_axis(cur[c], c, idx)) continue;
        cur[c] = lat.ax[c].coord(idx);
        chain.push_back(cur);
    }
    return chain;
}

struct EdgeClassification {
    bool keep = true;
    double clearance = std::numeric_limits<double>::infinity();
    bool zone_touch = false;
};

EdgeClassification classify_edge(const Scenario& sc, const Segment3& seg) {
    EdgeClassification r;
    for (const Cuboid& z : sc.penetrable_zones) {
        if (!clip_segment(seg, z).empty()) {
            r.zone_touch = true;
            break;
        }
    }
    for (const Cuboid& o : sc.obstacles) {
        if (segment_intersects_interior(seg, o)) {
            // Kept only when the whole obstacle crossing lies inside some
            // penetrable zone.
            ClipRange cr = clip_segment(seg, o);
            bool covered = false;
            for (const Cuboid& z : sc.penetrable_zones) {
                if (cuboid_contains(z, seg.at(cr.t0)) && cuboid_contains(z, seg.at(cr.t1))) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                r.keep = false;
                return r;
            }
        } else {
            r.clearance = std::min(r.clearance, cuboid_segment_distance(o, seg));
        }
    }
    if (r.zone_touch) r.clearance = std::numeric_limits<double>::infinity();
    return r;
}

} // namespace

NodeId PhysicalGraph::find_node(const Point3& p) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), p, lex_less);
    if (it != nodes.end() && *it == p) return static_cast<NodeId>(it - nodes.begin());
    return -1;
}

PhysicalGraph build_grid(const Scenario& scenario, double spacing) {
    if (!(spacing > 0.0)) throw ScenarioError("grid spacing must be positive");
    scenario.check();
    const Lattice lat(scenario.region, spacing);

    // Lattice nodes outside every obstacle interior.
    const std::int64_t nx = lat.ax[0].count, ny = lat.ax[1].count, nz = lat.ax[2].count;
    std::vector<char> alive(static_cast<std::size_t>(nx * ny * nz), 0);
    std::vector<Point3> points;
    points.reserve(static_cast<std::size_t>(nx * ny * nz));
    for (std::int64_t i = 0; i < nx; ++i) {
        for (std::int64_t j = 0; j < ny; ++j) {
            for (std::int64_t k = 0; k < nz; ++k) {
                Point3 p{lat.ax[0].coord(i), lat.ax[1].coord(j), lat.ax[2].coord(k)};
                if (inside_any_interior(scenario.obstacles, p)) continue;
                alive[static_cast<std::size_t>(lat.index(i, j, k))] = 1;
                points.push_back(p);
            }
        }
    }

    // Terminal staircases.
    std::vector<std::pair<Point3, Point3>> chain_edges;
    for (const Service& s : scenario.services) {
        for (const Point3& term : {s.source, s.destination}) {
            std::vector<Point3> chain = terminal_chain(lat, term);
            for (std::size_t i = 0; i < chain.size(); ++i) {
                if (inside_any_interior(scenario.obstacles, chain[i])) continue;
                points.push_back(chain[i]);
                if (i > 0) chain_edges.emplace_back(chain[i - 1], chain[i]);
            }
        }
    }

    PhysicalGraph pg;
    pg.spacing = {spacing, spacing, spacing};
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    pg.nodes = std::move(points);

    // Candidate edges: lattice adjacency plus staircase connectors.
    std::vector<std::tuple<NodeId, NodeId, Axis>> cand;
    for (std::int64_t i = 0; i < nx; ++i) {
        for (std::int64_t j = 0; j < ny; ++j) {
            for (std::int64_t k = 0; k < nz; ++k) {
                if (!alive[static_cast<std::size_t>(lat.index(i, j, k))]) continue;
                Point3 p{lat.ax[0].coord(i), lat.ax[1].coord(j), lat.ax[2].coord(k)};
                NodeId u = pg.find_node(p);
                const std::int64_t next[3][3] = {{i + 1, j, k}, {i, j + 1, k}, {i, j, k + 1}};
                const std::int64_t lim[3] = {nx, ny, nz};
                for (int c = 0; c < 3; ++c) {
                    if (next[c][c] >= lim[c]) continue;
                    if (!alive[static_cast<std::size_t>(
                            lat.index(next[c][0], next[c][1], next[c][2]))])
                        continue;
                    Point3 q{lat.ax[0].coord(next[c][0]), lat.ax[1].coord(next[c][1]),
                             lat.ax[2].coord(next[c][2])};
                    cand.emplace_back(u, pg.find_node(q), static_cast<Axis>(c));
                }
            }
        }
    }
    for (const auto& [pa, pb] : chain_edges) {
        NodeId u = pg.find_node(pa), v = pg.find_node(pb);
        if (u < 0 || v < 0) continue;
        int c = 0;
        for (int i = 0; i < 3; ++i)
            if (pa[i] != pb[i]) c = i;
        if (u > v) std::swap(u, v);
        cand.emplace_back(u, v, static_cast<Axis>(c));
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    const double min_need = scenario.min_service_clearance();
    for (const auto& [u, v, axis] : cand) {
        Segment3 seg{pg.nodes[u], pg.nodes[v]};
        EdgeClassification cls = classify_edge(scenario, seg);
        if (!cls.keep) continue;
        if (!cls.zone_touch && cls.clearance < min_need) continue;
        pg.edges.push_back({u, v, axis});
        pg.edge_clearance.push_back(cls.clearance);
        pg.edge_zone_touch.push_back(cls.zone_touch);
    }
    return pg;
}

RoutingGraph explode(PhysicalGraph pg) {
    RoutingGraph g;
    g.pg = std::move(pg);
    const auto n_nodes = static_cast<std::int32_t>(g.pg.node_count());
    const auto n_real = static_cast<EdgeId>(g.pg.edge_count());

    g.edges.reserve(n_real + 3 * static_cast<std::size_t>(n_nodes));
    for (EdgeId e = 0; e < n_real; ++e) {
        const auto& pe = g.pg.edges[e];
        RoutingGraph::Edge re;
        re.u = RoutingGraph::vnode(pe.u, pe.axis);
        re.v = RoutingGraph::vnode(pe.v, pe.axis);
        re.phys_ref = e;
        re.length = g.pg.edge_length(e);
        re.is_virtual = false;
        re.axis = pe.axis;
        g.edges.push_back(re);
        g.clearance.push_back(e < static_cast<EdgeId>(g.pg.edge_clearance.size())
                                  ? g.pg.edge_clearance[e]
                                  : std::numeric_limits<double>::infinity());
        g.zone_touch.push_back(e < static_cast<EdgeId>(g.pg.edge_zone_touch.size()) &&
                               g.pg.edge_zone_touch[e]);
    }
    g.n_real_edges = n_real;

    for (std::int32_t n = 0; n < n_nodes; ++n) {
        const std::pair<Axis, Axis> pairs[3] = {{Axis::X, Axis::Y}, {Axis::X, Axis::Z},
                                                {Axis::Y, Axis::Z}};
        for (const auto& [a, b] : pairs) {
            RoutingGraph::Edge ve;
            ve.u = RoutingGraph::vnode(n, a);
            ve.v = RoutingGraph::vnode(n, b);
            ve.phys_ref = n;
            ve.length = 0.0;
            ve.is_virtual = true;
            g.edges.push_back(ve);
            g.clearance.push_back(std::numeric_limits<double>::infinity());
            g.zone_touch.push_back(false);
        }
    }

    // Adjacency.
    const std::int32_t nv = g.n_vnodes();
    std::vector<std::int32_t> degree(nv, 0);
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
        ++degree[g.edges[e].u];
        ++degree[g.edges[e].v];
    }
    g.adj_start.assign(nv + 1, 0);
    for (std::int32_t v = 0; v < nv; ++v) g.adj_start[v + 1] = g.adj_start[v] + degree[v];
    g.adj_arcs.resize(g.adj_start[nv]);
    std::vector<std::int32_t> fill(g.adj_start.begin(), g.adj_start.end() - 1);
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
        g.adj_arcs[fill[g.edges[e].u]++] = RoutingGraph::arc_of(e, 0);
        g.adj_arcs[fill[g.edges[e].v]++] = RoutingGraph::arc_of(e, 1);
    }
    return g;
}

namespace {

Axis auto_axis(const Point3& from, const Point3& to) {
    double dx = std::abs(to.x - from.x), dy = std::abs(to.y - from.y),
           dz = std::abs(to.z - from.z);
    if (dx >= dy && dx >= dz) return Axis::X;
    if (dy >= dz) return Axis::Y;
    return Axis::Z;
}

} // namespace

void attach_services(RoutingGraph& g, const Scenario& scenario) {
    const Lattice lat(scenario.region, g.pg.spacing[0]);
    const auto n_services = static_cast<std::int32_t>(scenario.services.size());
    g.source_vnode.resize(n_services);
    g.target_vnode.resize(n_services);
    g.service_need.resize(n_services);

    // Obstacle proximity of elbows at each physical node, for the
    // per-service masks on virtual edges.
    for (EdgeId e = g.n_real_edges; e < g.n_edges(); ++e) {
        NodeId n = g.edges[e].phys_ref;
        Point3 p = g.pg.nodes[n];
        double clear = std::numeric_limits<double>::infinity();
        for (const Cuboid& o : scenario.obstacles)
            clear = std::min(clear, std::sqrt(point_cuboid_distance_sq(p, o)));
        bool touch = false;
        for (const Cuboid& z : scenario.penetrable_zones)
            if (cuboid_contains(z, p)) touch = true;
        g.clearance[e] = touch ? std::numeric_limits<double>::infinity() : clear;
        g.zone_touch[e] = touch;
    }

    for (std::int32_t k = 0; k < n_services; ++k) {
        const Service& s = scenario.services[k];
        g.service_need[k] = s.radius + s.safety;
        NodeId sn = g.pg.find_node(lat.snap(s.source));
        NodeId tn = g.pg.find_node(lat.snap(s.destination));
        if (sn < 0 || tn < 0)
            throw ScenarioError("service " + std::to_string(s.id) +
                                ": terminal is not a graph node");
        Axis sa = s.source_axis ? *s.source_axis : auto_axis(s.source, s.destination);
        Axis ta = s.destination_axis ? *s.destination_axis : auto_axis(s.destination, s.source);
        g.source_vnode[k] = RoutingGraph::vnode(sn, sa);
        g.target_vnode[k] = RoutingGraph::vnode(tn, ta);
        if (g.source_vnode[k] == g.target_vnode[k])
            throw ScenarioError("service " + std::to_string(s.id) +
                                ": source and destination coincide");
    }

    // Reachability under the service's own clearance mask.
    for (std::int32_t k = 0; k < n_services; ++k) {
        std::vector<char> seen(g.n_vnodes(), 0);
        std::deque<VNodeId> queue{g.source_vnode[k]};
        seen[g.source_vnode[k]] = 1;
        while (!queue.empty()) {
            VNodeId v = queue.front();
            queue.pop_front();
            for (std::int32_t i = g.adj_start[v]; i < g.adj_start[v + 1]; ++i) {
                ArcId a = g.adj_arcs[i];
                if (!g.arc_usable(a, k)) continue;
                VNodeId w = g.head(a);
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        if (!seen[g.target_vnode[k]])
            throw InfeasibleScenarioError("service " +
                                          std::to_string(scenario.services[k].id) +
                                          ": terminals disconnected after pruning");
    }
}

RoutingGraph build_routing_graph(const Scenario& scenario, double spacing) {
    RoutingGraph g = explode(build_grid(scenario, spacing));
    attach_services(g, scenario);
    return g;
}

RoutingGraph build_routing_graph(const Scenario& scenario) {
    return build_routing_graph(scenario, scenario.grid_spacing);
}

double arc_distance_sq(const RoutingGraph& g, ArcId a, ArcId b) {
    return segment_distance_sq(g.arc_segment(a), g.arc_segment(b));
}

double arc_distance(const RoutingGraph& g, ArcId a, ArcId b) {
    return std::sqrt(arc_distance_sq(g, a, b));
}

std::vector<VNodeId> path_vnodes(const RoutingGraph& g, const std::vector<ArcId>& arcs) {
    std::vector<VNodeId> out;
    if (arcs.empty()) return out;
    out.reserve(arcs.size() + 1);
    out.push_back(g.tail(arcs.front()));
    for (ArcId a : arcs) out.push_back(g.head(a));
    return out;
}

} // namespace piperoute
