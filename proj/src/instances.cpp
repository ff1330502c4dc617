#include "piperoute/instances.hpp"

#include <cmath>
#include <string>

#include "piperoute/rng.hpp"

namespace piperoute {

namespace {

constexpr int kMaxRetries = 1000;

// Terminals are drawn from the density-17 lattice of the face regardless of
// the instance density, so they remain grid nodes for every refinement of it.
constexpr int kTerminalLattice = 17;

} // namespace

Scenario generate_random(const RandomInstanceSpec& spec) {
    if (spec.density < 2) throw ScenarioError("density must be at least 2");
    Scenario sc;
    sc.region = {{0, 0, 0}, {spec.region_edge, spec.region_edge, spec.region_edge}};
    sc.grid_spacing = spec.spacing();
    sc.cost_model = CostModelKind::Random;

    // One stream per replicate: obstacles first, then services, so smaller
    // instances are prefixes of larger ones.
    Rng rng(Rng::mix(spec.seed, static_cast<std::uint64_t>(spec.replicate)));

    const double l = spec.obstacle_edge;
    const double lo = spec.eps_layer + l / 2.0;
    const double hi = spec.region_edge - spec.eps_layer - l / 2.0;
    if (hi < lo) throw ScenarioError("eps layer leaves no room for obstacles");

    const int n_obstacle_draws = std::max(15, spec.n_obstacles);
    for (int i = 0; i < n_obstacle_draws; ++i) {
        Point3 c{rng.next_double(lo, hi), rng.next_double(lo, hi), rng.next_double(lo, hi)};
        if (i < spec.n_obstacles)
            sc.obstacles.push_back({{c.x - l / 2, c.y - l / 2, c.z - l / 2},
                                    {c.x + l / 2, c.y + l / 2, c.z + l / 2}});
    }

    const double radius = 4.0, safety = 1.0;
    const double terminal_step = spec.region_edge / (kTerminalLattice - 1);
    const double min_separation = 2 * radius + safety;  // R^{kk'} of equal services

    auto too_close_to_obstacle = [&](const Point3& p) {
        for (const Cuboid& o : sc.obstacles) {
            double d2 = point_cuboid_distance_sq(p, o);
            if (d2 < (radius + safety) * (radius + safety)) return true;
        }
        return false;
    };

    std::vector<Point3> sources, destinations;
    auto draw_terminal = [&](double y, const std::vector<Point3>& same_face) {
        for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
            Point3 p{terminal_step * static_cast<double>(rng.next_int(0, kTerminalLattice - 1)),
                     y,
                     terminal_step * static_cast<double>(rng.next_int(0, kTerminalLattice - 1))};
            if (too_close_to_obstacle(p)) continue;
            bool clash = false;
            for (const Point3& q : same_face) {
                if (point_distance_sq(p, q) < min_separation * min_separation) {
                    clash = true;
                    break;
                }
            }
            if (!clash) return p;
        }
        throw ScenarioError("could not place a terminal after " +
                            std::to_string(kMaxRetries) + " attempts");
    };

    const int n_service_draws = std::max(12, spec.n_services);
    for (int k = 0; k < n_service_draws; ++k) {
        Point3 src = draw_terminal(0.0, sources);
        sources.push_back(src);
        Point3 dst = draw_terminal(spec.region_edge, destinations);
        destinations.push_back(dst);
        int alpha1 = static_cast<int>(rng.next_int(1, 9));
        if (k < spec.n_services) {
            Service s;
            s.id = k;
            s.source = src;
            s.destination = dst;
            s.radius = radius;
            s.safety = safety;
            s.elbow_min = 0.0;
            s.alpha = {static_cast<double>(alpha1), 0, 0, 0, 0, 0, 0};
            sc.services.push_back(s);
        }
    }

    sc.check();
    return sc;
}

} // namespace piperoute
