#ifndef PIPEROUTE_INSTANCES_HPP
#define PIPEROUTE_INSTANCES_HPP

#include <cstdint>

#include "piperoute/scenario.hpp"

namespace piperoute {

// Parameters of one random benchmark instance (d, s, o, g): density d grid
// nodes per axis on a cube of edge 128, s services, o cubic obstacles,
// replicate index g.
struct RandomInstanceSpec {
    int density = 17;
    int n_services = 5;
    int n_obstacles = 5;
    int replicate = 1;
    std::uint64_t seed = 1;

    double eps_layer = 12.0;      // obstacle-free layer along the facets
    double obstacle_edge = 10.0;  // obstacle cube edge length
    double region_edge = 128.0;

    double spacing() const { return region_edge / (density - 1); }
};

// Deterministic generator following the benchmark protocol: obstacle centers
// uniform in the eps-shrunk cube, services of radius 4 and safety margin 1
// with terminals on the density-17 lattice points of the y=0 / y=128 faces,
// per-service unit-length cost coefficient uniform in [1, 9]. The replicate
// stream draws obstacles then services, so instances with smaller s or o are
// prefixes of larger ones.
Scenario generate_random(const RandomInstanceSpec& spec);

} // namespace piperoute

#endif
