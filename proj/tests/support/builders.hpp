#ifndef PIPEROUTE_TESTS_BUILDERS_HPP
#define PIPEROUTE_TESTS_BUILDERS_HPP

#include "piperoute/rng.hpp"
#include "piperoute/scenario.hpp"

namespace piperoute::testing {

inline Service make_service(int id, Point3 src, Point3 dst, double radius = 0.4,
                            double safety = 0.1, double elbow_min = 0.0,
                            double alpha1 = 1.0) {
    Service s;
    s.id = id;
    s.source = src;
    s.destination = dst;
    s.radius = radius;
    s.safety = safety;
    s.elbow_min = elbow_min;
    s.alpha = {alpha1, 0, 0, 0, 0, 0, 0};
    return s;
}

inline Scenario make_box_scenario(Point3 hi, double spacing,
                                  CostModelKind model = CostModelKind::Random) {
    Scenario sc;
    sc.region = {{0, 0, 0}, hi};
    sc.grid_spacing = spacing;
    sc.cost_model = model;
    return sc;
}

// The running example: 6x6x4 box with a 2x2x4 pillar in the center and three
// services, two straight corridors and one that must cross them.
inline Scenario example_one_scenario() {
    Scenario sc = make_box_scenario({6, 6, 4}, 1.0);
    sc.obstacles.push_back({{2, 2, 0}, {4, 4, 4}});
    sc.services.push_back(make_service(0, {0, 1, 2}, {6, 1, 2}, 0.4, 0.2));
    sc.services.push_back(make_service(1, {1, 0, 2}, {1, 6, 2}, 0.4, 0.2));
    sc.services.push_back(make_service(2, {0, 5, 2}, {6, 5, 2}, 0.4, 0.2));
    return sc;
}

// Randomly seeded micro instance on a unit-spacing grid of at most 5x5x5
// physical nodes: two services crossing the box in x, zero or one obstacle.
// All edge costs are integers, so objectives compare exactly.
inline Scenario make_micro_instance(std::uint64_t seed) {
    Rng rng(Rng::mix(0x9962c0ffee, seed));
    Scenario sc = make_box_scenario({4, 4, 4}, 1.0);

    const double radius = 0.4 + 0.1 * static_cast<double>(rng.next_int(0, 1));
    const double safety = 0.1 * static_cast<double>(rng.next_int(0, 2));
    const double elbow_min = rng.next_int(0, 1) ? 0.75 : 0.0;
    const double min_sep = 2 * radius + safety;

    auto face_point = [&](double x) {
        return Point3{x, static_cast<double>(rng.next_int(0, 4)),
                      static_cast<double>(rng.next_int(0, 4))};
    };
    Point3 s0 = face_point(0), s1 = face_point(0);
    while (point_distance(s0, s1) < min_sep) s1 = face_point(0);
    Point3 t0 = face_point(4), t1 = face_point(4);
    while (point_distance(t0, t1) < min_sep) t1 = face_point(4);

    sc.services.push_back(make_service(0, s0, t0, radius, safety, elbow_min,
                                       static_cast<double>(rng.next_int(1, 9))));
    sc.services.push_back(make_service(1, s1, t1, radius, safety, elbow_min,
                                       static_cast<double>(rng.next_int(1, 9))));

    if (rng.next_int(0, 1)) {
        // one small box in the middle, clear of every terminal face
        Point3 c{1.5 + 0.5 * static_cast<double>(rng.next_int(0, 2)),
                 1.5 + 0.5 * static_cast<double>(rng.next_int(0, 2)),
                 1.5 + 0.5 * static_cast<double>(rng.next_int(0, 2))};
        sc.obstacles.push_back({{c.x - 0.4, c.y - 0.4, c.z - 0.4},
                                {c.x + 0.4, c.y + 0.4, c.z + 0.4}});
    }
    return sc;
}

} // namespace piperoute::testing

#endif
