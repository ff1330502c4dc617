#ifndef PIPEROUTE_SCENARIO_HPP
#define PIPEROUTE_SCENARIO_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "piperoute/geometry.hpp"

namespace piperoute {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CostModelKind { CaseStudy, Random };

// One pipeline to route: terminals, cylinder radius, safety margin,
// minimum spacing between consecutive elbows, and cost parameters.
struct Service {
    int id = 0;
    Point3 source;
    Point3 destination;
    double radius = 1.0;     // R^k
    double safety = 0.0;     // Delta^k
    double elbow_min = 0.0;  // D^k
    // alpha[0..6] = cost per unit length, elbow, ceiling distance, vertical,
    // preference bonus (negative), penetrable crossing, elbow-near-terminal.
    std::array<double, 7> alpha{1, 0, 0, 0, 0, 0, 0};
    std::optional<Axis> source_axis;
    std::optional<Axis> destination_axis;
};

struct Scenario {
    Cuboid region;
    std::vector<Cuboid> obstacles;
    std::vector<Cuboid> penetrable_zones;
    std::vector<Cuboid> preference_zones;
    std::vector<Service> services;
    double grid_spacing = 1.0;
    CostModelKind cost_model = CostModelKind::CaseStudy;
    // Proximity radius for the elbow-near-terminal criterion; defaults to
    // twice the grid spacing when unset.
    std::optional<double> closeness_radius;

    double max_height() const { return region.hi.z; }

    double closeness_radius_value() const {
        return closeness_radius ? *closeness_radius : 2.0 * grid_spacing;
    }

    // Minimum allowed distance between services k and k':
    // R^k + R^k' + max(Delta^k, Delta^k').
    double pair_clearance(const Service& a, const Service& b) const {
        return a.radius + b.radius + std::max(a.safety, b.safety);
    }

    double min_service_clearance() const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& s : services) m = std::min(m, s.radius + s.safety);
        return services.empty() ? 0.0 : m;
    }

    // Throws ScenarioError on an invariant violation.
    void check() const;
};

} // namespace piperoute

#endif
