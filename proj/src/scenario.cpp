#include "piperoute/scenario.hpp"

#include <cmath>

namespace piperoute {

namespace {

bool finite(const Point3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

} // namespace

void Scenario::check() const {
    if (!finite(region.lo) || !finite(region.hi) || !region.valid())
        throw ScenarioError("region: invalid cuboid");
    if (!(grid_spacing > 0.0)) throw ScenarioError("grid.spacing must be positive");

    auto check_boxes = [&](const std::vector<Cuboid>& boxes, const std::string& what) {
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            const Cuboid& b = boxes[i];
            std::string where = what + "[" + std::to_string(i) + "]";
            if (!finite(b.lo) || !finite(b.hi) || !b.valid())
                throw ScenarioError(where + ": invalid cuboid");
            if (!cuboid_contains_cuboid(region, b))
                throw ScenarioError(where + ": not contained in region");
        }
    };
    check_boxes(obstacles, "obstacles");
    check_boxes(penetrable_zones, "penetrable_zones");
    check_boxes(preference_zones, "preference_zones");

    for (std::size_t i = 0; i < services.size(); ++i) {
        const Service& s = services[i];
        std::string where = "services[" + std::to_string(i) + "]";
        if (!finite(s.source) || !finite(s.destination))
            throw ScenarioError(where + ": non-finite terminal");
        if (!(s.radius > 0.0)) throw ScenarioError(where + ".radius must be positive");
        if (s.safety < 0.0) throw ScenarioError(where + ".safety must be nonnegative");
        if (s.elbow_min < 0.0) throw ScenarioError(where + ".elbow_min must be nonnegative");
        if (!(s.alpha[0] + s.alpha[4] > 0.0))
            throw ScenarioError(where + ": alpha1 + alpha5 must be positive");
        for (const Point3& p : {s.source, s.destination}) {
            if (!cuboid_contains(region, p))
                throw ScenarioError(where + ": terminal outside region");
            for (std::size_t o = 0; o < obstacles.size(); ++o) {
                if (cuboid_contains_interior(obstacles[o], p))
                    throw ScenarioError(where + ": terminal inside obstacles[" +
                                        std::to_string(o) + "]");
            }
        }
        if (s.source == s.destination)
            throw ScenarioError(where + ": source equals destination");
        for (std::size_t j = 0; j < i; ++j) {
            if (services[j].id == s.id)
                throw ScenarioError(where + ": duplicate service id " + std::to_string(s.id));
        }
    }
}

} // namespace piperoute
