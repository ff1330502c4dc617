#include "piperoute/geometry_export.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "piperoute/solution_io.hpp"

namespace piperoute {

namespace {

struct ObjWriter {
    std::ofstream out;
    long next_vertex = 1;

    explicit ObjWriter(const std::string& path) : out(path) {
        if (!out) throw std::runtime_error("cannot write OBJ file: " + path);
    }

    long vertex(const Point3& p) {
        out << "v " << p.x << " " << p.y << " " << p.z << "\n";
        return next_vertex++;
    }

    void box(const std::string& name, const Cuboid& c) {
        out << "o " << name << "\n";
        long base = next_vertex;
        for (int i = 0; i < 8; ++i) {
            vertex({i & 1 ? c.hi.x : c.lo.x, i & 2 ? c.hi.y : c.lo.y,
                    i & 4 ? c.hi.z : c.lo.z});
        }
        const int faces[6][4] = {{0, 1, 3, 2}, {4, 6, 7, 5}, {0, 2, 6, 4},
                                 {1, 5, 7, 3}, {0, 4, 5, 1}, {2, 3, 7, 6}};
        for (const auto& f : faces)
            out << "f " << base + f[0] << " " << base + f[1] << " " << base + f[2] << " "
                << base + f[3] << "\n";
    }
};

// Two unit vectors perpendicular to an axis-parallel direction.
void perpendicular(const Point3& dir, Point3& p1, Point3& p2) {
    Point3 u = dir;
    double n = norm(u);
    u = u * (1.0 / n);
    Point3 ref = std::abs(u.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
    // Gram-Schmidt against the reference axis.
    double d = dot(ref, u);
    p1 = {ref.x - d * u.x, ref.y - d * u.y, ref.z - d * u.z};
    double n1 = norm(p1);
    p1 = p1 * (1.0 / n1);
    p2 = {u.y * p1.z - u.z * p1.y, u.z * p1.x - u.x * p1.z, u.x * p1.y - u.y * p1.x};
}

} // namespace

void export_geometry(const Scenario& scenario, const RoutingGraph& g, const Solution& sol,
                     const std::string& path, const ObjExportOptions& options) {
    ObjWriter w(path);
    w.out.precision(12);

    for (std::size_t i = 0; i < scenario.obstacles.size(); ++i)
        w.box("obstacle_" + std::to_string(i), scenario.obstacles[i]);
    for (std::size_t i = 0; i < scenario.penetrable_zones.size(); ++i)
        w.box("penetrable_zone_" + std::to_string(i), scenario.penetrable_zones[i]);
    for (std::size_t i = 0; i < scenario.preference_zones.size(); ++i)
        w.box("preference_zone_" + std::to_string(i), scenario.preference_zones[i]);

    for (std::size_t k = 0; k < sol.paths.size(); ++k) {
        if (sol.paths[k].empty()) continue;
        std::vector<Point3> poly = path_polyline(g, sol.paths[k]);
        int id = k < scenario.services.size() ? scenario.services[k].id
                                              : static_cast<int>(k);
        w.out << "o service_" << id << "_path\n";
        long base = w.next_vertex;
        for (const Point3& p : poly) w.vertex(p);
        w.out << "l";
        for (std::size_t i = 0; i < poly.size(); ++i) w.out << " " << base + i;
        w.out << "\n";

        if (!options.tubes || poly.size() < 2) continue;
        double radius = k < scenario.services.size() ? scenario.services[k].radius : 1.0;
        int n = std::max(3, options.tube_sides);
        w.out << "o service_" << id << "_tube\n";
        for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
            Point3 dir = poly[i + 1] - poly[i];
            if (norm_sq(dir) == 0.0) continue;
            Point3 p1, p2;
            perpendicular(dir, p1, p2);
            long ring = w.next_vertex;
            for (const Point3& center : {poly[i], poly[i + 1]}) {
                for (int s = 0; s < n; ++s) {
                    double t = 2.0 * M_PI * s / n;
                    w.vertex(center + p1 * (radius * std::cos(t)) +
                             p2 * (radius * std::sin(t)));
                }
            }
            for (int s = 0; s < n; ++s) {
                long a0 = ring + s, a1 = ring + (s + 1) % n;
                long b0 = a0 + n, b1 = a1 + n;
                w.out << "f " << a0 << " " << a1 << " " << b1 << "\n";
                w.out << "f " << a0 << " " << b1 << " " << b0 << "\n";
            }
        }
    }
}

} // namespace piperoute
