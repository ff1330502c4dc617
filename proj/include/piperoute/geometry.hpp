#ifndef PIPEROUTE_GEOMETRY_HPP
#define PIPEROUTE_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace piperoute {

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "X";
        case Axis::Y: return "Y";
        default: return "Z";
    }
}

struct Point3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Point3& o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const Point3& o) const { return !(*this == o); }
};

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm_sq(const Point3& a) { return dot(a, a); }
inline double norm(const Point3& a) { return std::sqrt(norm_sq(a)); }
inline double point_distance_sq(const Point3& a, const Point3& b) { return norm_sq(a - b); }
inline double point_distance(const Point3& a, const Point3& b) { return norm(a - b); }

// A segment may be degenerate (a == b); it then represents a single point.
struct Segment3 {
    Point3 a, b;

    Point3 at(double t) const { return a + (b - a) * t; }
    double length_sq() const { return point_distance_sq(a, b); }
    double length() const { return point_distance(a, b); }
    bool degenerate() const { return a == b; }
};

// Axis-aligned closed cuboid. lo <= hi componentwise.
struct Cuboid {
    Point3 lo, hi;

    double extent(int i) const { return hi[i] - lo[i]; }
    Point3 center() const { return {(lo.x + hi.x) * 0.5, (lo.y + hi.y) * 0.5, (lo.z + hi.z) * 0.5}; }
    bool valid() const { return lo.x <= hi.x && lo.y <= hi.y && lo.z <= hi.z; }
};

// Minimum Euclidean distance between two segments (0 iff they touch or cross).
double segment_distance(const Segment3& s1, const Segment3& s2);
double segment_distance_sq(const Segment3& s1, const Segment3& s2);

double point_segment_distance_sq(const Point3& p, const Segment3& s);
double point_segment_distance(const Point3& p, const Segment3& s);

// Membership in the closed cuboid (boundary counts as inside).
bool cuboid_contains(const Cuboid& c, const Point3& p);
// Membership in the open interior.
bool cuboid_contains_interior(const Cuboid& c, const Point3& p);
bool cuboid_contains_cuboid(const Cuboid& outer, const Cuboid& inner);

double point_cuboid_distance_sq(const Point3& p, const Cuboid& c);

// Minimum distance from any point of s to the closed cuboid; 0 iff s meets c.
double cuboid_segment_distance(const Cuboid& c, const Segment3& s);
double cuboid_segment_distance_sq(const Cuboid& c, const Segment3& s);

// True iff the segment meets the open interior of the cuboid.
bool segment_intersects_interior(const Segment3& s, const Cuboid& c);

// Parameter range [t0,t1] of s inside the closed cuboid; empty() if disjoint.
struct ClipRange {
    double t0 = 1.0, t1 = 0.0;
    bool empty() const { return t0 > t1; }
};
ClipRange clip_segment(const Segment3& s, const Cuboid& c);

} // namespace piperoute

#endif
