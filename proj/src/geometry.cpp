#include "piperoute/geometry.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace piperoute {

namespace {

constexpr double kDegenerateTol = 1e-12;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Gap between closed intervals [a0,a1] and [b0,b1]; 0 if they overlap.
double interval_gap(double a0, double a1, double b0, double b1) {
    double g = std::max(a0, b0) - std::min(a1, b1);
    return g > 0.0 ? g : 0.0;
}

// Number of coordinates in which the segment actually varies.
int varying_coords(const Segment3& s, int& which) {
    int n = 0;
    which = -1;
    for (int c = 0; c < 3; ++c) {
        if (s.a[c] != s.b[c]) {
            ++n;
            which = c;
        }
    }
    return n;
}

// When each segment varies in at most one coordinate the per-coordinate
// choices decouple, so the squared distance is the sum of interval gaps
// squared. Exact for integer lattice coordinates.
double axis_aligned_distance_sq(const Segment3& s1, const Segment3& s2) {
    double d2 = 0.0;
    for (int c = 0; c < 3; ++c) {
        double g = interval_gap(std::min(s1.a[c], s1.b[c]), std::max(s1.a[c], s1.b[c]),
                                std::min(s2.a[c], s2.b[c]), std::max(s2.a[c], s2.b[c]));
        d2 += g * g;
    }
    return d2;
}

// Clamped closest-point algorithm for general segment pairs.
double general_distance_sq(const Segment3& s1, const Segment3& s2) {
    Point3 d1 = s1.b - s1.a;
    Point3 d2 = s2.b - s2.a;
    Point3 r = s1.a - s2.a;
    double a = norm_sq(d1);
    double e = norm_sq(d2);
    double f = dot(d2, r);

    double s, t;
    if (a <= kDegenerateTol && e <= kDegenerateTol) {
        return norm_sq(r);
    }
    if (a <= kDegenerateTol) {
        s = 0.0;
        t = clamp01(f / e);
    } else {
        double c = dot(d1, r);
        if (e <= kDegenerateTol) {
            t = 0.0;
            s = clamp01(-c / a);
        } else {
            double b = dot(d1, d2);
            double denom = a * e - b * b;
            s = denom > kDegenerateTol ? clamp01((b * f - c * e) / denom) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = clamp01(-c / a);
            } else if (t > 1.0) {
                t = 1.0;
                s = clamp01((b - c) / a);
            }
        }
    }
    return norm_sq(s1.at(s) - s2.at(t));
}

} // namespace

double segment_distance_sq(const Segment3& s1, const Segment3& s2) {
    int w1 = -1, w2 = -1;
    if (varying_coords(s1, w1) <= 1 && varying_coords(s2, w2) <= 1) {
        return axis_aligned_distance_sq(s1, s2);
    }
    return general_distance_sq(s1, s2);
}

double segment_distance(const Segment3& s1, const Segment3& s2) {
    return std::sqrt(segment_distance_sq(s1, s2));
}

double point_segment_distance_sq(const Point3& p, const Segment3& s) {
    return segment_distance_sq({p, p}, s);
}

double point_segment_distance(const Point3& p, const Segment3& s) {
    return std::sqrt(point_segment_distance_sq(p, s));
}

bool cuboid_contains(const Cuboid& c, const Point3& p) {
    return c.lo.x <= p.x && p.x <= c.hi.x && c.lo.y <= p.y && p.y <= c.hi.y && c.lo.z <= p.z &&
           p.z <= c.hi.z;
}

bool cuboid_contains_interior(const Cuboid& c, const Point3& p) {
    return c.lo.x < p.x && p.x < c.hi.x && c.lo.y < p.y && p.y < c.hi.y && c.lo.z < p.z &&
           p.z < c.hi.z;
}

bool cuboid_contains_cuboid(const Cuboid& outer, const Cuboid& inner) {
    return cuboid_contains(outer, inner.lo) && cuboid_contains(outer, inner.hi);
}

double point_cuboid_distance_sq(const Point3& p, const Cuboid& c) {
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        double g = interval_gap(p[i], p[i], c.lo[i], c.hi[i]);
        d2 += g * g;
    }
    return d2;
}

ClipRange clip_segment(const Segment3& s, const Cuboid& c) {
    ClipRange r{0.0, 1.0};
    for (int i = 0; i < 3; ++i) {
        double a = s.a[i], d = s.b[i] - s.a[i];
        if (d == 0.0) {
            if (a < c.lo[i] || a > c.hi[i]) return {1.0, 0.0};
        } else {
            double t0 = (c.lo[i] - a) / d;
            double t1 = (c.hi[i] - a) / d;
            if (t0 > t1) std::swap(t0, t1);
            r.t0 = std::max(r.t0, t0);
            r.t1 = std::min(r.t1, t1);
            if (r.t0 > r.t1) return {1.0, 0.0};
        }
    }
    return r;
}

bool segment_intersects_interior(const Segment3& s, const Cuboid& c) {
    ClipRange r = clip_segment(s, c);
    if (r.empty()) return false;
    return cuboid_contains_interior(c, s.at(0.5 * (r.t0 + r.t1)));
}

double cuboid_segment_distance_sq(const Cuboid& c, const Segment3& s) {
    int w = -1;
    if (varying_coords(s, w) <= 1) {
        // Per-coordinate gaps decouple for axis-parallel segments.
        double d2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            double g = interval_gap(std::min(s.a[i], s.b[i]), std::max(s.a[i], s.b[i]),
                                    c.lo[i], c.hi[i]);
            d2 += g * g;
        }
        return d2;
    }

    // General segment: f(t) = dist^2(p(t), box) is convex piecewise quadratic.
    // Breakpoints occur where a coordinate of p(t) crosses a box face.
    std::vector<double> ts{0.0, 1.0};
    for (int i = 0; i < 3; ++i) {
        double a = s.a[i], d = s.b[i] - s.a[i];
        if (d == 0.0) continue;
        for (double bound : {c.lo[i], c.hi[i]}) {
            double t = (bound - a) / d;
            if (t > 0.0 && t < 1.0) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());

    auto eval = [&](double t) { return point_cuboid_distance_sq(s.at(t), c); };
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        double lo = ts[i], hi = ts[i + 1];
        best = std::min(best, std::min(eval(lo), eval(hi)));
        if (hi - lo <= 0.0) continue;
        // On this piece each coordinate contributes a fixed affine gap
        // (alpha_i + beta_i * t) or nothing; minimize the quadratic.
        double mid = 0.5 * (lo + hi);
        double num = 0.0, den = 0.0;
        for (int i2 = 0; i2 < 3; ++i2) {
            double a = s.a[i2], d = s.b[i2] - s.a[i2];
            double pm = a + d * mid;
            double alpha, beta;
            if (pm < c.lo[i2]) {
                alpha = a - c.lo[i2];
                beta = d;
            } else if (pm > c.hi[i2]) {
                alpha = a - c.hi[i2];
                beta = d;
            } else {
                continue;
            }
            num += alpha * beta;
            den += beta * beta;
        }
        if (den > kDegenerateTol) {
            double t = -num / den;
            if (t > lo && t < hi) best = std::min(best, eval(t));
        }
    }
    return best;
}

double cuboid_segment_distance(const Cuboid& c, const Segment3& s) {
    return std::sqrt(cuboid_segment_distance_sq(c, s));
}

} // namespace piperoute
