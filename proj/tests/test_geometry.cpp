#include <doctest.h>

#include <cmath>

#include "piperoute/geometry.hpp"
#include "piperoute/rng.hpp"
#include "support/oracles.hpp"

using namespace piperoute;

namespace {

Segment3 random_segment(Rng& rng, double lo, double hi) {
    auto p = [&] { return Point3{rng.next_double(lo, hi), rng.next_double(lo, hi),
                                 rng.next_double(lo, hi)}; };
    return {p(), p()};
}

} // namespace

TEST_CASE("segment distance on crossing and parallel segments") {
    Segment3 s1{{0, 0, 0}, {2, 0, 0}};
    Segment3 s2{{1, -1, 0}, {1, 1, 0}};
    CHECK(segment_distance(s1, s2) == doctest::Approx(0.0));

    Segment3 s3{{0, 0, 0}, {1, 0, 0}};
    Segment3 s4{{0, 0, 1}, {1, 0, 1}};
    CHECK(segment_distance(s3, s4) == doctest::Approx(1.0));
}

TEST_CASE("segment distance matches the full dense-sampling oracle") {
    // One random skew pair against the complete 1e4 x 1e4 parameter grid.
    Rng rng(20240514);
    Segment3 s1 = random_segment(rng, 0.0, 4.0);
    Segment3 s2 = random_segment(rng, 1.0, 5.0);
    double oracle = testing::brute_segment_distance(s1, s2, 10000);
    CHECK(std::abs(segment_distance(s1, s2) - oracle) < 1e-6);
}

TEST_CASE("segment distance matches the refined sampling oracle on random pairs") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Segment3 s1 = random_segment(rng, -3.0, 3.0);
        Segment3 s2 = random_segment(rng, -3.0, 3.0);
        double got = segment_distance(s1, s2);
        double want = testing::sampled_segment_distance(s1, s2);
        CHECK(std::abs(got - want) < 1e-6);
    }
}

TEST_CASE("segment distance properties") {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        Segment3 s1 = random_segment(rng, -5.0, 5.0);
        Segment3 s2 = random_segment(rng, -5.0, 5.0);

        // symmetry
        CHECK(segment_distance(s1, s2) == segment_distance(s2, s1));

        // rigid translation invariance
        Point3 t{rng.next_double(-10, 10), rng.next_double(-10, 10), rng.next_double(-10, 10)};
        Segment3 s1t{s1.a + t, s1.b + t};
        Segment3 s2t{s2.a + t, s2.b + t};
        CHECK(std::abs(segment_distance(s1, s2) - segment_distance(s1t, s2t)) < 1e-9);

        // degenerate segments reduce to the point distance
        Segment3 p1{s1.a, s1.a}, p2{s2.a, s2.a};
        CHECK(segment_distance(p1, p2) == doctest::Approx(point_distance(s1.a, s2.a)));

        // chain bound through an intermediate segment
        Segment3 s3 = random_segment(rng, -5.0, 5.0);
        double lhs = segment_distance(s1, s3);
        double rhs = segment_distance(s1, s2) + s2.length() + segment_distance(s2, s3);
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("axis-parallel segment distances are exact on lattice coordinates") {
    // Boundary semantics used by the clearance checks: parallel lattice arcs
    // at an exactly representable distance.
    Segment3 a{{0, 0, 0}, {100, 0, 0}};
    Segment3 b{{0, 174, 0}, {100, 174, 0}};
    CHECK(segment_distance(a, b) == 174.0);
    Segment3 c{{0, 175, 0}, {100, 175, 0}};
    CHECK(segment_distance(c, a) == 175.0);
    // perpendicular pair, integer gap in two coordinates
    Segment3 d{{8, 8, 0}, {8, 8, 8}};
    CHECK(segment_distance_sq(a, d) == 128.0);
}

TEST_CASE("cuboid membership is closed") {
    Cuboid unit{{0, 0, 0}, {1, 1, 1}};
    CHECK(cuboid_contains(unit, {0.5, 0.5, 0.5}));
    CHECK(cuboid_contains(unit, {1, 1, 1}));
    CHECK_FALSE(cuboid_contains(unit, {1.0001, 0, 0}));
    CHECK_FALSE(cuboid_contains_interior(unit, {1, 1, 1}));
    CHECK(cuboid_contains_interior(unit, {0.5, 0.5, 0.5}));
}

TEST_CASE("cuboid-segment distance examples") {
    Cuboid unit{{0, 0, 0}, {1, 1, 1}};
    CHECK(cuboid_segment_distance(unit, {{2, 0, 0}, {3, 0, 0}}) == doctest::Approx(1.0));
    CHECK(cuboid_segment_distance(unit, {{-1, 0.5, 0.5}, {2, 0.5, 0.5}}) ==
          doctest::Approx(0.0));
}

TEST_CASE("cuboid-segment distance matches the sampling oracle") {
    Rng rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        Cuboid c{{rng.next_double(-2, 0), rng.next_double(-2, 0), rng.next_double(-2, 0)},
                 {rng.next_double(0.5, 2), rng.next_double(0.5, 2), rng.next_double(0.5, 2)}};
        Segment3 s = random_segment(rng, -4.0, 4.0);
        double got = cuboid_segment_distance(c, s);
        double want = testing::sampled_cuboid_segment_distance(c, s);
        CHECK(std::abs(got - want) < 1e-6);
    }
}

TEST_CASE("segment interior intersection distinguishes touching from crossing") {
    Cuboid unit{{0, 0, 0}, {1, 1, 1}};
    CHECK(segment_intersects_interior({{-1, 0.5, 0.5}, {2, 0.5, 0.5}}, unit));
    // sliding along a face touches but never enters
    CHECK_FALSE(segment_intersects_interior({{-1, 0, 0.5}, {2, 0, 0.5}}, unit));
    // single-point touch at a corner
    CHECK_FALSE(segment_intersects_interior({{1, 1, 1}, {2, 2, 2}}, unit));
}
