#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gordian/construction.hpp"
#include "gordian/errors.hpp"
#include "gordian/linking.hpp"
#include "gordian/poly_curve.hpp"

using namespace gordian;

namespace {

PolyCurve regular_ngon(std::size_t n, double radius, Point3 center = {0, 0, 0}) {
    PolyCurve c;
    for (std::size_t i = 0; i < n; ++i) {
        double t = 2.0 * M_PI * double(i) / double(n);
        c.vertices.push_back(center + Point3{radius * std::cos(t), radius * std::sin(t), 0.0});
    }
    return c;
}

PolyCurve circle_in_plane(std::size_t n, double radius, Point3 center, Point3 u, Point3 v) {
    PolyCurve c;
    for (std::size_t i = 0; i < n; ++i) {
        double t = 2.0 * M_PI * double(i) / double(n);
        c.vertices.push_back(center + u * (radius * std::cos(t)) + v * (radius * std::sin(t)));
    }
    return c;
}

// Gauss double integral over edge-midpoint quadrature; rounds to the linking
// number for disjoint closed curves once the raw value is within 0.1 of an
// integer.
double gauss_linking_integral(const PolyCurve& a, const PolyCurve& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.edge_count(); ++i) {
        Point3 pa = a.edge_a(i), pb = a.edge_b(i);
        Point3 x = (pa + pb) * 0.5;
        Point3 dx = pb - pa;
        for (std::size_t j = 0; j < b.edge_count(); ++j) {
            Point3 qa = b.edge_a(j), qb = b.edge_b(j);
            Point3 y = (qa + qb) * 0.5;
            Point3 dy = qb - qa;
            Point3 r = x - y;
            double rn = norm(r);
            acc += dot(cross(dx, dy), r) / (rn * rn * rn);
        }
    }
    return acc / (4.0 * M_PI);
}

double brute_segment_distance(const Point3& a1, const Point3& b1,
                              const Point3& a2, const Point3& b2, int n) {
    double best = 1e300;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            double s = double(i) / n, t = double(j) / n;
            best = std::min(best, dist(a1 + (b1 - a1) * s, a2 + (b2 - a2) * t));
        }
    return best;
}

} // namespace

TEST_CASE("regular n-gon length matches chord formula") {
    for (std::size_t n : {3u, 7u, 64u, 1000u}) {
        PolyCurve c = regular_ngon(n, 1.0);
        CHECK(curve_length(c) == doctest::Approx(2.0 * n * std::sin(M_PI / n)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate curves are rejected") {
    PolyCurve two_same;
    two_same.vertices = {{0, 0, 0}, {0, 0, 0}};
    two_same.closed = false;
    CHECK_THROWS_AS(validate(two_same), ValidationError);

    PolyCurve too_few;
    too_few.vertices = {{0, 0, 0}, {1, 0, 0}};
    too_few.closed = true;
    CHECK_THROWS_AS(validate(too_few), ValidationError);
}

TEST_CASE("segment_distance on fixed cases") {
    CHECK(segment_distance({0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, 1}) == doctest::Approx(1.0));
    CHECK(segment_distance({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}) == doctest::Approx(1.0));
    CHECK(segment_distance({-1, 0, 0}, {1, 0, 0}, {0, -1, 1}, {0, 1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("segment_distance matches dense-sampling oracle on random pairs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        Point3 a1{u(rng), u(rng), u(rng)}, b1{u(rng), u(rng), u(rng)};
        Point3 a2{u(rng), u(rng), u(rng)}, b2{u(rng), u(rng), u(rng)};
        if (dist(a1, b1) < 1e-6 || dist(a2, b2) < 1e-6) continue;
        double exact = segment_distance(a1, b1, a2, b2);
        double approx = brute_segment_distance(a1, b1, a2, b2, 400);
        CHECK(exact <= approx + 1e-12);
        CHECK(approx <= exact + 2e-2); // sampling grid resolution bound
        CHECK(segment_distance(a2, b2, a1, b1) == doctest::Approx(exact).epsilon(1e-14));
    }
}

TEST_CASE("segment_distance is zero iff segments intersect") {
    CHECK(segment_distance({-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}) == doctest::Approx(0.0));
    CHECK(segment_distance({-1, 0, 0}, {1, 0, 0}, {0, -1, 0.5}, {0, 1, 0.5}) > 0.0);
    CHECK_THROWS_AS(segment_distance({0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {2, 0, 0}),
                    ValidationError);
}

TEST_CASE("centroid of symmetric curves is the center") {
    PolyCurve c = regular_ngon(17, 3.0);
    Point3 g = centroid(c);
    CHECK(norm(g) < 1e-12);

    PolyCurve l1 = build_l1(GordianSpec{});
    Point3 g1 = centroid(l1);
    CHECK(norm(g1) < 1e-6);
}

TEST_CASE("centroid matches Monte Carlo arclength sampling on a triangle") {
    PolyCurve tri;
    tri.vertices = {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}};
    Point3 g = centroid(tri);

    // uniform sampling along the boundary by arclength
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double total = curve_length(tri);
    Point3 acc{0, 0, 0};
    const int samples = 2000000;
    for (int s = 0; s < samples; ++s) {
        double t = u(rng) * total;
        for (std::size_t e = 0; e < tri.edge_count(); ++e) {
            double len = dist(tri.edge_a(e), tri.edge_b(e));
            if (t <= len) {
                acc += tri.edge_a(e) + (tri.edge_b(e) - tri.edge_a(e)) * (t / len);
                break;
            }
            t -= len;
        }
    }
    Point3 mc = acc / double(samples);
    CHECK(dist(g, mc) < 5e-3);
}

TEST_CASE("centroid lies in the convex hull of the vertices") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        PolyCurve c;
        for (int i = 0; i < 12; ++i) c.vertices.push_back({u(rng), u(rng), u(rng)});
        bool ok = true;
        for (std::size_t i = 0; i + 1 < c.vertices.size() && ok; ++i)
            if (dist(c.vertices[i], c.vertices[i + 1]) < 1e-3) ok = false;
        if (!ok || dist(c.vertices.front(), c.vertices.back()) < 1e-3) continue;
        Point3 g = centroid(c);
        // hull membership via support functions over random directions
        for (int d = 0; d < 200; ++d) {
            Point3 dir = normalized({u(rng), u(rng), u(rng)});
            double hi = -1e300;
            for (const auto& v : c.vertices) hi = std::max(hi, dot(dir, v));
            CHECK(dot(dir, g) <= hi + 1e-9);
        }
    }
}

TEST_CASE("reflect_xy preserves length exactly and is an involution") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    PolyCurve c;
    for (int i = 0; i < 40; ++i) c.vertices.push_back({u(rng), u(rng), u(rng)});
    PolyCurve r = reflect_xy(c);
    CHECK(curve_length(r) == curve_length(c));
    PolyCurve rr = reflect_xy(r);
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        CHECK(rr.vertices[i].x == c.vertices[i].x);
        CHECK(rr.vertices[i].y == c.vertices[i].y);
        CHECK(rr.vertices[i].z == c.vertices[i].z);
    }
    PolyCurve planar = regular_ngon(9, 1.0);
    PolyCurve rp = reflect_xy(planar);
    for (std::size_t i = 0; i < planar.vertices.size(); ++i)
        CHECK(rp.vertices[i] == planar.vertices[i]);
}

TEST_CASE("resample_uniform preserves shape and equalizes edges") {
    PolyCurve c = regular_ngon(16, 2.0);
    PolyCurve r = resample_uniform(c, 64);
    CHECK(r.vertices.size() == 64);
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < r.edge_count(); ++i) {
        double len = dist(r.edge_a(i), r.edge_b(i));
        lo = std::min(lo, len);
        hi = std::max(hi, len);
    }
    CHECK(hi - lo < 1e-9);
    CHECK(curve_length(r) == doctest::Approx(curve_length(c)).epsilon(1e-9));
}

TEST_CASE("curves_match_unoriented accepts shifts and reversals") {
    PolyCurve c = regular_ngon(10, 1.0);
    PolyCurve shifted = c;
    std::rotate(shifted.vertices.begin(), shifted.vertices.begin() + 3, shifted.vertices.end());
    CHECK(curves_match_unoriented(c, shifted, 1e-12));
    PolyCurve reversed = c;
    std::reverse(reversed.vertices.begin(), reversed.vertices.end());
    CHECK(curves_match_unoriented(c, reversed, 1e-12));
    PolyCurve other = regular_ngon(10, 1.1);
    CHECK_FALSE(curves_match_unoriented(c, other, 1e-3));
}

TEST_CASE("linking number of far coaxial circles is 0") {
    PolyCurve a = regular_ngon(64, 1.0);
    PolyCurve b = regular_ngon(64, 1.0, {0, 0, 5});
    CHECK(linking_number(a, b) == 0);
    CHECK(std::abs(gauss_linking_integral(a, b)) < 0.1);
}

TEST_CASE("Hopf link has linking number +-1") {
    PolyCurve a = regular_ngon(128, 1.0);
    PolyCurve b = circle_in_plane(128, 1.0, {1, 0, 0}, {1, 0, 0}, {0, 0, 1});
    int lk = linking_number(a, b);
    CHECK(std::abs(lk) == 1);
    double gauss = gauss_linking_integral(a, b);
    CHECK(std::abs(gauss - lk) < 0.1);
}

TEST_CASE("linking number is symmetric and orientation-covariant") {
    PolyCurve a = regular_ngon(96, 1.0);
    PolyCurve b = circle_in_plane(96, 1.0, {1, 0, 0}, {1, 0, 0}, {0, 0, 1});
    CHECK(linking_number(a, b) == linking_number(b, a));
    PolyCurve br = b;
    std::reverse(br.vertices.begin(), br.vertices.end());
    CHECK(linking_number(a, br) == -linking_number(a, b));
}

TEST_CASE("constructed link components have linking number 0") {
    GordianSpec spec;
    spec.n1 = 256;
    spec.n2 = 512;
    PolyCurve l1 = build_l1(spec);
    PolyCurve l2 = build_l2(spec);
    CHECK(linking_number(l1, l2) == 0);
    double gauss = gauss_linking_integral(l1, l2);
    CHECK(std::abs(gauss) < 0.1);
}

TEST_CASE("intersecting closed curves are rejected by linking_number") {
    PolyCurve a = regular_ngon(32, 1.0);
    CHECK_THROWS_AS(linking_number(a, a), GeometricError);
}
