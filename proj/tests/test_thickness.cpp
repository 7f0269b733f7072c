#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gordian/construction.hpp"
#include "gordian/errors.hpp"
#include "gordian/thickness.hpp"

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

// elongated flat loop: two straight strands at y = +-1 joined by semicircles
PolyCurve paperclip(std::size_t n_arc, double half_len) {
    PolyCurve c;
    for (std::size_t i = 0; i <= 8; ++i)
        c.vertices.push_back({-half_len + 2.0 * half_len * double(i) / 8.0, -1.0, 0.0});
    for (std::size_t i = 1; i < n_arc; ++i) {
        double t = -M_PI / 2.0 + M_PI * double(i) / double(n_arc);
        c.vertices.push_back({half_len + std::cos(t), std::sin(t), 0.0});
    }
    for (std::size_t i = 0; i <= 8; ++i)
        c.vertices.push_back({half_len - 2.0 * half_len * double(i) / 8.0, 1.0, 0.0});
    for (std::size_t i = 1; i < n_arc; ++i) {
        double t = M_PI / 2.0 + M_PI * double(i) / double(n_arc);
        c.vertices.push_back({-half_len + std::cos(t), std::sin(t), 0.0});
    }
    return c;
}

PolyCurve random_loop(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PolyCurve c;
    for (std::size_t i = 0; i < n; ++i) {
        double t = 2.0 * M_PI * double(i) / double(n);
        Point3 base{3.0 * std::cos(t), 3.0 * std::sin(t), 0.0};
        c.vertices.push_back(base + Point3{0.3 * u(rng), 0.3 * u(rng), 0.3 * u(rng)});
    }
    return c;
}

PolyCurve scaled(const PolyCurve& c, double s) {
    PolyCurve out = c;
    for (auto& v : out.vertices) v *= s;
    return out;
}

PolyCurve rotated_shifted(const PolyCurve& c) {
    const double a = 0.7;
    PolyCurve out = c;
    for (auto& v : out.vertices) {
        Point3 r{v.x * std::cos(a) - v.y * std::sin(a), v.x * std::sin(a) + v.y * std::cos(a),
                 v.z};
        out.vertices[&v - &out.vertices[0]] = r + Point3{1.5, -2.0, 0.75};
    }
    return out;
}

} // namespace

TEST_CASE("min_radius_of_curvature of regular n-gon matches closed form") {
    for (std::size_t n : {8u, 32u, 128u}) {
        PolyCurve c = regular_ngon(n, 3.0);
        CHECK(min_radius_of_curvature(c) ==
              doctest::Approx(3.0 * std::cos(M_PI / n)).epsilon(1e-12));
    }
}

TEST_CASE("n-gon curvature radius is monotone in n with O(1/n^2) error") {
    double prev = 0.0;
    for (std::size_t n = 16; n <= 1024; n *= 2) {
        double r = min_radius_of_curvature(regular_ngon(n, 1.0));
        CHECK(r > prev);
        CHECK(1.0 - r <= 6.0 / double(n * n));
        prev = r;
    }
}

TEST_CASE("stadium curve curvature radius approaches 2 from below") {
    GordianSpec spec;
    double prev = 0.0;
    for (std::size_t n : {128u, 512u, 2048u}) {
        spec.n1 = n;
        double r = min_radius_of_curvature(build_l1(spec));
        CHECK(r < 2.0);
        CHECK(r > prev);
        prev = r;
    }
    CHECK(prev > 2.0 - 1e-5);
}

TEST_CASE("near-cusp vertex is rejected") {
    PolyCurve c;
    c.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1e-12, 0.0}, {-1, 2, 0}};
    // turning angle at vertex 1 is within the cusp threshold of pi
    CHECK_THROWS_AS(min_radius_of_curvature(c), DegenerateCurveError);
}

TEST_CASE("planar circle has no doubly-critical self pair") {
    PolyCurve c = regular_ngon(256, 2.0);
    CHECK(std::isinf(strand_clearance(c)));
}

TEST_CASE("paperclip strands at distance 2 give self clearance 1") {
    PolyCurve c = paperclip(64, 6.0);
    CHECK(strand_clearance(c) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cross_clearance equals brute force bit-identically on random pairs") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> size_dist(16, 512);
    for (int trial = 0; trial < 100; ++trial) {
        PolyCurve a = random_loop(rng, size_dist(rng));
        PolyCurve b = random_loop(rng, size_dist(rng));
        for (auto& v : b.vertices) v += Point3{7.0, 1.0, 2.0};
        SpatialGrid grid({&a, &b}, 2.0);
        double fast = cross_clearance(a, b, grid);
        double brute = cross_clearance_brute(a, b);
        CHECK(fast == brute);
    }
}

TEST_CASE("identical curve passed twice has zero cross clearance") {
    PolyCurve a = regular_ngon(64, 2.0);
    SpatialGrid grid({&a, &a}, 2.0);
    CHECK(cross_clearance(a, a, grid) == 0.0);
}

TEST_CASE("single circle link thickness equals its radius") {
    ThickLink link;
    link.components.push_back(regular_ngon(4096, 2.0));
    link.radius = 1.0;
    ThicknessReport r = link_thickness(link);
    CHECK(r.thickness == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(std::isinf(r.cross_clearance));
}

TEST_CASE("far coaxial unit circles are curvature-limited to thickness 1") {
    ThickLink link;
    link.components.push_back(regular_ngon(2048, 1.0));
    link.components.push_back(regular_ngon(2048, 1.0, {0, 0, 10}));
    link.radius = 1.0;
    ThicknessReport r = link_thickness(link);
    CHECK(r.thickness == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.min_rad < r.cross_clearance / 2.0);
}

TEST_CASE("constructed link is 1-thick within tolerance") {
    GordianSpec spec;
    spec.n1 = 1024;
    spec.n2 = 1024;
    ThickLink link = gordian_link(spec);
    ThicknessReport r = link_thickness(link);
    CHECK(r.thickness >= 1.0 - 1e-3);
    SpatialGrid grid({&link.components[0], &link.components[1]}, 2.0);
    // core clearance 2 up to chord sag of the radius-2 arcs
    const double sag = 2.0 * (1.0 - std::cos(M_PI / double(spec.n1 - 2)));
    CHECK(cross_clearance(link.components[0], link.components[1], grid) >=
          2.0 - 2.0 * sag);
}

TEST_CASE("thickness report scales linearly") {
    ThickLink link = gordian_link(GordianSpec{256, 512, 2.0, "trefoil-arc"});
    ThicknessReport base = link_thickness(link);
    ThickLink big = link;
    for (auto& comp : big.components) comp = scaled(comp, 3.0);
    ThicknessReport r = link_thickness(big);
    CHECK(r.min_rad == doctest::Approx(3.0 * base.min_rad).epsilon(1e-12));
    CHECK(r.cross_clearance == doctest::Approx(3.0 * base.cross_clearance).epsilon(1e-12));
    CHECK(r.thickness == doctest::Approx(3.0 * base.thickness).epsilon(1e-12));
}

TEST_CASE("thickness is invariant under rigid motion") {
    ThickLink link = gordian_link(GordianSpec{256, 512, 2.0, "trefoil-arc"});
    ThicknessReport base = link_thickness(link);
    ThickLink moved = link;
    for (auto& comp : moved.components) comp = rotated_shifted(comp);
    ThicknessReport r = link_thickness(moved);
    CHECK(r.thickness == doctest::Approx(base.thickness).epsilon(1e-12));
}

TEST_CASE("report satisfies thickness = min(min_rad, self, cross/2)") {
    ThickLink link = gordian_link(GordianSpec{256, 512, 2.0, "trefoil-arc"});
    ThicknessReport r = link_thickness(link);
    double expect = std::min({r.min_rad, r.self_clearance, r.cross_clearance / 2.0});
    CHECK(r.thickness == expect);
}
