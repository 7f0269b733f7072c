#include "gordian/isoperimetric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gordian/errors.hpp"

namespace gordian {

namespace {

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

void check_disjoint(const DiskConfig& cfg) {
    const auto& c = cfg.centers;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (norm2d(c[j] - c[i]) < 2.0 * cfg.disk_radius - 1e-12)
                throw ValidationError("disk interiors overlap");
}

} // namespace

double hull_perimeter(const std::vector<Vec2>& points) {
    const auto hull = convex_hull(points);
    if (hull.size() < 2) return 0.0;
    if (hull.size() == 2) return 2.0 * norm2d(hull[1] - hull[0]);
    double p = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        p += norm2d(hull[(i + 1) % hull.size()] - hull[i]);
    return p;
}

bool in_convex_position(const std::vector<Vec2>& points) {
    return convex_hull(points).size() == points.size();
}

double parallel_body_length(const std::vector<Vec2>& centers, double offset) {
    if (centers.empty()) throw ValidationError("empty center list");
    if (offset <= 0) throw ValidationError("offset must be positive");
    return hull_perimeter(centers) + 2.0 * M_PI * offset;
}

BoundMargin verify_three_disk_bound(const DiskConfig& cfg) {
    if (cfg.centers.size() != 3)
        throw ValidationError("three-disk bound needs exactly 3 centers");
    check_disjoint(cfg);
    BoundMargin bm;
    bm.bound = 4.0 * M_PI + 6.0;
    bm.achieved = parallel_body_length(cfg.centers, cfg.disk_radius + cfg.margin);
    bm.margin = bm.achieved - bm.bound;
    return bm;
}

BoundMargin verify_n_disk_bound(const DiskConfig& cfg) {
    const std::size_t n = cfg.centers.size();
    if (n < 2) throw ValidationError("n-disk bound needs at least 2 centers");
    check_disjoint(cfg);
    if (!in_convex_position(cfg.centers))
        throw ValidationError("centers are not in convex position");
    BoundMargin bm;
    bm.bound = 4.0 * M_PI + 2.0 * static_cast<double>(n);
    bm.achieved = parallel_body_length(cfg.centers, cfg.disk_radius + cfg.margin);
    bm.margin = bm.achieved - bm.bound;
    return bm;
}

std::vector<SweepRow> sample_and_sweep(std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw ValidationError("trials must be positive");
    std::vector<SweepRow> rows;
    rows.reserve(trials);
    for (std::uint64_t k = 0; k < trials; ++k) {
        std::mt19937_64 rng(seed + k);
        std::uniform_real_distribution<double> logd(std::log(2.0), std::log(6.0));
        double d12, d13, d23;
        // Side lengths log-uniform in [2, 6], rejected until they form a triangle.
        do {
            d12 = std::exp(logd(rng));
            d13 = std::exp(logd(rng));
            d23 = std::exp(logd(rng));
        } while (d12 + d13 <= d23 || d12 + d23 <= d13 || d13 + d23 <= d12);
        DiskConfig cfg;
        const double x3 = (d12 * d12 + d13 * d13 - d23 * d23) / (2.0 * d12);
        const double y3 = std::sqrt(std::max(0.0, d13 * d13 - x3 * x3));
        cfg.centers = {{0.0, 0.0}, {d12, 0.0}, {x3, y3}};
        rows.push_back({k, d12, d13, d23, verify_three_disk_bound(cfg)});
    }
    return rows;
}

} // namespace gordian
