#include "gordian/thickness.hpp"

#include <algorithm>
#include <cmath>

#include "gordian/errors.hpp"

namespace gordian {

namespace {

long long cell_index(double x, double cell) {
    return static_cast<long long>(std::floor(x / cell));
}

} // namespace

std::uint64_t SpatialGrid::key(long long ix, long long iy, long long iz) const {
    // 21 bits per axis, offset to stay positive.
    const std::uint64_t bias = 1ull << 20;
    return ((static_cast<std::uint64_t>(ix) + bias) << 42) |
           ((static_cast<std::uint64_t>(iy) + bias) << 21) |
           (static_cast<std::uint64_t>(iz) + bias);
}

SpatialGrid::SpatialGrid(const std::vector<const PolyCurve*>& curves, double cell_size)
    : cell_(cell_size) {
    if (cell_size <= 0) throw ValidationError("grid cell size must be positive");
    for (std::uint32_t ci = 0; ci < curves.size(); ++ci) {
        const PolyCurve& c = *curves[ci];
        for (std::uint32_t ei = 0; ei < c.edge_count(); ++ei) {
            const Point3 a = c.edge_a(ei), b = c.edge_b(ei);
            const long long x0 = cell_index(std::min(a.x, b.x), cell_);
            const long long x1 = cell_index(std::max(a.x, b.x), cell_);
            const long long y0 = cell_index(std::min(a.y, b.y), cell_);
            const long long y1 = cell_index(std::max(a.y, b.y), cell_);
            const long long z0 = cell_index(std::min(a.z, b.z), cell_);
            const long long z1 = cell_index(std::max(a.z, b.z), cell_);
            for (long long ix = x0; ix <= x1; ++ix)
                for (long long iy = y0; iy <= y1; ++iy)
                    for (long long iz = z0; iz <= z1; ++iz)
                        cells_[key(ix, iy, iz)].push_back({ci, ei});
        }
    }
}

std::vector<SpatialGrid::EdgeRef> SpatialGrid::query_box(const Point3& lo,
                                                         const Point3& hi) const {
    std::vector<EdgeRef> out;
    const long long x0 = cell_index(lo.x, cell_), x1 = cell_index(hi.x, cell_);
    const long long y0 = cell_index(lo.y, cell_), y1 = cell_index(hi.y, cell_);
    const long long z0 = cell_index(lo.z, cell_), z1 = cell_index(hi.z, cell_);
    for (long long ix = x0; ix <= x1; ++ix)
        for (long long iy = y0; iy <= y1; ++iy)
            for (long long iz = z0; iz <= z1; ++iz) {
                auto it = cells_.find(key(ix, iy, iz));
                if (it == cells_.end()) continue;
                out.insert(out.end(), it->second.begin(), it->second.end());
            }
    std::sort(out.begin(), out.end(), [](const EdgeRef& a, const EdgeRef& b) {
        return a.component != b.component ? a.component < b.component : a.edge < b.edge;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const EdgeRef& a, const EdgeRef& b) {
                              return a.component == b.component && a.edge == b.edge;
                          }),
              out.end());
    return out;
}

double min_radius_of_curvature(const PolyCurve& c) {
    validate(c);
    if (!c.closed) throw ValidationError("curvature radius defined for closed curves");
    const std::size_t n = c.vertices.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point3 prev = c.vertices[(i + n - 1) % n];
        const Point3 cur = c.vertices[i];
        const Point3 next = c.vertices[(i + 1) % n];
        const Vec3 din = cur - prev;
        const Vec3 dout = next - cur;
        const double lin = norm(din), lout = norm(dout);
        const double phi = std::atan2(norm(cross(din, dout)), dot(din, dout));
        if (phi >= M_PI - 1e-9)
            throw DegenerateCurveError("turning angle at or near pi (cusp)");
        if (phi < 1e-15) continue; // straight vertex, infinite radius
        best = std::min(best, std::min(lin, lout) / (2.0 * std::tan(phi / 2.0)));
    }
    return best;
}

std::vector<ClearancePair> clearance_pairs(const PolyCurve& c) {
    validate(c);
    if (!c.closed) throw ValidationError("strand clearance defined for closed curves");
    std::vector<ClearancePair> pairs;
    const std::size_t n = c.edge_count();
    if (n < 5) return pairs;

    auto row_distances = [&](std::size_t i, std::vector<double>& row) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                row[j] = 0.0;
                continue;
            }
            const std::size_t sep = std::min((j + n - i) % n, (i + n - j) % n);
            if (sep <= 1) {
                row[j] = 0.0; // adjacent edges share a vertex
                continue;
            }
            row[j] = segment_distance(c.edge_a(i), c.edge_b(i), c.edge_a(j), c.edge_b(j));
        }
    };

    // Rolling three-row window: local-minimum test for pair (i, j) compares
    // against all eight index neighbors.
    std::vector<std::vector<double>> rows(3, std::vector<double>(n));
    row_distances(n - 1, rows[0]);
    row_distances(0, rows[1]);
    for (std::size_t i = 0; i < n; ++i) {
        row_distances((i + 1) % n, rows[(i + 2) % 3]);
        const auto& prev = rows[i % 3];
        const auto& cur = rows[(i + 1) % 3];
        const auto& next = rows[(i + 2) % 3];
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t sep = std::min((j + n - i) % n, (i + n - j) % n);
            if (sep <= 1) continue;
            const double d = cur[j];
            if (d < 1e-12) throw GeometricError("self-intersecting curve");
            const std::size_t jm = (j + n - 1) % n, jp = (j + 1) % n;
            const bool local_min = d <= cur[jm] && d <= cur[jp] &&
                                   d <= prev[jm] && d <= prev[j] && d <= prev[jp] &&
                                   d <= next[jm] && d <= next[j] && d <= next[jp];
            if (local_min) pairs.push_back({i, j, d});
        }
    }
    return pairs;
}

double strand_clearance(const PolyCurve& c) {
    double dcsd = std::numeric_limits<double>::infinity();
    for (const auto& p : clearance_pairs(c)) dcsd = std::min(dcsd, p.d);
    return dcsd / 2.0;
}

double cross_clearance_brute(const PolyCurve& c1, const PolyCurve& c2) {
    validate(c1);
    validate(c2);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c1.edge_count(); ++i)
        for (std::size_t j = 0; j < c2.edge_count(); ++j)
            best = std::min(best, segment_distance(c1.edge_a(i), c1.edge_b(i),
                                                   c2.edge_a(j), c2.edge_b(j)));
    return best;
}

double cross_clearance(const PolyCurve& c1, const PolyCurve& c2,
                       const SpatialGrid& grid) {
    validate(c1);
    validate(c2);
    // Seed the bound with one full sweep of c1's first edge so the pruning
    // radius is always finite.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c2.edge_count(); ++j)
        best = std::min(best, segment_distance(c1.edge_a(0), c1.edge_b(0),
                                               c2.edge_a(j), c2.edge_b(j)));
    for (std::size_t i = 1; i < c1.edge_count(); ++i) {
        const Point3 a = c1.edge_a(i), b = c1.edge_b(i);
        const Point3 lo{std::min(a.x, b.x) - best, std::min(a.y, b.y) - best,
                        std::min(a.z, b.z) - best};
        const Point3 hi{std::max(a.x, b.x) + best, std::max(a.y, b.y) + best,
                        std::max(a.z, b.z) + best};
        for (const auto& ref : grid.query_box(lo, hi)) {
            if (ref.component != 1) continue;
            best = std::min(best, segment_distance(a, b, c2.edge_a(ref.edge),
                                                   c2.edge_b(ref.edge)));
        }
    }
    return best;
}

ThicknessReport link_thickness(const ThickLink& link) {
    if (link.radius <= 0) throw ValidationError("link radius must be positive");
    if (link.components.empty()) throw ValidationError("link has no components");
    ThicknessReport rep;
    for (const auto& c : link.components) {
        if (!c.closed) throw ValidationError("link components must be closed");
        rep.min_rad = std::min(rep.min_rad, min_radius_of_curvature(c));
        rep.self_clearance = std::min(rep.self_clearance, strand_clearance(c));
    }
    for (std::size_t i = 0; i < link.components.size(); ++i) {
        for (std::size_t j = i + 1; j < link.components.size(); ++j) {
            const PolyCurve& a = link.components[i];
            const PolyCurve& b = link.components[j];
            SpatialGrid grid({&a, &b}, 2.0 * link.radius);
            const double d = cross_clearance(a, b, grid);
            if (d < 1e-12) throw GeometricError("link components intersect");
            rep.cross_clearance = std::min(rep.cross_clearance, d);
        }
    }
    rep.thickness = std::min({rep.min_rad, rep.self_clearance, rep.cross_clearance / 2.0});
    return rep;
}

} // namespace gordian
