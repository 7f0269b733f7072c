#include "gordian/linking.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "gordian/errors.hpp"

namespace gordian {

namespace {

void projection_basis(const Vec3& dir, Vec3& e1, Vec3& e2) {
    const Vec3 seed = std::abs(dir.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = normalized(cross(dir, seed));
    e2 = cross(dir, e1);
}

std::vector<Vec2> project(const PolyCurve& c, const Vec3& e1, const Vec3& e2) {
    std::vector<Vec2> out;
    out.reserve(c.vertices.size());
    for (const auto& v : c.vertices) out.push_back({dot(v, e1), dot(v, e2)});
    return out;
}

} // namespace

bool linking_number_along(const PolyCurve& c1, const PolyCurve& c2,
                          const Vec3& dir, int& out) {
    Vec3 e1, e2;
    projection_basis(dir, e1, e2);
    const auto p = project(c1, e1, e2);
    const auto q = project(c2, e1, e2);

    constexpr double kParamMargin = 1e-9;
    int total = 0;
    for (std::size_t i = 0; i < c1.edge_count(); ++i) {
        const Vec2 p1 = p[i], p2 = p[(i + 1) % p.size()];
        const Vec2 r = p2 - p1;
        for (std::size_t j = 0; j < c2.edge_count(); ++j) {
            const Vec2 q1 = q[j], q2 = q[(j + 1) % q.size()];
            const Vec2 s = q2 - q1;
            const double denom = cross2(r, s);
            const double scale = norm2d(r) * norm2d(s);
            if (std::abs(denom) < 1e-12 * scale) {
                // Parallel in projection; only a problem if they overlap.
                const Vec2 w = q1 - p1;
                if (std::abs(cross2(r, w)) < 1e-9 * norm2d(r) * (norm2d(w) + norm2d(s)))
                    return false;
                continue;
            }
            const Vec2 w = q1 - p1;
            const double t = cross2(w, s) / denom;
            const double u = cross2(w, r) / denom;
            if (t < -kParamMargin || t > 1 + kParamMargin ||
                u < -kParamMargin || u > 1 + kParamMargin)
                continue;
            if (t < kParamMargin || t > 1 - kParamMargin ||
                u < kParamMargin || u > 1 - kParamMargin)
                return false; // crossing at an edge endpoint: not generic
            const Point3 a = c1.edge_a(i) + (c1.edge_b(i) - c1.edge_a(i)) * t;
            const Point3 b = c2.edge_a(j) + (c2.edge_b(j) - c2.edge_a(j)) * u;
            const double dz = dot(a - b, dir);
            if (std::abs(dz) < 1e-9) return false;
            // Right-handed convention viewed along -dir: over strand first.
            const double sgn = dz > 0 ? cross2(r, s) : cross2(s, r);
            total += sgn > 0 ? 1 : -1;
        }
    }
    if (total % 2 != 0) return false;
    out = total / 2;
    return true;
}

int linking_number(const PolyCurve& c1, const PolyCurve& c2) {
    validate(c1);
    validate(c2);
    if (!c1.closed || !c2.closed)
        throw ValidationError("linking number requires closed curves");
    for (std::size_t i = 0; i < c1.edge_count(); ++i)
        for (std::size_t j = 0; j < c2.edge_count(); ++j)
            if (segment_distance(c1.edge_a(i), c1.edge_b(i),
                                 c2.edge_a(j), c2.edge_b(j)) < 1e-12)
                throw GeometricError("curves intersect");

    std::mt19937_64 rng(0x11771177ULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    constexpr int kMaxRetries = 64;
    bool have_first = false;
    int first = 0;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        Vec3 dir{unit(rng), unit(rng), unit(rng)};
        const double n = norm(dir);
        if (n < 0.1) continue;
        dir = dir / n;
        int lk = 0;
        if (!linking_number_along(c1, c2, dir, lk)) continue;
        if (!have_first) {
            have_first = true;
            first = lk;
            continue;
        }
        if (lk != first)
            throw GenericityError("projection directions disagree on linking number");
        return lk;
    }
    throw GenericityError("no generic projection direction found");
}

} // namespace gordian
