#include "gordian/cone_disk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <unordered_map>

#include "gordian/errors.hpp"
#include "gordian/thickness.hpp"

namespace gordian {

namespace {

constexpr double kTangencyTol = 1e-7;
constexpr double kOnSurfaceTol = 1e-9;

struct Tri {
    std::size_t a, b, c;
    std::size_t ancestor;
};

std::uint64_t edge_key(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

double point_triangle_distance(const Point3& p, const Point3& a, const Point3& b,
                               const Point3& c) {
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    const double d00 = dot(ab, ab), d01 = dot(ab, ac), d11 = dot(ac, ac);
    const double den = d00 * d11 - d01 * d01;
    if (den > 1e-30) {
        const double v = (d11 * d1 - d01 * d2) / den;
        const double w = (d00 * d2 - d01 * d1) / den;
        if (v >= 0 && w >= 0 && v + w <= 1)
            return dist(p, a + ab * v + ac * w);
    }
    return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                     point_segment_distance(p, a, c)});
}

} // namespace

ConeDisk cone_over(const PolyCurve& boundary, const Point3& apex) {
    validate(boundary);
    if (!boundary.closed) throw ValidationError("cone boundary must be closed");
    if (point_curve_distance(apex, boundary) < 1e-9)
        throw GeometricError("apex lies on the boundary curve");
    ConeDisk d;
    d.apex = apex;
    d.boundary = boundary;
    const std::size_t n = boundary.vertices.size();
    d.intrinsic_angles.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 u = boundary.vertices[i] - apex;
        const Vec3 v = boundary.vertices[(i + 1) % n] - apex;
        d.intrinsic_angles.push_back(std::atan2(norm(cross(u, v)), dot(u, v)));
    }
    return d;
}

double cone_angle(const ConeDisk& d) {
    double sum = 0.0;
    for (double a : d.intrinsic_angles) sum += a;
    return sum;
}

double cone_distance(const ConeMetric& m, const ConePoint& p1, const ConePoint& p2) {
    if (m.total_angle <= 0) throw ValidationError("cone angle must be positive");
    if (p1.r < 0 || p2.r < 0) throw ValidationError("negative radius");
    double d = std::fmod(std::abs(p1.theta - p2.theta), m.total_angle);
    d = std::min(d, m.total_angle - d);
    if (d <= M_PI)
        return std::sqrt(std::max(
            0.0, p1.r * p1.r + p2.r * p2.r - 2.0 * p1.r * p2.r * std::cos(d)));
    return p1.r + p2.r;
}

namespace {

// Exact length of the path linear in (r, theta) between two polar points.
double polar_edge_length(double r1, double r2, double dtheta) {
    const double k = std::abs(r2 - r1);
    const double d = std::abs(dtheta);
    if (d < 1e-300) return k;
    if (k < 1e-300) return std::min(r1, r2) * d + k; // constant radius arc
    auto F = [&](double u) {
        return 0.5 * u * std::sqrt(k * k + d * d * u * u) +
               (k * k / (2.0 * d)) * std::asinh(d * u / k);
    };
    return std::abs(F(r2) - F(r1)) / k;
}

} // namespace

ProjectedLength radial_projection_length(const ConeMetric& m,
                                         const std::vector<ConePoint>& curve,
                                         double target_r) {
    if (m.total_angle <= 0) throw ValidationError("cone angle must be positive");
    if (target_r <= 0) throw ValidationError("target radius must be positive");
    if (curve.size() < 2) throw ValidationError("curve needs at least 2 points");
    for (const auto& p : curve)
        if (p.r < target_r - 1e-12)
            throw ValidationError("curve point inside the target circle");
    ProjectedLength out;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        double d = std::fmod(std::abs(curve[i].theta - curve[i + 1].theta), m.total_angle);
        d = std::min(d, m.total_angle - d);
        out.before += polar_edge_length(curve[i].r, curve[i + 1].r, d);
        out.after += target_r * d;
    }
    return out;
}

namespace {

struct DotHit {
    Point3 point;
    int sign;
    std::size_t ancestor;
};

// Consecutive collinear core edges are merged before intersection tests so a
// straight strand passing through a core vertex registers one clean crossing.
std::vector<Point3> reduced_core_points(const PolyCurve& core) {
    const std::size_t n = core.vertices.size();
    auto collinear_at = [&](std::size_t i) {
        const Vec3 u = core.vertices[i] - core.vertices[(i + n - 1) % n];
        const Vec3 v = core.vertices[(i + 1) % n] - core.vertices[i];
        return norm(cross(u, v)) <= 1e-12 * norm(u) * norm(v) && dot(u, v) > 0;
    };
    std::vector<Point3> pts;
    for (std::size_t i = 0; i < n; ++i)
        if (!collinear_at(i)) pts.push_back(core.vertices[i]);
    if (pts.size() < 3) pts.assign(core.vertices.begin(), core.vertices.end());
    return pts;
}

} // namespace

DotReport dotted_components(const ConeDisk& d, const PolyCurve& core, double radius) {
    validate(core);
    if (!core.closed) throw ValidationError("core must be closed");
    if (radius <= 0) throw ValidationError("radius must be positive");
    for (std::size_t i = 0; i < core.edge_count(); ++i)
        for (std::size_t j = 0; j < d.boundary.edge_count(); ++j)
            if (segment_distance(core.edge_a(i), core.edge_b(i), d.boundary.edge_a(j),
                                 d.boundary.edge_b(j)) < 1e-9)
                throw GeometricError("core meets the disk boundary");

    const std::size_t nb = d.boundary.vertices.size();
    std::vector<Point3> verts;
    verts.reserve(nb + 1);
    verts.push_back(d.apex);
    for (const auto& v : d.boundary.vertices) verts.push_back(v);
    std::vector<Tri> tris;
    tris.reserve(nb);
    for (std::size_t i = 0; i < nb; ++i)
        tris.push_back({0, i + 1, 1 + (i + 1) % nb, i});

    // ---- dots on the original triangles ----
    const auto pts = reduced_core_points(core);
    const std::size_t np = pts.size();
    std::vector<DotHit> hits;
    auto record_hit = [&](const Point3& p, int sgn, std::size_t ancestor) {
        for (const auto& h : hits)
            if (dist(h.point, p) < 1e-9) return; // same crossing seen from a neighbor
        hits.push_back({p, sgn, ancestor});
    };
    for (std::size_t si = 0; si < np; ++si) {
        const Point3 sa = pts[si], sb = pts[(si + 1) % np];
        const Vec3 dir = sb - sa;
        const double dlen = norm(dir);
        for (std::size_t ti = 0; ti < tris.size(); ++ti) {
            const Point3 A = verts[tris[ti].a], B = verts[tris[ti].b], C = verts[tris[ti].c];
            const Vec3 e1 = B - A, e2 = C - A;
            const Vec3 n = cross(e1, e2);
            const double nlen = norm(n);
            if (nlen < 1e-30) continue; // degenerate sliver
            const double den = dot(dir, n);
            const double cosang = std::abs(den) / (dlen * nlen);
            if (cosang < kTangencyTol) {
                // Parallel to the triangle plane: only a problem if it grazes it.
                if (point_triangle_distance(sa, A, B, C) < kOnSurfaceTol ||
                    point_triangle_distance(sb, A, B, C) < kOnSurfaceTol)
                    throw GenericityError("core tangent to the disk");
                continue;
            }
            const double t = dot(A - sa, n) / den;
            if (t < 1e-9 || t > 1 - 1e-9) {
                // A corner vertex of the core may sit exactly on the disk;
                // handled below as a vertex crossing. Reject only if this
                // plane hit is actually inside the triangle.
                if (t < -1e-9 || t > 1 + 1e-9) continue;
                const Point3 q = t < 0.5 ? sa : sb;
                if (point_triangle_distance(q, A, B, C) > kOnSurfaceTol) continue;
                // Transversality across the vertex: neighbors on opposite sides.
                const std::size_t vi = t < 0.5 ? si : (si + 1) % np;
                const Point3 prev = pts[(vi + np - 1) % np];
                const Point3 next = pts[(vi + 1) % np];
                const double sp = dot(prev - q, n) / nlen;
                const double sn = dot(next - q, n) / nlen;
                if (std::abs(sp) < kOnSurfaceTol || std::abs(sn) < kOnSurfaceTol)
                    throw GenericityError("core edge grazing the disk at a vertex");
                if (sp * sn > 0)
                    throw GenericityError("core touches the disk without crossing");
                record_hit(q, sn > 0 ? 1 : -1, tris[ti].ancestor);
                continue;
            }
            const Point3 p = sa + dir * t;
            // Barycentric coordinates in the triangle plane.
            const double d00 = dot(e1, e1), d01 = dot(e1, e2), d11 = dot(e2, e2);
            const Vec3 ap = p - A;
            const double bden = d00 * d11 - d01 * d01;
            const double v = (d11 * dot(e1, ap) - d01 * dot(e2, ap)) / bden;
            const double w = (d00 * dot(e2, ap) - d01 * dot(e1, ap)) / bden;
            if (v < -1e-9 || w < -1e-9 || v + w > 1 + 1e-9) continue;
            record_hit(p, den > 0 ? 1 : -1, tris[ti].ancestor);
        }
    }

    // ---- refine until every triangle has diameter < radius/4 ----
    auto diameter = [&](const Tri& t) {
        return std::max({dist(verts[t.a], verts[t.b]), dist(verts[t.b], verts[t.c]),
                         dist(verts[t.a], verts[t.c])});
    };
    for (int level = 0;; ++level) {
        double dmax = 0.0;
        for (const auto& t : tris) dmax = std::max(dmax, diameter(t));
        if (dmax < radius / 4.0) break;
        if (level >= 12) throw Error("refinement level cap exceeded");
        std::unordered_map<std::uint64_t, std::size_t> midpoint;
        auto mid = [&](std::size_t i, std::size_t j) {
            const auto key = edge_key(i, j);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            verts.push_back((verts[i] + verts[j]) * 0.5);
            midpoint.emplace(key, verts.size() - 1);
            return verts.size() - 1;
        };
        std::vector<Tri> next;
        next.reserve(tris.size() * 4);
        for (const auto& t : tris) {
            const std::size_t ab = mid(t.a, t.b), bc = mid(t.b, t.c), ca = mid(t.c, t.a);
            next.push_back({t.a, ab, ca, t.ancestor});
            next.push_back({ab, t.b, bc, t.ancestor});
            next.push_back({ca, bc, t.c, t.ancestor});
            next.push_back({ab, bc, ca, t.ancestor});
        }
        tris = std::move(next);
    }

    // ---- classify refined vertices against the tube ----
    SpatialGrid grid({&core}, radius);
    std::vector<char> vert_inside(verts.size(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const Point3& p = verts[i];
        const Point3 lo{p.x - radius, p.y - radius, p.z - radius};
        const Point3 hi{p.x + radius, p.y + radius, p.z + radius};
        double best = std::numeric_limits<double>::infinity();
        for (const auto& ref : grid.query_box(lo, hi))
            best = std::min(best, point_segment_distance(p, core.edge_a(ref.edge),
                                                         core.edge_b(ref.edge)));
        vert_inside[i] = best < radius ? 1 : 0;
    }
    std::vector<char> tri_inside(tris.size(), 0);
    for (std::size_t i = 0; i < tris.size(); ++i)
        tri_inside[i] =
            vert_inside[tris[i].a] && vert_inside[tris[i].b] && vert_inside[tris[i].c];

    // ---- union-find over edge-adjacent inside triangles ----
    // Two inside triangles are joined only if their shared mesh edge lies
    // entirely inside the open tube. Distance to the core is 1-Lipschitz,
    // so bisection with the midpoint bound certifies whole sub-segments;
    // this keeps regions separate across a zero-width pinch (e.g. two
    // strands at exact tube tangency) that vertex sampling would jump over.
    auto dist_to_core = [&](const Point3& p) {
        const Point3 lo{p.x - radius, p.y - radius, p.z - radius};
        const Point3 hi{p.x + radius, p.y + radius, p.z + radius};
        double best = std::numeric_limits<double>::infinity();
        for (const auto& ref : grid.query_box(lo, hi))
            best = std::min(best, point_segment_distance(p, core.edge_a(ref.edge),
                                                         core.edge_b(ref.edge)));
        return best;
    };
    auto segment_in_tube = [&](const Point3& p, const Point3& q) {
        const std::function<bool(const Point3&, const Point3&)> go =
            [&](const Point3& a, const Point3& b) -> bool {
            const Point3 m = (a + b) * 0.5;
            const double fm = dist_to_core(m);
            const double half = 0.5 * dist(a, b);
            if (fm + half < radius) return true;
            if (fm >= radius) return false;
            if (half < 1e-7) return false; // can't certify: treat as outside
            return go(a, m) && go(m, b);
        };
        return go(p, q);
    };
    UnionFind uf(tris.size());
    {
        std::unordered_map<std::uint64_t, std::size_t> first_tri;
        for (std::size_t i = 0; i < tris.size(); ++i) {
            if (!tri_inside[i]) continue;
            for (const auto& [u, w] : {std::pair{tris[i].a, tris[i].b},
                                       std::pair{tris[i].b, tris[i].c},
                                       std::pair{tris[i].c, tris[i].a}}) {
                const auto key = edge_key(u, w);
                auto it = first_tri.find(key);
                if (it == first_tri.end()) {
                    first_tri.emplace(key, i);
                } else if (segment_in_tube(verts[u], verts[w])) {
                    uf.unite(i, it->second);
                }
            }
        }
    }
    std::unordered_map<std::size_t, std::size_t> comp_index;
    DotReport rep;
    for (std::size_t i = 0; i < tris.size(); ++i) {
        if (!tri_inside[i]) continue;
        const std::size_t root = uf.find(i);
        auto it = comp_index.find(root);
        if (it == comp_index.end()) {
            comp_index.emplace(root, rep.components.size());
            rep.components.push_back({});
            it = comp_index.find(root);
        }
        rep.components[it->second].triangle_ids.push_back(i);
    }

    // ---- attach each dot to the component of its refined triangle ----
    for (const auto& h : hits) {
        bool placed = false;
        for (std::size_t i = 0; i < tris.size() && !placed; ++i) {
            if (tris[i].ancestor != h.ancestor || !tri_inside[i]) continue;
            if (point_triangle_distance(h.point, verts[tris[i].a], verts[tris[i].b],
                                        verts[tris[i].c]) < 1e-9) {
                const std::size_t ci = comp_index.at(uf.find(i));
                rep.components[ci].contains_dot = true;
                rep.components[ci].dot_signs.push_back(h.sign);
                rep.total_signed_dots += h.sign;
                placed = true;
            }
        }
        if (!placed)
            throw GenericityError("dot not contained in any tube component");
    }
    for (const auto& c : rep.components)
        if (c.contains_dot) ++rep.dotted_count;
    return rep;
}

} // namespace gordian
