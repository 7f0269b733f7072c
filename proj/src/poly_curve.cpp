#include "gordian/poly_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gordian/errors.hpp"

namespace gordian {

void validate(const PolyCurve& c) {
    const std::size_t n = c.vertices.size();
    if (c.closed && n < 3)
        throw ValidationError("closed curve needs at least 3 vertices");
    if (!c.closed && n < 2)
        throw ValidationError("open curve needs at least 2 vertices");
    for (const auto& v : c.vertices)
        if (!finite(v)) throw ValidationError("non-finite vertex coordinate");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (c.vertices[i] == c.vertices[i + 1])
            throw ValidationError("repeated consecutive vertices");
    if (c.closed && c.vertices.front() == c.vertices.back())
        throw ValidationError("closed curve must not repeat the first vertex");
}

double curve_length(const PolyCurve& c) {
    validate(c);
    double len = 0.0;
    for (std::size_t i = 0; i < c.edge_count(); ++i)
        len += dist(c.edge_a(i), c.edge_b(i));
    return len;
}

Point3 centroid(const PolyCurve& c) {
    validate(c);
    Vec3 acc{0, 0, 0};
    double total = 0.0;
    for (std::size_t i = 0; i < c.edge_count(); ++i) {
        const Point3 a = c.edge_a(i), b = c.edge_b(i);
        const double len = dist(a, b);
        acc += (a + b) * (0.5 * len);
        total += len;
    }
    if (total <= 0.0) throw ValidationError("zero total length");
    return acc / total;
}

PolyCurve reflect_xy(const PolyCurve& c) {
    validate(c);
    PolyCurve out = c;
    for (auto& v : out.vertices) v.z = -v.z;
    return out;
}

double segment_distance(const Point3& a1, const Point3& b1,
                        const Point3& a2, const Point3& b2) {
    const Vec3 d1 = b1 - a1;
    const Vec3 d2 = b2 - a2;
    const double L1 = norm2(d1), L2 = norm2(d2);
    if (L1 == 0.0 || L2 == 0.0)
        throw ValidationError("zero-length segment");

    // Minimize |a1 + s d1 - a2 - t d2| over the unit square in (s, t).
    const Vec3 r = a1 - a2;
    const double b = dot(d1, d2);
    const double c = dot(d1, r);
    const double e = dot(d2, r);
    const double den = L1 * L2 - b * b;

    double s;
    if (den > 1e-14 * L1 * L2) {
        s = std::clamp((b * e - c * L2) / den, 0.0, 1.0);
    } else {
        s = 0.0; // near-parallel: pick an end and clamp
    }
    double t = (b * s + e) / L2;
    if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / L1, 0.0, 1.0);
    } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / L1, 0.0, 1.0);
    }
    const Vec3 p = a1 + d1 * s;
    const Vec3 q = a2 + d2 * t;
    double best = dist(p, q);
    // Clamped stationary point can miss the corner optimum in the parallel
    // case; endpoint-to-segment checks close that gap.
    auto point_seg = [](const Point3& p0, const Point3& a, const Vec3& d, double LL) {
        const double u = std::clamp(dot(p0 - a, d) / LL, 0.0, 1.0);
        return dist(p0, a + d * u);
    };
    best = std::min(best, point_seg(a1, a2, d2, L2));
    best = std::min(best, point_seg(b1, a2, d2, L2));
    best = std::min(best, point_seg(a2, a1, d1, L1));
    best = std::min(best, point_seg(b2, a1, d1, L1));
    return best;
}

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b) {
    const Vec3 d = b - a;
    const double L = norm2(d);
    if (L == 0.0) return dist(p, a);
    const double u = std::clamp(dot(p - a, d) / L, 0.0, 1.0);
    return dist(p, a + d * u);
}

double point_curve_distance(const Point3& p, const PolyCurve& c) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.edge_count(); ++i)
        best = std::min(best, point_segment_distance(p, c.edge_a(i), c.edge_b(i)));
    return best;
}

bool curves_match_unoriented(const PolyCurve& a, const PolyCurve& b, double tol) {
    if (a.vertices.size() != b.vertices.size() || a.closed != b.closed) return false;
    const std::size_t n = a.vertices.size();
    auto close = [tol](const Point3& p, const Point3& q) {
        return std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol &&
               std::abs(p.z - q.z) <= tol;
    };
    auto match_from = [&](std::size_t shift, bool reversed) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j =
                reversed ? (shift + n - i) % n : (shift + i) % n;
            if (!close(a.vertices[i], b.vertices[j])) return false;
        }
        return true;
    };
    if (!a.closed) {
        // Open curves: identical or reversed only.
        bool fwd = true, rev = true;
        for (std::size_t i = 0; i < n; ++i) {
            fwd = fwd && close(a.vertices[i], b.vertices[i]);
            rev = rev && close(a.vertices[i], b.vertices[n - 1 - i]);
        }
        return fwd || rev;
    }
    for (std::size_t shift = 0; shift < n; ++shift) {
        if (close(a.vertices[0], b.vertices[shift])) {
            if (match_from(shift, false) || match_from(shift, true)) return true;
        }
    }
    return false;
}

PolyCurve resample_uniform(const PolyCurve& c, std::size_t n) {
    validate(c);
    const std::size_t min_n = c.closed ? 3 : 2;
    if (n < min_n) throw ValidationError("resample target too small");
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i < c.edge_count(); ++i)
        cum.push_back(cum.back() + dist(c.edge_a(i), c.edge_b(i)));
    const double total = cum.back();
    PolyCurve out;
    out.closed = c.closed;
    const std::size_t samples = c.closed ? n : n - 1;
    std::size_t e = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double s = total * static_cast<double>(k) / static_cast<double>(samples);
        while (e + 1 < cum.size() - 1 && cum[e + 1] <= s) ++e;
        const double seg = cum[e + 1] - cum[e];
        const double u = seg > 0 ? (s - cum[e]) / seg : 0.0;
        out.vertices.push_back(c.edge_a(e) + (c.edge_b(e) - c.edge_a(e)) * u);
    }
    if (!c.closed) out.vertices.push_back(c.vertices.back());
    return out;
}

} // namespace gordian
