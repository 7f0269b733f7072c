#pragma once

#include <vector>

#include "gordian/vec3.hpp"

namespace gordian {

// Closed or open polygonal space curve. Closed curves do not repeat the
// first vertex; the closing edge is implicit.
struct PolyCurve {
    std::vector<Point3> vertices;
    bool closed = true;

    std::size_t edge_count() const {
        if (vertices.size() < 2) return 0;
        return closed ? vertices.size() : vertices.size() - 1;
    }

    // Endpoints of edge i. For closed curves edge n-1 wraps to vertex 0.
    Point3 edge_a(std::size_t i) const { return vertices[i]; }
    Point3 edge_b(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
};

// Throws ValidationError on too few vertices, repeated consecutive vertices,
// non-finite coordinates, or a duplicated closing vertex.
void validate(const PolyCurve& c);

double curve_length(const PolyCurve& c);

// Arclength-weighted centroid (uniform measure on the polygonal curve).
Point3 centroid(const PolyCurve& c);

// (x, y, z) -> (x, y, -z), orientation of the vertex list preserved.
PolyCurve reflect_xy(const PolyCurve& c);

// Minimum Euclidean distance between two closed segments [a1,b1], [a2,b2].
// Throws ValidationError on a zero-length segment.
double segment_distance(const Point3& a1, const Point3& b1,
                        const Point3& a2, const Point3& b2);

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b);

// Minimum distance from a point to a (closed or open) polygonal curve.
double point_curve_distance(const Point3& p, const PolyCurve& c);

// True if the two closed curves trace the same vertex cycle, up to cyclic
// shift and orientation reversal, within tol per coordinate.
bool curves_match_unoriented(const PolyCurve& a, const PolyCurve& b, double tol);

// Resample a (possibly closed) polyline to n vertices uniformly by arclength.
PolyCurve resample_uniform(const PolyCurve& c, std::size_t n);

} // namespace gordian
