#pragma once

#include <vector>

#include "gordian/poly_curve.hpp"

namespace gordian {

// Triangulated cone over a closed curve from an apex. Triangle i is
// (apex, boundary[i], boundary[i+1]); the disk is intrinsically flat away
// from the apex, so the apex angles carry all the intrinsic data.
struct ConeDisk {
    Point3 apex;
    PolyCurve boundary;
    std::vector<double> intrinsic_angles; // apex angle per triangle, radians
};

// Intrinsic metric of an infinite cone, independent of any embedding.
struct ConeMetric {
    double total_angle = 2.0 * M_PI;
};

struct ConePoint {
    double r = 0.0;
    double theta = 0.0;
};

struct DotComponent {
    std::vector<std::size_t> triangle_ids; // refined triangle indices
    bool contains_dot = false;
    std::vector<int> dot_signs;
};

struct DotReport {
    std::vector<DotComponent> components;
    int dotted_count = 0;
    int total_signed_dots = 0;
};

// Throws GeometricError if the apex lies on the boundary curve.
ConeDisk cone_over(const PolyCurve& boundary, const Point3& apex);

double cone_angle(const ConeDisk& d);

// Geodesic distance on the cone: chord law for angular difference <= pi,
// through the apex otherwise.
double cone_distance(const ConeMetric& m, const ConePoint& p1, const ConePoint& p2);

// Length of a polar-polygonal curve before and after radius-decreasing
// radial projection onto the circle r = target_r. Edges are linear in
// (r, theta); after = target_r * total swept angle. Contract: after <= before.
struct ProjectedLength {
    double before = 0.0;
    double after = 0.0;
};
ProjectedLength radial_projection_length(const ConeMetric& m,
                                         const std::vector<ConePoint>& curve,
                                         double target_r);

// Connected components of the preimage of the core's radius-r tube on the
// cone disk, with transverse core intersections ("dots") and their signs.
// The cone triangulation is refined until every triangle has diameter
// < radius/4 before classification. Throws GenericityError on tangential
// or edge-ambiguous core crossings.
DotReport dotted_components(const ConeDisk& d, const PolyCurve& core, double radius);

} // namespace gordian
