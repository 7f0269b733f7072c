#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "gordian/poly_curve.hpp"

namespace gordian {

struct ThickLink {
    std::vector<PolyCurve> components; // all closed
    double radius = 1.0;
};

struct ThicknessReport {
    double min_rad = std::numeric_limits<double>::infinity();
    double self_clearance = std::numeric_limits<double>::infinity();
    double cross_clearance = std::numeric_limits<double>::infinity();
    double thickness = std::numeric_limits<double>::infinity();
};

// Uniform grid over edges of one or more curves; immutable after build.
class SpatialGrid {
public:
    struct EdgeRef {
        std::uint32_t component;
        std::uint32_t edge;
    };

    SpatialGrid(const std::vector<const PolyCurve*>& curves, double cell_size);

    double cell_size() const { return cell_; }

    // Edge refs from every cell the query box overlaps, deduplicated.
    std::vector<EdgeRef> query_box(const Point3& lo, const Point3& hi) const;

private:
    struct KeyHash {
        std::size_t operator()(std::uint64_t k) const noexcept {
            return std::hash<std::uint64_t>{}(k);
        }
    };
    std::uint64_t key(long long ix, long long iy, long long iz) const;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<EdgeRef>, KeyHash> cells_;
};

// Minimum over vertices of min(l_in, l_out) / (2 tan(phi/2)); straight
// vertices contribute +infinity. Throws DegenerateCurveError when a turning
// angle is within 1e-9 of pi.
double min_radius_of_curvature(const PolyCurve& c);

// Non-adjacent edge pair (i < j) that is a discrete local minimum of the
// pairwise distance function, with its distance.
struct ClearancePair {
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
};

// All discrete-local-minimum pairs of a closed curve. Throws GeometricError
// on a self-intersecting curve.
std::vector<ClearancePair> clearance_pairs(const PolyCurve& c);

// Half the doubled critical self-distance: minimum distance over
// non-adjacent edge pairs that are discrete local minima of the pairwise
// distance function, divided by 2. +infinity when no such pair exists.
// Throws GeometricError on a self-intersecting curve.
double strand_clearance(const PolyCurve& c);

// Exact minimum edge-pair distance between two curves, grid-pruned;
// bit-identical to the brute-force double loop.
double cross_clearance(const PolyCurve& c1, const PolyCurve& c2,
                       const SpatialGrid& grid);

double cross_clearance_brute(const PolyCurve& c1, const PolyCurve& c2);

ThicknessReport link_thickness(const ThickLink& link);

} // namespace gordian
