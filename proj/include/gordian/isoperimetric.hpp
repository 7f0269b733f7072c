#pragma once

#include <cstdint>
#include <vector>

#include "gordian/vec3.hpp"

namespace gordian {

struct DiskConfig {
    std::vector<Vec2> centers;
    double disk_radius = 1.0;
    double margin = 1.0; // required distance from the enclosing curve to each disk
};

struct BoundMargin {
    double bound = 0.0;    // lower bound on the enclosing length
    double achieved = 0.0; // length of the minimal admissible enclosing curve
    double margin = 0.0;   // achieved - bound
};

// Perimeter of the offset-R parallel body of the convex hull of the centers:
// hull perimeter + 2*pi*offset. This is the minimal enclosing curve keeping
// distance >= offset from every center.
double parallel_body_length(const std::vector<Vec2>& centers, double offset);

// Convex hull perimeter (monotone chain); collinear/duplicate safe.
double hull_perimeter(const std::vector<Vec2>& points);

// True if every point is a vertex of the convex hull of the set.
bool in_convex_position(const std::vector<Vec2>& points);

// Three unit disks with disjoint interiors, enclosing-curve bound 4*pi + 6.
BoundMargin verify_three_disk_bound(const DiskConfig& cfg);

// n >= 2 disks with centers in convex position, bound 4*pi + 2n.
BoundMargin verify_n_disk_bound(const DiskConfig& cfg);

// Seeded sweep over random valid 3-disk configurations. Deterministic given
// (trials, seed): trial k draws from seed + k. Also records the sampled
// pairwise distances for CSV export.
struct SweepRow {
    std::uint64_t trial;
    double d12, d13, d23;
    BoundMargin bm;
};
std::vector<SweepRow> sample_and_sweep(std::uint64_t trials, std::uint64_t seed);

} // namespace gordian
