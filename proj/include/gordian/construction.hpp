#pragma once

#include <string>

#include "gordian/poly_curve.hpp"
#include "gordian/thickness.hpp"

namespace gordian {

// Parameters of the two-component candidate link. L1 is the boundary of the
// radius-2 neighborhood of the segment AB (A = (1,0,0), B = (-1,0,0)) in the
// plane z = 0; L2 is a knotted arc in z >= 0 welded to its own mirror image.
struct GordianSpec {
    std::size_t n1 = 4096;
    std::size_t n2 = 4096;
    double clearance = 2.0;
    std::string knot_template = "trefoil-arc";
};

void validate(const GordianSpec& spec);

struct ConstructionReport {
    double l1_length = 0.0;
    double l2_length = 0.0;
    ThicknessReport thickness;
    bool alpha_knotted = false;
    double perpendicularity_defect = 0.0;
    bool conditions_ok = false;
};

// Stadium curve: two radius-2 semicircles around A and B joined by straight
// segments at y = +-2, discretized with n1 vertices, z = 0 exactly.
PolyCurve build_l1(const GordianSpec& spec);

// Exact length of the smooth stadium model, 4*pi + 4.
double l1_smooth_length();

// Mirror-symmetric closed curve through A and B: vertical risers, a scaled
// open-trefoil arc overhead, and the reflection of that half in z = 0.
// Throws ConstructionError when no template scale meets the clearance and
// bending targets.
PolyCurve build_l2(const GordianSpec& spec);

// Checks the three defining conditions: the upper arc closed by AB is
// knotted, the plane crossings are perpendicular, and the radius-1 tube
// around both curves is embedded (thickness >= 1 within tolerance, zero
// linking number).
ConstructionReport validate_construction(const PolyCurve& l1, const PolyCurve& l2);

ThickLink gordian_link(const GordianSpec& spec);

// Control configuration for the splitting engine: a round circle clasped
// loosely by a flat stadium loop threaded through it, open toward +x.
// Splittable by a rigid translation, so a working engine must separate it.
ThickLink clasp_link(std::size_t n = 256);

} // namespace gordian
