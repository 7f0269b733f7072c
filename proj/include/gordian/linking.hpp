#pragma once

#include "gordian/poly_curve.hpp"

namespace gordian {

// Integer linking number of two disjoint closed curves, computed from
// signed crossings of a generic planar projection and cross-validated
// against a second independent direction.
// Throws GeometricError if the curves intersect, GenericityError if no
// generic projection direction is found within the retry budget.
int linking_number(const PolyCurve& c1, const PolyCurve& c2);

// Signed-crossing count for one fixed projection direction; returns false
// if the direction is not generic for the pair. Exposed for tests.
bool linking_number_along(const PolyCurve& c1, const PolyCurve& c2,
                          const Vec3& dir, int& out);

} // namespace gordian
