#pragma once

#include <cstdint>
#include <vector>

#include "gordian/poly_curve.hpp"

namespace gordian {

// Knot diagram from a generic planar projection of one closed curve.
// Passages are the 2c visits to the c crossings, ordered along the curve;
// the arc between passage k and passage k+1 (cyclic) is arc k.
struct PlanarDiagram {
    Vec3 projection_direction;
    std::vector<Vec2> polygon; // projected vertices

    struct Passage {
        std::size_t edge;     // polygon edge carrying this visit
        double t;             // parameter along the edge
        std::size_t crossing; // crossing id
        bool over;
    };
    std::vector<Passage> passages; // sorted along the curve

    struct Crossing {
        Vec2 pos;
        std::size_t over_passage;  // index into passages
        std::size_t under_passage; // index into passages
        int sign;                  // orientation sign of the crossing
    };
    std::vector<Crossing> crossings;

    // Signed Gauss code: +(id+1) on an over passage, -(id+1) on an under one.
    std::vector<int> gauss_code() const;
};

struct KnotCertificate {
    std::uint64_t determinant = 1;
    enum class Verdict { knotted, inconclusive } verdict = Verdict::inconclusive;
};

// Builds the diagram along one fixed direction. Throws GenericityError when
// the direction is not generic (endpoint incidences, triple points, tangent
// crossings, depth ties) and GeometricError if the curve self-intersects.
PlanarDiagram project_to_diagram(const PolyCurve& c, const Vec3& dir);

// Retries seeded random directions until one is generic.
PlanarDiagram project_generic(const PolyCurve& c, std::uint64_t seed = 7);

// Knot determinant |det Goeritz| from a checkerboard coloring of the diagram.
std::uint64_t determinant(const PlanarDiagram& d);

// Determinant over a generic projection; "knotted" iff determinant != 1.
// Never claims "unknotted".
KnotCertificate certify_knotted(const PolyCurve& c);

} // namespace gordian
