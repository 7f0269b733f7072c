#include "gordian/construction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gordian/errors.hpp"
#include "gordian/knot_invariants.hpp"
#include "gordian/linking.hpp"

namespace gordian {

namespace {

constexpr double kRiserHeight = 2.5; // straight vertical run above A and B
constexpr double kArcGap = 4.0;      // gap between riser tops and the knot arc
constexpr double kBlendTangent = 1.5; // tangent scale keeping the blends gentle
constexpr double kCut = 0.35;        // parameter trimmed off the trefoil loop
constexpr double kZeroTol = 1e-12;
constexpr double kPerpTol = 1e-9;
constexpr double kThickTol = 1e-3;

// Stadium in z = 0: radius-r semicircles around (xr,0,0) and (xl,0,0) joined
// by straight chords at y = +-r. All n vertices sit on the two arcs; the
// straight parts are single edges, so they contribute no sag.
PolyCurve stadium(double xl, double xr, double r, std::size_t n) {
    if (xl >= xr) throw ValidationError("stadium centers out of order");
    const std::size_t mr = (n - 2) / 2; // right arc segments
    const std::size_t ml = (n - 2) - mr; // left arc segments
    PolyCurve c;
    c.closed = true;
    c.vertices.reserve(n);
    for (std::size_t k = 0; k <= mr; ++k) {
        if (k == 0) {
            c.vertices.push_back({xr, -r, 0.0});
        } else if (k == mr) {
            c.vertices.push_back({xr, r, 0.0});
        } else {
            const double th = -M_PI / 2 + M_PI * static_cast<double>(k) / mr;
            c.vertices.push_back({xr + r * std::cos(th), r * std::sin(th), 0.0});
        }
    }
    for (std::size_t k = 0; k <= ml; ++k) {
        if (k == 0) {
            c.vertices.push_back({xl, r, 0.0});
        } else if (k == ml) {
            c.vertices.push_back({xl, -r, 0.0});
        } else {
            const double th = M_PI / 2 + M_PI * static_cast<double>(k) / ml;
            c.vertices.push_back({xl + r * std::cos(th), r * std::sin(th), 0.0});
        }
    }
    return c;
}

Vec3 trefoil(double t) {
    return {std::sin(t) + 2.0 * std::sin(2.0 * t),
            std::cos(t) - 2.0 * std::cos(2.0 * t), -std::sin(3.0 * t)};
}

Vec3 trefoil_d(double t) {
    return {std::cos(t) + 4.0 * std::cos(2.0 * t),
            -std::sin(t) + 4.0 * std::sin(2.0 * t), -3.0 * std::cos(3.0 * t)};
}

// Reorient so the cut gap faces downward: (x, y, z) -> (x, -z, y).
Vec3 tilt(const Vec3& v) { return {v.x, -v.z, v.y}; }

Point3 hermite(const Point3& p0, const Vec3& m0, const Point3& p1,
               const Vec3& m1, double u) {
    const double u2 = u * u, u3 = u2 * u;
    return p0 * (2 * u3 - 3 * u2 + 1) + m0 * (u3 - 2 * u2 + u) +
           p1 * (-2 * u3 + 3 * u2) + m1 * (u3 - u2);
}

using ParamFn = std::function<Point3(double)>;

double piece_length(const ParamFn& f, std::size_t fine) {
    double len = 0.0;
    Point3 prev = f(0.0);
    for (std::size_t k = 1; k <= fine; ++k) {
        const Point3 cur = f(static_cast<double>(k) / fine);
        len += dist(prev, cur);
        prev = cur;
    }
    return len;
}

// Appends `count` samples of f, equally spaced in arclength, excluding f(0)
// (which is the last point already emitted by the previous piece).
void sample_piece(const ParamFn& f, std::size_t count, std::vector<Point3>& out) {
    const std::size_t fine = std::max<std::size_t>(256, 16 * count);
    std::vector<double> cum(fine + 1, 0.0);
    std::vector<Point3> pts(fine + 1);
    pts[0] = f(0.0);
    for (std::size_t k = 1; k <= fine; ++k) {
        pts[k] = f(static_cast<double>(k) / fine);
        cum[k] = cum[k - 1] + dist(pts[k - 1], pts[k]);
    }
    const double total = cum.back();
    std::size_t e = 0;
    for (std::size_t j = 1; j <= count; ++j) {
        if (j == count) {
            out.push_back(f(1.0));
            break;
        }
        const double s = total * static_cast<double>(j) / count;
        while (e + 1 < fine && cum[e + 1] <= s) ++e;
        const double seg = cum[e + 1] - cum[e];
        const double u =
            (static_cast<double>(e) + (seg > 0 ? (s - cum[e]) / seg : 0.0)) / fine;
        out.push_back(f(u));
    }
}

// Upper half of L2: riser from A, blend, scaled open-trefoil arc, blend,
// riser down to B. Open curve with m edges (m+1 vertices), A to B.
PolyCurve build_alpha(std::size_t m, double s) {
    const double t0 = M_PI + kCut, t1 = 3.0 * M_PI - kCut;
    double miny = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= 4000; ++k)
        miny = std::min(miny, trefoil(t0 + (t1 - t0) * k / 4000.0).y);
    const double zc = kRiserHeight + kArcGap - s * miny;

    auto arc = [&](double t) {
        Vec3 q = tilt(trefoil(t)) * s;
        q.z += zc;
        return q;
    };
    const Point3 A{1, 0, 0}, B{-1, 0, 0};
    const Point3 Pa{1, 0, kRiserHeight}, Pb{-1, 0, kRiserHeight};
    const Point3 E0 = arc(t0), E1 = arc(t1);
    const Vec3 T0 = normalized(tilt(trefoil_d(t0)));
    const Vec3 T1 = normalized(tilt(trefoil_d(t1)));
    const double tau0 = kBlendTangent * dist(Pa, E0);
    const double tau1 = kBlendTangent * dist(E1, Pb);

    const ParamFn f1 = [&](double u) { return A + (Pa - A) * u; };
    const ParamFn f2 = [&](double u) {
        return hermite(Pa, Vec3{0, 0, tau0}, E0, T0 * tau0, u);
    };
    const ParamFn f3 = [&](double u) { return arc(t0 + (t1 - t0) * u); };
    const ParamFn f4 = [&](double u) {
        return hermite(E1, T1 * tau1, Pb, Vec3{0, 0, -tau1}, u);
    };
    const ParamFn f5 = [&](double u) { return Pb + (B - Pb) * u; };

    const double L1p = kRiserHeight;
    const double L2p = piece_length(f2, 512);
    const double L3p = piece_length(f3, 2048);
    const double total = 2 * L1p + 2 * L2p + L3p;
    auto share = [&](double L) {
        return std::max<std::size_t>(4, static_cast<std::size_t>(
                                            std::llround(m * L / total)));
    };
    std::size_t n1 = share(L1p), n2 = share(L2p);
    if (2 * (n1 + n2) + 4 > m) throw ConstructionError("vertex budget too small");
    const std::size_t n3 = m - 2 * n1 - 2 * n2;

    PolyCurve alpha;
    alpha.closed = false;
    alpha.vertices.reserve(m + 1);
    alpha.vertices.push_back(A);
    sample_piece(f1, n1, alpha.vertices);
    sample_piece(f2, n2, alpha.vertices);
    sample_piece(f3, n3, alpha.vertices);
    sample_piece(f4, n2, alpha.vertices);
    sample_piece(f5, n1, alpha.vertices);
    return alpha;
}

// L2 = alpha welded to its reflection in z = 0, paired so vertex i mirrors
// vertex (n - i) mod n.
PolyCurve weld(const PolyCurve& alpha) {
    PolyCurve l2;
    l2.closed = true;
    l2.vertices = alpha.vertices;
    for (std::size_t i = alpha.vertices.size() - 1; i >= 2; --i) {
        Point3 v = alpha.vertices[i - 1];
        v.z = -v.z;
        l2.vertices.push_back(v);
    }
    return l2;
}

bool on_riser_line(const Point3& p) {
    return std::abs(p.y) < 1e-9 &&
           (std::abs(p.x - 1.0) < 1e-9 || std::abs(p.x + 1.0) < 1e-9);
}

// The risers and the start of each blend hug the vertical lines x = +-1,
// y = 0; opposite-corridor strands sit at tube tangency (distance 2), so
// they are held to that instead of the scaled clearance target.
bool in_corridor(const Point3& p) {
    return std::min(std::hypot(p.x - 1.0, p.y), std::hypot(p.x + 1.0, p.y)) < 0.25;
}

bool corridor_edge(const PolyCurve& c, std::size_t e) {
    return in_corridor(c.edge_a(e)) && in_corridor(c.edge_b(e));
}

bool l2_ok(const PolyCurve& l2, double clearance, std::string& why) {
    try {
        const double target_rad = 0.525 * clearance;
        if (min_radius_of_curvature(l2) < target_rad) {
            why = "bending radius below target";
            return false;
        }
        std::size_t zeros = 0;
        for (const auto& v : l2.vertices) {
            if (std::abs(v.z) <= kZeroTol) {
                ++zeros;
            } else if (!on_riser_line(v) && std::abs(v.z) < 2.2) {
                why = "knot arc dips toward the base plane";
                return false;
            }
        }
        if (zeros != 2) {
            why = "curve meets z = 0 away from A and B";
            return false;
        }
        for (const auto& pr : clearance_pairs(l2)) {
            const bool corridor = corridor_edge(l2, pr.i) && corridor_edge(l2, pr.j);
            const double need = corridor ? 2.0 - 1e-9 : 1.05 * clearance;
            if (pr.d < need) {
                why = "self-clearance below target";
                return false;
            }
        }
    } catch (const GeometricError&) {
        why = "self-intersecting candidate";
        return false;
    } catch (const DegenerateCurveError&) {
        why = "cusp in candidate";
        return false;
    }
    return true;
}

// Closed curve: the vertex path a..b (cyclic, inclusive); the implicit
// closing edge runs straight from vertex b back to vertex a.
PolyCurve close_path(const PolyCurve& c, std::size_t a, std::size_t b) {
    PolyCurve out;
    out.closed = true;
    const std::size_t n = c.vertices.size();
    for (std::size_t i = a;; i = (i + 1) % n) {
        out.vertices.push_back(c.vertices[i]);
        if (i == b) break;
    }
    return out;
}

double angle_to_z_axis(const Vec3& d) {
    const double n = norm(d);
    if (n == 0.0) return M_PI / 2;
    return std::acos(std::clamp(std::abs(d.z) / n, 0.0, 1.0));
}

} // namespace

void validate(const GordianSpec& spec) {
    if (spec.n1 < 64) throw ValidationError("n1 below resolution floor 64");
    if (spec.n2 < 128) throw ValidationError("n2 below resolution floor 128");
    if (spec.n2 % 2 != 0)
        throw ValidationError("n2 must be even (mirror-symmetric vertex pairing)");
    if (!std::isfinite(spec.clearance) || spec.clearance <= 0.0)
        throw ValidationError("clearance must be positive and finite");
    if (spec.knot_template != "trefoil-arc")
        throw ValidationError("unknown knot template: " + spec.knot_template);
}

double l1_smooth_length() { return 4.0 * M_PI + 4.0; }

PolyCurve build_l1(const GordianSpec& spec) {
    validate(spec);
    return stadium(-1.0, 1.0, 2.0, spec.n1);
}

PolyCurve build_l2(const GordianSpec& spec) {
    validate(spec);
    const std::size_t m = spec.n2 / 2;
    const std::size_t mred = std::min<std::size_t>(m, 384);
    std::string why = "no candidate scale tried";
    for (int k = 0; k < 32; ++k) {
        const double s = 0.8 * spec.clearance * std::pow(1.12, k);
        if (!l2_ok(weld(build_alpha(mred, s)), spec.clearance, why)) continue;
        const PolyCurve alpha = build_alpha(m, s);
        const PolyCurve l2 = weld(alpha);
        if (!l2_ok(l2, spec.clearance, why)) continue;
        PolyCurve closure = alpha;
        closure.closed = true; // closing edge is exactly AB
        if (determinant(project_generic(closure)) != 3)
            throw ConstructionError("knotted-arc template lost its knot type");
        return l2;
    }
    throw ConstructionError("no template scale met targets: " + why);
}

ConstructionReport validate_construction(const PolyCurve& l1, const PolyCurve& l2) {
    validate(l1);
    validate(l2);
    if (!l1.closed || !l2.closed)
        throw ValidationError("both link components must be closed");

    ConstructionReport rep;
    rep.l1_length = curve_length(l1);
    rep.l2_length = curve_length(l2);
    rep.thickness = link_thickness({{l1, l2}, 1.0});

    const std::size_t n = l2.vertices.size();
    std::vector<std::size_t> zi;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(l2.vertices[i].z) <= kZeroTol) zi.push_back(i);

    rep.perpendicularity_defect = std::numeric_limits<double>::infinity();
    rep.alpha_knotted = false;
    if (zi.size() == 2) {
        double defect = 0.0;
        for (std::size_t i : zi) {
            const Vec3 din = l2.vertices[i] - l2.vertices[(i + n - 1) % n];
            const Vec3 dout = l2.vertices[(i + 1) % n] - l2.vertices[i];
            defect = std::max({defect, angle_to_z_axis(din), angle_to_z_axis(dout)});
        }
        rep.perpendicularity_defect = defect;

        for (int side = 0; side < 2; ++side) {
            const PolyCurve half = side == 0 ? close_path(l2, zi[0], zi[1])
                                             : close_path(l2, zi[1], zi[0]);
            bool upper = true;
            for (std::size_t i = 1; i + 1 < half.vertices.size(); ++i)
                upper = upper && half.vertices[i].z > kZeroTol;
            if (upper) {
                rep.alpha_knotted =
                    certify_knotted(half).verdict == KnotCertificate::Verdict::knotted;
                break;
            }
        }
    }

    const int lk = linking_number(l1, l2);
    rep.conditions_ok = rep.alpha_knotted &&
                        rep.perpendicularity_defect < kPerpTol &&
                        rep.thickness.thickness >= 1.0 - kThickTol && lk == 0;
    return rep;
}

ThickLink gordian_link(const GordianSpec& spec) {
    return {{build_l1(spec), build_l2(spec)}, 1.0};
}

ThickLink clasp_link(std::size_t n) {
    if (n < 64) throw ValidationError("clasp resolution floor is 64");
    PolyCurve ring;
    ring.closed = true;
    for (std::size_t k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * static_cast<double>(k) / n;
        ring.vertices.push_back({0.0, 4.0 * std::cos(th), 4.0 * std::sin(th)});
    }
    // Flat loop threading the ring's disk twice, free to slide out toward +x.
    PolyCurve loop = stadium(-0.5, 6.5, 1.5, n);
    return {{ring, loop}, 1.0};
}

} // namespace gordian
