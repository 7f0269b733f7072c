#include "gordian/knot_invariants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "gordian/errors.hpp"

namespace gordian {

std::vector<int> PlanarDiagram::gauss_code() const {
    std::vector<int> code;
    code.reserve(passages.size());
    for (const auto& p : passages)
        code.push_back(p.over ? static_cast<int>(p.crossing) + 1
                              : -(static_cast<int>(p.crossing) + 1));
    return code;
}

namespace {

constexpr double kParamTol = 1e-9;

void projection_basis(const Vec3& dir, Vec3& e1, Vec3& e2) {
    const Vec3 seed = std::abs(dir.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = normalized(cross(dir, seed));
    e2 = cross(dir, e1);
}

} // namespace

PlanarDiagram project_to_diagram(const PolyCurve& c, const Vec3& dir) {
    validate(c);
    if (!c.closed) throw ValidationError("diagram requires a closed curve");
    PlanarDiagram d;
    d.projection_direction = normalized(dir);
    Vec3 e1, e2;
    projection_basis(d.projection_direction, e1, e2);
    const std::size_t n = c.vertices.size();
    d.polygon.reserve(n);
    for (const auto& v : c.vertices) d.polygon.push_back({dot(v, e1), dot(v, e2)});

    struct RawCross {
        std::size_t ei, ej;
        double ti, tj;
        Vec2 pos;
        double depth_i, depth_j;
    };
    std::vector<RawCross> raw;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p1 = d.polygon[i], p2 = d.polygon[(i + 1) % n];
        const Vec2 r = p2 - p1;
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t sep = std::min(j - i, n - (j - i));
            if (sep <= 1) continue; // adjacent edges share a projected vertex
            const Vec2 q1 = d.polygon[j], q2 = d.polygon[(j + 1) % n];
            const Vec2 s = q2 - q1;
            const double denom = cross2(r, s);
            const double scale = norm2d(r) * norm2d(s);
            const Vec2 w = q1 - p1;
            if (std::abs(denom) < 1e-12 * scale) {
                if (std::abs(cross2(r, w)) <
                    kParamTol * norm2d(r) * (norm2d(w) + norm2d(s))) {
                    // Same projected line: offending only if the parameter
                    // intervals genuinely overlap (disjoint collinear runs
                    // along a straight 3D section are fine).
                    const double a0 = dot2(w, r), a1 = a0 + dot2(s, r);
                    const double lo = std::min(a0, a1), hi = std::max(a0, a1);
                    const double rr = dot2(r, r);
                    if (hi > kParamTol * rr && lo < (1.0 - kParamTol) * rr)
                        throw GenericityError("projected edges nearly collinear");
                }
                continue;
            }
            const double t = cross2(w, s) / denom;
            const double u = cross2(w, r) / denom;
            if (t < -kParamTol || t > 1 + kParamTol || u < -kParamTol || u > 1 + kParamTol)
                continue;
            if (t < kParamTol || t > 1 - kParamTol || u < kParamTol || u > 1 - kParamTol)
                throw GenericityError("crossing at a projected vertex");
            if (std::abs(denom) < 1e-6 * scale)
                throw GenericityError("near-tangent crossing");
            const Point3 a = c.edge_a(i) + (c.edge_b(i) - c.edge_a(i)) * t;
            const Point3 b = c.edge_a(j) + (c.edge_b(j) - c.edge_a(j)) * u;
            const double di = dot(a, d.projection_direction);
            const double dj = dot(b, d.projection_direction);
            if (std::abs(di - dj) < 1e-12) throw GeometricError("curve self-intersects");
            if (std::abs(di - dj) < 1e-9) throw GenericityError("depth tie at crossing");
            raw.push_back({i, j, t, u, p1 + r * t, di, dj});
        }
    }
    for (std::size_t a = 0; a < raw.size(); ++a)
        for (std::size_t b = a + 1; b < raw.size(); ++b)
            if (norm2d(raw[a].pos - raw[b].pos) < kParamTol)
                throw GenericityError("triple point in projection");

    // Order the 2c passages along the curve.
    struct Visit {
        std::size_t edge;
        double t;
        std::size_t raw_id;
        bool first; // first strand (ei) of the raw crossing
    };
    std::vector<Visit> visits;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        visits.push_back({raw[k].ei, raw[k].ti, k, true});
        visits.push_back({raw[k].ej, raw[k].tj, k, false});
    }
    std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) {
        return a.edge != b.edge ? a.edge < b.edge : a.t < b.t;
    });

    d.crossings.resize(raw.size());
    std::vector<std::size_t> first_passage(raw.size()), second_passage(raw.size());
    for (std::size_t p = 0; p < visits.size(); ++p) {
        const auto& v = visits[p];
        const bool over = v.first ? raw[v.raw_id].depth_i > raw[v.raw_id].depth_j
                                  : raw[v.raw_id].depth_j > raw[v.raw_id].depth_i;
        d.passages.push_back({v.edge, v.t, v.raw_id, over});
        (v.first ? first_passage : second_passage)[v.raw_id] = p;
    }
    for (std::size_t k = 0; k < raw.size(); ++k) {
        auto& cr = d.crossings[k];
        cr.pos = raw[k].pos;
        const bool first_over = raw[k].depth_i > raw[k].depth_j;
        cr.over_passage = first_over ? first_passage[k] : second_passage[k];
        cr.under_passage = first_over ? second_passage[k] : first_passage[k];
        const Vec2 du = d.polygon[(raw[k].ei + 1) % n] - d.polygon[raw[k].ei];
        const Vec2 dv = d.polygon[(raw[k].ej + 1) % n] - d.polygon[raw[k].ej];
        const double cr_sign = first_over ? cross2(du, dv) : cross2(dv, du);
        cr.sign = cr_sign > 0 ? 1 : -1;
    }
    return d;
}

PlanarDiagram project_generic(const PolyCurve& c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec3 dir{unit(rng), unit(rng), unit(rng)};
        const double nn = norm(dir);
        if (nn < 0.1) continue;
        try {
            return project_to_diagram(c, dir / nn);
        } catch (const GenericityError&) {
            continue;
        }
    }
    throw GenericityError("no generic projection direction found");
}

namespace {

// Combinatorial map of the 4-valent projected diagram. Arc k runs from
// passage k to passage k+1; half-edge 2k is the forward direction, 2k+1 the
// reverse.
struct DiagramMap {
    std::size_t n_arcs = 0;
    std::vector<std::size_t> face_of;          // per half-edge
    std::size_t n_faces = 0;
    std::vector<int> face_color;               // 0/1 checkerboard
    std::size_t outer_face = 0;
    // Outgoing half-edge at a crossing pointing along +/- the under or over
    // strand direction; filled during construction.
    struct AtCrossing {
        std::size_t out_along[4]; // half-edges along +u, -u, +v, -v
        Vec2 u, v;                // under, over strand directions
    };
    std::vector<AtCrossing> at;
};

Vec2 normalized2(const Vec2& v) {
    const double nn = norm2d(v);
    return {v.x / nn, v.y / nn};
}

DiagramMap build_map(const PlanarDiagram& d) {
    const std::size_t c = d.crossings.size();
    DiagramMap m;
    m.n_arcs = 2 * c;
    const std::size_t n = d.polygon.size();
    const std::size_t nh = 4 * c;

    // head crossing and arrival direction of each half-edge
    std::vector<std::size_t> head(nh);
    std::vector<Vec2> out_dir(nh); // direction leaving head(twin) ... see below
    // Half-edge 2k (forward): tail = crossing of passage k, head = crossing of
    // passage k+1. Its reverse 2k+1 leaves the head backwards.
    auto passage_dir = [&](std::size_t p) {
        const auto& ps = d.passages[p];
        return normalized2(d.polygon[(ps.edge + 1) % n] - d.polygon[ps.edge]);
    };
    const std::size_t np = d.passages.size();
    // outgoing half-edges at each crossing with their directions
    std::vector<std::vector<std::pair<double, std::size_t>>> rotation(c);
    for (std::size_t k = 0; k < np; ++k) {
        const std::size_t arc = k; // starts at passage k
        const std::size_t prev_arc = (k + np - 1) % np;
        const std::size_t cr = d.passages[k].crossing;
        const Vec2 dirk = passage_dir(k);
        // forward half-edge of arc k leaves this crossing along the strand
        rotation[cr].push_back({std::atan2(dirk.y, dirk.x), 2 * arc});
        // reverse half-edge of the previous arc leaves it backwards
        const Vec2 back = Vec2{0, 0} - passage_dir(k);
        rotation[cr].push_back({std::atan2(back.y, back.x), 2 * prev_arc + 1});
        head[2 * prev_arc] = cr;     // forward arc prev ends here
        head[2 * arc + 1] = cr;      // reverse of arc k ends here too
    }
    for (auto& rot : rotation) std::sort(rot.begin(), rot.end());

    auto twin = [](std::size_t h) { return h ^ 1ull; };
    // next(h): at head(h), step one position clockwise from twin(h)
    std::vector<std::size_t> nexth(nh);
    for (std::size_t h = 0; h < nh; ++h) {
        const std::size_t v = head[h];
        const auto& rot = rotation[v];
        std::size_t idx = 0;
        for (std::size_t i = 0; i < rot.size(); ++i)
            if (rot[i].second == twin(h)) idx = i;
        nexth[h] = rot[(idx + rot.size() - 1) % rot.size()].second;
    }

    m.face_of.assign(nh, SIZE_MAX);
    for (std::size_t h = 0; h < nh; ++h) {
        if (m.face_of[h] != SIZE_MAX) continue;
        std::size_t cur = h;
        do {
            m.face_of[cur] = m.n_faces;
            cur = nexth[cur];
        } while (cur != h);
        ++m.n_faces;
    }
    if (c > 0 && m.n_faces != c + 2)
        throw DiagramError("face count inconsistent with Euler formula");

    // checkerboard coloring across arcs
    m.face_color.assign(m.n_faces, -1);
    std::vector<std::size_t> stack{m.face_of[0]};
    m.face_color[m.face_of[0]] = 0;
    while (!stack.empty()) {
        const std::size_t f = stack.back();
        stack.pop_back();
        for (std::size_t a = 0; a < m.n_arcs; ++a) {
            const std::size_t f1 = m.face_of[2 * a], f2 = m.face_of[2 * a + 1];
            if (f1 != f && f2 != f) continue;
            const std::size_t g = f1 == f ? f2 : f1;
            if (m.face_color[g] == -1) {
                m.face_color[g] = 1 - m.face_color[f];
                stack.push_back(g);
            } else if (m.face_color[g] == m.face_color[f]) {
                throw DiagramError("diagram is not checkerboard colorable");
            }
        }
    }

    // outer face: most negative signed area of the traced arc polylines
    std::vector<double> area(m.n_faces, 0.0);
    for (std::size_t a = 0; a < m.n_arcs; ++a) {
        // geometric polyline of arc a: crossing pos -> edge points -> crossing pos
        const auto& p0 = d.passages[a];
        const auto& p1 = d.passages[(a + 1) % np];
        std::vector<Vec2> pts;
        pts.push_back(d.crossings[p0.crossing].pos);
        for (std::size_t e = p0.edge; e != p1.edge; e = (e + 1) % n)
            pts.push_back(d.polygon[(e + 1) % n]);
        pts.push_back(d.crossings[p1.crossing].pos);
        double fwd = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            fwd += cross2(pts[i], pts[i + 1]);
        area[m.face_of[2 * a]] += fwd;
        area[m.face_of[2 * a + 1]] -= fwd;
    }
    m.outer_face = static_cast<std::size_t>(
        std::min_element(area.begin(), area.end()) - area.begin());

    // per-crossing outgoing half-edges along the strand directions
    m.at.resize(c);
    for (std::size_t k = 0; k < np; ++k) {
        const std::size_t cr = d.passages[k].crossing;
        const Vec2 dirk = passage_dir(k);
        const std::size_t fwd_out = 2 * k;
        const std::size_t rev_out = 2 * ((k + np - 1) % np) + 1;
        const bool under = !d.passages[k].over;
        auto& a = m.at[cr];
        if (under) {
            a.u = dirk;
            a.out_along[0] = fwd_out;
            a.out_along[1] = rev_out;
        } else {
            a.v = dirk;
            a.out_along[2] = fwd_out;
            a.out_along[3] = rev_out;
        }
    }
    return m;
}

std::uint64_t integer_abs_det(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    long double det = 1.0L;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-12) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
        }
    }
    return static_cast<std::uint64_t>(std::llround(std::abs(static_cast<double>(det))));
}

} // namespace

std::uint64_t determinant(const PlanarDiagram& d) {
    if (d.crossings.empty()) return 1;
    const DiagramMap m = build_map(d);

    const int white = m.face_color[m.outer_face];
    std::vector<std::size_t> white_index(m.n_faces, SIZE_MAX);
    std::vector<std::size_t> white_faces;
    for (std::size_t f = 0; f < m.n_faces; ++f)
        if (m.face_color[f] == white) {
            white_index[f] = white_faces.size();
            white_faces.push_back(f);
        }

    const std::size_t W = white_faces.size();
    std::vector<std::vector<double>> G(W, std::vector<double>(W, 0.0));
    for (std::size_t k = 0; k < d.crossings.size(); ++k) {
        const auto& a = m.at[k];
        // Rotate the under line CCW onto the over line through the angle in
        // (0, pi); eta is +1 when the swept quadrant pair is shaded. With
        // u0 = sign(u x v) * u, the CCW sector order at the crossing is
        // u0, v, -u0, -v; the swept pair is the sectors after u0 and -u0.
        const double s = cross2(a.u, a.v);
        const std::size_t outS1 = s > 0 ? a.out_along[0] : a.out_along[1];
        const std::size_t outS2 = a.out_along[2];
        const std::size_t outS3 = s > 0 ? a.out_along[1] : a.out_along[0];
        const std::size_t outS4 = a.out_along[3];
        const std::size_t S1 = m.face_of[outS1], S2 = m.face_of[outS2];
        const std::size_t S3 = m.face_of[outS3], S4 = m.face_of[outS4];
        const bool swept_shaded = m.face_color[S1] != white;
        const int eta = swept_shaded ? 1 : -1;
        const std::size_t f1 = swept_shaded ? S2 : S1;
        const std::size_t f2 = swept_shaded ? S4 : S3;
        const std::size_t i = white_index[f1], j = white_index[f2];
        if (i == SIZE_MAX || j == SIZE_MAX)
            throw DiagramError("white face bookkeeping failed");
        if (i != j) {
            G[i][j] -= eta;
            G[j][i] -= eta;
            G[i][i] += eta;
            G[j][j] += eta;
        }
    }

    // delete the outer face's row and column
    const std::size_t del = white_index[m.outer_face];
    std::vector<std::vector<double>> R;
    for (std::size_t i = 0; i < W; ++i) {
        if (i == del) continue;
        std::vector<double> row;
        for (std::size_t j = 0; j < W; ++j)
            if (j != del) row.push_back(G[i][j]);
        R.push_back(std::move(row));
    }
    return integer_abs_det(std::move(R));
}

KnotCertificate certify_knotted(const PolyCurve& c) {
    const PlanarDiagram d = project_generic(c);
    KnotCertificate cert;
    cert.determinant = determinant(d);
    cert.verdict = cert.determinant != 1 ? KnotCertificate::Verdict::knotted
                                         : KnotCertificate::Verdict::inconclusive;
    return cert;
}

} // namespace gordian
