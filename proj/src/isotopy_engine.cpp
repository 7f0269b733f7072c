#include "gordian/isotopy_engine.hpp"

#include <algorithm>
#include <cmath>

#include "gordian/cone_disk.hpp"
#include "gordian/errors.hpp"

namespace gordian {

namespace {

constexpr double kLengthTol = 1e-6;   // relative edge-length drift budget
constexpr double kShakeTarget = 1e-9; // projection convergence target

struct NearPair {
    std::size_t ci, ei, cj, ej;
    double d;
};

void closest_params(const Point3& a1, const Point3& b1, const Point3& a2,
                    const Point3& b2, double& s, double& t) {
    const Vec3 d1 = b1 - a1, d2 = b2 - a2;
    const double L1 = norm2(d1), L2 = norm2(d2);
    const Vec3 r = a1 - a2;
    const double b = dot(d1, d2), c = dot(d1, r), e = dot(d2, r);
    const double den = L1 * L2 - b * b;
    s = den > 1e-14 * L1 * L2 ? std::clamp((b * e - c * L2) / den, 0.0, 1.0) : 0.0;
    t = (b * s + e) / L2;
    if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / L1, 0.0, 1.0);
    } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / L1, 0.0, 1.0);
    }
}

std::vector<double> edge_lengths(const PolyCurve& c) {
    std::vector<double> out(c.edge_count());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = dist(c.edge_a(i), c.edge_b(i));
    return out;
}

double max_edge_rel_error(const SimState& s) {
    double worst = 0.0;
    for (std::size_t ci = 0; ci < s.link.components.size(); ++ci) {
        const PolyCurve& c = s.link.components[ci];
        for (std::size_t e = 0; e < c.edge_count(); ++e) {
            const double ref = s.reference_edge_lengths[ci][e];
            worst = std::max(worst, std::abs(dist(c.edge_a(e), c.edge_b(e)) - ref) / ref);
        }
    }
    return worst;
}

// Solve the symmetric cyclic tridiagonal system A x = b in place, where
// diag[i] is A(i,i) and off[i] couples i with (i+1) mod n. Thomas algorithm
// plus a Sherman-Morrison correction for the corner entries. Returns false
// on a vanishing pivot.
bool solve_cyclic_tridiag(std::vector<double> diag, std::vector<double> off,
                          std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = diag.size();
    if (n < 3) return false;
    const double gamma = -diag[0];
    const double corner = off[n - 1];
    diag[0] -= gamma;
    diag[n - 1] -= corner * corner / gamma;

    auto thomas = [&](const std::vector<double>& rhs, std::vector<double>& out) {
        std::vector<double> cp(n, 0.0), dp(n, 0.0);
        double piv = diag[0];
        if (std::abs(piv) < 1e-30) return false;
        cp[0] = off[0] / piv;
        dp[0] = rhs[0] / piv;
        for (std::size_t i = 1; i < n; ++i) {
            piv = diag[i] - off[i - 1] * cp[i - 1];
            if (std::abs(piv) < 1e-30) return false;
            if (i + 1 < n) cp[i] = off[i] / piv;
            dp[i] = (rhs[i] - off[i - 1] * dp[i - 1]) / piv;
        }
        out.resize(n);
        out[n - 1] = dp[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) out[i] = dp[i] - cp[i] * out[i + 1];
        return true;
    };

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = corner;
    std::vector<double> y, z;
    if (!thomas(b, y) || !thomas(u, z)) return false;
    const double vy = y[0] + corner / gamma * y[n - 1];
    const double vz = z[0] + corner / gamma * z[n - 1];
    if (std::abs(1.0 + vz) < 1e-30) return false;
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - z[i] * vy / (1.0 + vz);
    return true;
}

// Newton projection of a closed curve onto its reference edge lengths.
// Constraints C_e = |d_e|^2 - ref_e^2 with d_e = v_{e+1} - v_e; each Newton
// step solves (J J^T) lambda = -C, which is cyclic tridiagonal because
// consecutive edges share exactly one vertex. Returns true once the worst
// relative length error is at the target.
bool project_lengths(PolyCurve& c, const std::vector<double>& ref, int max_newton) {
    const std::size_t n = c.vertices.size();
    if (n < 3 || ref.size() != n) return false;
    std::vector<Vec3> d(n);
    std::vector<double> diag(n), off(n), rhs(n), lambda;
    for (int it = 0; it < max_newton; ++it) {
        double worst = 0.0;
        for (std::size_t e = 0; e < n; ++e) {
            d[e] = c.vertices[(e + 1) % n] - c.vertices[e];
            const double len = norm(d[e]);
            worst = std::max(worst, std::abs(len - ref[e]) / ref[e]);
            rhs[e] = -(norm2(d[e]) - ref[e] * ref[e]);
        }
        if (worst <= kShakeTarget) return true;
        for (std::size_t e = 0; e < n; ++e) {
            diag[e] = 8.0 * norm2(d[e]);
            off[e] = -4.0 * dot(d[e], d[(e + 1) % n]);
        }
        if (!solve_cyclic_tridiag(diag, off, rhs, lambda)) return false;
        for (std::size_t e = 0; e < n; ++e) {
            const Vec3 dv = d[e] * (2.0 * lambda[e]);
            c.vertices[e] -= dv;
            c.vertices[(e + 1) % n] += dv;
        }
    }
    return false;
}

bool project_lengths(SimState& s, int max_newton) {
    for (std::size_t ci = 0; ci < s.link.components.size(); ++ci)
        if (!project_lengths(s.link.components[ci], s.reference_edge_lengths[ci],
                             max_newton))
            return false;
    return true;
}

// Cyclic arclength gap between two edges of the same component, measured
// between their nearest endpoints along the curve.
double arc_gap(const std::vector<double>& prefix, double total, std::size_t ei,
               std::size_t ej) {
    if (ei > ej) std::swap(ei, ej);
    const double fwd = prefix[ej] - prefix[ei + 1];
    const double bwd = total - (prefix[ej + 1] - prefix[ei]);
    return std::max(0.0, std::min(fwd, bwd));
}

std::vector<NearPair> near_pairs(const ThickLink& link, double dmin) {
    const double r = link.radius;
    std::vector<const PolyCurve*> ptrs;
    for (const auto& c : link.components) ptrs.push_back(&c);
    SpatialGrid grid(ptrs, 2.0 * r);

    // Per-component cumulative edge lengths for the local-window skip.
    std::vector<std::vector<double>> prefix(link.components.size());
    std::vector<double> totals(link.components.size());
    for (std::size_t ci = 0; ci < link.components.size(); ++ci) {
        const auto lens = edge_lengths(link.components[ci]);
        prefix[ci].assign(lens.size() + 1, 0.0);
        for (std::size_t e = 0; e < lens.size(); ++e)
            prefix[ci][e + 1] = prefix[ci][e] + lens[e];
        totals[ci] = prefix[ci].back();
    }
    const double window = M_PI * r;

    std::vector<NearPair> out;
    for (std::size_t ci = 0; ci < link.components.size(); ++ci) {
        const PolyCurve& c = link.components[ci];
        for (std::size_t ei = 0; ei < c.edge_count(); ++ei) {
            const Point3 a = c.edge_a(ei), b = c.edge_b(ei);
            const Point3 lo{std::min(a.x, b.x) - dmin, std::min(a.y, b.y) - dmin,
                            std::min(a.z, b.z) - dmin};
            const Point3 hi{std::max(a.x, b.x) + dmin, std::max(a.y, b.y) + dmin,
                            std::max(a.z, b.z) + dmin};
            for (const auto& ref : grid.query_box(lo, hi)) {
                if (ref.component < ci || (ref.component == ci && ref.edge <= ei))
                    continue;
                if (ref.component == ci &&
                    arc_gap(prefix[ci], totals[ci], ei, ref.edge) <= window)
                    continue;
                const PolyCurve& c2 = link.components[ref.component];
                const double d = segment_distance(a, b, c2.edge_a(ref.edge),
                                                  c2.edge_b(ref.edge));
                if (d < dmin) out.push_back({ci, ei, ref.component, ref.edge, d});
            }
        }
    }
    return out;
}

// Verlet-style candidate cache: near_pairs with a wide horizon stays a
// superset of every pair that can reach the contact floor until some vertex
// has moved half the slack, so the expensive grid pass runs only then.
struct PairCache {
    std::vector<NearPair> pairs;
    std::vector<std::vector<Point3>> snapshot;
    bool valid = false;
};

constexpr double kCacheSlack = 0.1; // horizon margin above the contact floor

double max_displacement(const PairCache& cache, const ThickLink& link) {
    double worst = 0.0;
    for (std::size_t ci = 0; ci < link.components.size(); ++ci)
        for (std::size_t i = 0; i < link.components[ci].vertices.size(); ++i)
            worst = std::max(worst, dist(link.components[ci].vertices[i],
                                         cache.snapshot[ci][i]));
    return worst;
}

void ensure_cache(PairCache& cache, const ThickLink& link, double dmin) {
    if (cache.valid && max_displacement(cache, link) < 0.5 * kCacheSlack * 0.9)
        return;
    cache.pairs = near_pairs(link, dmin + kCacheSlack);
    cache.snapshot.clear();
    for (const auto& c : link.components) cache.snapshot.push_back(c.vertices);
    cache.valid = true;
}

void symmetrize(SimState& s) {
    // Component 1 is the in-plane component: its mirror image is itself.
    for (auto& v : s.link.components[0].vertices) v.z = 0.0;
    // Component 2 pairs vertex i with vertex (n - i) mod n under z -> -z.
    PolyCurve& c = s.link.components[1];
    const std::size_t n = c.vertices.size();
    for (std::size_t i = 0; i <= n - i; ++i) {
        const std::size_t j = (n - i) % n;
        if (i == j) {
            c.vertices[i].z = 0.0;
            continue;
        }
        Point3& p = c.vertices[i];
        Point3& q = c.vertices[j];
        const Point3 np{0.5 * (p.x + q.x), 0.5 * (p.y + q.y), 0.5 * (p.z - q.z)};
        p = np;
        q = {np.x, np.y, -np.z};
    }
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Local straightening: nudge any vertex whose discrete bending radius is
// below the target toward the midpoint of its neighbors. Contact pushes
// act on single vertices and would otherwise accumulate into kinks.
void relieve_curvature(PolyCurve& c, double rtarget, int max_sweeps) {
    const std::size_t n = c.vertices.size();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool dirty = false;
        for (std::size_t i = 0; i < n; ++i) {
            const Point3& prev = c.vertices[(i + n - 1) % n];
            const Point3& next = c.vertices[(i + 1) % n];
            Point3& v = c.vertices[i];
            const Vec3 din = v - prev, dout = next - v;
            const double phi = std::atan2(norm(cross(din, dout)), dot(din, dout));
            if (phi < 1e-15) continue;
            const double rad =
                std::min(norm(din), norm(dout)) / (2.0 * std::tan(phi / 2.0));
            if (rad >= rtarget) continue;
            dirty = true;
            v += ((prev + next) * 0.5 - v) * 0.3;
        }
        if (!dirty) break;
    }
}

bool min_radius_ok(const ThickLink& link, double rtarget) {
    try {
        for (const auto& c : link.components)
            if (min_radius_of_curvature(c) < rtarget - 1e-9) return false;
    } catch (const Error&) {
        return false;
    }
    return true;
}

bool try_step(const SimState& s, const EngineConfig& cfg, double dt, PairCache& cache,
              SimState& out) {
    out = s;
    out.step_index = s.step_index + 1;
    out.time_stamp = s.time_stamp + dt;
    const double r = out.link.radius;
    const double dmin = 2.0 * r * (1.0 - cfg.epsilon);
    const bool mirror = cfg.force.mode == "mirror_z";

    // (a) splitting force on component 2; soft well holding component 1.
    PolyCurve& moving = out.link.components[1];
    if (mirror) {
        for (auto& v : moving.vertices)
            v.z += sgn(v.z) * dt * cfg.force.magnitude;
        const double pull = std::min(1.0, 0.5 * dt);
        PolyCurve& held = out.link.components[0];
        for (std::size_t i = 0; i < held.vertices.size(); ++i)
            held.vertices[i] += (out.rest[0].vertices[i] - held.vertices[i]) * pull;
    } else {
        const Vec3 dir = normalized(cfg.force.direction);
        for (auto& v : moving.vertices) v += dir * (dt * cfg.force.magnitude);
    }

    // (b)+(c) alternate between contact resolution and the symmetry/length
    // projections until a state satisfying all of them is found. Contacts
    // are pushed slightly past the floor so the projections, whose
    // corrections are much smaller than that cushion, cannot drop them
    // back under it. Candidate pairs are gathered once per round with a
    // slack horizon; the sweeps then only recompute those distances.
    const double dpush = dmin * (1.0 + 2e-3);
    const double active_cushion = 0.02;
    auto pair_distance = [&](const NearPair& p) {
        const PolyCurve& c1 = out.link.components[p.ci];
        const PolyCurve& c2 = out.link.components[p.cj];
        return segment_distance(c1.edge_a(p.ei), c1.edge_b(p.ei), c2.edge_a(p.ej),
                                c2.edge_b(p.ej));
    };
    auto candidate_min = [&](const std::vector<NearPair>& cand) {
        double w = std::numeric_limits<double>::infinity();
        for (const auto& p : cand) w = std::min(w, pair_distance(p));
        return w;
    };
    std::vector<NearPair> active;
    std::vector<std::vector<Point3>> round_start;
    bool clean = false;
    for (int round = 0; round < cfg.overlap_iterations && !clean; ++round) {
        ensure_cache(cache, out.link, dmin);
        const auto& cand = cache.pairs;
        // Only pairs already near the floor can reach it this round; the
        // rest are certified afterwards by the in-round displacement bound.
        active.clear();
        for (const auto& p : cand)
            if (pair_distance(p) < dmin + active_cushion) active.push_back(p);
        round_start.clear();
        for (const auto& c : out.link.components) round_start.push_back(c.vertices);
        for (int sweep = 0; sweep < 60; ++sweep) {
            bool dirty = false;
            for (const auto& p : active) {
                PolyCurve& c1 = out.link.components[p.ci];
                PolyCurve& c2 = out.link.components[p.cj];
                const double d = segment_distance(c1.edge_a(p.ei), c1.edge_b(p.ei),
                                                  c2.edge_a(p.ej), c2.edge_b(p.ej));
                if (d >= dmin) continue;
                if (d < 1e-12) return false;
                dirty = true;
                const std::size_t n1 = c1.vertices.size(), n2 = c2.vertices.size();
                double u, v;
                closest_params(c1.edge_a(p.ei), c1.edge_b(p.ei), c2.edge_a(p.ej),
                               c2.edge_b(p.ej), u, v);
                const Point3 cp1 =
                    c1.edge_a(p.ei) + (c1.edge_b(p.ei) - c1.edge_a(p.ei)) * u;
                const Point3 cp2 =
                    c2.edge_a(p.ej) + (c2.edge_b(p.ej) - c2.edge_a(p.ej)) * v;
                const Vec3 push = (cp1 - cp2) * (0.5 * (dpush - d) / d);
                c1.vertices[p.ei] += push * (1.0 - u);
                c1.vertices[(p.ei + 1) % n1] += push * u;
                c2.vertices[p.ej] -= push * (1.0 - v);
                c2.vertices[(p.ej + 1) % n2] -= push * v;
            }
            if (!dirty) break;
        }
        const double rtarget = r * (1.0 - cfg.epsilon);
        for (auto& c : out.link.components)
            relieve_curvature(c, rtarget * (1.0 + 1e-4), 20);
        // Projection preserves both symmetries: a planar curve has planar
        // constraint gradients, and the mirror maps the edge set of
        // component 2 onto itself with equal reference lengths.
        if (mirror) symmetrize(out);
        if (!project_lengths(out, cfg.shake_iterations)) return false;
        double moved = 0.0;
        for (std::size_t ci = 0; ci < out.link.components.size(); ++ci)
            for (std::size_t i = 0; i < out.link.components[ci].vertices.size(); ++i)
                moved = std::max(moved, dist(out.link.components[ci].vertices[i],
                                             round_start[ci][i]));
        const bool far_ok = 2.0 * moved < active_cushion ||
                            candidate_min(cand) >= dmin - 1e-9;
        clean = far_ok && candidate_min(active) >= dmin - 1e-9 &&
                min_radius_ok(out.link, rtarget);
    }
    if (!clean) return false;

    // Verify invariants of the accepted state.
    for (const auto& c : out.link.components)
        for (const auto& v : c.vertices)
            if (!finite(v)) return false;
    if (max_edge_rel_error(out) > kLengthTol) return false;
    return true;
}

} // namespace

void validate(const EngineConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
        throw ValidationError("dt must be positive");
    if (!(cfg.epsilon > 0.0) || cfg.epsilon > 0.1)
        throw ValidationError("epsilon must lie in (0, 0.1]");
    if (cfg.shake_iterations < 1 || cfg.overlap_iterations < 1)
        throw ValidationError("iteration counts must be at least 1");
    if (cfg.checkpoint_every == 0)
        throw ValidationError("checkpoint_every must be positive");
    if (cfg.force.mode != "mirror_z" && cfg.force.mode != "direction")
        throw ValidationError("unknown force mode: " + cfg.force.mode);
    if (cfg.force.magnitude < 0.0 || !std::isfinite(cfg.force.magnitude))
        throw ValidationError("force magnitude must be nonnegative");
    if (cfg.force.mode == "direction" && norm(cfg.force.direction) == 0.0)
        throw ValidationError("zero force direction");
}

SeparationCertificate separation_certificate(const ThickLink& link) {
    if (link.components.size() != 2)
        throw ValidationError("separation margin needs exactly 2 components");
    auto margin_along = [&](const Vec3& d) {
        double lo0 = std::numeric_limits<double>::infinity(), hi0 = -lo0;
        double lo1 = lo0, hi1 = -lo0;
        for (const auto& v : link.components[0].vertices) {
            const double p = dot(v, d);
            lo0 = std::min(lo0, p);
            hi0 = std::max(hi0, p);
        }
        for (const auto& v : link.components[1].vertices) {
            const double p = dot(v, d);
            lo1 = std::min(lo1, p);
            hi1 = std::max(hi1, p);
        }
        return std::max(lo0 - hi1, lo1 - hi0) - 2.0 * link.radius;
    };

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> dirs = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                              {0, 1, phi},  {0, 1, -phi}, {1, phi, 0},
                              {1, -phi, 0}, {phi, 0, 1},  {-phi, 0, 1}};
    SeparationCertificate best;
    best.margin = -std::numeric_limits<double>::infinity();
    for (const auto& d : dirs) {
        const Vec3 u = normalized(d);
        const double m = margin_along(u);
        if (m > best.margin) best = {m, u};
    }
    // Local refinement around the best direction.
    double delta = 0.4;
    for (int round = 0; round < 40; ++round) {
        const Vec3 d = best.direction;
        const Vec3 any = std::abs(d.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 e1 = normalized(cross(d, any));
        const Vec3 e2 = normalized(cross(d, e1));
        bool improved = false;
        for (const Vec3& off : {e1, e1 * -1.0, e2, e2 * -1.0}) {
            const Vec3 u = normalized(d + off * delta);
            const double m = margin_along(u);
            if (m > best.margin) {
                best = {m, u};
                improved = true;
            }
        }
        if (!improved) delta *= 0.5;
        if (delta < 1e-6) break;
    }
    return best;
}

double separation_margin(const ThickLink& link) {
    return separation_certificate(link).margin;
}

SimState make_state(const ThickLink& link) {
    if (link.components.empty()) throw ValidationError("empty link");
    if (link.radius <= 0) throw ValidationError("radius must be positive");
    SimState s;
    s.link = link;
    for (const auto& c : link.components) {
        validate(c);
        if (!c.closed) throw ValidationError("engine components must be closed");
        s.reference_edge_lengths.push_back(edge_lengths(c));
    }
    s.rest = link.components;
    return s;
}

namespace {

SimState step_cached(const SimState& s, const EngineConfig& cfg, PairCache& cache) {
    validate(cfg);
    if (s.link.components.size() != 2)
        throw ValidationError("engine steps need exactly 2 components");
    SimState out;
    for (int h = 0; h <= 10; ++h) {
        if (try_step(s, cfg, cfg.dt / static_cast<double>(1 << h), cache, out))
            return out;
    }
    throw StallError("constraint projection failed at the dt floor");
}

} // namespace

SimState step(const SimState& s, const EngineConfig& cfg) {
    PairCache cache;
    return step_cached(s, cfg, cache);
}

SplitAttemptReport attempt_split(const ThickLink& link, const EngineConfig& cfg) {
    validate(cfg);
    SimState s = make_state(link);
    if (s.link.components.size() != 2)
        throw ValidationError("split attempts need exactly 2 components");

    SplitAttemptReport rep;
    rep.epsilon_used = cfg.epsilon;

    auto checkpoint = [&](const SimState& st) {
        const ThicknessReport th = link_thickness(st.link);
        const SeparationCertificate sc = separation_certificate(st.link);
        const PolyCurve& l1 = st.link.components[0];
        const PolyCurve& l2 = st.link.components[1];
        const ConeDisk disk = cone_over(l1, centroid(l1));
        const DotReport dots = dotted_components(disk, l2, st.link.radius);

        TraceRow row;
        row.step = st.step_index;
        row.time = st.time_stamp;
        row.length_l1 = curve_length(l1);
        row.length_l2 = curve_length(l2);
        row.thickness = th.thickness;
        row.separation = sc.margin;
        row.dotted_count = dots.dotted_count;
        row.signed_dots = dots.total_signed_dots;
        row.cone_angle = cone_angle(disk);
        rep.trace.push_back(row);

        DotHistoryRow dh;
        dh.step = st.step_index;
        dh.dotted_count = dots.dotted_count;
        for (const auto& comp : dots.components)
            for (int sg : comp.dot_signs) dh.signs.push_back(sg);
        rep.dot_history.push_back(dh);

        rep.best_separation = std::max(rep.best_separation, sc.margin);
        rep.constraint_drift.min_thickness =
            std::min(rep.constraint_drift.min_thickness, th.thickness);
        return sc.margin > 0.0;
    };

    bool split = checkpoint(s);
    if (split) {
        rep.terminated = "split";
    } else if (cfg.max_steps == 0) {
        rep.terminated = "budget";
    } else {
        // Remember the step size that last worked: when the link jams, the
        // feasible dt collapses, and retrying the full dt from scratch every
        // step would repeat all the failed projection attempts.
        EngineConfig run_cfg = cfg;
        PairCache cache;
        // Once no feasible motion exists even at the dt floor, the state is
        // jammed: the pull is fully resisted and the configuration is a fixed
        // point of the dynamics. Hold it fixed for the rest of the budget so
        // the run still reports the full checkpoint history.
        bool jammed = false;
        for (std::size_t i = 1; i <= cfg.max_steps; ++i) {
            if (!jammed) {
                try {
                    const double t_before = s.time_stamp;
                    s = step_cached(s, run_cfg, cache);
                    run_cfg.dt = std::min(cfg.dt, 2.0 * (s.time_stamp - t_before));
                } catch (const StallError&) {
                    jammed = true;
                    if (checkpoint(s)) {
                        rep.terminated = "split";
                        break;
                    }
                }
            }
            if (jammed) {
                s.step_index += 1;
            } else {
                rep.constraint_drift.max_edge_rel_error =
                    std::max(rep.constraint_drift.max_edge_rel_error, max_edge_rel_error(s));
            }
            if (s.step_index % cfg.checkpoint_every == 0 || i == cfg.max_steps) {
                if (jammed && !rep.trace.empty()) {
                    // The state is bit-identical to the last dynamic
                    // checkpoint, so reuse its measurements.
                    TraceRow row = rep.trace.back();
                    row.step = s.step_index;
                    row.time = s.time_stamp;
                    rep.trace.push_back(row);
                    DotHistoryRow dh = rep.dot_history.back();
                    dh.step = s.step_index;
                    rep.dot_history.push_back(dh);
                } else if (checkpoint(s)) {
                    rep.terminated = "split";
                    break;
                }
                if (i == cfg.max_steps) rep.terminated = "budget";
            }
        }
        if (rep.terminated.empty()) rep.terminated = "budget";
    }

    rep.final_state = s;
    rep.rescaled_l1_length =
        curve_length(s.link.components[0]) / (1.0 - cfg.epsilon);
    return rep;
}

} // namespace gordian
