#include "gordian/mesh_export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "gordian/errors.hpp"

namespace gordian {

namespace {

Vec3 any_normal(const Vec3& t) {
    const Vec3 a = std::abs(t.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    return normalized(cross(t, a));
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return v * c + cross(axis, v) * s + axis * (dot(axis, v) * (1.0 - c));
}

// Tangent per vertex (averaged edge directions) and a parallel-transported
// normal frame; for closed curves the holonomy twist is spread over the rings
// so the last ring lines up with the first.
void frames(const PolyCurve& c, std::vector<Vec3>& tangents, std::vector<Vec3>& normals) {
    const std::size_t n = c.vertices.size();
    tangents.resize(n);
    normals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 t{0, 0, 0};
        if (c.closed || i + 1 < n)
            t += normalized(c.vertices[(i + 1) % n] - c.vertices[i]);
        if (c.closed || i > 0)
            t += normalized(c.vertices[i] - c.vertices[(i + n - 1) % n]);
        tangents[i] = normalized(t);
    }
    normals[0] = any_normal(tangents[0]);
    for (std::size_t i = 1; i < n; ++i) {
        // Transport by the rotation taking tangents[i-1] to tangents[i].
        const Vec3 axis = cross(tangents[i - 1], tangents[i]);
        const double s = norm(axis), co = dot(tangents[i - 1], tangents[i]);
        if (s < 1e-14) {
            normals[i] = normals[i - 1];
        } else {
            normals[i] = rotate_about(normals[i - 1], axis / s, std::atan2(s, co));
        }
        normals[i] = normalized(normals[i] - tangents[i] * dot(normals[i], tangents[i]));
    }
    if (c.closed) {
        // Measure the mismatch after one loop and unwind it gradually.
        Vec3 back = normals[n - 1];
        const Vec3 axis = cross(tangents[n - 1], tangents[0]);
        const double s = norm(axis), co = dot(tangents[n - 1], tangents[0]);
        if (s >= 1e-14) back = rotate_about(back, axis / s, std::atan2(s, co));
        back = normalized(back - tangents[0] * dot(back, tangents[0]));
        const Vec3 b0 = cross(tangents[0], normals[0]);
        const double twist = std::atan2(dot(back, b0), dot(back, normals[0]));
        for (std::size_t i = 1; i < n; ++i)
            normals[i] = rotate_about(normals[i], tangents[i],
                                      -twist * static_cast<double>(i) / n);
    }
}

} // namespace

void write_tube_obj(std::ostream& os, const PolyCurve& c, double radius, int segments) {
    validate(c);
    if (radius <= 0) throw ValidationError("tube radius must be positive");
    if (segments < 3) throw ValidationError("tube needs at least 3 segments");
    std::vector<Vec3> tangents, normals;
    frames(c, tangents, normals);
    const std::size_t n = c.vertices.size();

    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 b = cross(tangents[i], normals[i]);
        for (int k = 0; k < segments; ++k) {
            const double a = 2.0 * M_PI * k / segments;
            const Point3 p =
                c.vertices[i] + (normals[i] * std::cos(a) + b * std::sin(a)) * radius;
            os << "v " << p.x << " " << p.y << " " << p.z << "\n";
        }
    }
    auto ring = [&](std::size_t i, int k) {
        return static_cast<long long>(i) * segments + (k % segments) + 1;
    };
    const std::size_t bands = c.closed ? n : n - 1;
    for (std::size_t i = 0; i < bands; ++i) {
        const std::size_t j = (i + 1) % n;
        for (int k = 0; k < segments; ++k) {
            os << "f " << ring(i, k) << " " << ring(j, k) << " " << ring(j, k + 1) << "\n";
            os << "f " << ring(i, k) << " " << ring(j, k + 1) << " " << ring(i, k + 1) << "\n";
        }
    }
    if (!c.closed) {
        // Cap the ends with fans around the end vertices.
        os << "v " << c.vertices.front().x << " " << c.vertices.front().y << " "
           << c.vertices.front().z << "\n";
        os << "v " << c.vertices.back().x << " " << c.vertices.back().y << " "
           << c.vertices.back().z << "\n";
        const long long c0 = static_cast<long long>(n) * segments + 1;
        const long long c1 = c0 + 1;
        for (int k = 0; k < segments; ++k) {
            os << "f " << c0 << " " << ring(0, k + 1) << " " << ring(0, k) << "\n";
            os << "f " << c1 << " " << ring(n - 1, k) << " " << ring(n - 1, k + 1) << "\n";
        }
    }
}

void write_link_obj(std::ostream& os, const ThickLink& link, int segments) {
    // OBJ face indices are global, so emit each component into its own
    // stream section with an object tag and its own index base.
    std::size_t base = 0;
    for (std::size_t ci = 0; ci < link.components.size(); ++ci) {
        os << "o component_" << ci << "\n";
        std::ostringstream tmp;
        write_tube_obj(tmp, link.components[ci], link.radius, segments);
        std::string line;
        std::istringstream in(tmp.str());
        std::size_t verts = 0;
        while (std::getline(in, line)) {
            if (line.size() > 1 && line[0] == 'v') {
                ++verts;
                os << line << "\n";
            } else if (line.size() > 1 && line[0] == 'f') {
                long long a, bb, cc;
                std::sscanf(line.c_str(), "f %lld %lld %lld", &a, &bb, &cc);
                os << "f " << a + base << " " << bb + base << " " << cc + base << "\n";
            }
        }
        base += verts;
    }
}

void write_cone_obj(std::ostream& os, const ConeDisk& disk) {
    os << "v " << disk.apex.x << " " << disk.apex.y << " " << disk.apex.z << "\n";
    const std::size_t n = disk.boundary.vertices.size();
    for (const auto& v : disk.boundary.vertices)
        os << "v " << v.x << " " << v.y << " " << v.z << "\n";
    for (std::size_t i = 0; i < n; ++i)
        os << "f 1 " << i + 2 << " " << (i + 1) % n + 2 << "\n";
}

} // namespace gordian
