#pragma once

#include <stdexcept>
#include <string>

namespace gordian {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: too few vertices, zero-length segments, bad config values.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Geometrically impossible state: intersecting curves, apex on boundary.
struct GeometricError : Error {
    explicit GeometricError(const std::string& msg) : Error(msg) {}
};

// No generic projection direction / transversality failure after bounded retries.
struct GenericityError : Error {
    explicit GenericityError(const std::string& msg) : Error(msg) {}
};

// Turning angle at or too close to pi.
struct DegenerateCurveError : Error {
    explicit DegenerateCurveError(const std::string& msg) : Error(msg) {}
};

// Inconsistent planar diagram.
struct DiagramError : Error {
    explicit DiagramError(const std::string& msg) : Error(msg) {}
};

// A link template failed clearance / perpendicularity requirements.
struct ConstructionError : Error {
    explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

// Relaxation step could not satisfy its constraints even at the dt floor.
struct StallError : Error {
    explicit StallError(const std::string& msg) : Error(msg) {}
};

// A simulation-state invariant broke (length drift, thickness loss).
struct EngineError : Error {
    explicit EngineError(const std::string& msg) : Error(msg) {}
};

// File could not be read or written.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace gordian
