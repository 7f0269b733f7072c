#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gordian/thickness.hpp"

namespace gordian {

// Snapshot of a constrained relaxation run. Moves preserve per-edge lengths
// (within 1e-6 relative) and keep the link (1 - epsilon)-thick.
struct SimState {
    ThickLink link;
    std::vector<std::vector<double>> reference_edge_lengths;
    std::size_t step_index = 0;
    double time_stamp = 0.0;
    // Rest shape of the passive component, used as a soft harmonic well.
    std::vector<PolyCurve> rest;
};

// Splitting force. "mirror_z" pushes the two mirror halves of component 2
// apart along +-z and re-imposes the reflection symmetry every step;
// "direction" pushes component 2 rigidly along a fixed vector.
struct ForceSpec {
    std::string mode = "mirror_z";
    Vec3 direction{0, 0, 1};
    double magnitude = 1.0;
};

struct EngineConfig {
    double dt = 0.02;
    ForceSpec force;
    int shake_iterations = 50;
    int overlap_iterations = 20;
    double epsilon = 0.05; // thickness slack: clearance may dip to 2r(1-eps)
    std::size_t checkpoint_every = 500;
    std::size_t max_steps = 100000;
    std::uint64_t seed = 1;
};

void validate(const EngineConfig& cfg);

struct SeparationCertificate {
    double margin = 0.0;
    Vec3 direction{0, 0, 1};
};

// Best separating-slab margin over sampled plane normals (icosahedral
// directions plus local refinement). Positive margin certifies a plane
// separating the two thick tubes. Exactly two components required.
SeparationCertificate separation_certificate(const ThickLink& link);
double separation_margin(const ThickLink& link);

SimState make_state(const ThickLink& link);

// One relaxation step: force displacement, edge-length projection, overlap
// resolution, symmetry re-imposition, invariant verification. On failure the
// step is retried with halved dt down to dt/1024, then throws StallError.
SimState step(const SimState& s, const EngineConfig& cfg);

struct DotHistoryRow {
    std::size_t step = 0;
    int dotted_count = 0;
    std::vector<int> signs;
};

struct TraceRow {
    std::size_t step = 0;
    double time = 0.0;
    double length_l1 = 0.0;
    double length_l2 = 0.0;
    double thickness = 0.0;
    double separation = 0.0;
    int dotted_count = 0;
    int signed_dots = 0;
    double cone_angle = 0.0;
};

struct ConstraintDrift {
    double max_edge_rel_error = 0.0;
    double min_thickness = std::numeric_limits<double>::infinity();
};

struct SplitAttemptReport {
    double best_separation = -std::numeric_limits<double>::infinity();
    SimState final_state;
    ConstraintDrift constraint_drift;
    std::vector<DotHistoryRow> dot_history;
    std::string terminated; // "split", "stall", or "budget"
    std::vector<TraceRow> trace;
    double epsilon_used = 0.0;
    // Length of component 1 rescaled by 1/(1 - epsilon), the honest value
    // for comparisons against the 4*pi + 6 bound when running with slack.
    double rescaled_l1_length = 0.0;
};

// Runs the engine until a split certificate, a stall, or the step budget.
// Checkpoints record separation margin, thickness, and the dotted components
// of the cone disk over component 1.
SplitAttemptReport attempt_split(const ThickLink& link, const EngineConfig& cfg);

} // namespace gordian
