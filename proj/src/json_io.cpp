#include "gordian/json_io.hpp"

#include "gordian/errors.hpp"

namespace gordian {

using nlohmann::json;

namespace {

double num(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ValidationError(std::string("missing numeric field: ") + key);
    return j[key].get<double>();
}

} // namespace

void validate(const Scenario& sc) {
    if (sc.name.empty()) throw ValidationError("scenario name must be nonempty");
    if (sc.control != "gordian" && sc.control != "clasp")
        throw ValidationError("unknown scenario control: " + sc.control);
    validate(sc.spec);
    validate(sc.engine);
}

json curve_to_json(const PolyCurve& c) {
    json verts = json::array();
    for (const auto& v : c.vertices) verts.push_back({v.x, v.y, v.z});
    return {{"vertices", verts}, {"closed", c.closed}};
}

PolyCurve curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("closed"))
        throw ValidationError("curve JSON needs 'vertices' and 'closed'");
    PolyCurve c;
    c.closed = j["closed"].get<bool>();
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 3)
            throw ValidationError("curve vertex must be [x, y, z]");
        c.vertices.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
    validate(c);
    return c;
}

json link_to_json(const ThickLink& l) {
    json comps = json::array();
    for (const auto& c : l.components) comps.push_back(curve_to_json(c));
    return {{"radius", l.radius}, {"components", comps}};
}

ThickLink link_from_json(const json& j) {
    if (!j.is_object() || !j.contains("components"))
        throw ValidationError("link JSON needs 'radius' and 'components'");
    ThickLink l;
    l.radius = num(j, "radius");
    if (l.radius <= 0) throw ValidationError("link radius must be positive");
    for (const auto& c : j["components"]) l.components.push_back(curve_from_json(c));
    return l;
}

json spec_to_json(const GordianSpec& s) {
    return {{"n1", s.n1},
            {"n2", s.n2},
            {"clearance", s.clearance},
            {"knot_template", s.knot_template}};
}

GordianSpec spec_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("spec JSON must be an object");
    GordianSpec s;
    if (j.contains("n1")) s.n1 = j["n1"].get<std::size_t>();
    if (j.contains("n2")) s.n2 = j["n2"].get<std::size_t>();
    if (j.contains("clearance")) s.clearance = num(j, "clearance");
    if (j.contains("knot_template"))
        s.knot_template = j["knot_template"].get<std::string>();
    validate(s);
    return s;
}

json engine_to_json(const EngineConfig& c) {
    return {{"dt", c.dt},
            {"force",
             {{"mode", c.force.mode},
              {"direction", {c.force.direction.x, c.force.direction.y, c.force.direction.z}},
              {"magnitude", c.force.magnitude}}},
            {"shake_iterations", c.shake_iterations},
            {"overlap_iterations", c.overlap_iterations},
            {"epsilon", c.epsilon},
            {"checkpoint_every", c.checkpoint_every},
            {"max_steps", c.max_steps},
            {"seed", c.seed}};
}

EngineConfig engine_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("engine JSON must be an object");
    EngineConfig c;
    if (j.contains("dt")) c.dt = num(j, "dt");
    if (j.contains("force")) {
        const json& f = j["force"];
        if (f.contains("mode")) c.force.mode = f["mode"].get<std::string>();
        if (f.contains("direction")) {
            const json& d = f["direction"];
            if (!d.is_array() || d.size() != 3)
                throw ValidationError("force direction must be [x, y, z]");
            c.force.direction = {d[0].get<double>(), d[1].get<double>(), d[2].get<double>()};
        }
        if (f.contains("magnitude")) c.force.magnitude = num(f, "magnitude");
    }
    if (j.contains("shake_iterations")) c.shake_iterations = j["shake_iterations"].get<int>();
    if (j.contains("overlap_iterations"))
        c.overlap_iterations = j["overlap_iterations"].get<int>();
    if (j.contains("epsilon")) c.epsilon = num(j, "epsilon");
    if (j.contains("checkpoint_every"))
        c.checkpoint_every = j["checkpoint_every"].get<std::size_t>();
    if (j.contains("max_steps")) c.max_steps = j["max_steps"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    validate(c);
    return c;
}

json scenario_to_json(const Scenario& s) {
    return {{"name", s.name},
            {"control", s.control},
            {"spec", spec_to_json(s.spec)},
            {"engine", engine_to_json(s.engine)},
            {"outputs", s.outputs},
            {"verify",
             {{"isoperimetric_trials", s.isoperimetric_trials},
              {"invariant_checks", s.invariant_checks}}}};
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("scenario JSON must be an object");
    Scenario s;
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    if (j.contains("control")) s.control = j["control"].get<std::string>();
    if (j.contains("spec")) s.spec = spec_from_json(j["spec"]);
    if (j.contains("engine")) s.engine = engine_from_json(j["engine"]);
    if (j.contains("outputs")) s.outputs = j["outputs"].get<std::string>();
    if (j.contains("verify")) {
        const json& v = j["verify"];
        if (v.contains("isoperimetric_trials"))
            s.isoperimetric_trials = v["isoperimetric_trials"].get<std::uint64_t>();
        if (v.contains("invariant_checks"))
            s.invariant_checks = v["invariant_checks"].get<bool>();
    }
    validate(s);
    return s;
}

json thickness_to_json(const ThicknessReport& r) {
    return {{"min_rad", r.min_rad},
            {"self_clearance", r.self_clearance},
            {"cross_clearance", r.cross_clearance},
            {"thickness", r.thickness}};
}

json construction_report_to_json(const ConstructionReport& r) {
    return {{"l1_length", r.l1_length},
            {"l2_length", r.l2_length},
            {"thickness", thickness_to_json(r.thickness)},
            {"alpha_knotted", r.alpha_knotted},
            {"perpendicularity_defect", r.perpendicularity_defect},
            {"conditions_ok", r.conditions_ok}};
}

json split_report_to_json(const SplitAttemptReport& r) {
    json hist = json::array();
    for (const auto& row : r.dot_history)
        hist.push_back({{"step", row.step},
                        {"dotted_count", row.dotted_count},
                        {"signs", row.signs}});
    return {{"best_separation", r.best_separation},
            {"terminated", r.terminated},
            {"constraint_drift",
             {{"max_edge_rel_error", r.constraint_drift.max_edge_rel_error},
              {"min_thickness", r.constraint_drift.min_thickness}}},
            {"dot_history", hist},
            {"epsilon", r.epsilon_used},
            {"rescaled_l1_length", r.rescaled_l1_length},
            {"steps", r.final_state.step_index}};
}

} // namespace gordian
