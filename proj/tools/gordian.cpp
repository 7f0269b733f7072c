#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gordian/cone_disk.hpp"
#include "gordian/construction.hpp"
#include "gordian/errors.hpp"
#include "gordian/isoperimetric.hpp"
#include "gordian/isotopy_engine.hpp"
#include "gordian/json_io.hpp"
#include "gordian/knot_invariants.hpp"
#include "gordian/linking.hpp"
#include "gordian/mesh_export.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitIo = 4;
constexpr int kExitInvariant = 5;

bool logging_enabled() {
    const char* v = std::getenv("GORDIAN_LOG");
    return v != nullptr && std::string(v) != "" && std::string(v) != "0";
}

void log(const std::string& msg) {
    if (logging_enabled()) std::cerr << "[gordian] " << msg << "\n";
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gordian::ValidationError("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw gordian::ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw gordian::IoError("cannot write " + path);
    out << text;
    if (!out) throw gordian::IoError("write failed: " + path);
}

int cmd_construct(const std::string& spec_file, const std::string& out_dir) {
    gordian::GordianSpec spec;
    if (!spec_file.empty()) spec = gordian::spec_from_json(read_json(spec_file));
    log("building L1/L2");
    gordian::PolyCurve l1 = gordian::build_l1(spec);
    gordian::PolyCurve l2 = gordian::build_l2(spec);
    gordian::ConstructionReport rep = gordian::validate_construction(l1, l2);
    std::filesystem::create_directories(out_dir);
    gordian::ThickLink link{{l1, l2}, 1.0};
    write_text(out_dir + "/link.json", gordian::link_to_json(link).dump(2) + "\n");
    write_text(out_dir + "/report.json",
               gordian::construction_report_to_json(rep).dump(2) + "\n");
    log("conditions_ok = " + std::to_string(rep.conditions_ok));
    return rep.conditions_ok ? kExitOk : kExitConstruction;
}

int cmd_verify_iso(std::uint64_t trials, std::uint64_t seed, const std::string& out) {
    if (trials == 0) throw gordian::ValidationError("trials must be at least 1");
    const auto rows = gordian::sample_and_sweep(trials, seed);
    std::ostringstream csv;
    csv << "trial,d12,d13,d23,achieved,bound,margin\n";
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        csv << r.trial << "," << r.d12 << "," << r.d13 << "," << r.d23 << ","
            << r.bm.achieved << "," << r.bm.bound << "," << r.bm.margin << "\n";
        worst = std::min(worst, r.bm.margin);
    }
    write_text(out, csv.str());
    log("min margin = " + std::to_string(worst));
    return worst >= -1e-9 ? kExitOk : kExitInvariant;
}

int cmd_relax(const std::string& scenario_file) {
    const gordian::Scenario sc = gordian::scenario_from_json(read_json(scenario_file));
    gordian::ThickLink link;
    if (sc.control == "clasp") {
        link = gordian::clasp_link();
    } else {
        link = gordian::gordian_link(sc.spec);
        const auto rep = gordian::validate_construction(link.components[0],
                                                        link.components[1]);
        if (!rep.conditions_ok)
            throw gordian::ConstructionError("scenario link fails its conditions");
    }
    std::filesystem::create_directories(sc.outputs);
    write_text(sc.outputs + "/link_initial.json",
               gordian::link_to_json(link).dump(2) + "\n");

    log("running up to " + std::to_string(sc.engine.max_steps) + " steps");
    const gordian::SplitAttemptReport rep = gordian::attempt_split(link, sc.engine);

    std::ostringstream csv;
    csv << "step,time,length_L1,length_L2,thickness,separation_margin,"
           "dotted_count,signed_dots,cone_angle\n";
    for (const auto& t : rep.trace)
        csv << t.step << "," << t.time << "," << t.length_l1 << "," << t.length_l2
            << "," << t.thickness << "," << t.separation << "," << t.dotted_count
            << "," << t.signed_dots << "," << t.cone_angle << "\n";
    write_text(sc.outputs + "/trace.csv", csv.str());
    write_text(sc.outputs + "/link_final.json",
               gordian::link_to_json(rep.final_state.link).dump(2) + "\n");
    write_text(sc.outputs + "/report.json",
               gordian::split_report_to_json(rep).dump(2) + "\n");

    if (sc.invariant_checks) {
        const double eps = sc.engine.epsilon;
        if (rep.constraint_drift.max_edge_rel_error > 1e-6)
            throw gordian::EngineError("edge-length drift above 1e-6");
        if (rep.constraint_drift.min_thickness < 1.0 - eps - 1e-3)
            throw gordian::EngineError("thickness dipped below 1 - eps - 1e-3");
        for (const auto& t : rep.trace) {
            if (t.cone_angle < 2.0 * M_PI - 1e-6)
                throw gordian::EngineError("cone angle below 2*pi");
            if (t.signed_dots != 0)
                throw gordian::EngineError("signed dot total nonzero");
            if (t.length_l1 < 4.0 * M_PI + 6.0 - 0.1 && t.dotted_count > 2)
                throw gordian::EngineError("more than two dotted components");
        }
    }
    log("terminated: " + rep.terminated +
        ", best separation = " + std::to_string(rep.best_separation));
    return kExitOk;
}

int cmd_export(const std::string& link_file, const std::string& format,
               const std::string& out) {
    if (format != "tube-obj" && format != "cone-obj")
        throw gordian::ValidationError("unknown format: " + format);
    const gordian::ThickLink link = gordian::link_from_json(read_json(link_file));
    std::ostringstream os;
    if (format == "tube-obj") {
        gordian::write_link_obj(os, link);
    } else {
        if (link.components.empty())
            throw gordian::ValidationError("cone export needs a component");
        const gordian::PolyCurve& c = link.components[0];
        gordian::write_cone_obj(os, gordian::cone_over(c, gordian::centroid(c)));
    }
    write_text(out, os.str());
    return kExitOk;
}

int cmd_invariants() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   - " : "FAIL - ") << name << "\n";
        if (!ok) ++failures;
    };
    const double pi = M_PI;
    {
        gordian::GordianSpec spec;
        const gordian::PolyCurve l1 = gordian::build_l1(spec);
        check("smooth L1 length is 4*pi + 4",
              gordian::l1_smooth_length() == 4 * pi + 4);
        check("discrete L1 length within 1e-5 of 4*pi + 4",
              std::abs(gordian::curve_length(l1) - (4 * pi + 4)) < 1e-5);
        check("planar L1 cone angle is 2*pi",
              std::abs(gordian::cone_angle(gordian::cone_over(
                           l1, gordian::centroid(l1))) - 2 * pi) < 1e-9);
    }
    {
        using gordian::parallel_body_length;
        const double s3 = std::sqrt(3.0);
        std::vector<gordian::Vec2> tri{{0, 0}, {2, 0}, {1, s3}};
        check("equilateral triangle bound 4*pi + 6",
              std::abs(parallel_body_length(tri, 2.0) - (4 * pi + 6)) < 1e-9);
        std::vector<gordian::Vec2> two{{0, 0}, {2, 0}};
        check("two disks bound 4*pi + 4",
              std::abs(parallel_body_length(two, 2.0) - (4 * pi + 4)) < 1e-9);
        std::vector<gordian::Vec2> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
        check("square bound 4*pi + 8",
              std::abs(parallel_body_length(square, 2.0) - (4 * pi + 8)) < 1e-9);
        const auto rows = gordian::sample_and_sweep(2000, 7);
        bool ok = true;
        for (const auto& r : rows) ok = ok && r.bm.margin >= -1e-9;
        check("2000-trial isoperimetric sweep nonnegative", ok);
    }
    {
        gordian::GordianSpec spec;
        spec.n1 = 512;
        spec.n2 = 512;
        const gordian::PolyCurve l1 = gordian::build_l1(spec);
        const gordian::PolyCurve l2 = gordian::build_l2(spec);
        check("link is topologically split (lk = 0)",
              gordian::linking_number(l1, l2) == 0);
        const auto rep = gordian::validate_construction(l1, l2);
        check("construction conditions hold", rep.conditions_ok);
        check("knotted-arc determinant is 3", rep.alpha_knotted);
    }
    return failures == 0 ? kExitOk : kExitInvariant;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"physical link laboratory: construction, thickness, "
                 "isoperimetric sweeps, and splitting attempts"};
    app.require_subcommand(1);

    std::string spec_file, scenario_file, link_file, out, format = "tube-obj";
    std::uint64_t trials = 10000, seed = 1;

    auto* construct = app.add_subcommand("construct", "build the candidate link");
    construct->add_option("--spec", spec_file, "spec JSON file");
    std::string construct_out = ".";
    construct->add_option("--out", construct_out, "output directory");

    auto* verify = app.add_subcommand("verify-iso", "isoperimetric margin sweep");
    verify->add_option("--trials", trials, "number of random configurations");
    verify->add_option("--seed", seed, "RNG seed");
    std::string verify_out = "margins.csv";
    verify->add_option("--out", verify_out, "CSV output path");

    auto* relax = app.add_subcommand("relax", "run a splitting attempt scenario");
    relax->add_option("--scenario", scenario_file, "scenario JSON file")->required();

    auto* exp = app.add_subcommand("export", "write OBJ meshes");
    exp->add_option("--link", link_file, "link JSON file")->required();
    exp->add_option("--format", format, "tube-obj or cone-obj");
    std::string export_out = "mesh.obj";
    exp->add_option("--out", export_out, "OBJ output path");

    auto* inv = app.add_subcommand("invariants", "run the quick property suite");

    try {
        app.parse(argc, argv);
        if (construct->parsed()) return cmd_construct(spec_file, construct_out);
        if (verify->parsed()) return cmd_verify_iso(trials, seed, verify_out);
        if (relax->parsed()) return cmd_relax(scenario_file);
        if (exp->parsed()) return cmd_export(link_file, format, export_out);
        if (inv->parsed()) return cmd_invariants();
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    } catch (const gordian::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const gordian::ConstructionError& e) {
        std::cerr << "construction failure: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const gordian::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const gordian::Error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitInput;
}
