#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(GORDIAN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path tmp_dir() {
    fs::path d = fs::temp_directory_path() / "gordian_cli_test";
    fs::create_directories(d);
    return d;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("no arguments and unknown subcommands are input errors") {
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
}

TEST_CASE("construct: default spec succeeds, bad inputs map to exit codes") {
    fs::path d = tmp_dir();
    write_file(d / "spec.json", "{\"n1\": 256, \"n2\": 512}");
    CHECK(run("construct --spec " + (d / "spec.json").string() + " --out " +
              (d / "c").string()) == 0);
    CHECK(fs::exists(d / "c" / "link.json"));
    CHECK(fs::exists(d / "c" / "report.json"));

    CHECK(run("construct --spec " + (d / "missing.json").string() + " --out " +
              (d / "c2").string()) == 2);

    write_file(d / "broken.json", "{\"n1\": ");
    CHECK(run("construct --spec " + (d / "broken.json").string() + " --out " +
              (d / "c3").string()) == 2);

    // clearance below 2 builds but fails the thickness condition
    write_file(d / "thin.json", "{\"n1\": 256, \"n2\": 512, \"clearance\": 1.5}");
    CHECK(run("construct --spec " + (d / "thin.json").string() + " --out " +
              (d / "c4").string()) == 3);
}

TEST_CASE("verify-iso: writes margins CSV, rejects zero trials") {
    fs::path d = tmp_dir();
    CHECK(run("verify-iso --trials 500 --seed 3 --out " + (d / "iso.csv").string()) == 0);
    std::ifstream in(d / "iso.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header.find("margin") != std::string::npos);
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 500);
    CHECK(run("verify-iso --trials 0 --out " + (d / "iso0.csv").string()) == 2);
    CHECK(run("verify-iso --trials 10 --out /nonexistent-dir/iso.csv") == 4);
}

TEST_CASE("relax: clasp scenario splits cleanly, bad scenario is rejected") {
    fs::path d = tmp_dir();
    std::string scenario = std::string("{") +
        "\"name\": \"clasp-check\", \"control\": \"clasp\"," +
        "\"spec\": {\"n1\": 256, \"n2\": 512}," +
        "\"engine\": {\"dt\": 0.02, \"force\": {\"mode\": \"direction\"," +
        " \"direction\": [1, 0, 0], \"magnitude\": 1.0}," +
        " \"checkpoint_every\": 200, \"max_steps\": 2000}," +
        "\"outputs\": \"" + (d / "clasp").string() + "\"," +
        "\"verify\": {\"isoperimetric_trials\": 0, \"invariant_checks\": false}}";
    write_file(d / "clasp.json", scenario);
    CHECK(run("relax --scenario " + (d / "clasp.json").string()) == 0);
    CHECK(fs::exists(d / "clasp" / "trace.csv"));
    CHECK(fs::exists(d / "clasp" / "report.json"));
    std::ifstream rep(d / "clasp" / "report.json");
    std::string text((std::istreambuf_iterator<char>(rep)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"terminated\": \"split\"") != std::string::npos);

    write_file(d / "bad.json", "not json at all");
    CHECK(run("relax --scenario " + (d / "bad.json").string()) == 2);
}

TEST_CASE("export: tube and cone meshes, unknown format rejected") {
    fs::path d = tmp_dir();
    write_file(d / "spec.json", "{\"n1\": 256, \"n2\": 512}");
    REQUIRE(run("construct --spec " + (d / "spec.json").string() + " --out " +
                (d / "c").string()) == 0);
    std::string link = (d / "c" / "link.json").string();
    CHECK(run("export --link " + link + " --format tube-obj --out " +
              (d / "tube.obj").string()) == 0);
    CHECK(fs::file_size(d / "tube.obj") > 1000);
    CHECK(run("export --link " + link + " --format cone-obj --out " +
              (d / "cone.obj").string()) == 0);
    CHECK(fs::file_size(d / "cone.obj") > 1000);
    CHECK(run("export --link " + link + " --format gltf --out " +
              (d / "x.gltf").string()) == 2);
    CHECK(run("export --link " + (d / "missing.json").string() +
              " --format tube-obj --out " + (d / "y.obj").string()) == 2);
}

TEST_CASE("invariants subcommand passes on the default build") {
    CHECK(run("invariants") == 0);
}
