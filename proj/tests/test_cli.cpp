#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "subprocess.hpp"

namespace {

const std::string kBin = ZEROTRACER_BIN;

using testutil::run_command;
using testutil::unique_temp_path;

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& tag) : path(unique_temp_path(tag)) {}
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("mesh prints counts and writes a file") {
    TempFile out("mesh");
    auto r = run_command(kBin, {"mesh", "--levels", "0", "--out", out.str()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("V=6 E=12 F=8 Euler=2") != std::string::npos);
    CHECK(std::filesystem::exists(out.path));

    auto r3 = run_command(kBin, {"mesh", "--levels", "3"});
    CHECK(r3.exit_code == 0);
    CHECK(r3.out.find("F=512") != std::string::npos);
}

TEST_CASE("mesh rejects negative levels") {
    auto r = run_command(kBin, {"mesh", "--levels", "-1"});
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
}

TEST_CASE("trace on the octahedron finds the single invariant path") {
    auto r = run_command(kBin, {"trace", "--levels", "0", "--fn", "z"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("m=1 invariant=0") != std::string::npos);
}

TEST_CASE("trace on a refined mesh stays near the equator") {
    TempFile out("paths");
    auto r = run_command(
        kBin, {"trace", "--levels", "3", "--fn", "z", "--seed", "5", "--out", out.str()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("m=1") != std::string::npos);
    CHECK(std::filesystem::exists(out.path));
}

TEST_CASE("trace flag validation") {
    auto r = run_command(kBin, {"trace", "--fn", "z"});
    CHECK(r.exit_code == 2);  // no mesh source
    auto r2 = run_command(kBin, {"trace", "--levels", "2"});
    CHECK(r2.exit_code == 2);  // no label source
    auto r3 = run_command(kBin,
                          {"trace", "--levels", "2", "--fn", "z", "--labels", "x.json"});
    CHECK(r3.exit_code == 2);  // both label sources
}

TEST_CASE("trace with a degenerate field exits 4") {
    auto r = run_command(kBin, {"trace", "--levels", "3", "--fn", "0"});
    CHECK(r.exit_code == 4);
    CHECK(r.out.empty());
}

TEST_CASE("trace accepts an explicit mesh and labels file") {
    TempFile mesh("mesh");
    auto rm = run_command(kBin, {"mesh", "--levels", "0", "--out", mesh.str()});
    REQUIRE(rm.exit_code == 0);

    TempFile labels("labels");
    {
        std::ofstream os(labels.path);
        os << "{\"labels\": [1, -1, 1, -1, 1, -1]}\n";
    }
    auto r = run_command(kBin,
                         {"trace", "--mesh", mesh.str(), "--labels", labels.str()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("m=1 invariant=0 lengths=6") != std::string::npos);
}

TEST_CASE("dyson solves the analytic half target") {
    auto r = run_command(kBin, {"dyson", "--fn", "z+x^2"});
    CHECK(r.exit_code == 0);
    // All four values printed on the values line sit near 0.5.
    std::istringstream lines(r.out);
    std::string line;
    bool found = false;
    while (std::getline(lines, line)) {
        if (line.rfind("values=", 0) != 0) continue;
        found = true;
        std::istringstream vals(line.substr(7));
        double v;
        int count = 0;
        while (vals >> v) {
            CHECK(std::abs(v - 0.5) <= 1e-3);
            ++count;
        }
        CHECK(count == 4);
    }
    CHECK(found);
}

TEST_CASE("dyson writes a result document") {
    TempFile out("result");
    auto r = run_command(kBin, {"dyson", "--fn", "z+x^2", "--r", "1", "--out", out.str()});
    CHECK(r.exit_code == 0);
    std::string doc = testutil::read_file(out.path);
    CHECK(doc.find("\"theta\"") != std::string::npos);
    CHECK(doc.find("\"curve_samples\"") != std::string::npos);
}

TEST_CASE("dyson rejects contradictory angle flags") {
    auto r = run_command(kBin,
                         {"dyson", "--fn", "z", "--theta", "1.0", "--r", "1.0"});
    CHECK(r.exit_code == 2);
}

TEST_CASE("dyson on an even field exits 4") {
    auto r = run_command(kBin, {"dyson", "--fn", "z^2"});
    CHECK(r.exit_code == 4);
    CHECK(r.out.empty());
}

TEST_CASE("dyson with an impossible residual exits 5") {
    auto r = run_command(kBin, {"dyson", "--fn", "z+0.2*sin(3*x)*sin(3*y)*z",
                                "--start-level", "3", "--max-level", "3",
                                "--residual-tol", "1e-12"});
    CHECK(r.exit_code == 5);
}

TEST_CASE("dyson with an impossible pair tolerance exits 6") {
    auto r = run_command(kBin, {"dyson", "--fn", "z+x^2", "--pair-tol", "1e-18"});
    CHECK(r.exit_code == 6);
}

TEST_CASE("livesay matches the analytic pi/3 target") {
    auto r = run_command(kBin, {"livesay", "--fn", "z+x^2", "--r", "1"});
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("values=", 0) != 0) continue;
        std::istringstream vals(line.substr(7));
        double v;
        while (vals >> v) CHECK(std::abs(v - 0.75) <= 1e-3);
    }

    auto bad = run_command(kBin, {"livesay", "--fn", "z", "--r", "2.5"});
    CHECK(bad.exit_code == 2);
}

TEST_CASE("expression errors exit 2") {
    auto r = run_command(kBin, {"dyson", "--fn", "z + w"});
    CHECK(r.exit_code == 2);
    auto r2 = run_command(kBin, {"trace", "--levels", "2", "--fn", "(z"});
    CHECK(r2.exit_code == 2);
}

TEST_CASE("fuzz passes and is byte deterministic") {
    std::vector<std::string> args{"fuzz", "--levels", "2", "--runs", "50",
                                  "--seed", "7"};
    auto a = run_command(kBin, args);
    auto b = run_command(kBin, args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("odd_path_count=50/50") != std::string::npos);
    CHECK(a.out.find("unique_invariant=50/50") != std::string::npos);
    CHECK(a.out.find("antipodal_pairing=50/50") != std::string::npos);
    CHECK(a.out.find("partition_oracle=50/50") != std::string::npos);
    CHECK(a.out.find("result=PASS") != std::string::npos);
}

TEST_CASE("fuzz rejects zero runs") {
    auto r = run_command(kBin, {"fuzz", "--levels", "2", "--runs", "0"});
    CHECK(r.exit_code == 2);
}

TEST_CASE("trace output is byte deterministic") {
    TempFile out_a("paths_a");
    TempFile out_b("paths_b");
    auto a = run_command(kBin, {"trace", "--levels", "3", "--fn", "z", "--seed", "5",
                                "--out", out_a.str()});
    auto b = run_command(kBin, {"trace", "--levels", "3", "--fn", "z", "--seed", "5",
                                "--out", out_b.str()});
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(testutil::read_file(out_a.path) == testutil::read_file(out_b.path));
}

TEST_CASE("export produces an OBJ polyline for the octahedron band") {
    TempFile paths("paths");
    auto rt = run_command(kBin, {"trace", "--levels", "0", "--fn", "z", "--out",
                                 paths.str()});
    REQUIRE(rt.exit_code == 0);

    TempFile obj("band_obj");
    auto re = run_command(kBin, {"export", "--in", paths.str(), "--format", "obj",
                                 "--out", obj.str()});
    CHECK(re.exit_code == 0);
    std::istringstream is(testutil::read_file(obj.path));
    int vertices = 0, segments = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) ++vertices;
        if (line.rfind("l ", 0) == 0) ++segments;
    }
    CHECK(vertices == 6);
    CHECK(segments == 6);

    // Projection puts every exported vertex on the unit sphere.
    TempFile proj("band_proj");
    auto rp = run_command(kBin, {"export", "--in", paths.str(), "--format", "obj",
                                 "--project-sphere", "true", "--out", proj.str()});
    CHECK(rp.exit_code == 0);
    std::istringstream ps(testutil::read_file(proj.path));
    while (std::getline(ps, line)) {
        if (line.rfind("v ", 0) != 0) continue;
        std::istringstream vs(line.substr(2));
        double x, y, z;
        vs >> x >> y >> z;
        CHECK(std::abs(std::sqrt(x * x + y * y + z * z) - 1.0) <= 1e-12);
    }
}

TEST_CASE("export emits projected JSON geometry") {
    TempFile paths("paths_j");
    auto rt = run_command(kBin, {"trace", "--levels", "0", "--fn", "z", "--out",
                                 paths.str()});
    REQUIRE(rt.exit_code == 0);

    TempFile out("band_json");
    auto re = run_command(kBin, {"export", "--in", paths.str(), "--format", "json",
                                 "--project-sphere", "true", "--out", out.str()});
    CHECK(re.exit_code == 0);
    std::string doc = testutil::read_file(out.path);
    CHECK(doc.find("\"midpoints\"") != std::string::npos);
    CHECK(doc.find("\"invariant\"") != std::string::npos);
}

TEST_CASE("export rejects a missing input file") {
    TempFile out("missing_out");
    auto r = run_command(kBin, {"export", "--in", "/nonexistent/paths.json", "--out",
                                out.str()});
    CHECK(r.exit_code == 2);
}

TEST_CASE("unknown subcommand exits 2") {
    auto r = run_command(kBin, {"frobnicate"});
    CHECK(r.exit_code == 2);
}

}  // TEST_SUITE
