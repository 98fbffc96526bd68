// Command line front end: mesh generation, zero-path tracing, equal-value
// diameter solving, fuzzing and geometry export.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zerotrace/dyson_solver.hpp"
#include "zerotrace/errors.hpp"
#include "zerotrace/field_expr.hpp"
#include "zerotrace/json_io.hpp"
#include "zerotrace/labelling.hpp"
#include "zerotrace/sphere_mesh.hpp"
#include "zerotrace/zero_paths.hpp"

namespace {

using namespace zerotrace;

// Exit codes: 0 ok, 1 internal error, 2 invalid flags or inputs,
// 3 theorem violation, 4 degenerate field, 5 no convergence,
// 6 pair search failure.
enum ExitCode {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kTheorem = 3,
    kDegenerate = 4,
    kNoConvergence = 5,
    kPairSearch = 6,
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open output file: " + path);
    os << text;
    if (!os) throw Error("failed writing output file: " + path);
}

struct MeshArgs {
    int levels = 0;
    std::string out;
};

int cmd_mesh(const MeshArgs& a) {
    SymmetricTriangulation t = build_refined(a.levels);
    std::cout << "V=" << t.vertex_count() << " E=" << t.edge_count()
              << " F=" << t.triangle_count() << " Euler=" << t.euler_characteristic()
              << "\n";
    std::cout << "diameter=" << fmt(mesh_diameter(t)) << "\n";
    if (!a.out.empty()) {
        std::ostringstream os;
        write_mesh_json(os, t, "octahedron", a.levels);
        write_text_file(a.out, os.str());
    }
    return kOk;
}

struct TraceArgs {
    std::string mesh_path;
    int levels = -1;
    std::string labels_path;
    std::string fn;
    std::uint64_t seed = 1;
    double tie_tol = 1e-9;
    std::string out;
};

int cmd_trace(const TraceArgs& a) {
    SymmetricTriangulation mesh;
    if (!a.mesh_path.empty()) {
        std::ifstream is(a.mesh_path, std::ios::binary);
        if (!is) throw Error("cannot open mesh file: " + a.mesh_path);
        mesh = read_mesh_json(is);
    } else {
        mesh = build_refined(a.levels);
    }

    Labelling labelling;
    SymmetricTriangulation traced_mesh;
    if (!a.labels_path.empty()) {
        std::ifstream is(a.labels_path, std::ios::binary);
        if (!is) throw Error("cannot open labels file: " + a.labels_path);
        labelling = read_labelling_json(is, mesh);
        traced_mesh = std::move(mesh);
    } else {
        ScalarField field = make_field(parse(a.fn));
        SignLabelResult labelled = label_by_sign(mesh, field, a.tie_tol, a.seed);
        traced_mesh = std::move(labelled.mesh);
        labelling = std::move(labelled.labelling);
    }

    TraceResult result = trace_all(traced_mesh, labelling);
    std::cout << "m=" << result.paths.size() << " invariant=" << result.invariant_index
              << " lengths=";
    for (std::size_t i = 0; i < result.paths.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << result.paths[i].length();
    }
    std::cout << "\n";

    if (!a.out.empty()) {
        std::ostringstream os;
        write_paths_json(os, traced_mesh, result);
        write_text_file(a.out, os.str());
    }
    return kOk;
}

struct SolveArgs {
    std::string fn;
    std::optional<double> theta;
    std::optional<double> r;
    SolverConfig cfg;
    std::string out;
};

int run_solve(const SolveArgs& a, double theta) {
    ScalarField f = make_field(parse(a.fn));
    ScalarField g = odd_part(f);
    InvariantCurve curve = invariant_curve(g, a.cfg);
    DiameterQuadruple quad = find_equal_pair(f, curve, theta, a.cfg);

    std::cout << "theta=" << fmt(theta) << "\n";
    std::cout << "values=" << fmt(quad.values[0]) << " " << fmt(quad.values[1]) << " "
              << fmt(quad.values[2]) << " " << fmt(quad.values[3]) << "\n";
    std::cout << "value_spread=" << fmt(quad.value_spread) << "\n";
    std::cout << "angle=" << fmt(quad.angle) << "\n";
    std::cout << "angle_residual=" << fmt(quad.angle_residual) << "\n";
    std::cout << "chord=" << fmt(quad.chord) << "\n";
    std::cout << "level=" << curve.level << " curve_samples=" << curve.points.size()
              << "\n";

    if (!a.out.empty()) {
        std::ostringstream os;
        write_result_json(os, quad, theta, curve.level,
                          static_cast<long>(curve.points.size()));
        write_text_file(a.out, os.str());
    }
    return kOk;
}

int cmd_dyson(const SolveArgs& a) {
    double theta = 0.5 * std::numbers::pi;
    if (a.r) theta = chord_to_angle(*a.r);
    if (a.theta) theta = *a.theta;
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw ROutOfRange("dyson: theta must lie in (0, pi)");
    return run_solve(a, theta);
}

int cmd_livesay(const SolveArgs& a) { return run_solve(a, chord_to_angle(*a.r)); }

struct FuzzArgs {
    int levels = 3;
    int runs = 0;
    std::uint64_t seed = 1;
};

int cmd_fuzz(const FuzzArgs& a) {
    SymmetricTriangulation mesh = build_refined(a.levels);

    struct RunChecks {
        bool odd_count = false;
        bool unique_invariant = false;
        bool pairing = false;
        bool oracle = false;
    };
    std::vector<RunChecks> results(static_cast<std::size_t>(a.runs));

    auto run_one = [&](int run) {
        std::uint64_t run_seed = splitmix64(a.seed ^ (0x9e3779b97f4a7c15ull * (run + 1)));
        Labelling l = random_antisymmetric_labelling(mesh, run_seed);
        std::vector<ZeroPath> paths = trace_paths(mesh, l);
        CertificationReport rep = certify_paths(mesh, paths);

        RunChecks& c = results[static_cast<std::size_t>(run)];
        c.odd_count = rep.path_count % 2 == 1;
        c.unique_invariant = rep.invariant_indices.size() == 1;
        c.pairing = rep.pairing_ok;

        std::vector<std::vector<int>> traced;
        traced.reserve(paths.size());
        for (const ZeroPath& p : paths) {
            std::vector<int> tris = p.triangles;
            std::sort(tris.begin(), tris.end());
            traced.push_back(std::move(tris));
        }
        std::sort(traced.begin(), traced.end());
        std::vector<std::vector<int>> oracle = mixed_partition_union_find(mesh, l);
        std::sort(oracle.begin(), oracle.end());
        c.oracle = traced == oracle;
    };

    // Runs are independent; distribute across workers and aggregate by index.
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                          static_cast<unsigned>(a.runs));
    if (workers <= 1) {
        for (int i = 0; i < a.runs; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < a.runs; i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& th : pool) th.join();
    }

    int odd = 0, unique = 0, pairing = 0, oracle = 0;
    for (const auto& c : results) {
        odd += c.odd_count;
        unique += c.unique_invariant;
        pairing += c.pairing;
        oracle += c.oracle;
    }
    std::cout << "runs=" << a.runs << " levels=" << a.levels << " seed=" << a.seed << "\n";
    std::cout << "odd_path_count=" << odd << "/" << a.runs << "\n";
    std::cout << "unique_invariant=" << unique << "/" << a.runs << "\n";
    std::cout << "antipodal_pairing=" << pairing << "/" << a.runs << "\n";
    std::cout << "partition_oracle=" << oracle << "/" << a.runs << "\n";
    bool pass = odd == a.runs && unique == a.runs && pairing == a.runs && oracle == a.runs;
    std::cout << "result=" << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kOk : kTheorem;
}

struct ExportArgs {
    std::string in;
    std::string format = "obj";
    bool project_sphere = false;
    std::string out;
};

int cmd_export(const ExportArgs& a) {
    std::ifstream is(a.in, std::ios::binary);
    if (!is) throw Error("cannot open input file: " + a.in);
    PathsDocument doc = read_paths_json(is);

    auto projected = [&](const Vec3& v) { return a.project_sphere ? normalized(v) : v; };

    long vertex_count = 0;
    long segment_count = 0;
    std::ostringstream os;
    if (a.format == "obj") {
        for (const auto& p : doc.paths)
            for (const Vec3& m : p.midpoints) {
                Vec3 v = projected(m);
                os << "v " << fmt(v.x) << " " << fmt(v.y) << " " << fmt(v.z) << "\n";
                ++vertex_count;
            }
        long base = 1;  // OBJ indices are 1-based
        for (const auto& p : doc.paths) {
            long n = static_cast<long>(p.midpoints.size());
            for (long i = 0; i < n; ++i) {
                os << "l " << base + i << " " << base + (i + 1) % n << "\n";
                ++segment_count;
            }
            base += n;
        }
    } else {
        nlohmann::json j;
        j["invariant_index"] = doc.invariant_index;
        j["pairs"] = nlohmann::json::array();
        for (const auto& pr : doc.pairs) j["pairs"].push_back({pr[0], pr[1]});
        j["paths"] = nlohmann::json::array();
        for (const auto& p : doc.paths) {
            nlohmann::json jp;
            jp["invariant"] = p.invariant;
            jp["midpoints"] = nlohmann::json::array();
            for (const Vec3& m : p.midpoints) {
                Vec3 v = projected(m);
                jp["midpoints"].push_back({v.x, v.y, v.z});
                ++vertex_count;
            }
            j["paths"].push_back(std::move(jp));
            segment_count += static_cast<long>(p.midpoints.size());
        }
        os << j.dump(2) << "\n";
    }
    write_text_file(a.out, os.str());
    std::cout << "wrote " << a.out << " vertices=" << vertex_count
              << " segments=" << segment_count << "\n";
    return kOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Zero-path tracing on symmetric sphere triangulations and "
                 "equal-value diameter search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    MeshArgs mesh_args;
    auto* mesh = app.add_subcommand("mesh", "Generate a refined symmetric sphere mesh");
    mesh->add_option("--levels", mesh_args.levels, "Subdivision levels")
        ->required()
        ->check(CLI::NonNegativeNumber);
    mesh->add_option("--out", mesh_args.out, "Write mesh JSON here");

    TraceArgs trace_args;
    auto* trace = app.add_subcommand("trace", "Trace the zero paths of a labelling");
    auto* t_mesh = trace->add_option("--mesh", trace_args.mesh_path, "Mesh JSON file");
    auto* t_levels =
        trace->add_option("--levels", trace_args.levels, "Build a refined mesh instead")
            ->check(CLI::NonNegativeNumber);
    auto* t_labels =
        trace->add_option("--labels", trace_args.labels_path, "Labelling JSON file");
    auto* t_fn = trace->add_option("--fn", trace_args.fn, "Label by the sign of this field");
    trace->add_option("--seed", trace_args.seed, "Seed for tie-breaking rotations");
    trace->add_option("--tie-tol", trace_args.tie_tol, "Tie tolerance on |field|")
        ->check(CLI::PositiveNumber);
    trace->add_option("--out", trace_args.out, "Write paths JSON here");
    t_mesh->excludes(t_levels);
    t_labels->excludes(t_fn);

    SolveArgs dyson_args;
    double dyson_theta = 0.0, dyson_r = 0.0;
    auto* dysoncmd =
        app.add_subcommand("dyson", "Equal values on two diameters at a prescribed angle");
    dysoncmd->add_option("--fn", dyson_args.fn, "Scalar field expression")->required();
    auto* d_theta = dysoncmd->add_option("--theta", dyson_theta, "Angle in (0, pi); default pi/2");
    auto* d_r = dysoncmd->add_option("--r", dyson_r, "Chord length in (0, 2)");
    d_theta->excludes(d_r);

    SolveArgs livesay_args;
    double livesay_r = 0.0;
    auto* livesaycmd =
        app.add_subcommand("livesay", "Equal values on two diameters at a chord distance");
    livesaycmd->add_option("--fn", livesay_args.fn, "Scalar field expression")->required();
    livesaycmd->add_option("--r", livesay_r, "Chord length in (0, 2)")->required();

    auto add_solver_flags = [](CLI::App* cmd, SolverConfig& cfg, std::string& out) {
        cmd->add_option("--start-level", cfg.start_level, "First refinement level");
        cmd->add_option("--max-level", cfg.max_level, "Last refinement level");
        cmd->add_option("--residual-tol", cfg.residual_tol, "Curve residual tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--pair-tol", cfg.pair_tol, "Pair residual tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--samples-per-segment", cfg.samples_per_segment,
                        "Curve samples per path segment")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", cfg.seed, "Seed for tie-breaking rotations");
        cmd->add_option("--out", out, "Write result JSON here");
    };
    add_solver_flags(dysoncmd, dyson_args.cfg, dyson_args.out);
    add_solver_flags(livesaycmd, livesay_args.cfg, livesay_args.out);

    FuzzArgs fuzz_args;
    auto* fuzz = app.add_subcommand("fuzz", "Random labellings with structure checks");
    fuzz->add_option("--levels", fuzz_args.levels, "Refinement level")
        ->check(CLI::NonNegativeNumber);
    fuzz->add_option("--runs", fuzz_args.runs, "Number of labellings")
        ->required()
        ->check(CLI::PositiveNumber);
    fuzz->add_option("--seed", fuzz_args.seed, "Base seed");

    ExportArgs export_args;
    auto* exportcmd = app.add_subcommand("export", "Convert a paths file to geometry");
    exportcmd->add_option("--in", export_args.in, "Paths JSON file")->required();
    exportcmd->add_option("--format", export_args.format, "obj or json")
        ->check(CLI::IsMember({"obj", "json"}));
    exportcmd->add_option("--project-sphere", export_args.project_sphere,
                          "Project midpoints radially to the sphere");
    exportcmd->add_option("--out", export_args.out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (mesh->parsed()) return cmd_mesh(mesh_args);
        if (trace->parsed()) {
            if (trace_args.mesh_path.empty() == (trace_args.levels < 0)) {
                std::cerr << "error: trace needs exactly one of --mesh or --levels\n";
                return kUsage;
            }
            if (trace_args.labels_path.empty() == trace_args.fn.empty()) {
                std::cerr << "error: trace needs exactly one of --labels or --fn\n";
                return kUsage;
            }
            return cmd_trace(trace_args);
        }
        if (dysoncmd->parsed()) {
            if (d_theta->count()) dyson_args.theta = dyson_theta;
            if (d_r->count()) dyson_args.r = dyson_r;
            return cmd_dyson(dyson_args);
        }
        if (livesaycmd->parsed()) {
            livesay_args.r = livesay_r;
            return cmd_livesay(livesay_args);
        }
        if (fuzz->parsed()) return cmd_fuzz(fuzz_args);
        if (exportcmd->parsed()) return cmd_export(export_args);
        std::cerr << "error: no subcommand\n";
        return kUsage;
    } catch (const TheoremViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kTheorem;
    } catch (const DegenerateField& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const PairSearchFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPairSearch;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownIdentifier& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ROutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const LevelTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidMesh& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
