#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zerotrace/dyson_solver.hpp"
#include "zerotrace/labelling.hpp"
#include "zerotrace/sphere_mesh.hpp"
#include "zerotrace/zero_paths.hpp"

namespace zerotrace {

// Mesh file: {"vertices": [[x,y,z],...], "triangles": [[i,j,k],...],
//             "antipode": [...], "meta": {"base": ..., "levels": n}}.
// Antipodal partners are emitted as exact coordinate negations; the shortest
// round-trip number format preserves that on re-read.
void write_mesh_json(std::ostream& os, const SymmetricTriangulation& t,
                     const std::string& base, int levels);

/// Reads and validates a mesh file. Throws InvalidMesh on structural
/// violations and Error on malformed documents.
SymmetricTriangulation read_mesh_json(std::istream& is);

// Labelling file: {"labels": [...], "mesh_meta": {...},
//                  "tie_retries_used": n, "rotation": [9 reals] | null}.
void write_labelling_json(std::ostream& os, const Labelling& l, const std::string& base,
                          int levels, int tie_retries_used,
                          const std::optional<Mat3>& rotation);

/// Reads a labelling and checks it against the mesh.
Labelling read_labelling_json(std::istream& is, const SymmetricTriangulation& mesh);

// Paths file: {"paths": [{"triangles": [...], "edges": [[u,v],...],
//              "midpoints": [[x,y,z],...], "invariant": bool}],
//              "invariant_index": i, "pairs": [[i,j],...]}.
void write_paths_json(std::ostream& os, const SymmetricTriangulation& t,
                      const TraceResult& result);

/// Geometry-level view of a paths file, sufficient for export.
struct PathsDocument {
    struct Path {
        std::vector<long> triangles;
        std::vector<std::array<long, 2>> edges;
        std::vector<Vec3> midpoints;
        bool invariant = false;
    };
    std::vector<Path> paths;
    long invariant_index = -1;
    std::vector<std::array<long, 2>> pairs;
};

PathsDocument read_paths_json(std::istream& is);

// Solver result file: {"theta": t, "chord": r, "x": [..], "y": [..],
//  "values": [...], "value_spread": s, "angle_residual": a,
//  "level": n, "curve_samples": 2N}.
void write_result_json(std::ostream& os, const DiameterQuadruple& q, double theta,
                       int level, long curve_samples);

}  // namespace zerotrace
