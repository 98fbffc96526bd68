#include "zerotrace/json_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "zerotrace/errors.hpp"

namespace zerotrace {

namespace {

using nlohmann::json;

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw Error("json: expected a 3-element coordinate array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json parse_stream(std::istream& is) {
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw Error(std::string("json: ") + e.what());
    }
    return j;
}

void dump(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

}  // namespace

void write_mesh_json(std::ostream& os, const SymmetricTriangulation& t,
                     const std::string& base, int levels) {
    json j;
    j["vertices"] = json::array();
    for (const Vec3& v : t.vertices) j["vertices"].push_back(vec_to_json(v));
    j["triangles"] = json::array();
    for (const auto& tri : t.triangles) j["triangles"].push_back({tri[0], tri[1], tri[2]});
    j["antipode"] = t.antipode;
    j["meta"] = {{"base", base}, {"levels", levels}};
    dump(os, j);
}

SymmetricTriangulation read_mesh_json(std::istream& is) {
    json j = parse_stream(is);
    if (!j.is_object() || !j.contains("vertices") || !j.contains("triangles") ||
        !j.contains("antipode"))
        throw Error("mesh json: missing vertices, triangles or antipode");

    SymmetricTriangulation t;
    for (const auto& v : j["vertices"]) t.vertices.push_back(vec_from_json(v));
    for (const auto& tri : j["triangles"]) {
        if (!tri.is_array() || tri.size() != 3)
            throw Error("mesh json: triangle is not a 3-element array");
        t.triangles.push_back({tri[0].get<int>(), tri[1].get<int>(), tri[2].get<int>()});
    }
    t.antipode = j["antipode"].get<std::vector<int>>();
    t.finalize();

    ValidationReport rep = validate(t);
    if (!rep.ok)
        throw InvalidMesh("mesh json: validation failed (" + rep.violations.front().rule +
                          " at index " + std::to_string(rep.violations.front().index) + ")");
    return t;
}

void write_labelling_json(std::ostream& os, const Labelling& l, const std::string& base,
                          int levels, int tie_retries_used,
                          const std::optional<Mat3>& rotation) {
    json j;
    j["labels"] = json::array();
    for (std::int8_t v : l.labels) j["labels"].push_back(static_cast<int>(v));
    j["mesh_meta"] = {{"base", base}, {"levels", levels}};
    j["tie_retries_used"] = tie_retries_used;
    if (rotation) {
        j["rotation"] = json::array();
        for (double v : rotation->m) j["rotation"].push_back(v);
    } else {
        j["rotation"] = nullptr;
    }
    dump(os, j);
}

Labelling read_labelling_json(std::istream& is, const SymmetricTriangulation& mesh) {
    json j = parse_stream(is);
    if (!j.is_object() || !j.contains("labels") || !j["labels"].is_array())
        throw Error("labelling json: missing labels array");

    Labelling l;
    for (const auto& v : j["labels"]) {
        int value = v.get<int>();
        l.labels.push_back(static_cast<std::int8_t>(value));
    }
    ValidationReport rep = validate_labelling(mesh, l);
    if (!rep.ok)
        throw Error("labelling json: validation failed (" + rep.violations.front().rule +
                    " at index " + std::to_string(rep.violations.front().index) + ")");
    return l;
}

void write_paths_json(std::ostream& os, const SymmetricTriangulation& t,
                      const TraceResult& result) {
    json j;
    j["paths"] = json::array();
    for (const ZeroPath& p : result.paths) {
        json jp;
        jp["triangles"] = p.triangles;
        jp["edges"] = json::array();
        for (int e : p.edges) {
            const Edge& ed = t.edges[static_cast<std::size_t>(e)];
            jp["edges"].push_back({ed.a, ed.b});
        }
        jp["midpoints"] = json::array();
        for (const Vec3& m : p.midpoints) jp["midpoints"].push_back(vec_to_json(m));
        jp["invariant"] = is_invariant(t, p);
        j["paths"].push_back(std::move(jp));
    }
    j["invariant_index"] = result.invariant_index;
    j["pairs"] = json::array();
    for (const auto& [a, b] : result.pairs) j["pairs"].push_back({a, b});
    dump(os, j);
}

PathsDocument read_paths_json(std::istream& is) {
    json j = parse_stream(is);
    if (!j.is_object() || !j.contains("paths") || !j["paths"].is_array())
        throw Error("paths json: missing paths array");

    PathsDocument doc;
    for (const auto& jp : j["paths"]) {
        PathsDocument::Path p;
        if (jp.contains("triangles")) p.triangles = jp["triangles"].get<std::vector<long>>();
        if (jp.contains("edges"))
            for (const auto& e : jp["edges"])
                p.edges.push_back({e[0].get<long>(), e[1].get<long>()});
        if (!jp.contains("midpoints")) throw Error("paths json: path without midpoints");
        for (const auto& m : jp["midpoints"]) p.midpoints.push_back(vec_from_json(m));
        p.invariant = jp.value("invariant", false);
        doc.paths.push_back(std::move(p));
    }
    doc.invariant_index = j.value("invariant_index", -1L);
    if (j.contains("pairs"))
        for (const auto& pr : j["pairs"])
            doc.pairs.push_back({pr[0].get<long>(), pr[1].get<long>()});
    return doc;
}

void write_result_json(std::ostream& os, const DiameterQuadruple& q, double theta,
                       int level, long curve_samples) {
    json j;
    j["theta"] = theta;
    j["chord"] = q.chord;
    j["x"] = vec_to_json(q.x);
    j["y"] = vec_to_json(q.y);
    j["values"] = q.values;
    j["value_spread"] = q.value_spread;
    j["angle_residual"] = q.angle_residual;
    j["level"] = level;
    j["curve_samples"] = curve_samples;
    dump(os, j);
}

}  // namespace zerotrace
