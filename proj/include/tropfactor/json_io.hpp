#pragma once

// JSON documents for bodies, normal forms, partitions, max-plus functions,
// factorizations and decomposition reports. Keys are emitted in a fixed
// order and collections in canonical order, so dumps are reproducible.

#include <string>
#include <vector>

#include <json.hpp>

#include "tropfactor/maxplus.hpp"
#include "tropfactor/partition.hpp"
#include "tropfactor/pipeline.hpp"
#include "tropfactor/signed_algebra.hpp"

namespace tropfactor {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void json_fail(const std::string& what) { throw Error("invalid JSON: " + what); }

inline const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) json_fail(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline Int as_int(const Json& j) {
    if (!j.is_number_integer()) json_fail("expected an integer, got " + j.dump());
    return j.get<Int>();
}

inline Point as_point(const Json& j) {
    if (!j.is_array() || j.size() != 2) json_fail("expected [x,y], got " + j.dump());
    return {as_int(j[0]), as_int(j[1])};
}

inline std::vector<Point> as_points(const Json& j) {
    if (!j.is_array()) json_fail("expected a list of points");
    std::vector<Point> out;
    for (const auto& p : j) out.push_back(as_point(p));
    return out;
}

inline Json point_json(Point p) { return Json::array({p.x, p.y}); }

inline Json triangles_json(const std::map<UnitTriangle, Int>& tris) {
    Json arr = Json::array();
    for (const auto& [tri, k] : tris) {
        Json v = Json::array();
        for (Point p : tri.vertices()) v.push_back(point_json(p));
        arr.push_back(Json{{"v", v}, {"k", k}});
    }
    return arr;
}

inline std::map<UnitTriangle, Int> triangles_from_json(const Json& j) {
    if (!j.is_array()) json_fail("\"triangles\" must be a list");
    std::map<UnitTriangle, Int> out;
    for (const auto& entry : j) {
        auto v = as_points(require(entry, "v"));
        if (v.size() != 3) json_fail("triangle needs three vertices");
        Int k = as_int(require(entry, "k"));
        if (k == 0) json_fail("zero triangle coefficient");
        UnitTriangle tri(v[0], v[1], v[2]);
        if (!out.emplace(tri, k).second) json_fail("repeated triangle");
    }
    return out;
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        json_fail(e.what());
    }
}

}  // namespace detail

inline Json to_json(const Body& b) {
    Json v = Json::array();
    for (Point p : b.vertices()) v.push_back(detail::point_json(p));
    return Json{{"vertices", v}};
}

/// Accepts {"vertices": [...]} (must be in convex position, any order) or
/// {"points": [...]} (any finite set, hulled).
inline Body body_from_json(const Json& j) {
    if (j.is_object() && j.contains("points")) return convex_hull(detail::as_points(j.at("points")));
    return Body::from_vertices(detail::as_points(detail::require(j, "vertices")));
}

inline Json to_json(const NormalForm& nf) {
    return Json{{"t", detail::point_json(nf.t)},
                {"kx", nf.kx},
                {"ky", nf.ky},
                {"triangles", detail::triangles_json(nf.triangles)}};
}

inline NormalForm normal_form_from_json(const Json& j) {
    NormalForm nf;
    nf.t = detail::as_point(detail::require(j, "t"));
    nf.kx = detail::as_int(detail::require(j, "kx"));
    nf.ky = detail::as_int(detail::require(j, "ky"));
    nf.triangles = detail::triangles_from_json(detail::require(j, "triangles"));
    return nf;
}

inline Json to_json(const Partition& part) {
    Json pts = Json::array();
    for (Point p : part.points()) pts.push_back(detail::point_json(p));
    Json cells = Json::array();
    for (const auto& c : part.cells()) cells.push_back(c);
    Json div = Json::array();
    for (const auto& d : part.dividing_segments()) div.push_back(Json::array({d.first, d.second}));
    return Json{{"points", pts}, {"cells", cells}, {"dividing", div}, {"interior", part.interior()}};
}

/// Rebuilds from points and cells; "dividing" and "interior", when present,
/// must agree with the recomputed values.
inline Partition partition_from_json(const Json& j) {
    auto pts = detail::as_points(detail::require(j, "points"));
    const Json& cj = detail::require(j, "cells");
    if (!cj.is_array()) detail::json_fail("\"cells\" must be a list");
    std::vector<std::vector<std::size_t>> cells;
    for (const auto& c : cj) {
        std::vector<std::size_t> cell;
        for (const auto& i : c) {
            Int v = detail::as_int(i);
            if (v < 0) detail::json_fail("negative point index");
            cell.push_back(static_cast<std::size_t>(v));
        }
        cells.push_back(std::move(cell));
    }
    Partition part = Partition::build(std::move(pts), std::move(cells));
    Json again = to_json(part);
    if (j.contains("dividing") && j.at("dividing") != again.at("dividing")) detail::json_fail("dividing segments disagree");
    if (j.contains("interior") && j.at("interior") != again.at("interior")) detail::json_fail("interior points disagree");
    return part;
}

inline Json to_json(const MaxPlusFunction& f) {
    Json t = Json::array();
    for (Point p : f.terms()) t.push_back(detail::point_json(p));
    return Json{{"terms", t}};
}

inline MaxPlusFunction function_from_json(const Json& j) {
    return MaxPlusFunction(detail::as_points(detail::require(j, "terms")));
}

inline Json to_json(const MaxPlusFactorization& f) {
    return Json{{"a0", f.a0}, {"b0", f.b0}, {"kx", f.kx}, {"ky", f.ky}, {"triangles", detail::triangles_json(f.triangles)}};
}

inline MaxPlusFactorization factorization_from_json(const Json& j) {
    MaxPlusFactorization f;
    f.a0 = detail::as_int(detail::require(j, "a0"));
    f.b0 = detail::as_int(detail::require(j, "b0"));
    f.kx = detail::as_int(detail::require(j, "kx"));
    f.ky = detail::as_int(detail::require(j, "ky"));
    f.triangles = detail::triangles_from_json(detail::require(j, "triangles"));
    return f;
}

inline Json to_json(const DecompositionReport& r) {
    return Json{{"input", to_json(r.input)},
                {"normal_form", to_json(r.normal_form)},
                {"cells", r.cells},
                {"dividing", r.dividing},
                {"verified", r.verified},
                {"stats",
                 {{"max_abs_coefficient", r.stats.max_abs_coefficient},
                  {"distinct_triangles", r.stats.distinct_triangles}}}};
}

}  // namespace tropfactor
