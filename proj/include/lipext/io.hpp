#pragma once

// JSON file formats.
//
// Graph file:
//   {"vertices": [{"id": "a", "pos": [0, 0]}, ...],
//    "edges": [["a", "b"], ["b", "c", 1.5], ...],      third element: explicit length
//    "boundary": {"a": [0.0], ...}}
// Point set file:
//   {"points": [[x...], ...], "values": [[f...], ...]}
// Result file:
//   {"values": {"a": [..], ...},
//    "report": {"residual": r, "max_principle": bool|null, "geodesic_lip_ratio": q,
//               "stage_slopes": [..]|null, "converged": bool}}
//
// Output is deterministic: object keys sorted, floats printed with 17
// significant digits so that reading them back is exact.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lipext/error.hpp"
#include "lipext/extension.hpp"
#include "lipext/graph.hpp"
#include "lipext/kpoint.hpp"

namespace lipext::io {

using json = nlohmann::json;

namespace detail {

inline void write_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

inline void write(std::string& out, const json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat || indent < 0 ? (indent < 0 ? "," : ", ") : ",";
                first = false;
                if (!flat) newline(depth + 1);
                write(out, e, indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case json::value_t::number_float: write_number(out, j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

} // namespace detail

/// Serializes with sorted keys and 17-significant-digit floats.
inline std::string dump(const json& j, int indent = 2) {
    std::string out;
    detail::write(out, j, indent, 0);
    if (indent >= 0) out += '\n';
    return out;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
}

namespace detail {

inline Point to_point(const json& j, const std::string& what) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, what + " must be an array of numbers");
    Point p;
    for (const auto& c : j) {
        if (!c.is_number()) throw Error(ErrorCode::ParseError, what + " must be an array of numbers");
        p.push_back(c.get<double>());
    }
    return p;
}

inline json from_point(const Point& p) {
    json arr = json::array();
    for (double c : p) arr.push_back(c);
    return arr;
}

} // namespace detail

inline GraphData parse_graph(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "graph file must be a JSON object");
    for (const char* key : {"vertices", "edges", "boundary"})
        if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("graph file lacks \"") + key + "\"");
    if (!j["vertices"].is_array() || !j["edges"].is_array() || !j["boundary"].is_object())
        throw Error(ErrorCode::ParseError, "graph file keys have the wrong JSON types");

    GraphData g;
    for (const auto& v : j["vertices"]) {
        if (!v.is_object() || !v.contains("id") || !v["id"].is_string() || !v.contains("pos"))
            throw Error(ErrorCode::ParseError, "vertex entries need a string \"id\" and a \"pos\" array");
        const auto id = v["id"].get<std::string>();
        g.vertices.push_back({id, detail::to_point(v["pos"], "position of " + id)});
    }
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3 || !e[0].is_string() || !e[1].is_string())
            throw Error(ErrorCode::ParseError, "edges are [id, id] or [id, id, length]");
        EdgeSpec spec{e[0].get<std::string>(), e[1].get<std::string>(), std::nullopt};
        if (e.size() == 3) {
            if (!e[2].is_number()) throw Error(ErrorCode::ParseError, "edge length must be a number");
            spec.length = e[2].get<double>();
        }
        g.edges.push_back(std::move(spec));
    }
    for (auto it = j["boundary"].begin(); it != j["boundary"].end(); ++it)
        g.boundary[it.key()] = detail::to_point(it.value(), "boundary value of " + it.key());
    return g;
}

inline json graph_to_json(const GraphData& g) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : g.vertices) j["vertices"].push_back({{"id", v.id}, {"pos", detail::from_point(v.pos)}});
    j["edges"] = json::array();
    for (const auto& e : g.edges) {
        json edge = json::array({e.a, e.b});
        if (e.length) edge.push_back(*e.length);
        j["edges"].push_back(std::move(edge));
    }
    j["boundary"] = json::object();
    for (const auto& [id, value] : g.boundary) j["boundary"][id] = detail::from_point(value);
    return j;
}

inline LabeledPointSet parse_point_set(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("values") || !j["points"].is_array() ||
        !j["values"].is_array())
        throw Error(ErrorCode::ParseError, "point set needs \"points\" and \"values\" arrays");
    LabeledPointSet s;
    for (const auto& p : j["points"]) s.points.push_back(detail::to_point(p, "point"));
    for (const auto& v : j["values"]) s.values.push_back(detail::to_point(v, "value"));
    s.validate();
    return s;
}

/// Comma-separated coordinates, e.g. "1,0.5".
inline Point parse_coordinates(const std::string& text) {
    Point p;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (item.empty() || used != item.size()) throw Error(ErrorCode::ParseError, "bad coordinate '" + item + "'");
        p.push_back(value);
    }
    if (p.empty()) throw Error(ErrorCode::ParseError, "empty coordinate list");
    return p;
}

/// Report section of a result file.
struct ResultReport {
    double residual = 0.0;
    std::optional<bool> max_principle;
    double geodesic_lip_ratio = 0.0;
    std::optional<std::vector<double>> stage_slopes;
    bool converged = true;
};

inline json result_to_json(const Graph& g, const VertexFunction& u, const ResultReport& report) {
    json j;
    j["values"] = json::object();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) j["values"][g.id(v)] = detail::from_point(u[v]);
    json r;
    r["residual"] = report.residual;
    r["max_principle"] = report.max_principle ? json(*report.max_principle) : json(nullptr);
    r["geodesic_lip_ratio"] = report.geodesic_lip_ratio;
    if (report.stage_slopes) {
        r["stage_slopes"] = json::array();
        for (double s : *report.stage_slopes) r["stage_slopes"].push_back(s);
    } else {
        r["stage_slopes"] = nullptr;
    }
    r["converged"] = report.converged;
    j["report"] = std::move(r);
    return j;
}

/// Values of a result file, aligned with g's vertex order.
inline VertexFunction parse_result_values(const json& j, const Graph& g) {
    if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
        throw Error(ErrorCode::ParseError, "result file needs a \"values\" object");
    const auto& values = j["values"];
    VertexFunction u(g.vertex_count());
    std::vector<bool> seen(g.vertex_count(), false);
    for (auto it = values.begin(); it != values.end(); ++it) {
        const auto v = g.find(it.key());
        if (!v) throw Error(ErrorCode::DimensionMismatch, "result names unknown vertex " + it.key());
        u[*v] = detail::to_point(it.value(), "value of " + it.key());
        if (u[*v].size() != g.value_dim())
            throw Error(ErrorCode::DimensionMismatch, "value of " + it.key() + " has the wrong dimension");
        seen[*v] = true;
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (!seen[v]) throw Error(ErrorCode::DimensionMismatch, "result lacks vertex " + g.id(v));
    return u;
}

inline json check_to_json(const CheckOutcome& c) {
    json witness = json::array();
    for (const auto& w : c.witness) witness.push_back(w);
    return {{"pass", c.pass}, {"value", c.value}, {"bound", c.bound}, {"witness", witness}};
}

inline json verification_to_json(const VerificationReport& r) {
    json j;
    j["pass"] = r.pass();
    j["boundary"] = check_to_json(r.boundary);
    j["residual"] = check_to_json(r.residual);
    j["max_principle"] = r.max_principle ? check_to_json(*r.max_principle) : json(nullptr);
    j["geodesic"] = check_to_json(r.geodesic);
    j["hull"] = r.hull ? check_to_json(*r.hull) : json(nullptr);
    return j;
}

inline json kpoint_to_json(const KPointResult& r) {
    json active = json::array();
    for (std::size_t i : r.active) active.push_back(i);
    return {{"lambda", r.lambda}, {"point", detail::from_point(r.point)}, {"active", active}};
}

} // namespace lipext::io
