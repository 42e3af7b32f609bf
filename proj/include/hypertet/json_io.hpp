#pragma once

// JSON parsing and serialization for the CLI.
//
// Configuration documents look like
//
//     {
//       "types":   ["finite", "ideal", "hyperideal", "finite"],
//       "lengths": {"12": 1.0, "13": 1.1, "14": 0.9,
//                   "23": 1.2, "24": 1.0, "34": 1.05}
//     }
//
// Parsing is strict: unknown keys, missing keys, wrong types, and
// non-finite or nonpositive lengths are all rejected with messages naming
// the offending field.  Serialization goes through dump_checked, which
// refuses to emit non-finite numbers (nlohmann would silently serialize
// them as null).

#include <array>
#include <cmath>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "tetra.hpp"

namespace hypertet {

// Insertion-ordered documents keep the emitted field order readable.
using json = nlohmann::ordered_json;

inline const char* vertex_type_name(vertex_type t) {
    switch (t) {
    case vertex_type::finite:
        return "finite";
    case vertex_type::ideal:
        return "ideal";
    default:
        return "hyperideal";
    }
}

inline vertex_type parse_vertex_type(const std::string& s) {
    if (s == "finite")
        return vertex_type::finite;
    if (s == "ideal")
        return vertex_type::ideal;
    if (s == "hyperideal")
        return vertex_type::hyperideal;
    throw parse_error("unknown vertex type \"" + s +
                      "\" (expected \"finite\", \"ideal\", or \"hyperideal\")");
}

namespace detail {

inline const json& require_field(const json& j, const char* key,
                                 const char* context) {
    if (!j.is_object())
        throw parse_error(std::string(context) + " must be a JSON object");
    const auto it = j.find(key);
    if (it == j.end())
        throw parse_error(std::string("missing field \"") + key + "\" in " + context);
    return *it;
}

inline void reject_unknown_keys(const json& j,
                                std::initializer_list<const char*> allowed,
                                const char* context) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            known = known || item.key() == k;
        if (!known)
            throw parse_error("unexpected field \"" + item.key() + "\" in " +
                              context);
    }
}

inline double require_number(const json& j, const std::string& what) {
    if (!j.is_number())
        throw parse_error(what + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw parse_error(what + " must be finite");
    return v;
}

} // namespace detail

// Parse an object keyed by the six canonical edge names into canonical
// order.  Exactly those keys; all values finite numbers.
inline std::array<double, 6> parse_edge_object(const json& j, const char* field) {
    if (!j.is_object())
        throw parse_error(std::string("field \"") + field +
                          "\" must be an object keyed by edge names");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : edge_names)
            known = known || item.key() == k;
        if (!known)
            throw parse_error("unexpected key \"" + item.key() + "\" in \"" +
                              field + "\"");
    }
    std::array<double, 6> out{};
    for (int e = 0; e < 6; ++e) {
        const auto it = j.find(edge_names[e]);
        if (it == j.end())
            throw parse_error(std::string("missing key \"") + edge_names[e] +
                              "\" in \"" + field + "\"");
        out[e] = detail::require_number(*it, std::string("\"") + field + "\".\"" +
                                                 edge_names[e] + "\"");
    }
    return out;
}

inline std::array<vertex_type, 4> parse_types(const json& j) {
    const json& t = detail::require_field(j, "types", "configuration document");
    if (!t.is_array() || t.size() != 4)
        throw parse_error("field \"types\" must be an array of 4 strings");
    std::array<vertex_type, 4> out{};
    for (int v = 0; v < 4; ++v) {
        if (!t[v].is_string())
            throw parse_error("field \"types\" must be an array of 4 strings");
        out[v] = parse_vertex_type(t[v].get<std::string>());
    }
    return out;
}

inline std::array<double, 6> parse_lengths(const json& j) {
    const json& l = detail::require_field(j, "lengths", "configuration document");
    std::array<double, 6> lengths = parse_edge_object(l, "lengths");
    for (int e = 0; e < 6; ++e)
        if (!(lengths[e] > 0.0))
            throw parse_error(std::string("\"lengths\".\"") + edge_names[e] +
                              "\" must be positive");
    return lengths;
}

// Strict ConfigDocument: exactly {"types", "lengths"}.
inline tet_config parse_config(const json& j) {
    if (!j.is_object())
        throw parse_error("configuration document must be a JSON object");
    detail::reject_unknown_keys(j, {"types", "lengths"}, "configuration document");
    return {parse_types(j), parse_lengths(j)};
}

inline json edge_object_to_json(const std::array<double, 6>& values) {
    json out = json::object();
    for (int e = 0; e < 6; ++e)
        out[edge_names[e]] = values[e];
    return out;
}

inline json types_to_json(const std::array<vertex_type, 4>& types) {
    json out = json::array();
    for (vertex_type t : types)
        out.push_back(vertex_type_name(t));
    return out;
}

inline json config_to_json(const tet_config& cfg) {
    json out = json::object();
    out["types"] = types_to_json(cfg.types);
    out["lengths"] = edge_object_to_json(cfg.lengths);
    return out;
}

inline json edge_order_json() {
    json out = json::array();
    for (const char* name : edge_names)
        out.push_back(name);
    return out;
}

// Row-major array-of-arrays serialization for any dense Eigen matrix.
template <typename Derived>
json matrix_to_json(const Eigen::MatrixBase<Derived>& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(static_cast<double>(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

namespace detail {

inline void require_all_finite(const json& j, const std::string& path) {
    if (j.is_number_float() && !std::isfinite(j.get<double>()))
        throw numeric_error("refusing to serialize non-finite number at " + path);
    if (j.is_object())
        for (const auto& item : j.items())
            require_all_finite(item.value(), path + "." + item.key());
    if (j.is_array())
        for (std::size_t i = 0; i < j.size(); ++i)
            require_all_finite(j[i], path + "[" + std::to_string(i) + "]");
}

} // namespace detail

// Serialize, guaranteeing every emitted number is a finite JSON number.
inline std::string dump_checked(const json& j, int indent = -1) {
    detail::require_all_finite(j, "$");
    return j.dump(indent);
}

} // namespace hypertet
