// Copyright 2026 The supkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/core/io.hpp"
#include "supkit/core/valuation.hpp"

namespace supkit {

// Emitted artifacts keep fields in insertion order.
using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(std::string(what) + ": missing field '" + key + "'");
    }
    return j.at(key);
}

inline std::string require_string(const Json& j, const char* key, const char* what) {
    const Json& v = require(j, key, what);
    if (!v.is_string()) {
        throw FormatError(std::string(what) + ": field '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

inline const Json& require_array(const Json& j, const char* key, const char* what) {
    const Json& v = require(j, key, what);
    if (!v.is_array()) {
        throw FormatError(std::string(what) + ": field '" + key + "' must be an array");
    }
    return v;
}

}  // namespace detail

inline Json parse_json(std::string_view text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(what + ": " + e.what());
    }
}

/// Two-space indentation plus trailing newline; the byte-exact form of every
/// JSON artifact.
inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline std::string kind_code(VarKind kind) {
    switch (kind) {
        case VarKind::monitored: return "I";
        case VarKind::controlled: return "O";
        case VarKind::monitored_controlled: return "IO";
        case VarKind::factor: return "F";
    }
    return "?";
}

inline VarKind parse_kind(const std::string& code) {
    if (code == "I") return VarKind::monitored;
    if (code == "O") return VarKind::controlled;
    if (code == "IO") return VarKind::monitored_controlled;
    if (code == "F") return VarKind::factor;
    throw FormatError("interface: unknown variable kind '" + code + "'");
}

inline InterfaceSpec interface_from_json(const Json& j) {
    std::vector<Sort> sorts;
    for (const auto& s : detail::require_array(j, "sorts", "interface")) {
        Sort sort{detail::require_string(s, "name", "interface sort"), {}};
        for (const auto& v : detail::require_array(s, "values", "interface sort")) {
            if (!v.is_string()) throw FormatError("interface: sort values must be strings");
            sort.values.push_back(v.get<std::string>());
        }
        sorts.push_back(std::move(sort));
    }
    std::vector<VarDecl> vars;
    for (const auto& v : detail::require_array(j, "vars", "interface")) {
        VarDecl decl;
        decl.name = detail::require_string(v, "name", "interface var");
        std::string sort = detail::require_string(v, "sort", "interface var");
        auto it = std::find_if(sorts.begin(), sorts.end(), [&](const Sort& s) { return s.name == sort; });
        if (it == sorts.end()) {
            throw ModelError("interface: variable '" + decl.name + "' has unknown sort '" + sort + "'");
        }
        decl.sort = static_cast<int>(it - sorts.begin());
        decl.kind = parse_kind(detail::require_string(v, "kind", "interface var"));
        vars.push_back(std::move(decl));
    }
    return InterfaceSpec(std::move(sorts), std::move(vars));
}

inline Json interface_to_json(const InterfaceSpec& iface) {
    Json sorts = Json::array();
    for (const auto& s : iface.sorts()) {
        sorts.push_back(Json{{"name", s.name}, {"values", s.values}});
    }
    Json vars = Json::array();
    for (const auto& v : iface.vars()) {
        vars.push_back(Json{{"name", v.name},
                            {"sort", iface.sorts().at(static_cast<std::size_t>(v.sort)).name},
                            {"kind", kind_code(v.kind)}});
    }
    return Json{{"sorts", std::move(sorts)}, {"vars", std::move(vars)}};
}

inline InterfaceSpec load_interface(const std::filesystem::path& path) {
    return interface_from_json(parse_json(read_file(path), path.string()));
}

/// `{"var": "value", ...}` in declaration order.
inline Json valuation_to_json(const Valuation& val, const InterfaceSpec& iface) {
    Json out = Json::object();
    for (int v : val.bound_vars()) {
        out[iface.var(v).name] = iface.sort_of(v).values.at(static_cast<std::size_t>(val[v]));
    }
    return out;
}

inline Valuation valuation_from_json(const Json& j, const InterfaceSpec& iface) {
    if (!j.is_object()) throw FormatError("valuation must be a JSON object");
    Valuation out(iface.var_count());
    for (const auto& [name, value] : j.items()) {
        auto var = iface.find_var(name);
        if (!var) throw ModelError("unknown variable '" + name + "'");
        if (!value.is_string()) throw FormatError("value of '" + name + "' must be a string");
        auto index = iface.sort_of(*var).find(value.get<std::string>());
        if (!index) {
            throw ModelError("value '" + value.get<std::string>() + "' is not in the sort of '" + name + "'");
        }
        out.bind(*var, *index);
    }
    return out;
}

/// Idle outputs serialize as the reserved symbol string.
inline Json output_to_json(const OutputValuation& o, const InterfaceSpec& iface) {
    if (!o) return Json(std::string(kIdleSymbol));
    return valuation_to_json(*o, iface);
}

inline OutputValuation output_from_json(const Json& j, const InterfaceSpec& iface) {
    if (j.is_string() && j.get<std::string>() == kIdleSymbol) return std::nullopt;
    Valuation v = valuation_from_json(j, iface);
    if (!v.binds_exactly(iface.outputs())) {
        throw ModelError("output must bind exactly the controlled variables: " + describe(v, iface));
    }
    return v;
}

}  // namespace supkit
