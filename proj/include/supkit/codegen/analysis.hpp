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

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "supkit/codegen/gcl.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/policy/sfsm.hpp"

namespace supkit {

/// Static conformance obligations of generated code against the reference.
struct StaticAnalysisReport {
    // Same multiset of canonical guard strings.
    bool guards_match = true;
    std::vector<std::string> guards_missing;  // in the reference only
    std::vector<std::string> guards_extra;    // in the program only

    // Same set of control-state identifiers and the same initial state.
    bool states_match = true;
    std::vector<std::string> states_missing;
    std::vector<std::string> states_extra;
    bool initial_match = true;
    int state_count_m = 0;
    std::optional<int> reference_n;  // minimized state count, when known

    // Every command is one canonical top-level line.
    bool flat_structure_ok = true;
    std::vector<std::string> non_canonical_lines;

    // Same (state, guard, next) control points.
    bool control_flow_match = true;
    std::vector<std::string> control_flow_diff;

    bool m_equals_n() const { return reference_n && *reference_n == state_count_m; }

    bool passed() const {
        return guards_match && states_match && initial_match && flat_structure_ok && control_flow_match;
    }
};

namespace detail {

template <class T>
std::vector<T> multiset_minus(std::multiset<T> a, const std::multiset<T>& b) {
    for (const auto& x : b) {
        auto it = a.find(x);
        if (it != a.end()) a.erase(it);
    }
    return {a.begin(), a.end()};
}

}  // namespace detail

/// Compares the program text structure with the idle-completed reference.
/// `reference_n` is the state count of the minimized abstraction.
inline StaticAnalysisReport analyze(const GclProgram& p, const Sfsm& completed, const InterfaceSpec& iface,
                                    std::optional<int> reference_n = std::nullopt) {
    StaticAnalysisReport r;
    r.reference_n = reference_n;

    std::multiset<std::string> code_guards;
    std::multiset<std::string> ref_guards;
    using Point = std::tuple<std::string, std::string, std::string>;
    std::multiset<Point> code_flow;
    std::multiset<Point> ref_flow;
    for (const auto& c : p.commands) {
        std::string g = canonical_print(c.guard, iface);
        code_guards.insert(g);
        code_flow.emplace(c.state_test, g, c.next_state);
        if (!c.source_line.empty() && c.source_line != render_command(c, iface)) {
            r.non_canonical_lines.push_back(c.source_line);
        }
    }
    for (const auto& t : completed.transitions) {
        std::string g = canonical_print(t.guard, iface);
        ref_guards.insert(g);
        ref_flow.emplace(t.src, g, t.tgt);
    }
    r.guards_missing = detail::multiset_minus(ref_guards, code_guards);
    r.guards_extra = detail::multiset_minus(code_guards, ref_guards);
    r.guards_match = r.guards_missing.empty() && r.guards_extra.empty();

    const std::set<std::string> code_states = p.state_identifiers();
    std::set<std::string> ref_states;
    for (const auto& s : completed.states) ref_states.insert(s.name);
    std::set_difference(ref_states.begin(), ref_states.end(), code_states.begin(), code_states.end(),
                        std::back_inserter(r.states_missing));
    std::set_difference(code_states.begin(), code_states.end(), ref_states.begin(), ref_states.end(),
                        std::back_inserter(r.states_extra));
    r.states_match = r.states_missing.empty() && r.states_extra.empty();
    r.initial_match = p.initial_state == completed.initial;
    r.state_count_m = static_cast<int>(code_states.size());

    r.flat_structure_ok = r.non_canonical_lines.empty();

    auto render = [](const Point& pt, const char* sign) {
        return std::string(sign) + " state=" + std::get<0>(pt) + " & " + std::get<1>(pt) + " ; next=" + std::get<2>(pt);
    };
    for (const auto& pt : detail::multiset_minus(ref_flow, code_flow)) r.control_flow_diff.push_back(render(pt, "-"));
    for (const auto& pt : detail::multiset_minus(code_flow, ref_flow)) r.control_flow_diff.push_back(render(pt, "+"));
    r.control_flow_match = r.control_flow_diff.empty();
    return r;
}

inline Json analysis_to_json(const StaticAnalysisReport& r) {
    Json j{{"passed", r.passed()},
           {"guards_match", r.guards_match},
           {"guards_missing", r.guards_missing},
           {"guards_extra", r.guards_extra},
           {"states_match", r.states_match},
           {"states_missing", r.states_missing},
           {"states_extra", r.states_extra},
           {"initial_match", r.initial_match},
           {"state_count_m", r.state_count_m}};
    if (r.reference_n) {
        j["reference_n"] = *r.reference_n;
        j["m_equals_n"] = r.m_equals_n();
    }
    j["flat_structure_ok"] = r.flat_structure_ok;
    j["non_canonical_lines"] = r.non_canonical_lines;
    j["control_flow_match"] = r.control_flow_match;
    j["control_flow_diff"] = r.control_flow_diff;
    return j;
}

}  // namespace supkit
