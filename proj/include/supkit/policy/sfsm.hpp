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
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/core/valuation.hpp"

namespace supkit {

/// A risk state: a valuation over the factor variables, named by its
/// non-inactive phases in declaration order ("HSm", "HSaHRWm"); the all
/// inactive state is "0".
struct RiskState {
    std::string name;
    Valuation phases;
};

struct SfsmTransition {
    std::string src;
    GuardExpr guard;
    OutputValuation output;  // nullopt: idle
    std::string tgt;
};

/// Deterministic symbolic FSM used as the test reference.
struct Sfsm {
    std::vector<RiskState> states;
    std::string initial;
    std::vector<SfsmTransition> transitions;

    std::optional<std::size_t> state_index(std::string_view name) const {
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (states[i].name == name) return i;
        }
        return std::nullopt;
    }
};

inline std::string risk_state_name(const Valuation& phases, const InterfaceSpec& iface) {
    std::string name;
    for (int f : iface.factors()) {
        const std::string& phase = iface.sort_of(f).values.at(static_cast<std::size_t>(phases[f]));
        if (phase != kInactivePhase) name += iface.var(f).name + phase;
    }
    return name.empty() ? std::string(kInactivePhase) : name;
}

namespace detail {

inline void parse_state_from(std::string_view name, std::size_t pos, std::size_t factor,
                             const InterfaceSpec& iface, Valuation& current,
                             std::vector<Valuation>& found) {
    auto factors = iface.factors();
    if (factor == factors.size()) {
        if (pos == name.size()) found.push_back(current);
        return;
    }
    int f = factors[factor];
    const Sort& sort = iface.sort_of(f);
    const std::string& fname = iface.var(f).name;
    for (std::size_t value = 0; value < sort.values.size(); ++value) {
        const std::string& phase = sort.values[value];
        if (phase == kInactivePhase) {
            current.bind(f, static_cast<int>(value));
            parse_state_from(name, pos, factor + 1, iface, current, found);
        } else if (name.substr(pos).starts_with(fname + phase)) {
            current.bind(f, static_cast<int>(value));
            parse_state_from(name, pos + fname.size() + phase.size(), factor + 1, iface, current, found);
        }
    }
}

}  // namespace detail

/// Inverse of risk_state_name. Throws if the name is not produced by exactly
/// one factor valuation.
inline Valuation parse_risk_state(std::string_view name, const InterfaceSpec& iface) {
    std::vector<Valuation> found;
    Valuation current(iface.var_count());
    if (name == kInactivePhase) {
        for (int f : iface.factors()) current.bind(f, *iface.sort_of(f).find(kInactivePhase));
        return current;
    }
    detail::parse_state_from(name, 0, 0, iface, current, found);
    // The all-inactive valuation only answers to "0".
    std::erase_if(found, [&](const Valuation& v) { return risk_state_name(v, iface) != name; });
    if (found.size() != 1) {
        throw ModelError("'" + std::string(name) + "' does not name exactly one risk state");
    }
    return found.front();
}

/// Throws ModelError with a witness input if two outgoing guards of some
/// state are simultaneously satisfiable, or if a transition names an unknown
/// state.
inline void check_deterministic(const Sfsm& r, const InterfaceSpec& iface) {
    if (!r.state_index(r.initial)) {
        throw ModelError("initial state '" + r.initial + "' is not a state");
    }
    std::map<std::string, std::vector<const SfsmTransition*>> outgoing;
    for (const auto& t : r.transitions) {
        if (!r.state_index(t.src) || !r.state_index(t.tgt)) {
            throw ModelError("transition " + t.src + " -> " + t.tgt + " names an unknown state");
        }
        outgoing[t.src].push_back(&t);
    }
    for (const auto& [state, ts] : outgoing) {
        for_each_valuation(iface, iface.inputs(), [&](const Valuation& s) {
            const SfsmTransition* enabled = nullptr;
            for (const auto* t : ts) {
                if (!eval_guard(t->guard, s)) continue;
                if (enabled != nullptr) {
                    throw ModelError("nondeterminism in state '" + state + "': guards '" +
                                     canonical_print(enabled->guard, iface) + "' and '" +
                                     canonical_print(t->guard, iface) + "' both hold for " +
                                     describe(s, iface));
                }
                enabled = t;
            }
        });
    }
}

inline Json sfsm_to_json(const Sfsm& r, const InterfaceSpec& iface) {
    Json states = Json::array();
    for (const auto& s : r.states) states.push_back(s.name);
    Json transitions = Json::array();
    for (const auto& t : r.transitions) {
        transitions.push_back(Json{{"src", t.src},
                                   {"guard", canonical_print(t.guard, iface)},
                                   {"output", output_to_json(t.output, iface)},
                                   {"tgt", t.tgt}});
    }
    return Json{{"states", std::move(states)}, {"initial", r.initial}, {"transitions", std::move(transitions)}};
}

inline Sfsm sfsm_from_json(const Json& j, const InterfaceSpec& iface) {
    Sfsm r;
    for (const auto& s : detail::require_array(j, "states", "sfsm")) {
        if (!s.is_string()) throw FormatError("sfsm: state names must be strings");
        std::string name = s.get<std::string>();
        r.states.push_back(RiskState{name, parse_risk_state(name, iface)});
    }
    r.initial = detail::require_string(j, "initial", "sfsm");
    for (const auto& t : detail::require_array(j, "transitions", "sfsm")) {
        r.transitions.push_back(SfsmTransition{detail::require_string(t, "src", "sfsm transition"),
                                               parse_guard(detail::require_string(t, "guard", "sfsm transition"), iface),
                                               output_from_json(detail::require(t, "output", "sfsm transition"), iface),
                                               detail::require_string(t, "tgt", "sfsm transition")});
    }
    check_deterministic(r, iface);
    return r;
}

}  // namespace supkit
