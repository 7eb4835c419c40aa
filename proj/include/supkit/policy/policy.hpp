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

#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/core/io.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/core/valuation.hpp"
#include "supkit/policy/sfsm.hpp"

namespace supkit {

enum class Owner { controller, environment };

/// One step of the synthesized DTMC. Both valuations are total over all
/// declared variables.
struct PolicyTransition {
    Valuation source;
    Valuation target;
    std::string action;
    double prob = 1.0;
    Owner owner = Owner::controller;
};

struct Policy {
    InterfaceSpec iface;
    Valuation initial;
    std::vector<PolicyTransition> transitions;
    // Set when the interface was referenced by path rather than inlined.
    std::optional<std::filesystem::path> interface_path;
};

namespace detail {

inline std::vector<int> all_vars(const InterfaceSpec& iface) {
    std::vector<int> vars(iface.var_count());
    for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<int>(i);
    return vars;
}

// Accepts a JSON number or a "p/q" string.
inline double parse_probability(const Json& j, std::size_t index) {
    double p = 0.0;
    if (j.is_number()) {
        p = j.get<double>();
    } else if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        long long num = 0;
        long long den = 1;
        auto parse = [&](std::string_view part, long long& out) {
            auto res = std::from_chars(part.data(), part.data() + part.size(), out);
            return res.ec == std::errc{} && res.ptr == part.data() + part.size();
        };
        std::string_view sv(s);
        bool ok = slash == std::string::npos ? parse(sv, num)
                                             : parse(sv.substr(0, slash), num) && parse(sv.substr(slash + 1), den);
        if (!ok || den == 0) {
            throw FormatError("policy: transition #" + std::to_string(index) + " has malformed prob '" + s + "'");
        }
        p = static_cast<double>(num) / static_cast<double>(den);
    } else {
        throw FormatError("policy: transition #" + std::to_string(index) + " prob must be a number");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw ModelError("policy: transition #" + std::to_string(index) + " prob outside (0,1]");
    }
    return p;
}

}  // namespace detail

/// Reads the policy body against an already-resolved interface.
inline Policy policy_from_json(const Json& j, InterfaceSpec iface) {
    Policy policy;
    policy.iface = std::move(iface);
    const auto vars = detail::all_vars(policy.iface);
    auto total = [&](const Json& v, const std::string& what) {
        Valuation val = valuation_from_json(v, policy.iface);
        if (!val.binds_exactly(vars)) {
            throw ModelError("policy: " + what + " must bind every declared variable");
        }
        return val;
    };
    policy.initial = total(detail::require(j, "initial", "policy"), "initial state");
    std::size_t index = 0;
    std::size_t controller = 0;
    for (const auto& t : detail::require_array(j, "transitions", "policy")) {
        const std::string where = "transition #" + std::to_string(index);
        PolicyTransition pt;
        pt.source = total(detail::require(t, "source", "policy transition"), where + " source");
        pt.target = total(detail::require(t, "target", "policy transition"), where + " target");
        pt.action = detail::require_string(t, "action", "policy transition");
        pt.prob = detail::parse_probability(detail::require(t, "prob", "policy transition"), index);
        std::string owner = detail::require_string(t, "owner", "policy transition");
        if (owner == "C") {
            pt.owner = Owner::controller;
            ++controller;
            if (pt.prob != 1.0) {
                throw ModelError("policy: controller " + where + " has prob != 1");
            }
        } else if (owner == "E") {
            pt.owner = Owner::environment;
        } else {
            throw FormatError("policy: " + where + " has unknown owner '" + owner + "'");
        }
        policy.transitions.push_back(std::move(pt));
        ++index;
    }
    if (controller == 0) {
        throw ModelError("policy: no controller transitions");
    }
    return policy;
}

/// The "interface" field is either an inline interface object or a path
/// relative to the policy file.
inline Policy load_policy(const std::filesystem::path& path) {
    Json j = parse_json(read_file(path), path.string());
    const Json& ref = detail::require(j, "interface", "policy");
    if (ref.is_string()) {
        std::filesystem::path iface_path = path.parent_path() / ref.get<std::string>();
        Policy p = policy_from_json(j, load_interface(iface_path));
        p.interface_path = iface_path;
        return p;
    }
    return policy_from_json(j, interface_from_json(ref));
}

/// Translates the controller fragment into the reference SFSM.
///
/// Each controller transition (s, s') becomes (s|F, guard(s|I), s'|O, s'|F)
/// where the guard is the total conjunction over the monitored variables.
/// Transitions agreeing on (s|F, s|I) must agree on the update; otherwise
/// the offending pair is reported.
inline Sfsm derive_reference(std::span<const PolicyTransition> transitions, const Valuation& initial,
                             const InterfaceSpec& iface) {
    struct Update {
        Valuation output;
        Valuation target;
        std::size_t witness;
    };
    std::map<std::pair<Valuation, Valuation>, Update> classes;
    std::set<Valuation> states;
    std::size_t controller = 0;
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const auto& t = transitions[i];
        if (t.owner != Owner::controller) continue;
        ++controller;
        Valuation src = t.source.restrict_to(iface.factors());
        Valuation input = t.source.restrict_to(iface.inputs());
        Update update{t.target.restrict_to(iface.outputs()), t.target.restrict_to(iface.factors()), i};
        auto [it, inserted] = classes.emplace(std::pair{src, input}, update);
        if (!inserted && (it->second.output != update.output || it->second.target != update.target)) {
            throw ModelError("determinism violation: controller transitions #" + std::to_string(it->second.witness) +
                             " and #" + std::to_string(i) + " leave risk state '" + risk_state_name(src, iface) +
                             "' on input " + describe(input, iface) + " with different updates");
        }
        states.insert(src);
        states.insert(update.target);
    }
    if (controller == 0) {
        throw ModelError("no controller transitions");
    }
    states.insert(initial.restrict_to(iface.factors()));

    Sfsm r;
    std::map<std::string, Valuation> names;
    for (const auto& s : states) {
        std::string name = risk_state_name(s, iface);
        if (!names.emplace(name, s).second) {
            throw ModelError("risk state name '" + name + "' is ambiguous");
        }
        r.states.push_back(RiskState{name, s});
    }
    r.initial = risk_state_name(initial.restrict_to(iface.factors()), iface);
    for (const auto& [key, update] : classes) {
        r.transitions.push_back(SfsmTransition{risk_state_name(key.first, iface),
                                               conjunction_of(key.second, iface.inputs()), update.output,
                                               risk_state_name(update.target, iface)});
    }
    return r;
}

}  // namespace supkit
