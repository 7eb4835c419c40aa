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

// Hand-rolled generators for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "supkit/abstraction/fsm.hpp"
#include "supkit/abstraction/minimize.hpp"
#include "supkit/core/valuation.hpp"
#include "supkit/policy/policy.hpp"

namespace supkit::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<std::string> names(const char* prefix, int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

/// Uniform random complete machine; may be non-minimal or partly unreachable.
inline Fsm random_fsm(Rng& rng, int n, int k, int outputs) {
    std::vector<Fsm::Edge> table;
    for (int i = 0; i < n * k; ++i) table.push_back(Fsm::Edge{uniform(rng, 0, outputs - 1), uniform(rng, 0, n - 1)});
    return Fsm(names("s", n), names("c", k), names("o", outputs), 0, std::move(table));
}

/// Random machine with exactly n reachable, pairwise distinguishable states.
inline Fsm random_minimal_fsm(Rng& rng, int n, int k, int outputs) {
    while (true) {
        Fsm m = random_fsm(rng, n, k, outputs);
        if (minimize(m).state_count() == n) return m;
    }
}

/// Two states, inputs {c0, c1}: c0 toggles and reports the new state,
/// c1 stays and reports the current state.
inline Fsm toggle_machine() {
    return Fsm({"s0", "s1"}, {"c0", "c1"}, {"o0", "o1"}, 0,
               {{1, 1}, {0, 0}, {0, 0}, {1, 1}});
}

/// Random interface: 1-3 inputs, 1-2 outputs, 1-2 factors, small sorts.
inline InterfaceSpec random_interface(Rng& rng) {
    std::vector<Sort> sorts{Sort{"Phase", {"0", "a", "m"}}};
    std::vector<VarDecl> vars;
    const int n_in = uniform(rng, 1, 3);
    const int n_out = uniform(rng, 1, 2);
    const int n_f = uniform(rng, 1, 2);
    for (int i = 0; i < n_in + n_out; ++i) {
        const int size = uniform(rng, 2, 3);
        Sort s{"S" + std::to_string(i), {}};
        for (int v = 0; v < size; ++v) s.values.push_back("v" + std::to_string(v));
        sorts.push_back(std::move(s));
        const bool input = i < n_in;
        vars.push_back(VarDecl{(input ? "x" : "y") + std::to_string(input ? i : i - n_in), i + 1,
                               input ? VarKind::monitored : VarKind::controlled});
    }
    const char* factor_names[] = {"HS", "HC"};
    for (int f = 0; f < n_f; ++f) vars.push_back(VarDecl{factor_names[f], 0, VarKind::factor});
    return InterfaceSpec(std::move(sorts), std::move(vars));
}

/// Random controller fragment over `iface`: a random set of risk states,
/// each reacting to a random subset of the input valuations.
inline std::vector<PolicyTransition> random_controller(Rng& rng, const InterfaceSpec& iface, Valuation& initial) {
    std::vector<Valuation> risk;
    for_each_valuation(iface, iface.factors(), [&](const Valuation& f) {
        if (risk.empty() || uniform(rng, 0, 2) == 0) risk.push_back(f);
    });
    std::vector<Valuation> inputs;
    for_each_valuation(iface, iface.inputs(), [&](const Valuation& i) { inputs.push_back(i); });
    std::vector<Valuation> outputs;
    for_each_valuation(iface, iface.outputs(), [&](const Valuation& o) { outputs.push_back(o); });

    auto merge = [&](const Valuation& a, const Valuation& b, const Valuation& c) {
        Valuation out(iface.var_count());
        for (const auto* part : {&a, &b, &c}) {
            for (int v : part->bound_vars()) out.bind(v, (*part)[v]);
        }
        return out;
    };
    std::vector<PolicyTransition> ts;
    for (const auto& f : risk) {
        const Valuation o = outputs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(outputs.size()) - 1))];
        for (const auto& i : inputs) {
            if (uniform(rng, 0, 1) == 0) continue;
            const auto& g = risk[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(risk.size()) - 1))];
            const auto& o2 = outputs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(outputs.size()) - 1))];
            ts.push_back(PolicyTransition{merge(i, o, f), merge(i, o2, g), "act", 1.0, Owner::controller});
        }
    }
    if (ts.empty()) {
        ts.push_back(PolicyTransition{merge(inputs[0], outputs[0], risk[0]), merge(inputs[0], outputs[0], risk[0]),
                                      "act", 1.0, Owner::controller});
    }
    initial = merge(inputs[0], outputs[0], risk[0]);
    return ts;
}

}  // namespace supkit::testing
