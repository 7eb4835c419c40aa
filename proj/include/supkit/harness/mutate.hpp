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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "supkit/abstraction/fsm.hpp"
#include "supkit/core/error.hpp"
#include "supkit/core/mutation.hpp"

namespace supkit {

/// Faulted copy of `ref`, deterministic in `seed`. An output fault changes
/// one output (to a fresh symbol when the alphabet has only one), a transfer
/// fault redirects one transition, and add-state redirects one transition
/// into a copy of its target whose row carries one output fault. The result
/// never has more than `m` states.
inline Fsm mutate(const Fsm& ref, MutationKind kind, std::uint64_t seed, int m) {
    std::mt19937_64 rng(seed);
    auto pick = [&rng](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    std::vector<std::string> states = ref.states();
    std::vector<std::string> outputs = ref.outputs();
    std::vector<Fsm::Edge> table = ref.table();
    const std::size_t k = ref.inputs().size();
    if (k == 0) throw ModelError("mutation: empty input alphabet");

    auto other_output = [&](int current) {
        if (outputs.size() == 1) {
            std::string fresh = "__mut__";
            outputs.push_back(fresh);
            return 1;
        }
        int o = static_cast<int>(pick(outputs.size() - 1));
        return o >= current ? o + 1 : o;
    };

    const std::size_t victim = pick(table.size());
    switch (kind) {
        case MutationKind::output:
            table[victim].output = other_output(table[victim].output);
            break;
        case MutationKind::transfer: {
            if (states.size() < 2) throw ModelError("mutation: transfer fault needs at least two states");
            int t = static_cast<int>(pick(states.size() - 1));
            table[victim].target = t >= table[victim].target ? t + 1 : t;
            break;
        }
        case MutationKind::add_state: {
            if (static_cast<int>(states.size()) + 1 > m) {
                throw ModelError("add-state mutation would exceed m = " + std::to_string(m));
            }
            std::string fresh = "mut";
            for (int i = 0; Fsm::find(states, fresh); ++i) fresh = "mut" + std::to_string(i);
            const int cloned = table[victim].target;
            const int added = static_cast<int>(states.size());
            states.push_back(fresh);
            for (std::size_t x = 0; x < k; ++x) table.push_back(table[static_cast<std::size_t>(cloned) * k + x]);
            table[victim].target = added;
            auto& changed = table[static_cast<std::size_t>(added) * k + pick(k)];
            changed.output = other_output(changed.output);
            break;
        }
    }
    return Fsm(std::move(states), ref.inputs(), std::move(outputs), ref.initial(), std::move(table));
}

}  // namespace supkit
