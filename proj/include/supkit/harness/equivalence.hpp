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

#include <map>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "supkit/abstraction/fsm.hpp"
#include "supkit/core/error.hpp"
#include "supkit/testgen/suite.hpp"

namespace supkit {

struct EquivalenceResult {
    bool equivalent = true;
    Word counterexample;  // shortest, when not equivalent
};

/// Breadth-first search of the product machine. Outputs are compared by
/// symbol name, so the output alphabets may differ. Among shortest
/// counterexamples the lexicographically smallest is returned.
inline EquivalenceResult fsm_equivalent(const Fsm& a, const Fsm& b) {
    if (a.inputs() != b.inputs()) throw ModelError("fsm_equivalent: input alphabets differ");
    const int k = a.input_count();
    const auto key = [&](int p, int q) { return static_cast<std::size_t>(p) * static_cast<std::size_t>(b.state_count()) + static_cast<std::size_t>(q); };
    struct Parent {
        std::size_t from;
        int input;
    };
    std::vector<std::optional<Parent>> parent(static_cast<std::size_t>(a.state_count()) * static_cast<std::size_t>(b.state_count()));
    std::vector<char> seen(parent.size(), 0);
    std::queue<std::pair<int, int>> frontier;
    const std::size_t start = key(a.initial(), b.initial());
    seen[start] = 1;
    frontier.emplace(a.initial(), b.initial());
    auto trace = [&](std::size_t node) {
        Word w;
        while (parent[node]) {
            w.push_back(parent[node]->input);
            node = parent[node]->from;
        }
        return Word(w.rbegin(), w.rend());
    };
    while (!frontier.empty()) {
        auto [p, q] = frontier.front();
        frontier.pop();
        const std::size_t here = key(p, q);
        for (int x = 0; x < k; ++x) {
            const auto& ea = a.edge(p, x);
            const auto& eb = b.edge(q, x);
            if (a.outputs()[static_cast<std::size_t>(ea.output)] != b.outputs()[static_cast<std::size_t>(eb.output)]) {
                Word w = trace(here);
                w.push_back(x);
                return {false, std::move(w)};
            }
            const std::size_t next = key(ea.target, eb.target);
            if (!seen[next]) {
                seen[next] = 1;
                parent[next] = Parent{here, x};
                frontier.emplace(ea.target, eb.target);
            }
        }
    }
    return {};
}

}  // namespace supkit
