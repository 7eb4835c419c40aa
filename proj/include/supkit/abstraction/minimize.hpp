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
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "supkit/abstraction/fsm.hpp"

namespace supkit {

/// States reachable from the initial state, in ascending index order.
inline std::vector<int> reachable_states(const Fsm& m) {
    std::vector<bool> seen(static_cast<std::size_t>(m.state_count()), false);
    std::deque<int> queue{m.initial()};
    seen[static_cast<std::size_t>(m.initial())] = true;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int x = 0; x < m.input_count(); ++x) {
            int t = m.edge(s, x).target;
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = true;
                queue.push_back(t);
            }
        }
    }
    std::vector<int> out;
    for (int s = 0; s < m.state_count(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) out.push_back(s);
    }
    return out;
}

/// Moore partition refinement over the reachable part.
///
/// Each block of equivalent states becomes one state named after its
/// lexicographically smallest member. Blocks keep the relative order of
/// their first member in `m`.
inline Fsm minimize(const Fsm& m) {
    const std::vector<int> live = reachable_states(m);
    const int k = m.input_count();
    std::vector<int> block(static_cast<std::size_t>(m.state_count()), -1);

    // Initial partition: identical output rows.
    {
        std::map<std::vector<int>, int> ids;
        for (int s : live) {
            std::vector<int> row;
            for (int x = 0; x < k; ++x) row.push_back(m.edge(s, x).output);
            auto [it, _] = ids.emplace(std::move(row), static_cast<int>(ids.size()));
            block[static_cast<std::size_t>(s)] = it->second;
        }
    }
    std::size_t count = 0;
    while (true) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(block.size(), -1);
        for (int s : live) {
            std::vector<int> signature{block[static_cast<std::size_t>(s)]};
            for (int x = 0; x < k; ++x) signature.push_back(block[static_cast<std::size_t>(m.edge(s, x).target)]);
            auto [it, _] = ids.emplace(std::move(signature), static_cast<int>(ids.size()));
            next[static_cast<std::size_t>(s)] = it->second;
        }
        block = std::move(next);
        if (ids.size() == count) break;
        count = ids.size();
    }

    // Renumber blocks by first member and pick representatives.
    std::map<int, int> order;
    std::vector<std::string> names;
    for (int s : live) {
        int b = block[static_cast<std::size_t>(s)];
        auto [it, inserted] = order.emplace(b, static_cast<int>(names.size()));
        const std::string& name = m.states()[static_cast<std::size_t>(s)];
        if (inserted) {
            names.push_back(name);
        } else if (name < names[static_cast<std::size_t>(it->second)]) {
            names[static_cast<std::size_t>(it->second)] = name;
        }
    }
    std::vector<Fsm::Edge> table(names.size() * static_cast<std::size_t>(k));
    std::vector<bool> filled(names.size(), false);
    for (int s : live) {
        int b = order.at(block[static_cast<std::size_t>(s)]);
        if (filled[static_cast<std::size_t>(b)]) continue;
        filled[static_cast<std::size_t>(b)] = true;
        for (int x = 0; x < k; ++x) {
            const auto& e = m.edge(s, x);
            table[static_cast<std::size_t>(b) * static_cast<std::size_t>(k) + static_cast<std::size_t>(x)] =
                Fsm::Edge{e.output, order.at(block[static_cast<std::size_t>(e.target)])};
        }
    }
    return Fsm(std::move(names), m.inputs(), m.outputs(), order.at(block[static_cast<std::size_t>(m.initial())]),
               std::move(table));
}

}  // namespace supkit
