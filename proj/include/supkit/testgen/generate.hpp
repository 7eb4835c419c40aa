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
#include <optional>
#include <utility>
#include <vector>

#include "supkit/abstraction/fsm.hpp"
#include "supkit/abstraction/minimize.hpp"
#include "supkit/testgen/suite.hpp"

namespace supkit {

namespace detail {

struct TraversalNode {
    int node;
    int state;
    Word word;
};

// Distinguishing suffix candidates for (a, b): every word whose last symbol
// is the first one on which the outputs differ, up to `max_length`.
inline void enumerate_suffixes(const Fsm& m, int a, int b, int max_length, Word& current, std::vector<Word>& out) {
    if (static_cast<int>(current.size()) == max_length) return;
    for (int x = 0; x < m.input_count(); ++x) {
        const auto& ea = m.edge(a, x);
        const auto& eb = m.edge(b, x);
        current.push_back(x);
        if (ea.output != eb.output) {
            out.push_back(current);
        } else if (ea.target != eb.target) {
            enumerate_suffixes(m, ea.target, eb.target, max_length, current, out);
        }
        current.pop_back();
    }
}

// True if some word γ with both a·γ and b·γ in the tree separates the
// states reached at a and b.
inline bool separated_in_tree(const PrefixTree& tree, const Fsm& m, int node_a, int state_a, int node_b,
                              int state_b) {
    for (int x = 0; x < m.input_count(); ++x) {
        auto ca = tree.child(node_a, x);
        auto cb = tree.child(node_b, x);
        if (!ca || !cb) continue;
        const auto& ea = m.edge(state_a, x);
        const auto& eb = m.edge(state_b, x);
        if (ea.output != eb.output) return true;
        if (ea.target != eb.target && separated_in_tree(tree, m, *ca, ea.target, *cb, eb.target)) return true;
    }
    return false;
}

inline std::vector<TraversalNode> build_traversal_set(PrefixTree& tree, const Fsm& ref, int depth) {
    const StateCover cover = state_cover(ref);
    const std::vector<Word> extensions = words_up_to(ref.input_count(), depth);
    std::vector<TraversalNode> out;
    std::vector<bool> listed;
    for (int s : cover.order) {
        for (const auto& u : extensions) {
            Word w = cover.access[static_cast<std::size_t>(s)];
            w.insert(w.end(), u.begin(), u.end());
            int node = tree.insert(w);
            if (static_cast<std::size_t>(node) >= listed.size()) listed.resize(tree.size(), false);
            if (listed[static_cast<std::size_t>(node)]) continue;
            listed[static_cast<std::size_t>(node)] = true;
            out.push_back(TraversalNode{node, ref.state_after(w), std::move(w)});
        }
    }
    std::sort(out.begin(), out.end(), [](const TraversalNode& a, const TraversalNode& b) {
        return a.word.size() != b.word.size() ? a.word.size() < b.word.size() : a.word < b.word;
    });
    return out;
}

}  // namespace detail

/// H-Method suite for the minimal reference `ref` and fault domain bound m.
///
/// The traversal set V·Σ^{≤m−n+1} is built from a breadth-first state
/// cover V. Every pair of traversal words reaching different states is then
/// separated by a common suffix. A pair already separated inside the tree
/// costs nothing; otherwise the suffix adding the fewest tree nodes wins,
/// with ties going to the shorter and then the lexicographically smaller
/// word.
inline TestSuite generate_h(const Fsm& ref, int m) {
    detail::check_reference(ref, m);
    if (minimize(ref).state_count() != ref.state_count()) {
        throw ModelError("H-Method requires a minimal reference machine");
    }
    const int n = ref.state_count();
    PrefixTree tree(ref.input_count());
    const auto traversal = detail::build_traversal_set(tree, ref, m - n + 1);

    for (std::size_t i = 0; i < traversal.size(); ++i) {
        for (std::size_t j = i + 1; j < traversal.size(); ++j) {
            const auto& a = traversal[i];
            const auto& b = traversal[j];
            if (a.state == b.state) continue;
            if (detail::separated_in_tree(tree, ref, a.node, a.state, b.node, b.state)) continue;

            auto shortest = shortest_distinguishing(ref, a.state, b.state);
            int depth = static_cast<int>(shortest->size());
            // One extra symbol of look-ahead when the candidate set stays small.
            double budget = 1.0;
            for (int d = 0; d <= depth; ++d) budget *= ref.input_count();
            if (budget <= 4096.0) ++depth;
            std::vector<Word> candidates;
            Word scratch;
            detail::enumerate_suffixes(ref, a.state, b.state, depth, scratch, candidates);

            const Word* best = nullptr;
            std::size_t best_cost = 0;
            for (const auto& gamma : candidates) {
                std::size_t cost = tree.missing(gamma, a.node) + tree.missing(gamma, b.node);
                bool better = best == nullptr || cost < best_cost ||
                              (cost == best_cost && (gamma.size() < best->size() ||
                                                     (gamma.size() == best->size() && gamma < *best)));
                if (better) {
                    best = &gamma;
                    best_cost = cost;
                }
            }
            tree.insert(*best, a.node);
            tree.insert(*best, b.node);
        }
    }

    TestSuite suite;
    suite.alphabet = ref.inputs();
    suite.cases = tree.leaves();
    suite.meta = SuiteMeta{Method::h, m, n, {}};
    return suite;
}

/// Characterization set: one shortest separating word per state pair,
/// deduplicated and sorted. {ε} for single-state machines.
inline std::vector<Word> characterization_set(const Fsm& ref) {
    std::vector<Word> out;
    for (int a = 0; a < ref.state_count(); ++a) {
        for (int b = a + 1; b < ref.state_count(); ++b) {
            auto w = shortest_distinguishing(ref, a, b);
            if (w) out.push_back(std::move(*w));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) out.emplace_back();
    return out;
}

/// W-Method baseline: V·Σ^{≤m−n+1}·W.
inline TestSuite generate_w(const Fsm& ref, int m) {
    detail::check_reference(ref, m);
    const int n = ref.state_count();
    const std::vector<Word> w = characterization_set(ref);
    const StateCover cover = state_cover(ref);
    const std::vector<Word> extensions = words_up_to(ref.input_count(), m - n + 1);
    PrefixTree tree(ref.input_count());
    for (int s : cover.order) {
        for (const auto& u : extensions) {
            Word prefix = cover.access[static_cast<std::size_t>(s)];
            prefix.insert(prefix.end(), u.begin(), u.end());
            int node = tree.insert(prefix);
            for (const auto& suffix : w) tree.insert(suffix, node);
        }
    }
    TestSuite suite;
    suite.alphabet = ref.inputs();
    suite.cases = tree.leaves();
    suite.meta = SuiteMeta{Method::w, m, n, {}};
    return suite;
}

}  // namespace supkit
