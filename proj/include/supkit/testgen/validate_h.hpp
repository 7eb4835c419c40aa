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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "supkit/abstraction/fsm.hpp"
#include "supkit/core/report.hpp"
#include "supkit/testgen/suite.hpp"

namespace supkit {

namespace detail {

// Everything in this namespace block is deliberately separate from the
// generators: the validator only needs the suite as a set of words and a
// way to run the reference.

inline std::string render_word(const Word& w, const std::vector<std::string>& alphabet) {
    if (w.empty()) return "ε";
    std::string out;
    for (int x : w) {
        if (!out.empty()) out += ' ';
        out += alphabet.at(static_cast<std::size_t>(x));
    }
    return out;
}

inline int run_to_state(const Fsm& m, int from, const Word& w, std::size_t begin = 0) {
    int s = from;
    for (std::size_t i = begin; i < w.size(); ++i) s = m.edge(s, w[i]).target;
    return s;
}

inline std::vector<int> outputs_from(const Fsm& m, int from, const Word& w, std::size_t begin) {
    std::vector<int> out;
    int s = from;
    for (std::size_t i = begin; i < w.size(); ++i) {
        out.push_back(m.edge(s, w[i]).output);
        s = m.edge(s, w[i]).target;
    }
    return out;
}

inline std::set<int> fixpoint_reachable(const Fsm& m) {
    std::set<int> reached{m.initial()};
    bool grew = true;
    while (grew) {
        grew = false;
        for (int s : std::set<int>(reached)) {
            for (int x = 0; x < m.input_count(); ++x) grew |= reached.insert(m.edge(s, x).target).second;
        }
    }
    return reached;
}

inline void append_extensions(const Word& base, int k, int remaining, std::vector<Word>& out) {
    out.push_back(base);
    if (remaining == 0) return;
    for (int x = 0; x < k; ++x) {
        Word next = base;
        next.push_back(x);
        append_extensions(next, k, remaining - 1, out);
    }
}

}  // namespace detail

/// Checks the H-condition on the prefix closure T of `suite`:
///  (a) every reachable state of `ref` is reached by some word of T;
///  (b) some state cover V ⊆ T has V·Σ^{≤m−n+1} ⊆ T;
///  (c) every two words of V ∪ V·Σ^{≤m−n+1} reaching different states have
///      a common suffix γ with αγ, βγ ∈ T on which the outputs differ.
/// For (b) each state's access word is the shortest, then lexicographically
/// smallest, word of T that reaches it and carries all extensions.
inline ValidationReport validate_h(const TestSuite& suite, const Fsm& ref) {
    if (suite.alphabet != ref.inputs()) {
        return ValidationReport::fail("alphabet", "suite alphabet differs from the reference inputs");
    }
    const int n = ref.state_count();
    if (suite.meta.n != n || suite.meta.m < n) {
        return ValidationReport::fail("meta", "suite records n=" + std::to_string(suite.meta.n) +
                                                  ", m=" + std::to_string(suite.meta.m) +
                                                  " but the reference has n=" + std::to_string(n));
    }
    const int depth = suite.meta.m - n + 1;
    const int k = ref.input_count();

    std::set<Word> closure{Word{}};
    for (const auto& c : suite.cases) {
        for (std::size_t len = 1; len <= c.size(); ++len) closure.emplace(c.begin(), c.begin() + static_cast<long>(len));
    }

    // Words of T grouped by the state they reach; std::set order is
    // lexicographic, so a stable sort by length gives (length, lex) order.
    std::map<int, std::vector<Word>> reaching;
    for (const auto& w : closure) reaching[detail::run_to_state(ref, ref.initial(), w)].push_back(w);
    for (auto& [state, words] : reaching) {
        std::stable_sort(words.begin(), words.end(),
                         [](const Word& a, const Word& b) { return a.size() < b.size(); });
    }

    for (int s : detail::fixpoint_reachable(ref)) {
        if (!reaching.count(s)) {
            return ValidationReport::fail("a", "no test word reaches state '" + ref.states()[static_cast<std::size_t>(s)] + "'");
        }
    }

    std::vector<Word> traversal;
    for (const auto& [state, words] : reaching) {
        std::optional<Word> chosen;
        for (const auto& alpha : words) {
            std::vector<Word> ext;
            detail::append_extensions(alpha, k, depth, ext);
            if (std::all_of(ext.begin(), ext.end(), [&](const Word& w) { return closure.count(w) > 0; })) {
                chosen = alpha;
                traversal.insert(traversal.end(), ext.begin(), ext.end());
                break;
            }
        }
        if (!chosen) {
            const Word& alpha = words.front();
            std::vector<Word> ext;
            detail::append_extensions(alpha, k, depth, ext);
            auto gap = std::find_if(ext.begin(), ext.end(), [&](const Word& w) { return closure.count(w) == 0; });
            return ValidationReport::fail(
                "b", "state '" + ref.states()[static_cast<std::size_t>(state)] + "' has no access word with all " +
                         std::to_string(depth) + "-step extensions; e.g. [" + detail::render_word(*gap, suite.alphabet) +
                         "] is missing");
        }
    }
    std::sort(traversal.begin(), traversal.end());
    traversal.erase(std::unique(traversal.begin(), traversal.end()), traversal.end());

    std::vector<int> state(traversal.size());
    for (std::size_t i = 0; i < traversal.size(); ++i) state[i] = detail::run_to_state(ref, ref.initial(), traversal[i]);

    for (std::size_t i = 0; i < traversal.size(); ++i) {
        const Word& alpha = traversal[i];
        for (std::size_t j = i + 1; j < traversal.size(); ++j) {
            if (state[i] == state[j]) continue;
            const Word& beta = traversal[j];
            bool separated = false;
            // All words of T extending alpha are contiguous from alpha on.
            for (auto it = closure.lower_bound(alpha); it != closure.end() && !separated; ++it) {
                const Word& t = *it;
                if (t.size() < alpha.size() || !std::equal(alpha.begin(), alpha.end(), t.begin())) break;
                Word beta_gamma = beta;
                beta_gamma.insert(beta_gamma.end(), t.begin() + static_cast<long>(alpha.size()), t.end());
                if (!closure.count(beta_gamma)) continue;
                separated = detail::outputs_from(ref, state[i], t, alpha.size()) !=
                            detail::outputs_from(ref, state[j], beta_gamma, beta.size());
            }
            if (!separated) {
                return ValidationReport::fail("c", "[" + detail::render_word(alpha, suite.alphabet) + "] and [" +
                                                       detail::render_word(beta, suite.alphabet) +
                                                       "] reach different states but no common suffix in the suite "
                                                       "separates them");
            }
        }
    }
    return ValidationReport::pass();
}

}  // namespace supkit
