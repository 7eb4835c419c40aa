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

// Test-only oracles. These deliberately avoid the library's own search and
// refinement code: everything here is brute force.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "supkit/abstraction/fsm.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/core/valuation.hpp"
#include "supkit/policy/sfsm.hpp"

namespace supkit::testing {

using Word = std::vector<int>;

/// Every word over k symbols of length exactly `len`, in lexicographic order.
inline std::vector<Word> words_of_length(int k, int len) {
    std::vector<Word> out{Word{}};
    for (int i = 0; i < len; ++i) {
        std::vector<Word> next;
        for (const auto& w : out) {
            for (int x = 0; x < k; ++x) {
                Word v = w;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline std::vector<std::string> output_names(const Fsm& m, int from, const Word& w) {
    std::vector<std::string> out;
    int s = from;
    for (int x : w) {
        const auto& e = m.table()[static_cast<std::size_t>(s) * m.inputs().size() + static_cast<std::size_t>(x)];
        out.push_back(m.outputs()[static_cast<std::size_t>(e.output)]);
        s = e.target;
    }
    return out;
}

/// Shortest word (length ≤ max_len) on which the two machines' output
/// sequences differ, by exhaustive enumeration.
inline std::optional<Word> trace_difference(const Fsm& a, const Fsm& b, int max_len) {
    for (int len = 1; len <= max_len; ++len) {
        for (const auto& w : words_of_length(a.input_count(), len)) {
            if (output_names(a, a.initial(), w) != output_names(b, b.initial(), w)) return w;
        }
    }
    return std::nullopt;
}

/// First of `count` random words of length `len` on which the machines'
/// output sequences differ.
template <class Rng>
std::optional<Word> random_trace_difference(const Fsm& a, const Fsm& b, Rng& rng, int count, int len) {
    for (int i = 0; i < count; ++i) {
        Word w;
        for (int j = 0; j < len; ++j) w.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(a.input_count())));
        if (output_names(a, a.initial(), w) != output_names(b, b.initial(), w)) return w;
    }
    return std::nullopt;
}

/// True iff `impl` produces the same output names as `ref` on every case.
inline bool suite_passes(const std::vector<Word>& cases, const Fsm& ref, const Fsm& impl) {
    for (const auto& c : cases) {
        if (output_names(ref, ref.initial(), c) != output_names(impl, impl.initial(), c)) return false;
    }
    return true;
}

/// Every complete machine with exactly `n` states over the given alphabets
/// and initial state 0, passed to `fn` one by one.
template <class Fn>
void for_each_machine(int n, const std::vector<std::string>& inputs, const std::vector<std::string>& outputs, Fn&& fn) {
    const std::size_t cells = static_cast<std::size_t>(n) * inputs.size();
    const std::uint64_t choices = static_cast<std::uint64_t>(n) * outputs.size();
    std::vector<std::uint64_t> digit(cells, 0);
    std::vector<std::string> states;
    for (int i = 0; i < n; ++i) states.push_back("q" + std::to_string(i));
    while (true) {
        std::vector<Fsm::Edge> table;
        for (auto d : digit) table.push_back(Fsm::Edge{static_cast<int>(d % outputs.size()), static_cast<int>(d / outputs.size())});
        fn(Fsm(states, inputs, outputs, 0, std::move(table)));
        std::size_t pos = 0;
        while (pos < cells && ++digit[pos] == choices) digit[pos++] = 0;
        if (pos == cells) return;
    }
}

/// States reachable from the initial state, by repeated relaxation.
inline std::set<int> reachable(const Fsm& m) {
    std::set<int> seen{m.initial()};
    bool grew = true;
    while (grew) {
        grew = false;
        for (int s : std::set<int>(seen)) {
            for (int x = 0; x < m.input_count(); ++x) {
                grew = seen.insert(m.table()[static_cast<std::size_t>(s * m.input_count() + x)].target).second || grew;
            }
        }
    }
    return seen;
}

/// Number of trace-distinguishable reachable states. Two states of an
/// n-state machine that agree on all words of length ≤ n−1 are equivalent.
inline int distinct_state_count(const Fsm& m) {
    const auto states = reachable(m);
    const int len = std::max(1, m.state_count() - 1);
    std::vector<Word> words;
    for (int l = 1; l <= len; ++l) {
        for (auto& w : words_of_length(m.input_count(), l)) words.push_back(std::move(w));
    }
    std::set<std::vector<std::vector<std::string>>> signatures;
    for (int s : states) {
        std::vector<std::vector<std::string>> sig;
        for (const auto& w : words) sig.push_back(output_names(m, s, w));
        signatures.insert(std::move(sig));
    }
    return static_cast<int>(signatures.size());
}

/// All valuations over `vars` by mixed-radix decoding of 0..N−1, with the
/// last variable varying fastest.
inline std::vector<Valuation> valuations_by_radix(const InterfaceSpec& iface, const std::vector<int>& vars) {
    std::uint64_t total = 1;
    for (int v : vars) total *= iface.sort_of(v).values.size();
    std::vector<Valuation> out;
    for (std::uint64_t code = 0; code < total; ++code) {
        Valuation val(iface.vars().size());
        std::uint64_t rest = code;
        for (std::size_t i = vars.size(); i-- > 0;) {
            const auto radix = iface.sort_of(vars[i]).values.size();
            val.bind(vars[i], static_cast<int>(rest % radix));
            rest /= radix;
        }
        out.push_back(val);
    }
    return out;
}

/// One step of an idle-completed or partial reference SFSM: the first
/// transition out of `state` whose guard holds, or an idle self-loop.
struct SfsmStep {
    OutputValuation output;
    std::string next;
};

inline SfsmStep simulate(const Sfsm& r, const std::string& state, const Valuation& input) {
    for (const auto& t : r.transitions) {
        if (t.src == state && eval_guard(t.guard, input)) return SfsmStep{t.output, t.tgt};
    }
    return SfsmStep{std::nullopt, state};
}

}  // namespace supkit::testing
