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
#include <array>
#include <iterator>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supkit/abstraction/classes.hpp"
#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/policy/sfsm.hpp"

namespace supkit {

/// Deterministic, input-complete Mealy machine over symbol alphabets.
/// Symbols and states are referred to by index; names are kept for I/O.
class Fsm {
public:
    struct Edge {
        int output = 0;
        int target = 0;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    Fsm() = default;

    /// `table[s * inputs.size() + x]` is the reaction of state s to input x.
    Fsm(std::vector<std::string> states, std::vector<std::string> inputs, std::vector<std::string> outputs,
        int initial, std::vector<Edge> table)
        : states_(std::move(states)),
          inputs_(std::move(inputs)),
          outputs_(std::move(outputs)),
          initial_(initial),
          table_(std::move(table)) {
        validate();
    }

    int state_count() const noexcept { return static_cast<int>(states_.size()); }
    int input_count() const noexcept { return static_cast<int>(inputs_.size()); }
    int output_count() const noexcept { return static_cast<int>(outputs_.size()); }
    int initial() const noexcept { return initial_; }

    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::vector<std::string>& inputs() const noexcept { return inputs_; }
    const std::vector<std::string>& outputs() const noexcept { return outputs_; }
    const std::vector<Edge>& table() const noexcept { return table_; }

    const Edge& edge(int state, int input) const {
        return table_[static_cast<std::size_t>(state) * inputs_.size() + static_cast<std::size_t>(input)];
    }

    int state_after(std::span<const int> word) const {
        int s = initial_;
        for (int x : word) s = edge(s, x).target;
        return s;
    }

    /// Output symbol indices produced along `word` from `from` (default:
    /// initial state).
    std::vector<int> run(std::span<const int> word, std::optional<int> from = std::nullopt) const {
        std::vector<int> out;
        out.reserve(word.size());
        int s = from.value_or(initial_);
        for (int x : word) {
            const Edge& e = edge(s, x);
            out.push_back(e.output);
            s = e.target;
        }
        return out;
    }

    static std::optional<int> find(const std::vector<std::string>& names, std::string_view name) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) return std::nullopt;
        return static_cast<int>(it - names.begin());
    }

    friend bool operator==(const Fsm&, const Fsm&) = default;

private:
    void validate() const {
        auto unique = [](const std::vector<std::string>& names, const char* what) {
            std::set<std::string> seen;
            for (const auto& n : names) {
                if (n.empty() || n.find_first_of(" \t\r\n") != std::string::npos) {
                    throw ModelError(std::string("fsm: invalid ") + what + " name '" + n + "'");
                }
                if (!seen.insert(n).second) throw ModelError(std::string("fsm: duplicate ") + what + " '" + n + "'");
            }
        };
        unique(states_, "state");
        unique(inputs_, "input");
        unique(outputs_, "output");
        if (states_.empty()) throw ModelError("fsm: no states");
        if (initial_ < 0 || initial_ >= state_count()) throw ModelError("fsm: bad initial state");
        if (table_.size() != states_.size() * inputs_.size()) {
            throw ModelError("fsm: transition function is not total");
        }
        for (const auto& e : table_) {
            if (e.output < 0 || e.output >= output_count() || e.target < 0 || e.target >= state_count()) {
                throw ModelError("fsm: transition references an undeclared symbol or state");
            }
        }
    }

    std::vector<std::string> states_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    int initial_ = 0;
    std::vector<Edge> table_;
};

/// Finite abstraction of an idle-completed reference: class ids as inputs,
/// printed output valuations (then `__idle__`) as outputs.
inline Fsm abstract_to_fsm(const Sfsm& completed, const ClassAlphabet& classes, const InterfaceSpec& iface) {
    std::vector<std::string> states;
    for (const auto& s : completed.states) states.push_back(s.name);
    std::vector<std::string> inputs;
    for (const auto& c : classes.classes) inputs.push_back(c.id);

    std::set<Valuation> occurring;
    for (const auto& t : completed.transitions) {
        if (t.output) occurring.insert(*t.output);
    }
    std::vector<std::string> outputs;
    for (const auto& o : occurring) outputs.push_back(print_output(o, iface));
    outputs.emplace_back(kIdleSymbol);

    const std::size_t k = inputs.size();
    std::vector<std::optional<Fsm::Edge>> table(states.size() * k);
    for (const auto& t : completed.transitions) {
        auto src = completed.state_index(t.src);
        auto tgt = completed.state_index(t.tgt);
        auto in = classes.index_of(canonical_print(t.guard, iface));
        if (!src || !tgt || !in) throw ModelError("abstraction: transition outside the alphabet");
        auto out = Fsm::find(outputs, print_output(t.output, iface));
        auto& slot = table[*src * k + *in];
        if (slot) throw ModelError("abstraction: two transitions for (" + t.src + ", " + inputs[*in] + ")");
        slot = Fsm::Edge{*out, static_cast<int>(*tgt)};
    }
    std::vector<Fsm::Edge> edges;
    edges.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!table[i]) {
            throw ModelError("abstraction: no transition for (" + states[i / k] + ", " + inputs[i % k] + ")");
        }
        edges.push_back(*table[i]);
    }
    auto initial = completed.state_index(completed.initial);
    if (!initial) throw ModelError("abstraction: unknown initial state");
    return Fsm(std::move(states), std::move(inputs), std::move(outputs), static_cast<int>(*initial), std::move(edges));
}

inline Json fsm_to_json(const Fsm& m) {
    Json transitions = Json::array();
    for (int s = 0; s < m.state_count(); ++s) {
        for (int x = 0; x < m.input_count(); ++x) {
            const auto& e = m.edge(s, x);
            transitions.push_back(Json{{"src", m.states()[static_cast<std::size_t>(s)]},
                                       {"in", m.inputs()[static_cast<std::size_t>(x)]},
                                       {"out", m.outputs()[static_cast<std::size_t>(e.output)]},
                                       {"tgt", m.states()[static_cast<std::size_t>(e.target)]}});
        }
    }
    return Json{{"states", m.states()},
                {"initial", m.states()[static_cast<std::size_t>(m.initial())]},
                {"inputs", m.inputs()},
                {"outputs", m.outputs()},
                {"transitions", std::move(transitions)}};
}

namespace detail {

inline Fsm assemble_fsm(std::vector<std::string> states, const std::string& initial, std::vector<std::string> inputs,
                        std::vector<std::string> outputs,
                        const std::vector<std::array<std::string, 4>>& rows) {
    const std::size_t k = inputs.size();
    std::vector<std::optional<Fsm::Edge>> table(states.size() * k);
    for (const auto& [src, in, out, tgt] : rows) {
        auto s = Fsm::find(states, src);
        auto x = Fsm::find(inputs, in);
        auto y = Fsm::find(outputs, out);
        auto t = Fsm::find(states, tgt);
        if (!s || !x || !y || !t) {
            throw ModelError("fsm: transition " + src + " " + in + " " + out + " " + tgt + " uses undeclared names");
        }
        auto& slot = table[static_cast<std::size_t>(*s) * k + static_cast<std::size_t>(*x)];
        if (slot) throw ModelError("fsm: nondeterministic transitions for (" + src + ", " + in + ")");
        slot = Fsm::Edge{*y, *t};
    }
    std::vector<Fsm::Edge> edges;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!table[i]) throw ModelError("fsm: transition function is not total");
        edges.push_back(*table[i]);
    }
    auto init = Fsm::find(states, initial);
    if (!init) throw ModelError("fsm: unknown initial state '" + initial + "'");
    return Fsm(std::move(states), std::move(inputs), std::move(outputs), *init, std::move(edges));
}

inline std::vector<std::string> string_list(const Json& j, const char* key) {
    std::vector<std::string> out;
    for (const auto& v : require_array(j, key, "fsm")) {
        if (!v.is_string()) throw FormatError(std::string("fsm: '") + key + "' must hold strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace detail

inline Fsm fsm_from_json(const Json& j) {
    std::vector<std::array<std::string, 4>> rows;
    for (const auto& t : detail::require_array(j, "transitions", "fsm")) {
        rows.push_back({detail::require_string(t, "src", "fsm transition"), detail::require_string(t, "in", "fsm transition"),
                        detail::require_string(t, "out", "fsm transition"),
                        detail::require_string(t, "tgt", "fsm transition")});
    }
    return detail::assemble_fsm(detail::string_list(j, "states"), detail::require_string(j, "initial", "fsm"),
                                detail::string_list(j, "inputs"), detail::string_list(j, "outputs"), rows);
}

/// Plain-text variant: `@initial`, `@inputs`, `@outputs` headers (plus an
/// optional `@states` line fixing state order), then `src in out tgt` rows.
inline std::string fsm_to_text(const Fsm& m) {
    std::ostringstream out;
    auto line = [&](const char* header, const std::vector<std::string>& names) {
        out << header;
        for (const auto& n : names) out << ' ' << n;
        out << '\n';
    };
    out << "@initial " << m.states()[static_cast<std::size_t>(m.initial())] << '\n';
    line("@states", m.states());
    line("@inputs", m.inputs());
    line("@outputs", m.outputs());
    for (int s = 0; s < m.state_count(); ++s) {
        for (int x = 0; x < m.input_count(); ++x) {
            const auto& e = m.edge(s, x);
            out << m.states()[static_cast<std::size_t>(s)] << ' ' << m.inputs()[static_cast<std::size_t>(x)] << ' '
                << m.outputs()[static_cast<std::size_t>(e.output)] << ' '
                << m.states()[static_cast<std::size_t>(e.target)] << '\n';
        }
    }
    return out.str();
}

inline Fsm fsm_from_text(std::string_view text) {
    std::string initial;
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    bool explicit_states = false;
    std::vector<std::array<std::string, 4>> rows;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t offset = 0;
    while (std::getline(in, raw)) {
        std::size_t line_start = offset;
        offset += raw.size() + 1;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::istringstream words(raw);
        std::vector<std::string> w{std::istream_iterator<std::string>(words), std::istream_iterator<std::string>()};
        if (w.empty()) continue;
        if (w[0] == "@initial") {
            if (w.size() != 2) throw ParseError("fsm text: '@initial' takes one state", line_start);
            initial = w[1];
        } else if (w[0] == "@states") {
            states.assign(w.begin() + 1, w.end());
            explicit_states = true;
        } else if (w[0] == "@inputs") {
            inputs.assign(w.begin() + 1, w.end());
        } else if (w[0] == "@outputs") {
            outputs.assign(w.begin() + 1, w.end());
        } else if (w[0].starts_with('@')) {
            throw ParseError("fsm text: unknown header '" + w[0] + "'", line_start);
        } else {
            if (w.size() != 4) throw ParseError("fsm text: expected 'src in out tgt'", line_start);
            rows.push_back({w[0], w[1], w[2], w[3]});
        }
    }
    if (initial.empty()) throw ParseError("fsm text: missing '@initial'", 0);
    if (!explicit_states) {
        auto add = [&](const std::string& s) {
            if (std::find(states.begin(), states.end(), s) == states.end()) states.push_back(s);
        };
        add(initial);
        for (const auto& r : rows) add(r[0]);
        for (const auto& r : rows) add(r[3]);
    }
    return detail::assemble_fsm(std::move(states), initial, std::move(inputs), std::move(outputs), rows);
}

}  // namespace supkit
