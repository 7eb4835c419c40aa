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
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supkit/abstraction/classes.hpp"
#include "supkit/codegen/gcl.hpp"
#include "supkit/core/mutation.hpp"
#include "supkit/policy/sfsm.hpp"

namespace supkit {

/// `si_<src>_<changes>`, where changes lists `<factor><new phase>` for every
/// factor whose phase differs between src and tgt; `keep` when none does and
/// `idle` for idle reactions.
inline std::string action_name(const RiskState& src, const RiskState& tgt, bool idle, const InterfaceSpec& iface) {
    if (idle) return "si_" + src.name + "_idle";
    std::string change;
    for (int f : iface.factors()) {
        if (src.phases[f] != tgt.phases[f]) {
            change += iface.var(f).name + iface.sort_of(f).values.at(static_cast<std::size_t>(tgt.phases[f]));
        }
    }
    return "si_" + src.name + "_" + (change.empty() ? "keep" : change);
}

/// One command per transition of the idle-completed reference, ordered by
/// (source state, input class).
inline GclProgram generate_code(const Sfsm& completed, const ClassAlphabet& classes, const InterfaceSpec& iface,
                                std::string interface_path) {
    struct Keyed {
        std::size_t state;
        std::size_t cls;
        GuardedCommand command;
    };
    std::vector<Keyed> keyed;
    for (const auto& t : completed.transitions) {
        auto src = completed.state_index(t.src);
        auto tgt = completed.state_index(t.tgt);
        auto cls = classes.index_of(canonical_print(t.guard, iface));
        if (!src || !tgt || !cls) throw ModelError("codegen: transition outside the reference alphabet");
        const auto& from = completed.states[*src];
        const auto& to = completed.states[*tgt];
        keyed.push_back(Keyed{*src, *cls,
                              GuardedCommand{action_name(from, to, !t.output, iface), t.src, t.guard, t.output, t.tgt, {}}});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return a.state != b.state ? a.state < b.state : a.cls < b.cls;
    });
    GclProgram p;
    p.interface_path = std::move(interface_path);
    p.initial_state = completed.initial;
    for (auto& k : keyed) p.commands.push_back(std::move(k.command));
    return p;
}

namespace detail {

inline std::size_t pick(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

// Any output different from `current`: another occurring output if one
// exists, otherwise the same valuation with one controlled variable bumped.
inline OutputValuation different_output(const GclProgram& p, const OutputValuation& current, const InterfaceSpec& iface,
                                        std::mt19937_64& rng) {
    std::vector<OutputValuation> pool;
    for (const auto& c : p.commands) {
        if (c.outputs != current && std::find(pool.begin(), pool.end(), c.outputs) == pool.end()) pool.push_back(c.outputs);
    }
    if (!pool.empty()) return pool[pick(rng, pool.size())];
    Valuation v(iface.var_count());
    for (int o : iface.outputs()) v.bind(o, current ? (*current)[o] : 0);
    for (int o : iface.outputs()) {
        auto k = static_cast<int>(iface.sort_of(o).values.size());
        if (k > 1) {
            v.bind(o, (v[o] + 1) % k);
            return v;
        }
    }
    if (current) return std::nullopt;
    throw ModelError("mutation: no alternative output exists");
}

}  // namespace detail

/// Deliberately faulted variant of `p`, deterministic in `seed`:
/// output changes one command's outputs, transfer redirects one command,
/// add-state redirects one command into a fresh clone of its target state
/// whose copy of some command emits a different output.
inline GclProgram mutate_program(GclProgram p, MutationKind kind, std::uint64_t seed, const InterfaceSpec& iface) {
    if (p.commands.empty()) throw ModelError("mutation: program has no commands");
    std::mt19937_64 rng(seed);
    auto& victim = p.commands[detail::pick(rng, p.commands.size())];
    switch (kind) {
        case MutationKind::output:
            victim.outputs = detail::different_output(p, victim.outputs, iface, rng);
            break;
        case MutationKind::transfer: {
            std::vector<std::string> others;
            for (const auto& s : p.state_identifiers()) {
                if (s != victim.next_state) others.push_back(s);
            }
            if (others.empty()) throw ModelError("mutation: transfer fault needs at least two states");
            victim.next_state = others[detail::pick(rng, others.size())];
            break;
        }
        case MutationKind::add_state: {
            const auto states = p.state_identifiers();
            std::string fresh = "mut";
            for (int i = 0; states.count(fresh); ++i) fresh = "mut" + std::to_string(i);
            const std::string cloned = victim.next_state;
            victim.next_state = fresh;
            std::vector<GuardedCommand> copies;
            for (const auto& c : p.commands) {
                if (c.state_test != cloned) continue;
                GuardedCommand copy = c;
                copy.state_test = fresh;
                copy.action = c.action + "_mut";
                copy.source_line.clear();
                copies.push_back(std::move(copy));
            }
            if (!copies.empty()) {
                auto& changed = copies[detail::pick(rng, copies.size())];
                changed.outputs = detail::different_output(p, changed.outputs, iface, rng);
            }
            for (auto& c : copies) p.commands.push_back(std::move(c));
            break;
        }
    }
    for (auto& c : p.commands) c.source_line.clear();
    return p;
}

}  // namespace supkit
