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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/core/valuation.hpp"
#include "supkit/policy/sfsm.hpp"

namespace supkit {

/// Largest monitored-variable domain the exhaustive checks will enumerate.
inline constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 24;

/// One input equivalence class, identified by its canonical guard string.
/// The representative is the smallest satisfying valuation in canonical
/// order.
struct InputClass {
    std::string id;
    GuardExpr guard;
    Valuation representative;
};

struct ClassAlphabet {
    // Sorted by representative, i.e. canonical order.
    std::vector<InputClass> classes;
    // Monitored valuations satisfying no guard. Excluded from testing.
    std::uint64_t uncovered = 0;

    std::size_t size() const noexcept { return classes.size(); }

    std::optional<std::size_t> index_of(std::string_view id) const {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].id == id) return i;
        }
        return std::nullopt;
    }
};

/// One class per distinct canonical guard in `r`. Throws ModelError when two
/// guards overlap (naming both and a witness) or a guard is unsatisfiable.
inline ClassAlphabet extract_classes(const Sfsm& r, const InterfaceSpec& iface) {
    if (iface.domain_size(iface.inputs()) > kMaxEnumeration) {
        throw ModelError("monitored domain too large for exhaustive class analysis");
    }
    std::vector<InputClass> classes;
    for (const auto& t : r.transitions) {
        std::string id = canonical_print(t.guard, iface);
        bool known = std::any_of(classes.begin(), classes.end(), [&](const InputClass& c) { return c.id == id; });
        if (!known) classes.push_back(InputClass{std::move(id), t.guard, {}});
    }
    std::vector<bool> seen(classes.size(), false);
    ClassAlphabet alphabet;
    for_each_valuation(iface, iface.inputs(), [&](const Valuation& s) {
        std::optional<std::size_t> hit;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (!eval_guard(classes[c].guard, s)) continue;
            if (hit) {
                throw ModelError("input classes overlap: '" + classes[*hit].id + "' and '" + classes[c].id +
                                 "' both hold for " + describe(s, iface));
            }
            hit = c;
        }
        if (!hit) {
            ++alphabet.uncovered;
        } else if (!seen[*hit]) {
            seen[*hit] = true;
            classes[*hit].representative = s;
        }
    });
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (!seen[c]) throw ModelError("guard '" + classes[c].id + "' is unsatisfiable");
    }
    std::sort(classes.begin(), classes.end(),
              [](const InputClass& a, const InputClass& b) { return a.representative < b.representative; });
    alphabet.classes = std::move(classes);
    return alphabet;
}

/// Adds an idle self-loop for every (state, class) pair without a
/// transition. Existing transitions keep their order; loops are appended in
/// (state, class) order.
inline Sfsm complete_with_idle(const Sfsm& r, const ClassAlphabet& classes, const InterfaceSpec& iface) {
    std::map<std::string, std::vector<bool>> covered;
    for (const auto& s : r.states) covered[s.name].assign(classes.size(), false);
    for (const auto& t : r.transitions) {
        auto c = classes.index_of(canonical_print(t.guard, iface));
        if (!c) {
            throw ModelError("guard '" + canonical_print(t.guard, iface) + "' is not an input class");
        }
        covered.at(t.src)[*c] = true;
    }
    Sfsm out = r;
    for (const auto& s : r.states) {
        const auto& row = covered.at(s.name);
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (!row[c]) out.transitions.push_back(SfsmTransition{s.name, classes.classes[c].guard, std::nullopt, s.name});
        }
    }
    return out;
}

inline Json classes_to_json(const ClassAlphabet& alphabet, const InterfaceSpec& iface) {
    Json classes = Json::array();
    for (const auto& c : alphabet.classes) {
        classes.push_back(Json{{"id", c.id}, {"representative", valuation_to_json(c.representative, iface)}});
    }
    return Json{{"classes", std::move(classes)}, {"uncovered", alphabet.uncovered}};
}

inline ClassAlphabet classes_from_json(const Json& j, const InterfaceSpec& iface) {
    ClassAlphabet alphabet;
    for (const auto& c : detail::require_array(j, "classes", "classes")) {
        InputClass cls;
        cls.id = detail::require_string(c, "id", "class");
        cls.guard = parse_guard(cls.id, iface);
        cls.representative = valuation_from_json(detail::require(c, "representative", "class"), iface);
        if (!cls.representative.binds_exactly(iface.inputs()) || !eval_guard(cls.guard, cls.representative)) {
            throw ModelError("class '" + cls.id + "' has an invalid representative");
        }
        alphabet.classes.push_back(std::move(cls));
    }
    if (j.contains("uncovered")) alphabet.uncovered = j.at("uncovered").get<std::uint64_t>();
    return alphabet;
}

}  // namespace supkit
