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
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "supkit/core/error.hpp"

namespace supkit {

/// A finite enumeration. Value order is significant: it defines canonical
/// enumeration order and all tie-breaking downstream.
struct Sort {
    std::string name;
    std::vector<std::string> values;

    std::optional<int> find(std::string_view value) const {
        auto it = std::find(values.begin(), values.end(), value);
        if (it == values.end()) {
            return std::nullopt;
        }
        return static_cast<int>(it - values.begin());
    }
};

/// Role of a variable in the supervisor's syntactic interface. A variable can
/// be both monitored and controlled; factors are neither.
enum class VarKind { monitored, controlled, monitored_controlled, factor };

struct VarDecl {
    std::string name;
    int sort = 0;
    VarKind kind = VarKind::monitored;

    bool is_input() const noexcept {
        return kind == VarKind::monitored || kind == VarKind::monitored_controlled;
    }
    bool is_output() const noexcept {
        return kind == VarKind::controlled || kind == VarKind::monitored_controlled;
    }
    bool is_factor() const noexcept { return kind == VarKind::factor; }
};

inline bool is_word_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

/// [A-Za-z_][A-Za-z0-9_]*
inline bool is_identifier(std::string_view s) {
    return !s.empty() && !(s.front() >= '0' && s.front() <= '9') &&
           std::all_of(s.begin(), s.end(), is_word_char);
}

/// Sort values may also start with a digit (phase `0`, boolean `0`/`1`).
inline bool is_value_token(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_word_char);
}

/// Phase values every risk-factor sort must provide: inactive, active,
/// mitigated.
inline constexpr std::string_view kInactivePhase = "0";
inline constexpr std::string_view kRequiredPhases[] = {"0", "a", "m"};

/// Sorts and variable declarations shared by every stage. Immutable once
/// constructed; the constructor enforces all well-formedness rules.
class InterfaceSpec {
public:
    InterfaceSpec() = default;

    InterfaceSpec(std::vector<Sort> sorts, std::vector<VarDecl> vars)
        : sorts_(std::move(sorts)), vars_(std::move(vars)) {
        validate();
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].is_input()) inputs_.push_back(static_cast<int>(i));
            if (vars_[i].is_output()) outputs_.push_back(static_cast<int>(i));
            if (vars_[i].is_factor()) factors_.push_back(static_cast<int>(i));
        }
    }

    const std::vector<Sort>& sorts() const noexcept { return sorts_; }
    const std::vector<VarDecl>& vars() const noexcept { return vars_; }
    std::size_t var_count() const noexcept { return vars_.size(); }

    // Variable indices in declaration order.
    std::span<const int> inputs() const noexcept { return inputs_; }
    std::span<const int> outputs() const noexcept { return outputs_; }
    std::span<const int> factors() const noexcept { return factors_; }

    const VarDecl& var(int index) const { return vars_.at(static_cast<std::size_t>(index)); }
    const Sort& sort_of(int var_index) const {
        return sorts_.at(static_cast<std::size_t>(var(var_index).sort));
    }

    std::optional<int> find_var(std::string_view name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].name == name) {
                return static_cast<int>(i);
            }
        }
        return std::nullopt;
    }

    std::optional<int> find_sort(std::string_view name) const {
        for (std::size_t i = 0; i < sorts_.size(); ++i) {
            if (sorts_[i].name == name) {
                return static_cast<int>(i);
            }
        }
        return std::nullopt;
    }

    /// Number of valuations over `vars`, saturating at UINT64_MAX.
    std::uint64_t domain_size(std::span<const int> vars) const {
        std::uint64_t size = 1;
        for (int v : vars) {
            auto k = static_cast<std::uint64_t>(sort_of(v).values.size());
            if (size > UINT64_MAX / k) {
                return UINT64_MAX;
            }
            size *= k;
        }
        return size;
    }

    friend bool operator==(const InterfaceSpec& a, const InterfaceSpec& b) {
        if (a.sorts_.size() != b.sorts_.size() || a.vars_.size() != b.vars_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.sorts_.size(); ++i) {
            if (a.sorts_[i].name != b.sorts_[i].name || a.sorts_[i].values != b.sorts_[i].values) {
                return false;
            }
        }
        for (std::size_t i = 0; i < a.vars_.size(); ++i) {
            const auto& x = a.vars_[i];
            const auto& y = b.vars_[i];
            if (x.name != y.name || x.sort != y.sort || x.kind != y.kind) {
                return false;
            }
        }
        return true;
    }

private:
    void validate() const {
        std::unordered_set<std::string> names;
        for (const auto& s : sorts_) {
            if (!is_identifier(s.name)) {
                throw ModelError("invalid sort name '" + s.name + "'");
            }
            if (!names.insert(s.name).second) {
                throw ModelError("duplicate sort '" + s.name + "'");
            }
            if (s.values.empty()) {
                throw ModelError("sort '" + s.name + "' has no values");
            }
            std::unordered_set<std::string> values;
            for (const auto& v : s.values) {
                if (!is_value_token(v)) {
                    throw ModelError("invalid value '" + v + "' in sort '" + s.name + "'");
                }
                if (!values.insert(v).second) {
                    throw ModelError("duplicate value '" + v + "' in sort '" + s.name + "'");
                }
            }
        }
        names.clear();
        bool has_input = false;
        bool has_output = false;
        bool has_factor = false;
        for (const auto& v : vars_) {
            if (!is_identifier(v.name) || v.name == "state" || v.name == "next") {
                throw ModelError("invalid variable name '" + v.name + "'");
            }
            if (!names.insert(v.name).second) {
                throw ModelError("duplicate variable '" + v.name + "'");
            }
            if (v.sort < 0 || static_cast<std::size_t>(v.sort) >= sorts_.size()) {
                throw ModelError("variable '" + v.name + "' has an unknown sort");
            }
            has_input |= v.is_input();
            has_output |= v.is_output();
            has_factor |= v.is_factor();
            if (v.is_factor()) {
                const auto& sort = sorts_[static_cast<std::size_t>(v.sort)];
                for (auto phase : kRequiredPhases) {
                    if (!sort.find(phase)) {
                        throw ModelError("factor '" + v.name + "' has sort '" + sort.name +
                                         "' without phase '" + std::string(phase) + "'");
                    }
                }
            }
        }
        if (!has_input || !has_output || !has_factor) {
            throw ModelError("interface needs at least one monitored, controlled and factor variable");
        }
    }

    std::vector<Sort> sorts_;
    std::vector<VarDecl> vars_;
    std::vector<int> inputs_;
    std::vector<int> outputs_;
    std::vector<int> factors_;
};

/// Partial map from variable index to value index. Slots are laid out in
/// declaration order, so the defaulted ordering is the canonical enumeration
/// order for valuations over the same variable set.
class Valuation {
public:
    static constexpr int kUnbound = -1;

    Valuation() = default;
    explicit Valuation(std::size_t var_count) : slots_(var_count, kUnbound) {}

    std::size_t slot_count() const noexcept { return slots_.size(); }

    bool binds(int var) const {
        return var >= 0 && static_cast<std::size_t>(var) < slots_.size() &&
               slots_[static_cast<std::size_t>(var)] != kUnbound;
    }

    int operator[](int var) const { return slots_.at(static_cast<std::size_t>(var)); }

    Valuation& bind(int var, int value) {
        slots_.at(static_cast<std::size_t>(var)) = value;
        return *this;
    }

    /// Keeps exactly the bindings for variables in `vars`.
    Valuation restrict_to(std::span<const int> vars) const {
        Valuation out(slots_.size());
        for (int v : vars) {
            out.slots_.at(static_cast<std::size_t>(v)) = slots_.at(static_cast<std::size_t>(v));
        }
        return out;
    }

    std::vector<int> bound_vars() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            if (slots_[i] != kUnbound) out.push_back(static_cast<int>(i));
        }
        return out;
    }

    bool binds_exactly(std::span<const int> vars) const {
        std::size_t count = 0;
        for (int v : vars) {
            if (!binds(v)) return false;
            ++count;
        }
        return count == bound_vars().size();
    }

    friend auto operator<=>(const Valuation&, const Valuation&) = default;
    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    std::vector<int> slots_;
};

/// Calls `fn(const Valuation&)` for every valuation over `vars` in canonical
/// order: the first variable is most significant, values in sort order.
/// Returning false from `fn` stops the enumeration.
template <class Fn>
void for_each_valuation(const InterfaceSpec& iface, std::span<const int> vars, Fn&& fn) {
    Valuation current(iface.var_count());
    for (int v : vars) current.bind(v, 0);
    while (true) {
        if constexpr (std::is_same_v<decltype(fn(current)), bool>) {
            if (!fn(static_cast<const Valuation&>(current))) return;
        } else {
            fn(static_cast<const Valuation&>(current));
        }
        std::size_t pos = vars.size();
        while (pos > 0) {
            int v = vars[pos - 1];
            int next = current[v] + 1;
            if (static_cast<std::size_t>(next) < iface.sort_of(v).values.size()) {
                current.bind(v, next);
                break;
            }
            current.bind(v, 0);
            --pos;
        }
        if (pos == 0) return;
    }
}

/// Human-readable rendering for diagnostics, e.g. `{x=a, y=b}`.
inline std::string describe(const Valuation& val, const InterfaceSpec& iface) {
    std::string out = "{";
    bool first = true;
    for (int v : val.bound_vars()) {
        if (!first) out += ", ";
        first = false;
        const auto& decl = iface.var(v);
        out += decl.name + "=" + iface.sort_of(v).values.at(static_cast<std::size_t>(val[v]));
    }
    return out + "}";
}

}  // namespace supkit
