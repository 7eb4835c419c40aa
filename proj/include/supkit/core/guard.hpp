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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supkit/core/error.hpp"
#include "supkit/core/valuation.hpp"

namespace supkit {

/// Reserved output symbol for "no controlled variable changes".
inline constexpr std::string_view kIdleSymbol = "__idle__";

/// Output of a reaction: a valuation over the controlled variables, or
/// nullopt for the idle reaction.
using OutputValuation = std::optional<Valuation>;

/// Boolean expression over equality atoms `var=value` on monitored variables.
///
/// The tree mirrors the concrete syntax: conjunction children are atom-level
/// nodes (atom, negation, group), disjunction children are atom-level nodes
/// or conjunctions, and parentheses are kept as explicit group nodes. That
/// makes canonical printing a faithful re-rendering of the token sequence.
class GuardExpr {
public:
    enum class Kind { atom, negation, conjunction, disjunction, group };

    GuardExpr() = default;

    static GuardExpr atom(int var, int value) {
        GuardExpr g;
        g.kind_ = Kind::atom;
        g.var_ = var;
        g.value_ = value;
        return g;
    }

    static GuardExpr negation(GuardExpr operand) {
        GuardExpr g;
        g.kind_ = Kind::negation;
        g.children_.push_back(as_atom_level(std::move(operand)));
        return g;
    }

    static GuardExpr group(GuardExpr inner) {
        GuardExpr g;
        g.kind_ = Kind::group;
        g.children_.push_back(std::move(inner));
        return g;
    }

    /// A single operand collapses to itself.
    static GuardExpr conjunction(std::vector<GuardExpr> operands) {
        if (operands.size() == 1) return std::move(operands.front());
        GuardExpr g;
        g.kind_ = Kind::conjunction;
        for (auto& op : operands) g.children_.push_back(as_atom_level(std::move(op)));
        return g;
    }

    static GuardExpr disjunction(std::vector<GuardExpr> operands) {
        if (operands.size() == 1) return std::move(operands.front());
        GuardExpr g;
        g.kind_ = Kind::disjunction;
        for (auto& op : operands) {
            if (op.kind_ == Kind::disjunction) op = group(std::move(op));
            g.children_.push_back(std::move(op));
        }
        return g;
    }

    Kind kind() const noexcept { return kind_; }
    int var() const noexcept { return var_; }
    int value() const noexcept { return value_; }
    const std::vector<GuardExpr>& children() const noexcept { return children_; }

    friend bool operator==(const GuardExpr& a, const GuardExpr& b) {
        return a.kind_ == b.kind_ && a.var_ == b.var_ && a.value_ == b.value_ &&
               a.children_ == b.children_;
    }

private:
    static GuardExpr as_atom_level(GuardExpr g) {
        if (g.kind_ == Kind::conjunction || g.kind_ == Kind::disjunction) {
            return group(std::move(g));
        }
        return g;
    }

    Kind kind_ = Kind::atom;
    int var_ = -1;
    int value_ = -1;
    std::vector<GuardExpr> children_;
};

namespace detail {

class GuardParser {
public:
    GuardParser(std::string_view text, const InterfaceSpec& iface) : text_(text), iface_(iface) {}

    GuardExpr parse() {
        GuardExpr g = disjunction();
        skip_ws();
        if (pos_ != text_.size()) {
            fail(std::string("unexpected '") + text_[pos_] + "'");
        }
        return g;
    }

private:
    GuardExpr disjunction() {
        std::vector<GuardExpr> ops{conjunction()};
        while (accept('|')) ops.push_back(conjunction());
        return GuardExpr::disjunction(std::move(ops));
    }

    GuardExpr conjunction() {
        std::vector<GuardExpr> ops{atom()};
        while (accept('&')) ops.push_back(atom());
        return GuardExpr::conjunction(std::move(ops));
    }

    GuardExpr atom() {
        skip_ws();
        if (accept('!')) return GuardExpr::negation(atom());
        if (accept('(')) {
            GuardExpr inner = disjunction();
            if (!accept(')')) fail("expected ')'");
            return GuardExpr::group(std::move(inner));
        }
        std::size_t name_pos = pos_;
        std::string_view name = word();
        if (!is_identifier(name)) fail("expected variable name", name_pos);
        auto var = iface_.find_var(name);
        if (!var) fail("unknown variable '" + std::string(name) + "'", name_pos);
        if (!iface_.var(*var).is_input()) {
            fail("variable '" + std::string(name) + "' is not monitored", name_pos);
        }
        if (!accept('=')) fail("expected '='");
        skip_ws();
        std::size_t value_pos = pos_;
        std::string_view value = word();
        if (value.empty()) fail("expected value", value_pos);
        auto index = iface_.sort_of(*var).find(value);
        if (!index) {
            fail("value '" + std::string(value) + "' is not in the sort of '" + std::string(name) + "'",
                 value_pos);
        }
        return GuardExpr::atom(*var, *index);
    }

    std::string_view word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }
    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        throw ParseError("guard: " + message, at);
    }

    std::string_view text_;
    const InterfaceSpec& iface_;
    std::size_t pos_ = 0;
};

inline void print_guard(const GuardExpr& g, const InterfaceSpec& iface, std::string& out) {
    switch (g.kind()) {
        case GuardExpr::Kind::atom:
            out += iface.var(g.var()).name;
            out += '=';
            out += iface.sort_of(g.var()).values.at(static_cast<std::size_t>(g.value()));
            return;
        case GuardExpr::Kind::negation:
            out += '!';
            print_guard(g.children().front(), iface, out);
            return;
        case GuardExpr::Kind::group:
            out += '(';
            print_guard(g.children().front(), iface, out);
            out += ')';
            return;
        case GuardExpr::Kind::conjunction:
        case GuardExpr::Kind::disjunction: {
            char sep = g.kind() == GuardExpr::Kind::conjunction ? '&' : '|';
            bool first = true;
            for (const auto& c : g.children()) {
                if (!first) out += sep;
                first = false;
                print_guard(c, iface, out);
            }
            return;
        }
    }
}

inline void collect_vars(const GuardExpr& g, std::set<int>& out) {
    if (g.kind() == GuardExpr::Kind::atom) {
        out.insert(g.var());
        return;
    }
    for (const auto& c : g.children()) collect_vars(c, out);
}

}  // namespace detail

/// Parses `disj := conj ('|' conj)*; conj := atom ('&' atom)*;
/// atom := ident '=' value | '!' atom | '(' disj ')'`. Whitespace is ignored.
/// Throws ParseError (syntax, unknown variable, value outside the sort).
inline GuardExpr parse_guard(std::string_view text, const InterfaceSpec& iface) {
    return detail::GuardParser(text, iface).parse();
}

/// Single-character separators, no whitespace. Also the input class id.
inline std::string canonical_print(const GuardExpr& g, const InterfaceSpec& iface) {
    std::string out;
    detail::print_guard(g, iface, out);
    return out;
}

/// Variables referenced by `g`, ascending.
inline std::vector<int> guard_vars(const GuardExpr& g) {
    std::set<int> vars;
    detail::collect_vars(g, vars);
    return {vars.begin(), vars.end()};
}

/// Throws ModelError when `s` does not bind a variable the guard reads.
inline bool eval_guard(const GuardExpr& g, const Valuation& s) {
    switch (g.kind()) {
        case GuardExpr::Kind::atom:
            if (!s.binds(g.var())) {
                throw ModelError("guard reads unbound variable #" + std::to_string(g.var()));
            }
            return s[g.var()] == g.value();
        case GuardExpr::Kind::negation:
            return !eval_guard(g.children().front(), s);
        case GuardExpr::Kind::group:
            return eval_guard(g.children().front(), s);
        case GuardExpr::Kind::conjunction:
            for (const auto& c : g.children()) {
                if (!eval_guard(c, s)) return false;
            }
            return true;
        case GuardExpr::Kind::disjunction:
            for (const auto& c : g.children()) {
                if (eval_guard(c, s)) return true;
            }
            return false;
    }
    return false;
}

/// Conjunction of `v=s(v)` for `vars` in the given order.
inline GuardExpr conjunction_of(const Valuation& s, std::span<const int> vars) {
    std::vector<GuardExpr> atoms;
    atoms.reserve(vars.size());
    for (int v : vars) atoms.push_back(GuardExpr::atom(v, s[v]));
    return GuardExpr::conjunction(std::move(atoms));
}

/// Every valuation over the monitored variables that satisfies `g`, in
/// canonical enumeration order.
inline std::vector<Valuation> satisfying_valuations(const GuardExpr& g, const InterfaceSpec& iface) {
    for (int v : guard_vars(g)) {
        if (!iface.var(v).is_input()) {
            throw ModelError("guard references non-monitored variable '" + iface.var(v).name + "'");
        }
    }
    std::vector<Valuation> out;
    for_each_valuation(iface, iface.inputs(), [&](const Valuation& s) {
        if (eval_guard(g, s)) out.push_back(s);
    });
    return out;
}

/// `v1=c1&v2=c2...` over the controlled variables in declaration order; the
/// idle reaction prints as `__idle__`.
inline std::string print_output(const OutputValuation& o, const InterfaceSpec& iface) {
    if (!o) return std::string(kIdleSymbol);
    if (!o->binds_exactly(iface.outputs())) {
        throw ModelError("output valuation must bind exactly the controlled variables: " +
                         describe(*o, iface));
    }
    std::string out;
    for (int v : iface.outputs()) {
        if (!out.empty()) out += '&';
        out += iface.var(v).name;
        out += '=';
        out += iface.sort_of(v).values.at(static_cast<std::size_t>((*o)[v]));
    }
    return out;
}

}  // namespace supkit
