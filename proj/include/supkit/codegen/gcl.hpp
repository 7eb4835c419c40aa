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
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/core/valuation.hpp"

namespace supkit {

/// `[action] state=S & guard: outputs <- ...; next=S'`: one flat branch of
/// the supervisor's step function.
struct GuardedCommand {
    std::string action;
    std::string state_test;
    GuardExpr guard;
    OutputValuation outputs;  // nullopt: IDLE
    std::string next_state;
    // Line as read from a listing; empty for generated programs.
    std::string source_line;

    friend bool operator==(const GuardedCommand& a, const GuardedCommand& b) {
        return a.action == b.action && a.state_test == b.state_test && a.guard == b.guard && a.outputs == b.outputs &&
               a.next_state == b.next_state;
    }
};

/// Generated supervisor implementation in the guarded-command language.
struct GclProgram {
    std::string interface_path;
    std::string initial_state;
    std::string reference_hash;  // optional `@reference` header
    std::vector<GuardedCommand> commands;

    /// Every state identifier the program mentions.
    std::set<std::string> state_identifiers() const {
        std::set<std::string> out{initial_state};
        for (const auto& c : commands) {
            out.insert(c.state_test);
            out.insert(c.next_state);
        }
        return out;
    }

    friend bool operator==(const GclProgram& a, const GclProgram& b) {
        return a.interface_path == b.interface_path && a.initial_state == b.initial_state &&
               a.reference_hash == b.reference_hash && a.commands == b.commands;
    }
};

inline std::string render_command(const GuardedCommand& c, const InterfaceSpec& iface) {
    std::string out = "[" + c.action + "] state=" + c.state_test + " & " + canonical_print(c.guard, iface) + " -> ";
    if (!c.outputs) {
        out += "IDLE";
    } else {
        bool first = true;
        for (int v : iface.outputs()) {
            if (!first) out += ", ";
            first = false;
            out += iface.var(v).name + "=" + iface.sort_of(v).values.at(static_cast<std::size_t>((*c.outputs)[v]));
        }
    }
    return out + " ; next=" + c.next_state;
}

/// Canonical listing; identical programs render to identical bytes.
inline std::string render_program(const GclProgram& p, const InterfaceSpec& iface) {
    std::string out = "@interface " + p.interface_path + "\n@initial " + p.initial_state + "\n";
    if (!p.reference_hash.empty()) out += "@reference " + p.reference_hash + "\n";
    for (const auto& c : p.commands) out += render_command(c, iface) + "\n";
    return out;
}

namespace detail {

class CommandParser {
public:
    CommandParser(std::string_view line, std::size_t base, const InterfaceSpec& iface)
        : line_(line), base_(base), iface_(iface) {}

    GuardedCommand parse() {
        GuardedCommand c;
        expect('[');
        c.action = identifier("action name");
        expect(']');
        keyword("state");
        expect('=');
        c.state_test = state_name();
        expect('&');
        skip_ws();
        std::size_t arrow = line_.find("->", pos_);
        if (arrow == std::string_view::npos) fail("expected '->'");
        try {
            c.guard = parse_guard(line_.substr(pos_, arrow - pos_), iface_);
        } catch (const ParseError& e) {
            throw ParseError(std::string("program: ") + e.what(), base_ + pos_ + e.position());
        }
        pos_ = arrow + 2;
        skip_ws();
        if (line_.substr(pos_).starts_with("IDLE")) {
            pos_ += 4;
        } else {
            Valuation out(iface_.var_count());
            do {
                std::size_t at = pos_;
                std::string name = identifier("output variable");
                auto var = iface_.find_var(name);
                if (!var || !iface_.var(*var).is_output()) fail("'" + name + "' is not a controlled variable", at);
                if (out.binds(*var)) fail("output '" + name + "' assigned twice", at);
                expect('=');
                skip_ws();
                at = pos_;
                std::string value = token();
                auto index = iface_.sort_of(*var).find(value);
                if (!index) fail("value '" + value + "' is not in the sort of '" + name + "'", at);
                out.bind(*var, *index);
            } while (accept(','));
            if (!out.binds_exactly(iface_.outputs())) fail("command must assign every controlled variable");
            c.outputs = std::move(out);
        }
        expect(';');
        keyword("next");
        expect('=');
        c.next_state = state_name();
        skip_ws();
        if (pos_ != line_.size()) fail("trailing characters");
        c.source_line = std::string(line_);
        return c;
    }

private:
    std::string identifier(const char* what) {
        skip_ws();
        std::size_t at = pos_;
        std::string t = token();
        if (!is_identifier(t)) fail(std::string("expected ") + what, at);
        return t;
    }

    std::string state_name() {
        skip_ws();
        std::size_t at = pos_;
        std::string t = token();
        if (t.empty()) fail("expected state identifier", at);
        return t;
    }

    std::string token() {
        std::size_t start = pos_;
        while (pos_ < line_.size() && is_word_char(line_[pos_])) ++pos_;
        return std::string(line_.substr(start, pos_ - start));
    }

    void keyword(std::string_view kw) {
        skip_ws();
        std::size_t at = pos_;
        if (token() != kw) fail("expected '" + std::string(kw) + "'", at);
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < line_.size() && line_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void skip_ws() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError("program: " + msg, base_ + at);
    }

    std::string_view line_;
    std::size_t base_;
    const InterfaceSpec& iface_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Value of the `@interface` header, so callers can resolve the interface
/// before a full parse.
inline std::string program_interface_path(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.starts_with("@interface ")) return line.substr(11);
    }
    throw ParseError("program: missing '@interface' header", 0);
}

/// Positions in ParseError are offsets into `text`.
inline GclProgram parse_program(std::string_view text, const InterfaceSpec& iface) {
    GclProgram p;
    bool have_interface = false;
    bool have_initial = false;
    std::size_t offset = 0;
    while (offset < text.size()) {
        std::size_t end = text.find('\n', offset);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(offset, end - offset);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::size_t base = offset;
        offset = end + 1;
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        if (line.starts_with('@')) {
            std::size_t space = line.find(' ');
            std::string_view key = line.substr(0, space);
            std::string value = space == std::string_view::npos ? std::string() : std::string(line.substr(space + 1));
            if (value.empty()) throw ParseError("program: header '" + std::string(key) + "' needs a value", base);
            if (key == "@interface") {
                p.interface_path = value;
                have_interface = true;
            } else if (key == "@initial") {
                p.initial_state = value;
                have_initial = true;
            } else if (key == "@reference") {
                p.reference_hash = value;
            } else {
                throw ParseError("program: unknown header '" + std::string(key) + "'", base);
            }
            continue;
        }
        p.commands.push_back(detail::CommandParser(line, base, iface).parse());
    }
    if (!have_interface) throw ParseError("program: missing '@interface' header", 0);
    if (!have_initial) throw ParseError("program: missing '@initial' header", 0);
    return p;
}

}  // namespace supkit
