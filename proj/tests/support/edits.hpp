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

// Exhaustive single-token edits of guarded-command listings.

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "supkit/core/valuation.hpp"

namespace supkit::testing {

struct LineEdit {
    std::size_t line;  // index among command lines
    std::string text;  // edited line
    std::string kind;  // "state", "next", "guard-var" or "guard-value"
};

/// Every edit replacing one state identifier (state test or next state)
/// with another known state, or one guard token with another variable name
/// or another value of the same sort.
inline std::vector<LineEdit> single_token_edits(const std::vector<std::string>& lines, const InterfaceSpec& iface,
                                                const std::set<std::string>& states) {
    std::vector<LineEdit> out;
    auto word_end = [](const std::string& s, std::size_t i) {
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        return i;
    };
    for (std::size_t l = 0; l < lines.size(); ++l) {
        const std::string& line = lines[l];
        auto replace = [&](std::size_t b, std::size_t e, const std::string& with, const char* kind) {
            out.push_back(LineEdit{l, line.substr(0, b) + with + line.substr(e), kind});
        };
        // State test.
        const std::size_t sb = line.find("state=") + 6;
        const std::size_t se = word_end(line, sb);
        for (const auto& s : states) {
            if (s != line.substr(sb, se - sb)) replace(sb, se, s, "state");
        }
        // Next state.
        const std::size_t nb = line.rfind("next=") + 5;
        const std::size_t ne = word_end(line, nb);
        for (const auto& s : states) {
            if (s != line.substr(nb, ne - nb)) replace(nb, ne, s, "next");
        }
        // Guard atoms between "& " and " ->".
        const std::size_t gb = line.find(" & ", se) + 3;
        const std::size_t ge = line.find(" -> ", gb);
        for (std::size_t i = gb; i < ge;) {
            if (!(std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) {
                ++i;
                continue;
            }
            const std::size_t vb = i;
            const std::size_t ve = word_end(line, vb);
            const std::size_t ab = ve + 1;  // after '='
            const std::size_t ae = word_end(line, ab);
            const std::string var = line.substr(vb, ve - vb);
            const std::string value = line.substr(ab, ae - ab);
            for (int v : iface.inputs()) {
                if (iface.var(v).name != var) replace(vb, ve, iface.var(v).name, "guard-var");
            }
            if (auto v = iface.find_var(var)) {
                for (const auto& alt : iface.sort_of(*v).values) {
                    if (alt != value) replace(ab, ae, alt, "guard-value");
                }
            }
            i = ae;
        }
    }
    return out;
}

}  // namespace supkit::testing
