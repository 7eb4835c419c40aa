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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supkit/abstraction/classes.hpp"
#include "supkit/abstraction/fsm.hpp"
#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/policy/sfsm.hpp"

namespace supkit {

/// Test wrapper: gamma maps each input class symbol to a concrete monitored
/// valuation, omega maps observed output valuations back to output symbols.
class Wrapper {
public:
    /// gamma uses class representatives; omega covers the output valuations
    /// occurring in `completed` plus IDLE.
    Wrapper(const ClassAlphabet& classes, const Sfsm& completed, const InterfaceSpec& iface) {
        for (const auto& c : classes.classes) {
            if (!eval_guard(c.guard, c.representative)) {
                throw ModelError("wrapper: representative " + describe(c.representative, iface) +
                                 " does not satisfy class '" + c.id + "'");
            }
            symbols_.push_back(c.id);
            gamma_.push_back(c.representative);
        }
        omega_.emplace(std::nullopt, std::string(kIdleSymbol));
        for (const auto& t : completed.transitions) {
            omega_.emplace(t.output, print_output(t.output, iface));
        }
        std::map<std::string, int> seen;
        for (const auto& [val, sym] : omega_) {
            if (++seen[sym] > 1) throw ModelError("wrapper: omega is not injective on '" + sym + "'");
        }
    }

    const std::vector<std::string>& symbols() const noexcept { return symbols_; }

    std::optional<std::size_t> symbol_index(std::string_view id) const {
        auto x = Fsm::find(symbols_, id);
        if (!x) return std::nullopt;
        return static_cast<std::size_t>(*x);
    }

    const Valuation& gamma(std::size_t symbol) const { return gamma_.at(symbol); }

    const Valuation& gamma(std::string_view id) const {
        auto x = symbol_index(id);
        if (!x) throw ModelError("wrapper: no input class '" + std::string(id) + "'");
        return gamma_[*x];
    }

    /// nullopt when the valuation lies outside the occurring output range.
    std::optional<std::string> omega(const OutputValuation& o) const {
        auto it = omega_.find(o);
        if (it == omega_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<OutputValuation, std::string>& omega_table() const noexcept { return omega_; }

private:
    std::vector<std::string> symbols_;
    std::vector<Valuation> gamma_;
    std::map<OutputValuation, std::string> omega_;
};

}  // namespace supkit
