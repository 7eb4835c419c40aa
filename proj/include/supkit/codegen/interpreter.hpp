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

#include <string>
#include <string_view>

#include "supkit/codegen/gcl.hpp"
#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"

namespace supkit {

struct StepResult {
    OutputValuation output;  // nullopt: IDLE
    std::string next;
};

/// One control step: the command whose state test matches `current` and
/// whose guard holds fires; with none enabled the program idles in place.
/// Two enabled commands are an internal consistency violation and throw.
inline StepResult step(const GclProgram& p, std::string_view current, const Valuation& input) {
    const GuardedCommand* fired = nullptr;
    for (const auto& c : p.commands) {
        if (c.state_test != current || !eval_guard(c.guard, input)) continue;
        if (fired != nullptr) {
            throw ModelError("program consistency violation: commands [" + fired->action + "] and [" + c.action +
                             "] are both enabled in state '" + std::string(current) + "'");
        }
        fired = &c;
    }
    if (fired == nullptr) return StepResult{std::nullopt, std::string(current)};
    return StepResult{fired->outputs, fired->next_state};
}

}  // namespace supkit
