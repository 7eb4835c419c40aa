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

#include "supkit/core/error.hpp"

namespace supkit {

/// Fault classes used by the mutation hooks of codegen and the harness.
enum class MutationKind { output, transfer, add_state };

inline MutationKind parse_mutation_kind(std::string_view s) {
    if (s == "output") return MutationKind::output;
    if (s == "transfer") return MutationKind::transfer;
    if (s == "add-state") return MutationKind::add_state;
    throw FormatError("unknown mutation kind '" + std::string(s) + "' (expected output, transfer or add-state)");
}

inline std::string mutation_kind_name(MutationKind k) {
    switch (k) {
        case MutationKind::output: return "output";
        case MutationKind::transfer: return "transfer";
        case MutationKind::add_state: return "add-state";
    }
    return "?";
}

}  // namespace supkit
