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

#include "supkit/core/json_io.hpp"

namespace supkit {

/// Outcome of an independent validator. `clause` names the first violated
/// obligation; `detail` carries the witness.
struct ValidationReport {
    bool passed = true;
    std::string clause;
    std::string detail;

    static ValidationReport pass() { return {}; }
    static ValidationReport fail(std::string clause, std::string detail) {
        return {false, std::move(clause), std::move(detail)};
    }
};

inline Json report_to_json(const ValidationReport& r) {
    Json j{{"passed", r.passed}};
    if (!r.passed) {
        j["clause"] = r.clause;
        j["detail"] = r.detail;
    }
    return j;
}

}  // namespace supkit
