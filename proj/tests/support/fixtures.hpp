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

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "supkit/core/guard.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/core/valuation.hpp"

namespace supkit::testing {

inline std::filesystem::path fixture(const std::string& rel) { return std::filesystem::path(SUPKIT_FIXTURES) / rel; }

/// Inputs x:{a,b}, y:{0,1}; output o:{p,q}; factor F over phases.
inline InterfaceSpec xy_interface() {
    return InterfaceSpec({Sort{"XS", {"a", "b"}}, Sort{"YS", {"0", "1"}}, Sort{"OS", {"p", "q"}},
                          Sort{"Phase", {"0", "a", "m"}}},
                         {VarDecl{"x", 0, VarKind::monitored}, VarDecl{"y", 1, VarKind::monitored},
                          VarDecl{"o", 2, VarKind::controlled}, VarDecl{"F", 3, VarKind::factor}});
}

inline Valuation bind_all(const InterfaceSpec& iface, std::initializer_list<std::pair<const char*, const char*>> kv) {
    Valuation v(iface.var_count());
    for (const auto& [name, value] : kv) {
        int var = *iface.find_var(name);
        v.bind(var, *iface.sort_of(var).find(value));
    }
    return v;
}

/// Random guard over the monitored variables, depth-bounded.
inline GuardExpr random_guard(std::mt19937_64& rng, const InterfaceSpec& iface, int depth) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    const auto inputs = iface.inputs();
    if (depth == 0 || pick(3) == 0) {
        int var = inputs[static_cast<std::size_t>(pick(static_cast<int>(inputs.size())))];
        return GuardExpr::atom(var, pick(static_cast<int>(iface.sort_of(var).values.size())));
    }
    switch (pick(4)) {
        case 0:
            return GuardExpr::negation(random_guard(rng, iface, depth - 1));
        case 1:
            return GuardExpr::group(random_guard(rng, iface, depth - 1));
        case 2: {
            std::vector<GuardExpr> ops;
            for (int i = 0, n = 2 + pick(2); i < n; ++i) ops.push_back(random_guard(rng, iface, depth - 1));
            return GuardExpr::conjunction(std::move(ops));
        }
        default: {
            std::vector<GuardExpr> ops;
            for (int i = 0, n = 2 + pick(2); i < n; ++i) ops.push_back(random_guard(rng, iface, depth - 1));
            return GuardExpr::disjunction(std::move(ops));
        }
    }
}

}  // namespace supkit::testing
