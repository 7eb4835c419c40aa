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

#include "supkit/abstraction/classes.hpp"
#include "supkit/abstraction/fsm.hpp"
#include "supkit/abstraction/minimize.hpp"
#include "supkit/codegen/generate.hpp"
#include "supkit/policy/policy.hpp"
#include "support/fixtures.hpp"

namespace supkit::testing {

/// In-memory artifacts of the workcell fixture, built without touching disk.
struct Workcell {
    Policy policy = load_policy(fixture("workcell/policy.json"));
    const InterfaceSpec& iface = policy.iface;
    Sfsm r = derive_reference(policy.transitions, policy.initial, iface);
    ClassAlphabet classes = extract_classes(r, iface);
    Sfsm completed = complete_with_idle(r, classes, iface);
    Fsm fsm = minimize(abstract_to_fsm(completed, classes, iface));
    GclProgram program = generate_code(completed, classes, iface, "interface.json");
};

}  // namespace supkit::testing
