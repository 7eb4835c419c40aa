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

// Everything in one include.

#include "supkit/abstraction/classes.hpp"
#include "supkit/abstraction/fsm.hpp"
#include "supkit/abstraction/minimize.hpp"
#include "supkit/codegen/analysis.hpp"
#include "supkit/codegen/gcl.hpp"
#include "supkit/codegen/generate.hpp"
#include "supkit/codegen/interpreter.hpp"
#include "supkit/core/error.hpp"
#include "supkit/core/guard.hpp"
#include "supkit/core/io.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/core/mutation.hpp"
#include "supkit/core/report.hpp"
#include "supkit/core/valuation.hpp"
#include "supkit/harness/equivalence.hpp"
#include "supkit/harness/mutate.hpp"
#include "supkit/harness/run.hpp"
#include "supkit/harness/validate_log.hpp"
#include "supkit/harness/wrapper.hpp"
#include "supkit/pipeline/pipeline.hpp"
#include "supkit/policy/policy.hpp"
#include "supkit/policy/sfsm.hpp"
#include "supkit/testgen/generate.hpp"
#include "supkit/testgen/suite.hpp"
#include "supkit/testgen/validate_h.hpp"
