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
#include <string>
#include <vector>

#include "supkit/abstraction/classes.hpp"
#include "supkit/abstraction/fsm.hpp"
#include "supkit/core/report.hpp"
#include "supkit/harness/run.hpp"
#include "supkit/testgen/suite.hpp"

namespace supkit {

/// Checks that an execution log faithfully follows `suite`:
///  (a) every non-empty case appears exactly once, in order;
///  (b) each case logs its steps in order with exactly the suite's symbols;
///  (c) each logged input valuation is the class representative;
///  (d) each step verdict agrees with expected vs observed symbol, and with
///      `ref` when given;
///  summary: per-case verdicts and counts agree with the entries, and the
///      suite hash matches `suite_hash` when given.
inline ValidationReport validate_log(const ExecutionLog& log, const TestSuite& suite, const ClassAlphabet& classes,
                                     const Fsm* ref = nullptr, const std::string* suite_hash = nullptr) {
    const std::size_t n_cases = suite.cases.size();

    // (a) group entries by case, then compare the sequence of groups.
    struct Group {
        std::size_t case_idx;
        std::size_t begin;
        std::size_t end;
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < log.entries.size(); ++i) {
        if (groups.empty() || groups.back().case_idx != log.entries[i].case_idx) {
            groups.push_back(Group{log.entries[i].case_idx, i, i + 1});
        } else {
            groups.back().end = i + 1;
        }
    }
    std::size_t g = 0;
    for (std::size_t c = 0; c < n_cases; ++c) {
        if (suite.cases[c].empty()) continue;
        if (g == groups.size()) return ValidationReport::fail("a", "case " + std::to_string(c) + " is missing");
        if (groups[g].case_idx != c) {
            bool later = false;
            for (std::size_t h = g; h < groups.size(); ++h) later = later || groups[h].case_idx == c;
            if (!later) return ValidationReport::fail("a", "case " + std::to_string(c) + " is missing");
            return ValidationReport::fail("a", "case " + std::to_string(groups[g].case_idx) +
                                                   " logged out of order before case " + std::to_string(c));
        }
        ++g;
    }
    if (g != groups.size()) {
        const std::size_t c = groups[g].case_idx;
        if (c < n_cases) return ValidationReport::fail("a", "case " + std::to_string(c) + " appears more than once");
        return ValidationReport::fail("a", "case " + std::to_string(c) + " is not in the suite");
    }

    // (b) steps and symbols.
    for (const auto& grp : groups) {
        const Word& word = suite.cases[grp.case_idx];
        const std::string where = "case " + std::to_string(grp.case_idx);
        for (std::size_t i = grp.begin; i < grp.end; ++i) {
            const auto& e = log.entries[i];
            const std::size_t step = i - grp.begin;
            if (e.step_idx != step) {
                return ValidationReport::fail("b", where + " step " + std::to_string(step) + ": logged step index " +
                                                       std::to_string(e.step_idx));
            }
            if (step >= word.size()) {
                return ValidationReport::fail("b", where + " step " + std::to_string(step) + ": input '" +
                                                       e.input_symbol + "' is not in the suite");
            }
            const std::string& want = suite.alphabet.at(static_cast<std::size_t>(word[step]));
            if (e.input_symbol != want) {
                return ValidationReport::fail("b", where + " step " + std::to_string(step) + ": logged input '" +
                                                       e.input_symbol + "', suite has '" + want + "'");
            }
        }
        if (grp.end - grp.begin != word.size()) {
            return ValidationReport::fail("b", where + " step " + std::to_string(grp.end - grp.begin) + ": input '" +
                                                   suite.alphabet.at(static_cast<std::size_t>(word[grp.end - grp.begin])) +
                                                   "' was skipped");
        }
    }

    // (c) gamma.
    for (const auto& e : log.entries) {
        auto c = classes.index_of(e.input_symbol);
        const std::string where = "case " + std::to_string(e.case_idx) + " step " + std::to_string(e.step_idx);
        if (!c) return ValidationReport::fail("c", where + ": no input class '" + e.input_symbol + "'");
        if (!(e.input_valuation == classes.classes[*c].representative)) {
            return ValidationReport::fail("c", where + ": input valuation is not the representative of '" +
                                                   e.input_symbol + "'");
        }
    }

    // (d) step verdicts, and expected symbols against the reference.
    for (const auto& grp : groups) {
        std::optional<int> state;
        if (ref != nullptr) state = ref->initial();
        for (std::size_t i = grp.begin; i < grp.end; ++i) {
            const auto& e = log.entries[i];
            const std::string where = "case " + std::to_string(e.case_idx) + " step " + std::to_string(e.step_idx);
            const bool agree = e.observed_symbol.has_value() && *e.observed_symbol == e.expected_symbol;
            if (agree != e.pass) {
                return ValidationReport::fail("d", where + ": verdict " + std::string(e.pass ? kPass : kFail) +
                                                       " contradicts expected '" + e.expected_symbol + "' vs observed '" +
                                                       e.observed_symbol.value_or("<none>") + "'");
            }
            if (state) {
                auto x = Fsm::find(ref->inputs(), e.input_symbol);
                if (!x) return ValidationReport::fail("d", where + ": input outside the reference alphabet");
                const auto& edge = ref->edge(*state, *x);
                state = edge.target;
                const std::string& out = ref->outputs()[static_cast<std::size_t>(edge.output)];
                if (out != e.expected_symbol) {
                    return ValidationReport::fail("d", where + ": expected '" + e.expected_symbol +
                                                           "' but the reference produces '" + out + "'");
                }
            }
        }
    }

    // Summary.
    if (log.cases != n_cases || log.verdicts.size() != n_cases) {
        return ValidationReport::fail("summary", "log covers " + std::to_string(log.verdicts.size()) + " verdicts for " +
                                                     std::to_string(log.cases) + " declared cases, suite has " +
                                                     std::to_string(n_cases));
    }
    std::vector<std::optional<std::size_t>> first_fail(n_cases);
    for (const auto& e : log.entries) {
        if (!e.pass && !first_fail[e.case_idx]) first_fail[e.case_idx] = e.step_idx;
    }
    std::size_t failed = 0;
    for (std::size_t c = 0; c < n_cases; ++c) {
        if (first_fail[c]) ++failed;
        if (log.verdicts[c].first_failing_step != first_fail[c]) {
            return ValidationReport::fail("summary", "case " + std::to_string(c) + ": verdict disagrees with its steps");
        }
    }
    if (log.failed != failed || log.passed != n_cases - failed) {
        return ValidationReport::fail("summary", "pass/fail counts disagree with the case verdicts");
    }
    if (suite_hash != nullptr && log.suite_hash != *suite_hash) {
        return ValidationReport::fail("summary", "log was produced for suite " + log.suite_hash + ", not " + *suite_hash);
    }
    return ValidationReport::pass();
}

}  // namespace supkit
