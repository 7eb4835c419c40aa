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
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supkit/abstraction/fsm.hpp"
#include "supkit/codegen/gcl.hpp"
#include "supkit/codegen/interpreter.hpp"
#include "supkit/core/error.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/harness/wrapper.hpp"
#include "supkit/testgen/suite.hpp"

namespace supkit {

inline constexpr std::string_view kPass = "PASS";
inline constexpr std::string_view kFail = "FAIL";

/// What the SUT reports for one step. Programs report an output valuation
/// that the harness abstracts through omega; abstract machines report the
/// symbol directly.
struct Observation {
    std::optional<OutputValuation> output;
    std::optional<std::string> symbol;
    std::string diagnostic;
};

/// Generated (or substituted) program behind the wrapper.
class ProgramSut {
public:
    explicit ProgramSut(const GclProgram& program) : program_(&program), current_(program.initial_state) {}

    void reset() { current_ = program_->initial_state; }

    Observation apply(const Valuation& input, std::size_t /*symbol*/) {
        try {
            StepResult r = step(*program_, current_, input);
            current_ = std::move(r.next);
            return Observation{std::move(r.output), std::nullopt, {}};
        } catch (const ModelError& e) {
            return Observation{std::nullopt, std::nullopt, e.what()};
        }
    }

    const std::string& current() const noexcept { return current_; }

private:
    const GclProgram* program_;
    std::string current_;
};

/// Abstract machine as SUT. Its input alphabet must follow the wrapper's
/// symbol order.
class FsmSut {
public:
    explicit FsmSut(const Fsm& machine) : machine_(&machine), current_(machine.initial()) {}

    void reset() { current_ = machine_->initial(); }

    Observation apply(const Valuation& /*input*/, std::size_t symbol) {
        const auto& e = machine_->edge(current_, static_cast<int>(symbol));
        current_ = e.target;
        return Observation{std::nullopt, machine_->outputs()[static_cast<std::size_t>(e.output)], {}};
    }

private:
    const Fsm* machine_;
    int current_;
};

struct LogEntry {
    std::size_t case_idx = 0;
    std::size_t step_idx = 0;
    std::string input_symbol;
    Valuation input_valuation;
    std::optional<OutputValuation> observed_output;  // nullopt: not reported
    std::optional<std::string> observed_symbol;      // nullopt: outside omega
    std::string expected_symbol;
    bool pass = true;
    std::string diagnostic;

    friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct CaseVerdict {
    std::optional<std::size_t> first_failing_step;  // nullopt: PASS
    bool passed() const noexcept { return !first_failing_step; }
    friend bool operator==(const CaseVerdict&, const CaseVerdict&) = default;
};

struct ExecutionLog {
    std::vector<LogEntry> entries;
    std::vector<CaseVerdict> verdicts;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::string suite_hash;

    bool all_passed() const noexcept { return failed == 0; }
    friend bool operator==(const ExecutionLog&, const ExecutionLog&) = default;
};

/// Runs every case from a reset SUT: gamma concretizes each symbol, omega
/// abstracts each observation, and the result is compared with `ref` along
/// the same input word. A case keeps running after its first mismatch so
/// that the log covers the whole suite.
template <class Sut>
ExecutionLog run_suite(const TestSuite& suite, Sut& sut, const Fsm& ref, const Wrapper& wrapper,
                       std::string suite_hash = {}) {
    std::vector<int> ref_input;
    std::vector<std::size_t> wrap_input;
    for (const auto& sym : suite.alphabet) {
        auto x = Fsm::find(ref.inputs(), sym);
        auto w = wrapper.symbol_index(sym);
        if (!x || !w) throw ModelError("run: symbol '" + sym + "' is not in the reference alphabet");
        ref_input.push_back(*x);
        wrap_input.push_back(*w);
    }
    ExecutionLog log;
    log.suite_hash = std::move(suite_hash);
    for (std::size_t c = 0; c < suite.cases.size(); ++c) {
        sut.reset();
        CaseVerdict verdict;
        int ref_state = ref.initial();
        const Word& word = suite.cases[c];
        for (std::size_t i = 0; i < word.size(); ++i) {
            const auto sym = static_cast<std::size_t>(word[i]);
            if (sym >= ref_input.size()) throw ModelError("run: symbol index outside the suite alphabet");
            const auto& edge = ref.edge(ref_state, ref_input[sym]);
            ref_state = edge.target;

            LogEntry e;
            e.case_idx = c;
            e.step_idx = i;
            e.input_symbol = suite.alphabet[sym];
            e.input_valuation = wrapper.gamma(wrap_input[sym]);
            e.expected_symbol = ref.outputs()[static_cast<std::size_t>(edge.output)];
            Observation obs = sut.apply(e.input_valuation, wrap_input[sym]);
            e.observed_output = obs.output;
            e.observed_symbol = obs.symbol;
            e.diagnostic = std::move(obs.diagnostic);
            if (!e.observed_symbol && e.observed_output) {
                e.observed_symbol = wrapper.omega(*e.observed_output);
                if (!e.observed_symbol) e.diagnostic = "observed output is outside the range of omega";
            }
            e.pass = e.observed_symbol && *e.observed_symbol == e.expected_symbol;
            if (!e.pass && !verdict.first_failing_step) verdict.first_failing_step = i;
            log.entries.push_back(std::move(e));
        }
        log.verdicts.push_back(verdict);
        ++(verdict.passed() ? log.passed : log.failed);
    }
    log.cases = suite.cases.size();
    return log;
}

inline Json log_entry_to_json(const LogEntry& e, const InterfaceSpec& iface) {
    Json j{{"case", e.case_idx},
           {"step", e.step_idx},
           {"input", e.input_symbol},
           {"input_valuation", valuation_to_json(e.input_valuation, iface)},
           {"observed", e.observed_output ? output_to_json(*e.observed_output, iface) : Json(nullptr)},
           {"observed_symbol", e.observed_symbol ? Json(*e.observed_symbol) : Json(nullptr)},
           {"expected", e.expected_symbol},
           {"verdict", e.pass ? kPass : kFail}};
    if (!e.diagnostic.empty()) j["diagnostic"] = e.diagnostic;
    return j;
}

/// JSON Lines: one object per step, then the summary object.
inline std::string log_to_jsonl(const ExecutionLog& log, const InterfaceSpec& iface) {
    std::string out;
    for (const auto& e : log.entries) out += log_entry_to_json(e, iface).dump() + "\n";
    Json verdicts = Json::array();
    for (const auto& v : log.verdicts) {
        if (v.passed()) {
            verdicts.push_back(kPass);
        } else {
            verdicts.push_back(Json{{std::string(kFail), *v.first_failing_step}});
        }
    }
    Json summary{{"cases", log.cases},
                 {"passed", log.passed},
                 {"failed", log.failed},
                 {"suite_hash", log.suite_hash},
                 {"verdicts", std::move(verdicts)}};
    out += summary.dump() + "\n";
    return out;
}

namespace detail {

inline std::size_t require_index(const Json& j, const char* key, const std::string& what) {
    const Json& v = require(j, key, what.c_str());
    if (!v.is_number_unsigned()) throw FormatError(what + ": '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

inline bool parse_verdict(const Json& j, const std::string& what) {
    if (j == kPass) return true;
    if (j == kFail) return false;
    throw FormatError(what + ": verdict must be PASS or FAIL");
}

}  // namespace detail

inline ExecutionLog log_from_jsonl(std::string_view text, const InterfaceSpec& iface) {
    std::vector<Json> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (line.empty()) continue;
        lines.push_back(parse_json(line, "log line " + std::to_string(n)));
    }
    if (lines.empty()) throw FormatError("log: missing summary line");
    ExecutionLog log;
    for (std::size_t n = 0; n + 1 < lines.size(); ++n) {
        const Json& j = lines[n];
        const std::string what = "log entry " + std::to_string(n);
        if (!j.is_object()) throw FormatError(what + ": expected an object");
        LogEntry e;
        e.case_idx = detail::require_index(j, "case", what);
        e.step_idx = detail::require_index(j, "step", what);
        e.input_symbol = detail::require_string(j, "input", what.c_str());
        e.input_valuation = valuation_from_json(detail::require(j, "input_valuation", what.c_str()), iface);
        const Json& obs = detail::require(j, "observed", what.c_str());
        if (!obs.is_null()) e.observed_output = output_from_json(obs, iface);
        const Json& sym = detail::require(j, "observed_symbol", what.c_str());
        if (!sym.is_null()) {
            if (!sym.is_string()) throw FormatError(what + ": 'observed_symbol' must be a string or null");
            e.observed_symbol = sym.get<std::string>();
        }
        e.expected_symbol = detail::require_string(j, "expected", what.c_str());
        e.pass = detail::parse_verdict(detail::require(j, "verdict", what.c_str()), what);
        if (j.contains("diagnostic")) e.diagnostic = detail::require_string(j, "diagnostic", what.c_str());
        log.entries.push_back(std::move(e));
    }
    const Json& s = lines.back();
    const std::string what = "log summary";
    if (!s.is_object()) throw FormatError(what + ": expected an object");
    log.cases = detail::require_index(s, "cases", what);
    log.passed = detail::require_index(s, "passed", what);
    log.failed = detail::require_index(s, "failed", what);
    log.suite_hash = detail::require_string(s, "suite_hash", what.c_str());
    for (const auto& v : detail::require_array(s, "verdicts", what.c_str())) {
        CaseVerdict cv;
        if (v.is_object()) {
            cv.first_failing_step = detail::require_index(v, std::string(kFail).c_str(), what);
        } else if (v != kPass) {
            throw FormatError(what + ": bad case verdict");
        }
        log.verdicts.push_back(cv);
    }
    return log;
}

/// Abstraction of a program: drives it through every (reachable state,
/// class) pair. Output valuations outside omega keep their printed form.
inline Fsm program_to_fsm(const GclProgram& p, const Wrapper& wrapper, const InterfaceSpec& iface) {
    std::vector<std::string> states{p.initial_state};
    std::vector<std::string> outputs;
    for (const auto& [val, sym] : wrapper.omega_table()) outputs.push_back(sym);
    std::vector<Fsm::Edge> table;
    const std::size_t k = wrapper.symbols().size();
    for (std::size_t s = 0; s < states.size(); ++s) {
        for (std::size_t x = 0; x < k; ++x) {
            StepResult r = step(p, states[s], wrapper.gamma(x));
            std::string sym = wrapper.omega(r.output).value_or(print_output(r.output, iface));
            auto o = Fsm::find(outputs, sym);
            if (!o) {
                outputs.push_back(sym);
                o = static_cast<int>(outputs.size()) - 1;
            }
            auto t = Fsm::find(states, r.next);
            if (!t) {
                states.push_back(r.next);
                t = static_cast<int>(states.size()) - 1;
            }
            table.push_back(Fsm::Edge{*o, *t});
        }
    }
    return Fsm(std::move(states), wrapper.symbols(), std::move(outputs), 0, std::move(table));
}

}  // namespace supkit
