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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supkit/abstraction/classes.hpp"
#include "supkit/abstraction/fsm.hpp"
#include "supkit/abstraction/minimize.hpp"
#include "supkit/codegen/analysis.hpp"
#include "supkit/codegen/gcl.hpp"
#include "supkit/codegen/generate.hpp"
#include "supkit/core/error.hpp"
#include "supkit/core/io.hpp"
#include "supkit/core/json_io.hpp"
#include "supkit/core/mutation.hpp"
#include "supkit/harness/run.hpp"
#include "supkit/harness/validate_log.hpp"
#include "supkit/harness/wrapper.hpp"
#include "supkit/policy/policy.hpp"
#include "supkit/policy/sfsm.hpp"
#include "supkit/testgen/generate.hpp"
#include "supkit/testgen/suite.hpp"
#include "supkit/testgen/validate_h.hpp"

namespace supkit {

namespace fs = std::filesystem;

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitValidator = 2, kExitUsage = 3 };

struct Mutation {
    MutationKind kind = MutationKind::output;
    std::uint64_t seed = 0;
};

/// "kind:seed", e.g. "transfer:7".
inline Mutation parse_mutation(std::string_view spec) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw FormatError("mutation must be 'kind:seed'");
    Mutation m;
    m.kind = parse_mutation_kind(spec.substr(0, colon));
    std::string seed(spec.substr(colon + 1));
    if (seed.empty() || seed.find_first_not_of("0123456789") != std::string::npos) {
        throw FormatError("mutation seed must be a non-negative integer");
    }
    m.seed = std::stoull(seed);
    return m;
}

struct PipelineConfig {
    fs::path policy;
    fs::path interface;
    fs::path sfsm;
    fs::path classes;
    fs::path fsm;
    fs::path fsm_text;
    fs::path suite;
    fs::path concrete_suite;
    fs::path program;
    fs::path log;
    fs::path report;
    Method method = Method::h;
    std::optional<int> m_override;
    std::uint64_t seed = 0;
    std::optional<Mutation> mutate;

    /// Default artifact names inside `dir`; the policy stays unset.
    static PipelineConfig in_workdir(const fs::path& dir) {
        PipelineConfig c;
        c.interface = dir / "interface.json";
        c.sfsm = dir / "sfsm.json";
        c.classes = dir / "classes.json";
        c.fsm = dir / "fsm.json";
        c.fsm_text = dir / "fsm.txt";
        c.suite = dir / "suite.json";
        c.concrete_suite = dir / "concrete_suite.json";
        c.program = dir / "program.gcl";
        c.log = dir / "log.jsonl";
        c.report = dir / "report.json";
        return c;
    }

    std::vector<std::pair<const char*, fs::path*>> paths() {
        return {{"policy", &policy},   {"interface", &interface},       {"sfsm", &sfsm},
                {"classes", &classes}, {"fsm", &fsm},                   {"fsm_text", &fsm_text},
                {"suite", &suite},     {"concrete_suite", &concrete_suite}, {"program", &program},
                {"log", &log},         {"report", &report}};
    }

    void validate() const {
        if (m_override && *m_override < 1) throw FormatError("config: m must be positive");
        std::set<fs::path> seen;
        PipelineConfig copy = *this;
        for (const auto& [name, path] : copy.paths()) {
            if (path->empty()) throw FormatError(std::string("config: no path for '") + name + "'");
            if (!seen.insert(path->lexically_normal()).second) {
                throw FormatError(std::string("config: path for '") + name + "' is used twice");
            }
        }
    }
};

/// Reads a config file. Relative paths resolve against the file's
/// directory; a "workdir" key supplies default artifact names.
inline PipelineConfig config_from_json(const Json& j, const fs::path& base) {
    if (!j.is_object()) throw FormatError("config: expected an object");
    PipelineConfig c;
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
    if (j.contains("workdir")) c = PipelineConfig::in_workdir(resolve(detail::require_string(j, "workdir", "config")));
    for (const auto& [name, path] : c.paths()) {
        if (j.contains(name)) *path = resolve(detail::require_string(j, name, "config"));
    }
    if (j.contains("method")) c.method = parse_method(detail::require_string(j, "method", "config"));
    if (j.contains("m") && !j["m"].is_null()) {
        if (!j["m"].is_number_integer()) throw FormatError("config: 'm' must be an integer");
        c.m_override = j["m"].get<int>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw FormatError("config: 'seed' must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("mutate") && !j["mutate"].is_null()) c.mutate = parse_mutation(detail::require_string(j, "mutate", "config"));
    return c;
}

namespace detail {

inline Json load_json(const fs::path& path) { return parse_json(read_file(path), path.string()); }

/// Throws ChainError unless `j[key]` equals the current hash of `upstream`.
inline void verify_upstream(const Json& j, const char* key, const fs::path& artifact, const fs::path& upstream) {
    const std::string recorded = require_string(j, key, artifact.string().c_str());
    const std::string actual = file_sha256(upstream);
    if (recorded != actual) {
        throw ChainError("stale artifact chain: " + artifact.string() + " records " + key + " " + recorded + " but " +
                         upstream.string() + " hashes to " + actual);
    }
}

inline void verify_hash(const std::string& recorded, const fs::path& artifact, const fs::path& upstream) {
    const std::string actual = file_sha256(upstream);
    if (recorded != actual) {
        throw ChainError("stale artifact chain: " + artifact.string() + " records " + recorded + " but " +
                         upstream.string() + " hashes to " + actual);
    }
}

/// Interface path as recorded in the program: relative to the program's
/// directory, so that artifact trees stay relocatable.
inline std::string relative_interface(const PipelineConfig& c) {
    fs::path rel = fs::absolute(c.interface).lexically_normal().lexically_relative(
        fs::absolute(c.program).parent_path().lexically_normal());
    return rel.empty() ? c.interface.string() : rel.generic_string();
}

struct Reference {
    InterfaceSpec iface;
    Sfsm sfsm;
    ClassAlphabet classes;
    Sfsm completed;
};

// Interface, SFSM and classes with their chain checks.
inline Reference load_reference(const PipelineConfig& c) {
    InterfaceSpec iface = load_interface(c.interface);
    Json sj = load_json(c.sfsm);
    verify_upstream(sj, "interface_hash", c.sfsm, c.interface);
    Sfsm r = sfsm_from_json(sj, iface);
    Json cj = load_json(c.classes);
    verify_upstream(cj, "upstream_hash", c.classes, c.sfsm);
    ClassAlphabet classes = classes_from_json(cj, iface);
    Sfsm completed = complete_with_idle(r, classes, iface);
    return Reference{std::move(iface), std::move(r), std::move(classes), std::move(completed)};
}

inline Fsm load_reference_fsm(const PipelineConfig& c) {
    Json fj = load_json(c.fsm);
    verify_upstream(fj, "upstream_hash", c.fsm, c.sfsm);
    return fsm_from_json(fj);
}

inline TestSuite load_suite(const PipelineConfig& c) {
    TestSuite suite = suite_from_json(load_json(c.suite));
    verify_hash(suite.meta.reference_hash, c.suite, c.fsm);
    return suite;
}

inline GclProgram load_program(const PipelineConfig& c, const InterfaceSpec& iface) {
    GclProgram p = parse_program(read_file(c.program), iface);
    verify_hash(p.reference_hash, c.program, c.sfsm);
    return p;
}

}  // namespace detail

/// Policy to interface file and reference SFSM.
inline int cmd_derive(const PipelineConfig& c, std::ostream& out) {
    Policy policy = load_policy(c.policy);
    Sfsm r = derive_reference(policy.transitions, policy.initial, policy.iface);
    write_file(c.interface, dump_json(interface_to_json(policy.iface)));
    Json j = sfsm_to_json(r, policy.iface);
    j["upstream_hash"] = file_sha256(c.policy);
    j["interface_hash"] = file_sha256(c.interface);
    write_file(c.sfsm, dump_json(j));
    out << "derive: " << r.states.size() << " risk states, " << r.transitions.size() << " transitions\n";
    return kExitPass;
}

/// Classes and the minimal abstract FSM.
inline int cmd_abstract(const PipelineConfig& c, std::ostream& out) {
    InterfaceSpec iface = load_interface(c.interface);
    Json sj = detail::load_json(c.sfsm);
    detail::verify_upstream(sj, "upstream_hash", c.sfsm, c.policy);
    detail::verify_upstream(sj, "interface_hash", c.sfsm, c.interface);
    Sfsm r = sfsm_from_json(sj, iface);
    ClassAlphabet classes = extract_classes(r, iface);
    Fsm machine = minimize(abstract_to_fsm(complete_with_idle(r, classes, iface), classes, iface));
    const std::string sfsm_hash = file_sha256(c.sfsm);
    Json cj = classes_to_json(classes, iface);
    cj["upstream_hash"] = sfsm_hash;
    write_file(c.classes, dump_json(cj));
    Json fj = fsm_to_json(machine);
    fj["upstream_hash"] = sfsm_hash;
    write_file(c.fsm, dump_json(fj));
    write_file(c.fsm_text, fsm_to_text(machine));
    out << "abstract: " << classes.size() << " input classes (" << classes.uncovered
        << " uncovered valuations), n = " << machine.state_count() << "\n";
    return kExitPass;
}

/// Abstract and concrete suites.
inline int cmd_testgen(const PipelineConfig& c, std::ostream& out, std::ostream& err) {
    detail::Reference ref = detail::load_reference(c);
    Fsm machine = detail::load_reference_fsm(c);
    const int n = machine.state_count();
    const int m = c.m_override.value_or(n);
    if (m < n) {
        err << "testgen: m = " << m << " is below the reference state count n = " << n << "\n";
        return kExitUsage;
    }
    TestSuite suite = c.method == Method::h ? generate_h(machine, m) : generate_w(machine, m);
    suite.meta.reference_hash = file_sha256(c.fsm);
    write_file(c.suite, dump_json(suite_to_json(suite)));
    Json cj = concrete_suite_to_json(concretize(suite, ref.classes), ref.iface);
    cj["upstream_hash"] = file_sha256(c.suite);
    write_file(c.concrete_suite, dump_json(cj));
    out << "testgen: " << method_code(suite.meta.method) << "-method, m = " << m << ", " << suite.cases.size()
        << " cases, " << suite.total_symbols() << " symbols\n";
    return kExitPass;
}

/// Guarded-command program, optionally with an injected fault.
inline int cmd_codegen(const PipelineConfig& c, std::ostream& out) {
    detail::Reference ref = detail::load_reference(c);
    GclProgram p = generate_code(ref.completed, ref.classes, ref.iface, detail::relative_interface(c));
    p.reference_hash = file_sha256(c.sfsm);
    if (c.mutate) p = mutate_program(std::move(p), c.mutate->kind, c.mutate->seed, ref.iface);
    write_file(c.program, render_program(p, ref.iface));
    out << "codegen: " << p.commands.size() << " commands";
    if (c.mutate) out << " (mutated: " << mutation_kind_name(c.mutate->kind) << ":" << c.mutate->seed << ")";
    out << "\n";
    return kExitPass;
}

/// Runs the suite against the program and writes the log.
inline int cmd_run(const PipelineConfig& c, std::ostream& out) {
    detail::Reference ref = detail::load_reference(c);
    Fsm machine = detail::load_reference_fsm(c);
    TestSuite suite = detail::load_suite(c);
    GclProgram p = detail::load_program(c, ref.iface);
    Wrapper wrapper(ref.classes, ref.completed, ref.iface);
    ProgramSut sut(p);
    ExecutionLog log = run_suite(suite, sut, machine, wrapper, file_sha256(c.suite));
    write_file(c.log, log_to_jsonl(log, ref.iface));
    out << "run: " << log.cases << " cases, " << log.passed << " passed, " << log.failed << " failed\n";
    return log.all_passed() ? kExitPass : kExitFail;
}

/// Val_H, Val_log and static analysis, aggregated into the report file.
inline int cmd_validate(const PipelineConfig& c, std::ostream& out) {
    detail::Reference ref = detail::load_reference(c);
    Fsm machine = detail::load_reference_fsm(c);
    TestSuite suite = detail::load_suite(c);
    GclProgram p = detail::load_program(c, ref.iface);
    const std::string suite_hash = file_sha256(c.suite);

    ValidationReport val_h = validate_h(suite, machine);
    ValidationReport val_log;
    std::optional<ExecutionLog> log;
    try {
        log = log_from_jsonl(read_file(c.log), ref.iface);
        val_log = validate_log(*log, suite, ref.classes, &machine, &suite_hash);
    } catch (const FormatError& e) {
        val_log = ValidationReport::fail("format", e.what());
    } catch (const ModelError& e) {
        val_log = ValidationReport::fail("format", e.what());
    }
    StaticAnalysisReport sa = analyze(p, ref.completed, ref.iface, machine.state_count());
    const bool validators = val_h.passed && val_log.passed && sa.passed();
    const bool verdict = log && log->all_passed();

    Json report{{"passed", validators && verdict},
                {"verdict", verdict ? kPass : kFail},
                {"val_h", report_to_json(val_h)},
                {"val_log", report_to_json(val_log)},
                {"static_analysis", analysis_to_json(sa)}};
    if (log) report["cases"] = Json{{"total", log->cases}, {"passed", log->passed}, {"failed", log->failed}};
    write_file(c.report, dump_json(report));
    out << "validate: Val_H " << (val_h.passed ? "ok" : "FAILED") << ", Val_log " << (val_log.passed ? "ok" : "FAILED")
        << ", static analysis " << (sa.passed() ? "ok" : "FAILED") << ", verdict " << (verdict ? kPass : kFail) << "\n";
    if (!validators) return kExitValidator;
    return verdict ? kExitPass : kExitFail;
}

/// Maps exceptions onto exit codes and reports them on `err`.
inline int guarded(const std::function<int()>& command, std::ostream& err) {
    try {
        return command();
    } catch (const ChainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidator;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

/// All stages in order, stopping at the first nonzero exit code.
inline int cmd_pipeline(const PipelineConfig& c, std::ostream& out, std::ostream& err) {
    const std::vector<std::function<int()>> stages{
        [&] { return cmd_derive(c, out); },       [&] { return cmd_abstract(c, out); },
        [&] { return cmd_testgen(c, out, err); }, [&] { return cmd_codegen(c, out); },
        [&] { return cmd_run(c, out); },          [&] { return cmd_validate(c, out); }};
    for (const auto& stage : stages) {
        int code = guarded(stage, err);
        if (code != kExitPass) return code;
    }
    return kExitPass;
}

}  // namespace supkit
