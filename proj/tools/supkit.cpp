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


// Command-line front end for the supervisor toolchain.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "supkit/pipeline/pipeline.hpp"

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> workdir;
    std::optional<std::string> paths[11];
    std::optional<std::string> method;
    std::optional<int> m;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mutate;
};

constexpr const char* kPathFlags[] = {"policy", "interface", "sfsm",    "classes", "fsm",   "fsm-text",
                                      "suite",  "concrete-suite", "program", "log",     "report"};

supkit::PipelineConfig build_config(const Flags& f) {
    supkit::PipelineConfig c;
    if (f.config) {
        std::filesystem::path path(*f.config);
        c = supkit::config_from_json(supkit::detail::load_json(path), path.parent_path());
    }
    if (f.workdir) {
        supkit::PipelineConfig d = supkit::PipelineConfig::in_workdir(*f.workdir);
        d.policy = c.policy;
        d.method = c.method;
        d.m_override = c.m_override;
        d.seed = c.seed;
        d.mutate = c.mutate;
        c = d;
    }
    auto slots = c.paths();
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (f.paths[i]) *slots[i].second = *f.paths[i];
    }
    if (f.method) c.method = supkit::parse_method(*f.method);
    if (f.m) c.m_override = *f.m;
    if (f.seed) c.seed = *f.seed;
    if (f.mutate) c.mutate = supkit::parse_mutation(*f.mutate);
    c.validate();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"supkit: supervisor reference, code, and conformance test toolchain"};
    app.require_subcommand(1);
    Flags f;
    app.add_option("--config", f.config, "JSON config file; flags override it");
    app.add_option("--workdir", f.workdir, "Directory holding default artifact names");
    for (std::size_t i = 0; i < std::size(kPathFlags); ++i) {
        app.add_option(std::string("--") + kPathFlags[i], f.paths[i], std::string("Path of the ") + kPathFlags[i] + " artifact");
    }
    app.add_option("--seed", f.seed, "Seed for randomized choices");

    auto* derive = app.add_subcommand("derive", "Policy to reference SFSM");
    auto* abstract = app.add_subcommand("abstract", "Input classes and minimal abstract FSM");
    auto* testgen = app.add_subcommand("testgen", "Complete test suite");
    auto* codegen = app.add_subcommand("codegen", "Guarded-command program");
    auto* run = app.add_subcommand("run", "Execute the suite against the program");
    auto* validate = app.add_subcommand("validate", "Val_H, Val_log and static analysis");
    auto* pipeline = app.add_subcommand("pipeline", "All stages in order");
    for (auto* sub : {testgen, pipeline}) {
        sub->add_option("--method", f.method, "h or w")->check(CLI::IsMember({"h", "w", "H", "W"}));
        sub->add_option("--m", f.m, "Bound on implementation states (default n)");
    }
    for (auto* sub : {codegen, pipeline}) sub->add_option("--mutate", f.mutate, "Inject a fault: kind:seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return supkit::kExitUsage;
    }

    supkit::PipelineConfig config;
    int code = supkit::guarded(
        [&] {
            config = build_config(f);
            return supkit::kExitPass;
        },
        std::cerr);
    if (code != supkit::kExitPass) return code;

    std::ostream& out = std::cout;
    std::ostream& err = std::cerr;
    if (*pipeline) return supkit::cmd_pipeline(config, out, err);
    return supkit::guarded(
        [&] {
            if (*derive) return supkit::cmd_derive(config, out);
            if (*abstract) return supkit::cmd_abstract(config, out);
            if (*testgen) return supkit::cmd_testgen(config, out, err);
            if (*codegen) return supkit::cmd_codegen(config, out);
            if (*run) return supkit::cmd_run(config, out);
            if (*validate) return supkit::cmd_validate(config, out);
            return static_cast<int>(supkit::kExitUsage);
        },
        err);
}
