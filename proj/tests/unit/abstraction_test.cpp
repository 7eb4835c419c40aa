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


#include <random>
#include <set>

#include <gtest/gtest.h>

#include "supkit/abstraction/classes.hpp"
#include "supkit/abstraction/fsm.hpp"
#include "supkit/abstraction/minimize.hpp"
#include "supkit/policy/policy.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace supkit {
namespace {

using testing::bind_all;
using testing::xy_interface;

SfsmTransition edge(const InterfaceSpec& iface, const char* src, const char* guard, const char* out, const char* tgt) {
    return SfsmTransition{src, parse_guard(guard, iface), bind_all(iface, {{"o", out}}), tgt};
}

Sfsm xy_sfsm(std::vector<SfsmTransition> ts) {
    const auto iface = xy_interface();
    Sfsm r;
    for (const char* s : {"0", "Fa", "Fm"}) r.states.push_back(RiskState{s, parse_risk_state(s, iface)});
    r.initial = "0";
    r.transitions = std::move(ts);
    return r;
}

struct Workcell {
    Policy policy = load_policy(testing::fixture("workcell/policy.json"));
    Sfsm r = derive_reference(policy.transitions, policy.initial, policy.iface);
    const InterfaceSpec& iface = policy.iface;
};

TEST(Classes, DistinctTotalConjunctionsAreDisjoint) {
    const auto iface = xy_interface();
    const Sfsm r = xy_sfsm({edge(iface, "0", "x=a&y=0", "p", "Fa"), edge(iface, "0", "x=a&y=1", "q", "0")});
    const ClassAlphabet c = extract_classes(r, iface);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.classes[0].id, "x=a&y=0");
    EXPECT_EQ(c.classes[1].id, "x=a&y=1");
    EXPECT_EQ(c.uncovered, 2u);
}

TEST(Classes, OverlapReportsBothGuardsAndWitness) {
    const auto iface = xy_interface();
    const Sfsm r = xy_sfsm({edge(iface, "0", "x=a", "p", "Fa"), edge(iface, "Fa", "x=a&y=1", "q", "0")});
    try {
        extract_classes(r, iface);
        FAIL();
    } catch (const ModelError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("'x=a'"), std::string::npos) << msg;
        EXPECT_NE(msg.find("'x=a&y=1'"), std::string::npos) << msg;
        EXPECT_NE(msg.find("{x=a, y=1}"), std::string::npos) << msg;
    }
}

TEST(Classes, UnsatisfiableGuardIsRejected) {
    const auto iface = xy_interface();
    const Sfsm r = xy_sfsm({edge(iface, "0", "x=a&x=b", "p", "Fa")});
    EXPECT_THROW(extract_classes(r, iface), ModelError);
}

TEST(Classes, WorkcellClassCountEqualsDistinctGuards) {
    Workcell w;
    std::set<std::string> guards;
    for (const auto& t : w.r.transitions) guards.insert(canonical_print(t.guard, w.iface));
    const ClassAlphabet c = extract_classes(w.r, w.iface);
    EXPECT_EQ(c.size(), guards.size());
}

// Properties: representatives are the smallest satisfying valuation, classes
// are ordered by representative, and the uncovered count is exact.
TEST(Classes, RepresentativesAndCoverage) {
    testing::Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const InterfaceSpec iface = testing::random_interface(rng);
        Valuation initial;
        const Sfsm r = derive_reference(testing::random_controller(rng, iface, initial), initial, iface);
        const ClassAlphabet c = extract_classes(r, iface);
        const std::vector<int> in(iface.inputs().begin(), iface.inputs().end());
        const auto all = testing::valuations_by_radix(iface, in);
        std::uint64_t uncovered = 0;
        for (const auto& s : all) {
            int hits = 0;
            for (const auto& cls : c.classes) hits += eval_guard(cls.guard, s);
            ASSERT_LE(hits, 1);
            uncovered += hits == 0;
        }
        EXPECT_EQ(c.uncovered, uncovered);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const auto& cls = c.classes[i];
            EXPECT_EQ(cls.id, canonical_print(cls.guard, iface));
            Valuation smallest;
            for (const auto& s : all) {
                if (eval_guard(cls.guard, s)) {
                    smallest = s;
                    break;
                }
            }
            EXPECT_EQ(cls.representative, smallest);
            if (i > 0) {
                EXPECT_LT(c.classes[i - 1].representative, cls.representative);
            }
        }
        const ClassAlphabet back = classes_from_json(classes_to_json(c, iface), iface);
        EXPECT_EQ(dump_json(classes_to_json(back, iface)), dump_json(classes_to_json(c, iface)));
    }
}

TEST(Idle, CompletionAddsExactlyTheMissingLoops) {
    const auto iface = xy_interface();
    const Sfsm r = xy_sfsm({edge(iface, "0", "x=a&y=0", "p", "Fa"), edge(iface, "0", "x=a&y=1", "q", "0"),
                            edge(iface, "Fa", "x=a&y=0", "q", "Fm")});
    const ClassAlphabet c = extract_classes(r, iface);
    const Sfsm done = complete_with_idle(r, c, iface);
    EXPECT_EQ(done.transitions.size(), r.states.size() * c.size());
    EXPECT_EQ(done.transitions.size() - r.transitions.size(), 3u * 2u - 3u);
    // State 0 reacts to both classes already.
    int idle_from_zero = 0;
    for (const auto& t : done.transitions) idle_from_zero += t.src == "0" && !t.output;
    EXPECT_EQ(idle_from_zero, 0);
    bool found = false;
    for (const auto& t : done.transitions) {
        if (t.src == "Fa" && canonical_print(t.guard, iface) == "x=a&y=1") {
            EXPECT_FALSE(t.output.has_value());
            EXPECT_EQ(t.tgt, "Fa");
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Abstraction, SingleStateSelfLoop) {
    const auto iface = xy_interface();
    Sfsm r;
    r.states.push_back(RiskState{"0", parse_risk_state("0", iface)});
    r.initial = "0";
    r.transitions.push_back(edge(iface, "0", "x=a", "p", "0"));
    const ClassAlphabet c = extract_classes(r, iface);
    const Fsm m = abstract_to_fsm(complete_with_idle(r, c, iface), c, iface);
    EXPECT_EQ(m.state_count(), 1);
    EXPECT_EQ(m.input_count(), 1);
    EXPECT_EQ(m.table().size(), 1u);
    EXPECT_EQ(m.outputs(), (std::vector<std::string>{"o=p", "__idle__"}));
}

// The abstract machine reproduces the reference stepped on representatives.
TEST(Abstraction, WorkcellMatchesReferenceSimulation) {
    Workcell w;
    const ClassAlphabet c = extract_classes(w.r, w.iface);
    const Sfsm done = complete_with_idle(w.r, c, w.iface);
    const Fsm m = abstract_to_fsm(done, c, w.iface);
    EXPECT_EQ(m.state_count(), static_cast<int>(w.r.states.size()));
    testing::Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const int len = testing::uniform(rng, 0, 10);
        std::string state = done.initial;
        int fsm_state = m.initial();
        for (int i = 0; i < len; ++i) {
            const int x = testing::uniform(rng, 0, static_cast<int>(c.size()) - 1);
            const auto ref = testing::simulate(done, state, c.classes[static_cast<std::size_t>(x)].representative);
            const auto& e = m.edge(fsm_state, x);
            ASSERT_EQ(m.outputs()[static_cast<std::size_t>(e.output)], print_output(ref.output, w.iface));
            ASSERT_EQ(m.states()[static_cast<std::size_t>(e.target)], ref.next);
            state = ref.next;
            fsm_state = e.target;
        }
    }
    // Total after completion.
    EXPECT_EQ(m.table().size(), static_cast<std::size_t>(m.state_count() * m.input_count()));
}

TEST(Minimize, MinimalMachineIsUnchanged) {
    const Fsm t = testing::toggle_machine();
    EXPECT_EQ(minimize(t), t);
}

TEST(Minimize, DuplicatedStateMerges) {
    // s1 and s2 have identical rows.
    const Fsm m({"s0", "s1", "s2"}, {"c0"}, {"o0", "o1"}, 0, {{0, 1}, {1, 2}, {1, 2}});
    const Fsm min = minimize(m);
    EXPECT_EQ(min.state_count(), 2);
    EXPECT_EQ(min.states(), (std::vector<std::string>{"s0", "s1"}));
    EXPECT_FALSE(testing::trace_difference(m, min, 6).has_value());
}

TEST(Minimize, BlockNamedBySmallestMember) {
    const Fsm m({"z", "b", "a"}, {"c0"}, {"o0"}, 0, {{0, 1}, {0, 2}, {0, 0}});
    const Fsm min = minimize(m);
    EXPECT_EQ(min.states(), (std::vector<std::string>{"a"}));
}

// Random 8-state machines: language preserved, state count matches the
// brute-force distinguishability count, idempotent.
TEST(Minimize, RandomMachines) {
    testing::Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const Fsm m = testing::random_fsm(rng, 8, testing::uniform(rng, 1, 3), testing::uniform(rng, 1, 3));
        const Fsm min = minimize(m);
        ASSERT_FALSE(testing::trace_difference(m, min, 6).has_value());
        ASSERT_FALSE(testing::random_trace_difference(m, min, rng, 300, 40).has_value());
        ASSERT_EQ(min.state_count(), testing::distinct_state_count(m));
        ASSERT_EQ(minimize(min), min);
    }
}

TEST(FsmFiles, RoundTrips) {
    testing::Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const Fsm m = testing::random_fsm(rng, testing::uniform(rng, 1, 6), testing::uniform(rng, 1, 4), 3);
        EXPECT_EQ(fsm_from_json(fsm_to_json(m)), m);
        EXPECT_EQ(fsm_from_text(fsm_to_text(m)), m);
    }
    EXPECT_THROW(fsm_from_text("@initial s0\n@inputs a\n@outputs x\ns0 a x s0 extra\n"), ParseError);
    EXPECT_THROW(fsm_from_text("@initial s0\n@inputs a b\n@outputs x\ns0 a x s0\n"), ModelError);
}

}  // namespace
}  // namespace supkit
