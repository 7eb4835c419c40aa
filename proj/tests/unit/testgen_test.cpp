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


#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "supkit/abstraction/classes.hpp"
#include "supkit/policy/policy.hpp"
#include "supkit/testgen/generate.hpp"
#include "supkit/testgen/suite.hpp"
#include "supkit/testgen/validate_h.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace supkit {
namespace {

bool prefix_reduced(const TestSuite& s) {
    for (const auto& a : s.cases) {
        for (const auto& b : s.cases) {
            if (a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin())) return false;
        }
    }
    return true;
}

TEST(GenerateH, SingleStateReference) {
    const Fsm ref({"s0"}, {"c0", "c1", "c2"}, {"o0", "o1"}, 0, {{0, 0}, {1, 0}, {0, 0}});
    const TestSuite suite = generate_h(ref, 1);
    std::set<int> used;
    for (const auto& c : suite.cases) used.insert(c.begin(), c.end());
    EXPECT_EQ(used.size(), 3u);
    int rejected = 0;
    int equivalent = 0;
    testing::for_each_machine(1, ref.inputs(), ref.outputs(), [&](const Fsm& impl) {
        const bool differs = testing::trace_difference(ref, impl, 2).has_value();
        const bool passes = testing::suite_passes(suite.cases, ref, impl);
        ASSERT_NE(differs, passes);
        rejected += differs;
        equivalent += !differs;
    });
    EXPECT_EQ(rejected, 7);
    EXPECT_EQ(equivalent, 1);
}

// Every 2-state machine over the toggle machine's alphabets, initial state
// fixed: exactly one is equivalent, the other 255 must fail some case.
TEST(GenerateH, ToggleMachineKillsAllTwoStateCandidates) {
    const Fsm ref = testing::toggle_machine();
    for (const TestSuite& suite : {generate_h(ref, 2), generate_w(ref, 2)}) {
        int killed = 0;
        int survived = 0;
        testing::for_each_machine(2, ref.inputs(), ref.outputs(), [&](const Fsm& impl) {
            const bool differs = testing::trace_difference(ref, impl, 4).has_value();
            const bool passes = testing::suite_passes(suite.cases, ref, impl);
            ASSERT_NE(differs, passes);
            killed += !passes;
            survived += passes;
        });
        EXPECT_EQ(killed, 255);
        EXPECT_EQ(survived, 1);
    }
}

// Completeness surrogate: random small references, random implementations
// with at most m states.
TEST(GenerateH, RandomReferencesRejectExactlyTheInequivalent) {
    testing::Rng rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = testing::uniform(rng, 1, 4);
        const int k = testing::uniform(rng, 1, 3);
        const Fsm ref = testing::random_minimal_fsm(rng, n, k, 2);
        for (int m : {n, n + 1}) {
            const TestSuite suite = generate_h(ref, m);
            ASSERT_TRUE(validate_h(suite, ref).passed) << validate_h(suite, ref).detail;
            ASSERT_TRUE(prefix_reduced(suite));
            for (int i = 0; i < 300; ++i) {
                const Fsm impl = i % 2 == 0 ? testing::random_fsm(rng, m, k, 2)
                                            : testing::random_fsm(rng, testing::uniform(rng, 1, m), k, 2);
                const bool differs = testing::trace_difference(ref, impl, n + m).has_value();
                ASSERT_EQ(differs, !testing::suite_passes(suite.cases, ref, impl));
            }
        }
    }
}

TEST(GenerateH, MBelowNIsRejected) {
    const Fsm ref = testing::toggle_machine();
    EXPECT_THROW(generate_h(ref, 1), ModelError);
    EXPECT_THROW(generate_w(ref, 1), ModelError);
}

TEST(GenerateH, Deterministic) {
    testing::Rng rng(4);
    const Fsm ref = testing::random_minimal_fsm(rng, 5, 3, 3);
    EXPECT_EQ(dump_json(suite_to_json(generate_h(ref, 5))), dump_json(suite_to_json(generate_h(ref, 5))));
    EXPECT_EQ(dump_json(suite_to_json(generate_w(ref, 6))), dump_json(suite_to_json(generate_w(ref, 6))));
}

TEST(GenerateW, SingleStateIsAllInputs) {
    const Fsm ref({"s0"}, {"c0", "c1"}, {"o0"}, 0, {{0, 0}, {0, 0}});
    const TestSuite suite = generate_w(ref, 1);
    EXPECT_EQ(suite.cases, (std::vector<Word>{{0}, {1}}));
    EXPECT_EQ(characterization_set(ref), (std::vector<Word>{Word{}}));
}

TEST(GenerateW, CharacterizationSetSeparatesAllPairs) {
    testing::Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const Fsm ref = testing::random_minimal_fsm(rng, testing::uniform(rng, 2, 6), testing::uniform(rng, 2, 3), 2);
        const auto w = characterization_set(ref);
        for (int a = 0; a < ref.state_count(); ++a) {
            for (int b = a + 1; b < ref.state_count(); ++b) {
                bool separated = false;
                for (const auto& word : w) {
                    separated = separated || testing::output_names(ref, a, word) != testing::output_names(ref, b, word);
                }
                ASSERT_TRUE(separated);
            }
        }
    }
}

TEST(ShortestDistinguishing, Toggle) {
    const Fsm t = testing::toggle_machine();
    EXPECT_EQ(shortest_distinguishing(t, 0, 1), (Word{0}));
    EXPECT_FALSE(shortest_distinguishing(t, 0, 0).has_value());
}

TEST(ValidateH, EmptySequenceOnlyFailsStateCover) {
    const Fsm ref = testing::toggle_machine();
    TestSuite suite;
    suite.alphabet = ref.inputs();
    suite.meta = SuiteMeta{Method::h, 2, 2, ""};
    suite.cases = {Word{}};
    const auto report = validate_h(suite, ref);
    EXPECT_FALSE(report.passed);
    EXPECT_EQ(report.clause, "a");
}

TEST(ValidateH, DeletionIsReportedWithClause) {
    testing::Rng rng(33);
    int detected = 0;
    int total = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const Fsm ref = testing::random_minimal_fsm(rng, testing::uniform(rng, 2, 5), testing::uniform(rng, 2, 3), 2);
        const TestSuite suite = generate_h(ref, ref.state_count());
        for (std::size_t i = 0; i < suite.cases.size(); ++i) {
            TestSuite cut = suite;
            cut.cases.erase(cut.cases.begin() + static_cast<long>(i));
            const auto report = validate_h(cut, ref);
            ++total;
            if (!report.passed) {
                ++detected;
                EXPECT_TRUE(report.clause == "a" || report.clause == "b" || report.clause == "c");
                EXPECT_FALSE(report.detail.empty());
            }
        }
    }
    EXPECT_GE(detected * 100, total * 95);
}

TEST(ValidateH, AlphabetAndMeta) {
    const Fsm ref = testing::toggle_machine();
    TestSuite suite = generate_h(ref, 2);
    TestSuite wrong = suite;
    wrong.alphabet = {"c1", "c0"};
    EXPECT_EQ(validate_h(wrong, ref).clause, "alphabet");
    wrong = suite;
    wrong.meta.n = 3;
    EXPECT_EQ(validate_h(wrong, ref).clause, "meta");
}

TEST(SuiteFiles, RoundTrip) {
    testing::Rng rng(2);
    const Fsm ref = testing::random_minimal_fsm(rng, 4, 3, 2);
    TestSuite suite = generate_h(ref, 5);
    suite.meta.reference_hash = "abc";
    const TestSuite back = suite_from_json(suite_to_json(suite));
    EXPECT_EQ(back.cases, suite.cases);
    EXPECT_EQ(back.alphabet, suite.alphabet);
    EXPECT_EQ(back.meta.m, 5);
    EXPECT_EQ(back.meta.n, 4);
    EXPECT_EQ(back.meta.reference_hash, "abc");
    EXPECT_EQ(dump_json(suite_to_json(back)), dump_json(suite_to_json(suite)));
}

TEST(Concretize, SubstitutesRepresentatives) {
    const Policy p = load_policy(testing::fixture("workcell/policy.json"));
    const Sfsm r = derive_reference(p.transitions, p.initial, p.iface);
    const ClassAlphabet classes = extract_classes(r, p.iface);

    TestSuite single;
    single.alphabet = {classes.classes[0].id};
    single.cases = {{0}};
    const ConcreteSuite one = concretize(single, classes);
    ASSERT_EQ(one.cases.size(), 1u);
    EXPECT_EQ(one.cases[0], (std::vector<Valuation>{classes.classes[0].representative}));

    TestSuite empty;
    EXPECT_TRUE(concretize(empty, classes).cases.empty());

    TestSuite unknown;
    unknown.alphabet = {"rloc=nowhere"};
    unknown.cases = {{0}};
    EXPECT_THROW(concretize(unknown, classes), ModelError);

    const Fsm fsm = minimize(abstract_to_fsm(complete_with_idle(r, classes, p.iface), classes, p.iface));
    const TestSuite suite = generate_h(fsm, fsm.state_count());
    const ConcreteSuite concrete = concretize(suite, classes);
    ASSERT_EQ(concrete.cases.size(), suite.cases.size());
    for (std::size_t c = 0; c < suite.cases.size(); ++c) {
        ASSERT_EQ(concrete.cases[c].size(), suite.cases[c].size());
        for (std::size_t i = 0; i < suite.cases[c].size(); ++i) {
            const std::string& sym = suite.alphabet[static_cast<std::size_t>(suite.cases[c][i])];
            for (const auto& cls : classes.classes) {
                EXPECT_EQ(eval_guard(cls.guard, concrete.cases[c][i]), cls.id == sym);
            }
        }
    }
    const ConcreteSuite back = concrete_suite_from_json(concrete_suite_to_json(concrete, p.iface), p.iface);
    EXPECT_EQ(back.cases, concrete.cases);
}

}  // namespace
}  // namespace supkit
