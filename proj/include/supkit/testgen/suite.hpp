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
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supkit/abstraction/classes.hpp"
#include "supkit/abstraction/fsm.hpp"
#include "supkit/core/error.hpp"
#include "supkit/core/json_io.hpp"

namespace supkit {

using Word = std::vector<int>;

enum class Method { h, w };

inline std::string method_code(Method m) { return m == Method::h ? "H" : "W"; }

inline Method parse_method(std::string_view code) {
    if (code == "H" || code == "h") return Method::h;
    if (code == "W" || code == "w") return Method::w;
    throw FormatError("unknown test method '" + std::string(code) + "'");
}

struct SuiteMeta {
    Method method = Method::h;
    int m = 1;
    int n = 1;
    std::string reference_hash;
};

/// Abstract test suite. Stored prefix-reduced: no case is a proper prefix
/// of another. Cases hold indices into `alphabet`.
struct TestSuite {
    std::vector<std::string> alphabet;
    std::vector<Word> cases;
    SuiteMeta meta;

    std::size_t total_symbols() const {
        std::size_t total = 0;
        for (const auto& c : cases) total += c.size();
        return total;
    }
};

/// Input sequences over the concrete monitored valuations.
struct ConcreteSuite {
    std::vector<std::vector<Valuation>> cases;
    SuiteMeta meta;
};

/// Trie of input words. Node 0 is the empty word.
class PrefixTree {
public:
    explicit PrefixTree(int alphabet_size) : k_(alphabet_size) { nodes_.push_back(Node{-1, -1, 0, {}}); nodes_[0].children.assign(static_cast<std::size_t>(k_), -1); }

    static constexpr int root() noexcept { return 0; }
    std::size_t size() const noexcept { return nodes_.size(); }

    std::optional<int> child(int node, int x) const {
        int c = nodes_[static_cast<std::size_t>(node)].children[static_cast<std::size_t>(x)];
        if (c < 0) return std::nullopt;
        return c;
    }

    int depth(int node) const { return nodes_[static_cast<std::size_t>(node)].depth; }

    /// Inserts `from`·`word`; returns the node of the full word.
    int insert(std::span<const int> word, int from = root()) {
        int node = from;
        for (int x : word) {
            int& slot = nodes_[static_cast<std::size_t>(node)].children[static_cast<std::size_t>(x)];
            if (slot < 0) {
                slot = static_cast<int>(nodes_.size());
                Node fresh{node, x, nodes_[static_cast<std::size_t>(node)].depth + 1, {}};
                fresh.children.assign(static_cast<std::size_t>(k_), -1);
                nodes_.push_back(std::move(fresh));
            }
            node = nodes_[static_cast<std::size_t>(node)].children[static_cast<std::size_t>(x)];
        }
        return node;
    }

    /// Number of nodes inserting `from`·`word` would create.
    std::size_t missing(std::span<const int> word, int from = root()) const {
        int node = from;
        for (std::size_t i = 0; i < word.size(); ++i) {
            auto c = child(node, word[i]);
            if (!c) return word.size() - i;
            node = *c;
        }
        return 0;
    }

    std::optional<int> find(std::span<const int> word, int from = root()) const {
        int node = from;
        for (int x : word) {
            auto c = child(node, x);
            if (!c) return std::nullopt;
            node = *c;
        }
        return node;
    }

    Word word(int node) const {
        Word w;
        while (node > 0) {
            w.push_back(nodes_[static_cast<std::size_t>(node)].symbol);
            node = nodes_[static_cast<std::size_t>(node)].parent;
        }
        return {w.rbegin(), w.rend()};
    }

    /// Leaf words in depth-first, input-ordered traversal. A tree holding
    /// only the root yields no cases.
    std::vector<Word> leaves() const {
        std::vector<Word> out;
        Word current;
        collect(root(), current, out);
        return out;
    }

private:
    struct Node {
        int parent;
        int symbol;
        int depth;
        std::vector<int> children;
    };

    void collect(int node, Word& current, std::vector<Word>& out) const {
        bool leaf = true;
        for (int x = 0; x < k_; ++x) {
            auto c = child(node, x);
            if (!c) continue;
            leaf = false;
            current.push_back(x);
            collect(*c, current, out);
            current.pop_back();
        }
        if (leaf && node != root()) out.push_back(current);
    }

    int k_;
    std::vector<Node> nodes_;
};

/// Breadth-first state cover with inputs tried in alphabet order. Entry s
/// is the access word of state s (empty if unreachable; check `reached`).
struct StateCover {
    std::vector<Word> access;
    std::vector<bool> reached;
    std::vector<int> order;  // states in discovery order
};

inline StateCover state_cover(const Fsm& m) {
    StateCover cover;
    cover.access.resize(static_cast<std::size_t>(m.state_count()));
    cover.reached.assign(static_cast<std::size_t>(m.state_count()), false);
    std::deque<int> queue{m.initial()};
    cover.reached[static_cast<std::size_t>(m.initial())] = true;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        cover.order.push_back(s);
        for (int x = 0; x < m.input_count(); ++x) {
            int t = m.edge(s, x).target;
            if (cover.reached[static_cast<std::size_t>(t)]) continue;
            cover.reached[static_cast<std::size_t>(t)] = true;
            cover.access[static_cast<std::size_t>(t)] = cover.access[static_cast<std::size_t>(s)];
            cover.access[static_cast<std::size_t>(t)].push_back(x);
            queue.push_back(t);
        }
    }
    return cover;
}

/// All words over `k` symbols of length 0..`max_length`, shortest first,
/// lexicographic within a length.
inline std::vector<Word> words_up_to(int k, int max_length) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (int len = 1; len <= max_length; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (int x = 0; x < k; ++x) {
                Word w = out[i];
                w.push_back(x);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

/// Lexicographically smallest among the shortest words on which states `a`
/// and `b` produce different outputs.
inline std::optional<Word> shortest_distinguishing(const Fsm& m, int a, int b) {
    if (a == b) return std::nullopt;
    const auto n = static_cast<std::size_t>(m.state_count());
    std::vector<int> parent(n * n, -2);
    std::vector<int> via(n * n, -1);
    auto id = [&](int x, int y) { return static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y); };
    std::deque<std::pair<int, int>> queue{{a, b}};
    parent[id(a, b)] = -1;
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        for (int in = 0; in < m.input_count(); ++in) {
            const auto& ex = m.edge(x, in);
            const auto& ey = m.edge(y, in);
            if (ex.output != ey.output) {
                Word w{in};
                std::size_t cur = id(x, y);
                while (parent[cur] != -1) {
                    w.push_back(via[cur]);
                    cur = static_cast<std::size_t>(parent[cur]);
                }
                return Word(w.rbegin(), w.rend());
            }
            std::size_t next = id(ex.target, ey.target);
            if (ex.target == ey.target || parent[next] != -2) continue;
            parent[next] = static_cast<int>(id(x, y));
            via[next] = in;
            queue.emplace_back(ex.target, ey.target);
        }
    }
    return std::nullopt;
}

namespace detail {

inline void check_reference(const Fsm& ref, int m) {
    if (m < ref.state_count()) {
        throw ModelError("fault domain bound m=" + std::to_string(m) + " is below n=" +
                         std::to_string(ref.state_count()));
    }
}

}  // namespace detail

inline Json suite_to_json(const TestSuite& suite) {
    Json cases = Json::array();
    for (const auto& c : suite.cases) {
        Json row = Json::array();
        for (int x : c) row.push_back(suite.alphabet.at(static_cast<std::size_t>(x)));
        cases.push_back(std::move(row));
    }
    return Json{{"meta",
                 {{"method", method_code(suite.meta.method)},
                  {"m", suite.meta.m},
                  {"n", suite.meta.n},
                  {"reference_hash", suite.meta.reference_hash}}},
                {"alphabet", suite.alphabet},
                {"cases", std::move(cases)}};
}

inline SuiteMeta suite_meta_from_json(const Json& j) {
    const Json& meta = detail::require(j, "meta", "suite");
    SuiteMeta out;
    out.method = parse_method(detail::require_string(meta, "method", "suite meta"));
    out.m = detail::require(meta, "m", "suite meta").get<int>();
    out.n = detail::require(meta, "n", "suite meta").get<int>();
    out.reference_hash = detail::require_string(meta, "reference_hash", "suite meta");
    if (out.n < 1 || out.m < out.n) throw ModelError("suite: requires m >= n >= 1");
    return out;
}

inline TestSuite suite_from_json(const Json& j) {
    TestSuite suite;
    suite.meta = suite_meta_from_json(j);
    suite.alphabet = detail::string_list(j, "alphabet");
    for (const auto& c : detail::require_array(j, "cases", "suite")) {
        if (!c.is_array()) throw FormatError("suite: cases must be arrays");
        Word w;
        for (const auto& sym : c) {
            if (!sym.is_string()) throw FormatError("suite: symbols must be strings");
            auto x = Fsm::find(suite.alphabet, sym.get<std::string>());
            if (!x) throw ModelError("suite: symbol '" + sym.get<std::string>() + "' is not in the alphabet");
            w.push_back(*x);
        }
        suite.cases.push_back(std::move(w));
    }
    return suite;
}

/// Replaces every class symbol with the class representative.
inline ConcreteSuite concretize(const TestSuite& suite, const ClassAlphabet& classes) {
    std::vector<const Valuation*> representative;
    for (const auto& sym : suite.alphabet) {
        auto c = classes.index_of(sym);
        if (!c) throw ModelError("concretize: no input class for symbol '" + sym + "'");
        representative.push_back(&classes.classes[*c].representative);
    }
    ConcreteSuite out;
    out.meta = suite.meta;
    for (const auto& c : suite.cases) {
        std::vector<Valuation> row;
        row.reserve(c.size());
        for (int x : c) {
            if (x < 0 || static_cast<std::size_t>(x) >= representative.size()) {
                throw ModelError("concretize: symbol index outside the alphabet");
            }
            row.push_back(*representative[static_cast<std::size_t>(x)]);
        }
        out.cases.push_back(std::move(row));
    }
    return out;
}

inline Json concrete_suite_to_json(const ConcreteSuite& suite, const InterfaceSpec& iface) {
    Json cases = Json::array();
    for (const auto& c : suite.cases) {
        Json row = Json::array();
        for (const auto& v : c) row.push_back(valuation_to_json(v, iface));
        cases.push_back(std::move(row));
    }
    return Json{{"meta",
                 {{"method", method_code(suite.meta.method)},
                  {"m", suite.meta.m},
                  {"n", suite.meta.n},
                  {"reference_hash", suite.meta.reference_hash}}},
                {"cases", std::move(cases)}};
}

inline ConcreteSuite concrete_suite_from_json(const Json& j, const InterfaceSpec& iface) {
    ConcreteSuite out;
    out.meta = suite_meta_from_json(j);
    for (const auto& c : detail::require_array(j, "cases", "concrete suite")) {
        std::vector<Valuation> row;
        for (const auto& v : c) row.push_back(valuation_from_json(v, iface));
        out.cases.push_back(std::move(row));
    }
    return out;
}

}  // namespace supkit
