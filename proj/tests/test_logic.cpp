// Copyright 2026 The dqcec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>
#include <tuple>

#include "dqcec/logic.hpp"

namespace dqcec {
namespace {

std::vector<bool> random_table(std::mt19937_64 &rng, std::size_t arity) {
    std::vector<bool> t(std::size_t{1} << arity);
    for (auto &&v : t) v = rng() & 1;
    return t;
}

// Walks the reachable nodes and checks both reduction rules.
void expect_reduced(const Bdd &b) {
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
    std::vector<std::uint32_t> stack{b.root()};
    std::set<std::uint32_t> visited;
    while (!stack.empty()) {
        std::uint32_t id = stack.back();
        stack.pop_back();
        if (id == Bdd::kFalse || id == Bdd::kTrue || !visited.insert(id).second) continue;
        const Bdd::Node &n = b.node(id);
        EXPECT_NE(n.low, n.high) << "redundant test on var " << n.var;
        EXPECT_TRUE(seen.insert({n.var, n.low, n.high}).second) << "duplicate node";
        for (std::uint32_t child : {n.low, n.high})
            if (child != Bdd::kFalse && child != Bdd::kTrue) EXPECT_LT(n.var, b.node(child).var);
        stack.push_back(n.low);
        stack.push_back(n.high);
    }
    EXPECT_EQ(visited.size(), b.size());
}

TEST(Bdd, FromTableEvaluatesAndIsReduced) {
    std::mt19937_64 rng(1);
    for (std::size_t n = 0; n <= 8; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            auto table = random_table(rng, n);
            Bdd b = Bdd::from_table(n, table);
            for (std::uint64_t a = 0; a < table.size(); ++a) EXPECT_EQ(b.eval(a), table[a]);
            expect_reduced(b);
        }
    }
}

TEST(Bdd, KnownSizes) {
    // x0 & x1 & ... : one node per variable; parity: 2n - 1
    for (std::size_t n = 1; n <= 10; ++n) {
        std::vector<bool> all(std::size_t{1} << n, false), par(std::size_t{1} << n);
        all.back() = true;
        for (std::uint64_t a = 0; a < par.size(); ++a) par[a] = std::popcount(a) & 1;
        EXPECT_EQ(Bdd::from_table(n, all).size(), n);
        EXPECT_EQ(Bdd::from_table(n, par).size(), 2 * n - 1);
    }
    EXPECT_EQ(Bdd::constant(4, true).size(), 0u);
    EXPECT_EQ(Bdd::variable(4, 2).size(), 1u);
}

TEST(Bdd, ApplyIsPointwiseAndCanonical) {
    std::mt19937_64 rng(2);
    const std::size_t n = 6;
    for (int trial = 0; trial < 30; ++trial) {
        auto ta = random_table(rng, n), tb = random_table(rng, n);
        Bdd a = Bdd::from_table(n, ta), b = Bdd::from_table(n, tb);
        for (auto op : {Bdd::Op::And, Bdd::Op::Or, Bdd::Op::Xor}) {
            Bdd c = Bdd::apply(op, a, b);
            std::vector<bool> expect(ta.size());
            for (std::size_t i = 0; i < ta.size(); ++i)
                expect[i] = op == Bdd::Op::And ? (ta[i] && tb[i]) : op == Bdd::Op::Or ? (ta[i] || tb[i]) : ta[i] != tb[i];
            EXPECT_TRUE(c == Bdd::from_table(n, expect));
            expect_reduced(c);
        }
        Bdd na = a.negate();
        for (std::uint64_t i = 0; i < ta.size(); ++i) EXPECT_NE(na.eval(i), ta[i]);
        // x ^ x = 0 built two ways
        EXPECT_TRUE(Bdd::apply(Bdd::Op::Xor, a, a) == Bdd::constant(n, false));
    }
}

TEST(Bdd, VariableZeroIsMostSignificant) {
    Bdd x0 = Bdd::variable(3, 0);
    EXPECT_TRUE(x0.eval(std::uint64_t{0b100}));
    EXPECT_FALSE(x0.eval(std::uint64_t{0b011}));
}

TEST(BoolFunc, Builtins) {
    const std::size_t n = 4;
    BoolFunc id = BoolFunc::identity(n), neg = BoolFunc::complement(n), par = BoolFunc::parity(n),
             all = BoolFunc::all_and(n), any = BoolFunc::all_or(n), eq = BoolFunc::equals(n, 5);
    for (std::uint64_t x = 0; x < 16; ++x) {
        EXPECT_EQ(id.eval(x), x);
        EXPECT_EQ(neg.eval(x), (~x) & 15u);
        EXPECT_EQ(par.eval(x), std::popcount(x) & 1u);
        EXPECT_EQ(all.eval(x), x == 15 ? 1u : 0u);
        EXPECT_EQ(any.eval(x), x != 0 ? 1u : 0u);
        EXPECT_EQ(eq.eval(x), x == 5 ? 1u : 0u);
    }
    EXPECT_EQ(BoolFunc::constant(3, 2, 2).eval(6), 2u);
}

TEST(BoolFunc, OutputBitAndPreimage) {
    BoolFunc id = BoolFunc::identity(3);
    BoolFunc top = id.output_bit(0);
    EXPECT_EQ(top.outputs(), 1u);
    for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(top.eval(x), (x >> 2) & 1u);
    std::vector<bool> accepted(8, false);
    accepted[3] = accepted[6] = true;
    BoolFunc pre = id.preimage(accepted);
    for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(pre.eval(x), (x == 3 || x == 6) ? 1u : 0u);
}

TEST(BoolFunc, BddAndTableFormsAgree) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 6, m = 1 + rng() % 3;
        std::vector<std::uint32_t> table(std::size_t{1} << n);
        for (auto &v : table) v = static_cast<std::uint32_t>(rng() % (1u << m));
        BoolFunc f = BoolFunc::from_table(n, m, table);
        std::vector<Bdd> bits;
        for (std::size_t j = 0; j < m; ++j) bits.push_back(f.to_bdd(j));
        BoolFunc g = BoolFunc::from_bdds(bits);
        EXPECT_TRUE(f == g);
        for (std::uint64_t x = 0; x < table.size(); ++x) EXPECT_EQ(g.eval(x), table[x]);
    }
}

TEST(BoolFunc, WideFunctionsUseBdds) {
    const std::size_t n = 24;
    BoolFunc par = BoolFunc::parity(n);
    EXPECT_FALSE(par.has_table());
    EXPECT_EQ(par.eval((std::uint64_t{1} << 23) | 1), 0u);
    EXPECT_EQ(par.eval(7), 1u);
    EXPECT_THROW(par.table(), LogicError);
}

TEST(BoolFunc, TruthTableTextRoundTrip) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 5, m = 1 + rng() % 3;
        std::vector<std::uint32_t> table(std::size_t{1} << n);
        for (auto &v : table) v = static_cast<std::uint32_t>(rng() % (1u << m));
        BoolFunc f = BoolFunc::from_table(n, m, table);
        EXPECT_TRUE(parse_truth_table(print_truth_table(f)) == f);
    }
    EXPECT_THROW(parse_truth_table("0 -> 1\n"), LogicError);        // missing row
    EXPECT_THROW(parse_truth_table("0 -> 1\n0 -> 0\n"), LogicError); // duplicate row
    EXPECT_THROW(parse_truth_table("0 -> 1\n1 -> 2\n"), LogicError); // not a bit
}

TEST(Lift, TensorIsTheGraphOfTheFunction) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        tdd::Manager mgr;
        const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 2;
        std::vector<std::uint32_t> table(std::size_t{1} << n);
        for (auto &v : table) v = static_cast<std::uint32_t>(rng() % (1u << m));
        BoolFunc f = BoolFunc::from_table(n, m, table);
        std::vector<tdd::Index> in, out;
        for (std::size_t i = 0; i < n; ++i)
            in.push_back(mgr.add_index("x" + std::to_string(i), 100 - i, tdd::IndexKind::Logic));
        for (std::size_t j = 0; j < m; ++j)
            out.push_back(mgr.add_index("y" + std::to_string(j), 50 - j, tdd::IndexKind::Logic));
        tdd::Tdd t = lift(mgr, f, in, out);
        for (std::uint64_t x = 0; x < table.size(); ++x) {
            for (std::uint32_t y = 0; y < (1u << m); ++y) {
                std::unordered_map<std::uint32_t, bool> asg;
                for (std::size_t i = 0; i < n; ++i) asg[in[i].id] = (x >> (n - 1 - i)) & 1;
                for (std::size_t j = 0; j < m; ++j) asg[out[j].id] = (y >> (m - 1 - j)) & 1;
                EXPECT_NEAR(std::abs(mgr.evaluate(t.root, asg) - tdd::Complex(table[x] == y ? 1.0 : 0.0)), 0.0, 1e-12);
            }
        }
        if (m == 1) {
            tdd::Tdd a = func_to_tensor(mgr, f, in, out[0]);
            tdd::Tdd b = bdd_to_tdd(mgr, f.to_bdd(0), in, out[0]);
            EXPECT_TRUE(mgr.identical(a, b));
            EXPECT_TRUE(mgr.identical(a, t));
        }
    }
}

TEST(Lift, ComposeSumsInternalWires) {
    // g(x0, x1) = x0 AND x1 feeding h(t, x2) = t XOR x2
    tdd::Manager mgr;
    auto x0 = mgr.add_index("x0", 100, tdd::IndexKind::Logic);
    auto x1 = mgr.add_index("x1", 99, tdd::IndexKind::Logic);
    auto x2 = mgr.add_index("x2", 98, tdd::IndexKind::Logic);
    auto t = mgr.add_index("t", 97, tdd::IndexKind::Logic);
    auto y = mgr.add_index("y", 96, tdd::IndexKind::Logic);
    std::vector<tdd::Index> gin{x0, x1}, hin{t, x2}, internal{t};
    tdd::Tdd g = func_to_tensor(mgr, BoolFunc::all_and(2), gin, t);
    tdd::Tdd h = func_to_tensor(mgr, BoolFunc::parity(2), hin, y);
    tdd::Tdd c = compose_logic(mgr, {g, h}, internal);
    std::vector<tdd::Index> all_in{x0, x1, x2};
    BoolFunc expect = BoolFunc::from_table(3, 1, {0, 1, 0, 1, 0, 1, 1, 0});
    EXPECT_TRUE(mgr.identical(c, func_to_tensor(mgr, expect, all_in, y)));
}

} // namespace
} // namespace dqcec
