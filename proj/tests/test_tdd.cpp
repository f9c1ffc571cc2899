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

#include "dqcec/tdd.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "support/dense.hpp"

using namespace dqcec::tdd;
using dqcec::testing::DenseTensor;

namespace {

struct Fixture {
    Manager mgr;
    std::vector<Index> idx;

    explicit Fixture(int n) {
        for (int i = 0; i < n; ++i)
            idx.push_back(mgr.add_index("x" + std::to_string(i), static_cast<Rank>(10 * (i + 1)), IndexKind::QuantumWire));
    }

    std::vector<Index> pick(std::mt19937_64 &rng, std::size_t k) {
        std::vector<Index> v = idx;
        std::shuffle(v.begin(), v.end(), rng);
        v.resize(k);
        return v;
    }
};

} // namespace

TEST(Tdd, HadamardRootWeight) {
    Fixture f(2);
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Complex> h = {s, s, s, -s};
    Tdd t = f.mgr.from_dense(h, f.idx);
    EXPECT_NEAR(t.root.weight.real(), s, 1e-12);
    EXPECT_NEAR(t.root.weight.imag(), 0.0, 1e-12);
    // the low half (1, 1) collapses into the terminal
    EXPECT_EQ(f.mgr.node_count(t), 3U);
    EXPECT_NEAR(f.mgr.norm(t), 2.0, 1e-12);
}

TEST(Tdd, RedundantIndexHasNoNode) {
    Fixture f(2);
    std::vector<Complex> v = {2.0, 3.0, 2.0, 3.0}; // independent of idx[0]
    Tdd t = f.mgr.from_dense(v, f.idx);
    EXPECT_EQ(f.mgr.node_count(t), 2U);
    EXPECT_EQ(t.root.node->index, f.idx[1]);
    EXPECT_EQ(t.indices.size(), 2U);
    EXPECT_NEAR(f.mgr.norm(t), 26.0, 1e-12);
}

TEST(Tdd, ZeroTensorIsZeroEdge) {
    Fixture f(3);
    std::vector<Complex> v(8, Complex{});
    Tdd t = f.mgr.from_dense(v, f.idx);
    EXPECT_TRUE(f.mgr.is_zero(t.root.weight));
    EXPECT_EQ(t.root.node, f.mgr.terminal());
    EXPECT_EQ(f.mgr.norm(t), 0.0);
}

TEST(Tdd, DenseRoundTripAnyOrder) {
    Fixture f(5);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t k = 1 + trial % 4;
        DenseTensor d{f.pick(rng, k), dqcec::testing::random_values(rng, std::size_t{1} << k, trial % 2)};
        Tdd t = f.mgr.from_dense(d.values, d.indices);
        EXPECT_LT(dqcec::testing::max_abs_diff(f.mgr.to_dense(t, d.indices), d.values), 1e-9);
        std::vector<Index> other = d.indices;
        std::shuffle(other.begin(), other.end(), rng);
        other.push_back(*std::find_if(f.idx.begin(), f.idx.end(), [&](Index x) {
            return std::find(other.begin(), other.end(), x) == other.end();
        }));
        EXPECT_LT(dqcec::testing::max_abs_diff(f.mgr.to_dense(t, other), dqcec::testing::expand(d, other)), 1e-9);
    }
}

TEST(Tdd, CanonicalUnderPermutationAndScaling) {
    Fixture f(6);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t k = 1 + trial % 6;
        DenseTensor d{f.pick(rng, k), dqcec::testing::random_values(rng, std::size_t{1} << k, trial % 3 != 0)};
        Tdd a = f.mgr.from_dense(d.values, d.indices);

        std::vector<Index> perm = d.indices;
        std::shuffle(perm.begin(), perm.end(), rng);
        Tdd b = f.mgr.from_dense(dqcec::testing::expand(d, perm), perm);
        EXPECT_TRUE(f.mgr.identical(a, b));

        const Complex c{0.3, -1.7};
        std::vector<Complex> scaled = d.values;
        for (auto &v : scaled) v *= c;
        Tdd s = f.mgr.from_dense(scaled, d.indices);
        EXPECT_TRUE(f.mgr.is_zero(a.root.weight) || s.root.node == a.root.node);
    }
}

TEST(Tdd, DistinctTensorsAreNotIdentical) {
    Fixture f(4);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        DenseTensor d{f.idx, dqcec::testing::random_values(rng, 16, true)};
        std::vector<Complex> e = d.values;
        std::uniform_int_distribution<std::size_t> pos(0, 15);
        e[pos(rng)] += Complex{0.0, 1e-6};
        Tdd a = f.mgr.from_dense(d.values, d.indices);
        Tdd b = f.mgr.from_dense(e, d.indices);
        EXPECT_FALSE(f.mgr.identical(a, b));
    }
}

TEST(Tdd, SliceMatchesDense) {
    Fixture f(4);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        DenseTensor d{f.idx, dqcec::testing::random_values(rng, 16, trial % 2)};
        Tdd t = f.mgr.from_dense(d.values, d.indices);
        std::size_t which = trial % 4;
        bool value = trial % 3 == 0;
        Tdd s = f.mgr.slice(t, f.idx[which], value);
        ASSERT_EQ(s.indices.size(), 3U);
        std::vector<Index> rest;
        for (std::size_t i = 0; i < 4; ++i)
            if (i != which) rest.push_back(f.idx[i]);
        std::vector<Complex> want;
        for (std::size_t a = 0; a < 16; ++a)
            if (((a >> (3 - which)) & 1U) == static_cast<std::size_t>(value)) want.push_back(d.values[a]);
        EXPECT_LT(dqcec::testing::max_abs_diff(f.mgr.to_dense(s, rest), want), 1e-9);
    }
}

TEST(Tdd, AddMatchesDense) {
    Fixture f(5);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        DenseTensor a{f.pick(rng, 1 + trial % 4), {}};
        DenseTensor b{f.pick(rng, 1 + (trial / 4) % 4), {}};
        a.values = dqcec::testing::random_values(rng, std::size_t{1} << a.indices.size(), trial % 2);
        b.values = dqcec::testing::random_values(rng, std::size_t{1} << b.indices.size(), trial % 2);
        Tdd ta = f.mgr.from_dense(a.values, a.indices);
        Tdd tb = f.mgr.from_dense(b.values, b.indices);
        Tdd sum = f.mgr.add(ta, tb);
        std::vector<Index> all = dqcec::testing::union_of(a.indices, b.indices);
        std::vector<Complex> want = dqcec::testing::expand(a, all);
        std::vector<Complex> wb = dqcec::testing::expand(b, all);
        for (std::size_t i = 0; i < want.size(); ++i) want[i] += wb[i];
        EXPECT_LT(dqcec::testing::max_abs_diff(f.mgr.to_dense(sum, all), want), 1e-8);
        EXPECT_EQ(sum.indices.size(), all.size());
    }
}

TEST(Tdd, AddInverseIsZero) {
    Fixture f(3);
    std::mt19937_64 rng(17);
    DenseTensor d{f.idx, dqcec::testing::random_values(rng, 8, false)};
    Tdd t = f.mgr.from_dense(d.values, d.indices);
    Tdd z = f.mgr.add(t, f.mgr.negate(t));
    EXPECT_TRUE(f.mgr.is_zero(z.root.weight));
}

TEST(Tdd, ContractMatchesDense) {
    Fixture f(6);
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 120; ++trial) {
        DenseTensor a{f.pick(rng, 1 + trial % 4), {}};
        DenseTensor b{f.pick(rng, 1 + (trial / 3) % 4), {}};
        a.values = dqcec::testing::random_values(rng, std::size_t{1} << a.indices.size(), trial % 2);
        b.values = dqcec::testing::random_values(rng, std::size_t{1} << b.indices.size(), trial % 2);
        std::vector<Index> common;
        for (Index x : a.indices)
            if (std::find(b.indices.begin(), b.indices.end(), x) != b.indices.end()) common.push_back(x);
        // contract a random subset of the common indices, keep the rest pointwise
        std::vector<Index> shared;
        for (Index x : common)
            if (rng() % 3 != 0) shared.push_back(x);
        std::vector<Index> out;
        for (Index x : dqcec::testing::union_of(a.indices, b.indices))
            if (std::find(shared.begin(), shared.end(), x) == shared.end()) out.push_back(x);

        Tdd ta = f.mgr.from_dense(a.values, a.indices);
        Tdd tb = f.mgr.from_dense(b.values, b.indices);
        Tdd c = f.mgr.contract(ta, tb, shared);
        EXPECT_EQ(c.indices.size(), out.size());
        EXPECT_LT(dqcec::testing::max_abs_diff(f.mgr.to_dense(c, out), dqcec::testing::contract(a, b, out)), 1e-8)
            << "trial " << trial;
    }
}

TEST(Tdd, ContractWithSkippedSharedIndex) {
    // both operands are constant in the shared index, so it is skipped on
    // every path and the result must pick up a factor 2
    Fixture f(3);
    std::vector<Complex> a = {1.0, 2.0, 1.0, 2.0};
    std::vector<Complex> b = {3.0, 3.0};
    std::vector<Index> ia = {f.idx[2], f.idx[0]};
    std::vector<Index> ib = {f.idx[2]};
    Tdd ta = f.mgr.from_dense(a, ia);
    Tdd tb = f.mgr.from_dense(b, ib);
    std::vector<Index> shared = {f.idx[2]};
    Tdd c = f.mgr.contract(ta, tb, shared);
    std::vector<Index> out = {f.idx[0]};
    auto got = f.mgr.to_dense(c, out);
    EXPECT_NEAR(std::abs(got[0] - Complex{6.0}), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(got[1] - Complex{12.0}), 0.0, 1e-12);
}

TEST(Tdd, ContractRejectsUnsharedIndex) {
    Fixture f(2);
    std::vector<Complex> v = {1.0, 2.0};
    Tdd a = f.mgr.from_dense(v, std::vector<Index>{f.idx[0]});
    Tdd b = f.mgr.from_dense(v, std::vector<Index>{f.idx[1]});
    std::vector<Index> shared = {f.idx[0]};
    EXPECT_THROW(f.mgr.contract(a, b, shared), TddError);
}

TEST(Tdd, ConjugateAndNorm) {
    Fixture f(4);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        DenseTensor d{f.pick(rng, 1 + trial % 4), {}};
        d.values = dqcec::testing::random_values(rng, std::size_t{1} << d.indices.size(), trial % 2);
        Tdd t = f.mgr.from_dense(d.values, d.indices);
        Tdd c = f.mgr.conjugate(t);
        std::vector<Complex> want = d.values;
        for (auto &v : want) v = std::conj(v);
        EXPECT_LT(dqcec::testing::max_abs_diff(f.mgr.to_dense(c, d.indices), want), 1e-9);

        double n = 0.0;
        for (auto v : d.values) n += std::norm(v);
        EXPECT_NEAR(f.mgr.norm(t), n, 1e-9 * std::max(1.0, n));
        // norm over a superset counts each extra index twice
        std::vector<Index> wider = f.idx;
        EXPECT_NEAR(f.mgr.norm(t.root, wider), n * std::ldexp(1.0, static_cast<int>(4 - d.indices.size())),
                    1e-8 * std::max(1.0, n));
    }
}

TEST(Tdd, ManagerMismatchThrows) {
    Manager m1, m2;
    Tdd a = m1.constant(1.0);
    Tdd b = m2.constant(1.0);
    EXPECT_THROW((void)m1.identical(a, b), TddError);
    EXPECT_THROW(m1.add(a, b), TddError);
}

TEST(Tdd, IndexRegistration) {
    Manager m;
    Index a = m.add_index("a", 5, IndexKind::Logic);
    EXPECT_EQ(m.add_index("a", 5, IndexKind::Logic), a);
    EXPECT_THROW(m.add_index("a", 6, IndexKind::Logic), TddError);
    EXPECT_THROW(m.add_index("b", 5, IndexKind::Logic), TddError);
    EXPECT_THROW(m.add_index("c", 0, IndexKind::Logic), TddError);
    EXPECT_EQ(m.find_index("a"), a);
    EXPECT_FALSE(m.find_index("zz").has_value());
}

TEST(Tdd, DotMentionsIndexNames) {
    Fixture f(2);
    std::vector<Complex> v = {1.0, 0.0, 0.0, 1.0};
    Tdd t = f.mgr.from_dense(v, f.idx);
    std::string dot = f.mgr.to_dot(t);
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("x1"), std::string::npos);
    EXPECT_NE(dot.find("x0"), std::string::npos);
}
