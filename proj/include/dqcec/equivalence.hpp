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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqcec/circuit.hpp"
#include "dqcec/encoding.hpp"
#include "dqcec/tdd.hpp"

namespace dqcec {

class CheckError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class CheckMode { M, Q };

enum class VerdictKind { Equivalent, NotEquivalent, Inconclusive };

struct Verdict {
    VerdictKind kind = VerdictKind::Equivalent;
    /// Witness for NotEquivalent, reason for Inconclusive.
    std::string detail;

    static Verdict equivalent() { return {}; }
    static Verdict not_equivalent(std::string witness) { return {VerdictKind::NotEquivalent, std::move(witness)}; }
    static Verdict inconclusive(std::string reason) { return {VerdictKind::Inconclusive, std::move(reason)}; }
};

std::string to_string(VerdictKind v);
std::string to_string(CheckMode m);

/// Default tolerance on probability masses; the DQCEC_EPS environment
/// variable overrides it.
constexpr double kDefaultEps = 1e-10;
double default_eps();

/// Outcome string (bits in the order of `m`) whose probabilities differ.
struct MWitness {
    std::string outcome;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Recursive probability comparison over the measurement indices `m`, which
/// must sit above every other index of both tensors.
bool m_eq(const tdd::Manager &mgr, const tdd::Tdd &t1, const tdd::Tdd &t2, std::span<const tdd::Index> m, double eps,
          MWitness *witness = nullptr);

struct Leaf {
    /// Sub-diagram below the peeled indices, with the weight accumulated
    /// along the path.
    tdd::Edge edge;
    /// name=value pairs of the peeled indices on the path.
    std::string path;
};

/// Leaves reached by branching on every index of a kind in `peel`; zero
/// edges are skipped.
std::vector<Leaf> get_nodes(const tdd::Manager &mgr, const tdd::Tdd &t, std::span<const tdd::IndexKind> peel);

struct QResult {
    bool equal = false;
    /// Some peeled discard node has two nonzero children.
    bool discard_split = false;
    std::string witness;
};

/// Node-singleton test over classical and discard indices. `strict` also
/// requires equal total mass of the two tensors.
QResult q_eq(const tdd::Manager &mgr, const tdd::Tdd &t1, const tdd::Tdd &t2, bool strict, double eps);

enum class Plan { Basic, Partitioned };
std::string to_string(Plan p);

struct CheckOptions {
    CheckMode mode = CheckMode::M;
    Plan plan = Plan::Basic;
    bool strict = false;
    double eps = kDefaultEps;
    std::size_t max_open = 26;
};

struct CheckStats {
    /// Seconds spent building decision diagrams.
    double tdd_time = 0.0;
    /// Total wall-clock seconds.
    double time = 0.0;
    /// Final node count of the first circuit's check diagram.
    std::size_t nodes = 0;
    /// Largest intermediate diagram over both circuits.
    std::size_t max_nodes = 0;
    std::size_t discarded_partitions = 0;
    bool fallback = false;
};

struct CheckResult {
    Verdict verdict;
    CheckStats stats;
};

CheckResult check(const CircuitSpec &a, const CircuitSpec &b, const CheckOptions &options);

} // namespace dqcec
