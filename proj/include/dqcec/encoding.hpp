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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dqcec/circuit.hpp"
#include "dqcec/tdd.hpp"

namespace dqcec {

class EncodingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// What the compiled tensor is for.
///  M: fixed inputs, output bits open on top, everything else summed by norm.
///  Q: principal inputs/outputs open, non-output qubits end in discard indices.
///  Open: every wire open (no fixed inputs), measurements act as identity
///        unless a classical control reads them.
enum class EncodeMode { M, Q, Open };

/// Assigns names and ranks to all indices of one check. Both circuits of a
/// check share one planner so that their open indices coincide.
///
/// Rank layout (higher is nearer the root): output bits, other classical
/// bits, discard indices, logic indices, then quantum wires grouped by qubit
/// with the input segment on top of each block and the output index at its
/// bottom.
class IndexPlanner {
  public:
    IndexPlanner(tdd::Manager &mgr, std::vector<QubitId> qubits, std::size_t output_bits);
    static IndexPlanner for_pair(tdd::Manager &mgr, const CircuitSpec &a, const CircuitSpec &b);

    tdd::Manager &manager() { return mgr_; }
    const std::vector<QubitId> &qubits() const { return qubits_; }
    std::size_t ordinal(const QubitId &q) const;

    tdd::Index segment(const QubitId &q, std::size_t s);
    tdd::Index output(const QubitId &q);
    tdd::Index discard(const QubitId &q);
    tdd::Index output_bit(std::size_t k);
    tdd::Index bit(const BitId &b);
    tdd::Index logic();
    std::vector<tdd::Index> output_bit_indices();

  private:
    tdd::Manager &mgr_;
    std::vector<QubitId> qubits_;
    std::size_t output_bits_;
    std::map<BitId, std::size_t> bit_slots_;
    std::size_t next_logic_ = 0;
};

/// Whether a shared index is summed when two tensors meet (wires and logic
/// indices) or kept as a hyperedge (classical, output and discard indices).
bool summable(const tdd::Manager &mgr, tdd::Index x);
std::vector<tdd::Index> summed_indices(const tdd::Manager &mgr, const tdd::Tdd &a, const tdd::Tdd &b);

/// 0/1 tensor that is 1 iff all indices agree.
tdd::Tdd copy_tensor(tdd::Manager &mgr, std::span<const tdd::Index> indices);
/// COPY(c, x, y) when controlling, identity(x, y) otherwise.
tdd::Tdd measurement_tensor(tdd::Manager &mgr, bool controlling, tdd::Index c, tdd::Index x, tdd::Index y);
/// Tensor of a k-qubit matrix over (outs..., ins...).
tdd::Tdd gate_tensor(tdd::Manager &mgr, const Eigen::MatrixXcd &u, std::span<const tdd::Index> ins,
                     std::span<const tdd::Index> outs);
/// ψ(p, outs, ins) with ψ|p=0 = I and ψ|p=1 = U.
tdd::Tdd controlled_gate_tensor(tdd::Manager &mgr, const Eigen::MatrixXcd &u, tdd::Index p,
                                std::span<const tdd::Index> ins, std::span<const tdd::Index> outs);

struct TensorItem {
    tdd::Tdd tensor;
    /// Planner ordinal of the owning qubit.
    std::size_t owner = 0;
    bool init = false;
    std::string label;
};

/// Tensors of a spec in circuit order (initial states included).
std::vector<TensorItem> encode(IndexPlanner &planner, const CircuitSpec &spec, EncodeMode mode);

enum class PlanKind { Sequential, PerQubit };

struct ContractionPlan {
    PlanKind kind = PlanKind::Sequential;
    /// Item positions per group; sequential plans have one group.
    std::vector<std::vector<std::size_t>> groups;
};

/// Circuit tensors in order, initial states last.
ContractionPlan plan_sequential(const std::vector<TensorItem> &items);
/// One group per qubit; each initial state joins the group of its first
/// consumer and is contracted first there.
ContractionPlan plan_per_qubit(const std::vector<TensorItem> &items, std::size_t qubit_count);

struct ContractStats {
    std::size_t max_nodes = 0;
    std::size_t contractions = 0;
    std::size_t max_open = 26;
};

tdd::Tdd contract_sequence(tdd::Manager &mgr, const std::vector<tdd::Tdd> &tensors, ContractStats &stats);

struct CompileStats {
    std::size_t final_nodes = 0;
    std::size_t max_nodes = 0;
    double tdd_time = 0.0;
    PlanKind plan = PlanKind::Sequential;
};

struct Compiled {
    tdd::Tdd tdd;
    /// Per-group results (one entry for sequential plans).
    std::vector<tdd::Tdd> groups;
    CompileStats stats;
};

/// With `combine` false the per-group results are left uncontracted and
/// `tdd` is the constant 1.
Compiled compile(IndexPlanner &planner, const CircuitSpec &spec, EncodeMode mode, PlanKind plan,
                 std::size_t max_open = 26, bool combine = true);

/// TDD of the circuit with every wire open (fixed inputs ignored); the
/// "nodes" statistic of benchmark reports.
Compiled compile_open(tdd::Manager &mgr, const CircuitSpec &spec);

std::string to_string(PlanKind plan);

} // namespace dqcec
