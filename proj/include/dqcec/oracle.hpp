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

// Brute-force dense semantics of dynamic circuits. Exponential on purpose;
// used as ground truth for the decision-diagram checker.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dqcec/circuit.hpp"

namespace dqcec::oracle {

using OutcomeRecord = std::vector<std::pair<BitId, bool>>;

struct Member {
    OutcomeRecord record;
    /// 2^n x d block of the member's operator (d = 2^n for the raw
    /// semantics, 2^|inputs| after applying the input embedding).
    Eigen::MatrixXcd op;
};

using Ensemble = std::vector<Member>;

struct Limits {
    std::size_t max_qubits = 12;
    std::size_t max_members = std::size_t{1} << 20;
    /// Cap on members x rows x columns.
    std::size_t max_entries = std::size_t{1} << 24;
};

class OracleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Full-operator ensemble of `c` on `qubits` (qubits[0] is the most
/// significant bit). Members with an all-zero operator are dropped.
Ensemble semantics(const DynCircuit &c, const std::vector<QubitId> &qubits, const Limits &limits = {});

/// Ensemble of the spec applied to its input embedding |ψ⟩ ⊗ (basis of ī).
Ensemble run_spec(const CircuitSpec &spec, const Limits &limits = {});

/// Operator of a gate on the whole register.
Eigen::MatrixXcd embed(const Gate &g, const std::vector<QubitId> &qubits);
/// Value of `bit` in a record (0 when the path never produced it).
bool bit_value(const OutcomeRecord &record, const BitId &bit);

/// Choi matrix of one member's map ρ ↦ tr_{q̄\ō}[K ρ K†], rows (input, output).
Eigen::MatrixXcd branch_choi(const CircuitSpec &spec, const Eigen::MatrixXcd &k);

/// Choi matrix of the spec's superoperator. When the spec has output bits the
/// result is block diagonal over their values (classical register kept).
Eigen::MatrixXcd superoperator(const CircuitSpec &spec, const Limits &limits = {});
Eigen::MatrixXcd identity_choi(std::size_t qubits);

/// Probabilities over output-bit strings; index bit 0 (MSB) is output_bits[0].
std::vector<double> outcome_distribution(const CircuitSpec &spec, const Limits &limits = {});
std::size_t outcome_index(const std::string &bits);

bool oracle_m_eq(const CircuitSpec &a, const CircuitSpec &b, double tol = 1e-9, const Limits &limits = {});
bool oracle_q_eq(const CircuitSpec &a, const CircuitSpec &b, double tol = 1e-9, const Limits &limits = {});
bool oracle_full_eq(const CircuitSpec &a, const CircuitSpec &b, double tol = 1e-9, const Limits &limits = {});

double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

} // namespace dqcec::oracle
