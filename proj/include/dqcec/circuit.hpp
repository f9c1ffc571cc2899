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

#include <array>
#include <complex>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dqcec/logic.hpp"

namespace dqcec {

using QubitId = std::string;
using BitId = std::string;

class CircuitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A library gate applied to an ordered qubit list. The first qubit is the
/// most significant bit of the matrix index (control first for CX etc).
struct Gate {
    std::string name;
    std::vector<double> params;
    std::vector<QubitId> qubits;

    Eigen::MatrixXcd matrix() const;
    friend bool operator==(const Gate &, const Gate &) = default;
};

struct GateInfo {
    std::string name;
    std::size_t arity;
    std::size_t params;
};

/// Gate names known to the library, in a stable order.
const std::vector<GateInfo> &gate_library();
const GateInfo &gate_info(const std::string &name);
Eigen::MatrixXcd gate_matrix(const std::string &name, const std::vector<double> &params);
/// Builds and checks a gate (known name, arity, parameter count).
Gate make_gate(std::string name, std::vector<QubitId> qubits, std::vector<double> params = {});
/// Name and parameters of the inverse gate.
Gate inverse(const Gate &g);

/// Computational-basis measurement of qubits[i] into bits[i].
struct MeasureStep {
    std::vector<QubitId> qubits;
    std::vector<BitId> bits;
    friend bool operator==(const MeasureStep &, const MeasureStep &) = default;
};

/// "if func(bits) == value apply gate".
struct ClassicalGate {
    std::vector<BitId> bits;
    BoolFunc func;
    std::uint32_t value = 1;
    Gate gate;
    friend bool operator==(const ClassicalGate &, const ClassicalGate &) = default;
};

struct DynCircuit;

/// Measure, then run branches[func(outcome)].
struct BranchStep {
    MeasureStep measure;
    BoolFunc dispatch;
    std::vector<DynCircuit> branches;
    friend bool operator==(const BranchStep &, const BranchStep &);
};

using Step = std::variant<Gate, MeasureStep, ClassicalGate, BranchStep>;

/// Sequential composition of steps. A lone MeasureStep is the branch
/// construct with a single empty branch.
struct DynCircuit {
    std::vector<Step> steps;

    DynCircuit &add(Step s) {
        steps.push_back(std::move(s));
        return *this;
    }
    DynCircuit &append(const DynCircuit &other) {
        steps.insert(steps.end(), other.steps.begin(), other.steps.end());
        return *this;
    }
    friend bool operator==(const DynCircuit &, const DynCircuit &) = default;
};

inline bool operator==(const BranchStep &a, const BranchStep &b) {
    return a.measure == b.measure && a.dispatch == b.dispatch && a.branches == b.branches;
}

struct InitState {
    enum class Kind { Zero, One, Plus, Eigen };
    Kind kind = Kind::Zero;
    /// Eigenstate label and its computational-basis value.
    std::string label;
    int basis = 0;

    static InitState zero() { return {}; }
    static InitState one() { return {Kind::One, {}, 1}; }
    static InitState plus() { return {Kind::Plus, {}, 0}; }
    static InitState eigen(std::string label, int basis) { return {Kind::Eigen, std::move(label), basis}; }
    /// Amplitudes (a0, a1).
    std::array<std::complex<double>, 2> amplitudes() const;
    friend bool operator==(const InitState &, const InitState &) = default;
};

/// (C[q̄], |ψ⟩, ī, ō) plus the output bits of a measuring circuit.
struct CircuitSpec {
    std::string name;
    std::vector<QubitId> qubits;
    DynCircuit circuit;
    std::vector<std::pair<QubitId, InitState>> fixed_init;
    std::vector<QubitId> inputs;
    std::vector<QubitId> outputs;
    std::vector<BitId> output_bits;

    bool measures_outputs() const { return !output_bits.empty(); }
    const InitState *init_of(const QubitId &q) const;
    std::size_t qubit_ordinal(const QubitId &q) const;
    friend bool operator==(const CircuitSpec &, const CircuitSpec &) = default;
};

struct ValidationIssue {
    std::string where;
    std::string message;
};

std::vector<ValidationIssue> validate(const CircuitSpec &spec);
/// Throws CircuitError listing every issue.
void require_valid(const CircuitSpec &spec);

std::set<QubitId> qvar(const DynCircuit &c);
std::set<QubitId> qvar(const Step &s);
/// Bits written by measurements, in execution order (branches in order).
std::vector<BitId> bits_produced(const DynCircuit &c);
/// Bits read by classically controlled gates.
std::set<BitId> bits_read(const DynCircuit &c);
std::size_t gate_count(const DynCircuit &c);

/// Rewrites branch constructs whose branches are gate lists into a
/// measurement followed by classically controlled gates.
DynCircuit lower_controls(const DynCircuit &c);

} // namespace dqcec
