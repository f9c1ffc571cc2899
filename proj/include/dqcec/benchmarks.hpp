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

// Conventional / dynamic benchmark circuit pairs.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqcec/circuit.hpp"
#include "dqcec/equivalence.hpp"

namespace dqcec::bench {

class BenchError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// QFT on n qubits, all measured at the end. `input` is the basis state fed
/// in (bit k of the value initialises q_k).
CircuitSpec qft(std::size_t n, std::uint64_t input = 0);
/// Semiclassical QFT: each qubit is measured as soon as it is finished and
/// later rotations are classically controlled.
CircuitSpec dyn_qft(std::size_t n, std::uint64_t input = 0);

/// Phase estimation with n counting qubits for U = diag(1, e^{2πiφ}) on the
/// eigenstate |1⟩. Output bits read φ_1 ... φ_n.
CircuitSpec pe(std::size_t n, double phi);
CircuitSpec dyn_pe(std::size_t n, double phi);
/// The n-bit fraction used by the PE suite.
double default_phase(std::size_t n);

CircuitSpec teleport();
CircuitSpec swap_teleport();

/// Single-qubit Pauli error on data qubit `qubit`; nullopt means no error.
struct CodeError {
    std::optional<std::size_t> qubit;
};

/// 3-qubit repetition code around one logical qubit: encode, error, syndrome,
/// classically controlled correction, decode.
CircuitSpec bitflip_code(CodeError err);
CircuitSpec phaseflip_code(CodeError err);
/// Identity channel on the logical qubit.
CircuitSpec logical_identity();

/// Gate teleportation of S or T through a magic state.
CircuitSpec state_inject(const std::string &gate);
CircuitSpec bare_gate(const std::string &gate);

struct BenchmarkPair {
    std::string name;
    CheckMode mode = CheckMode::M;
    CircuitSpec a;
    CircuitSpec b;
    VerdictKind expected = VerdictKind::Equivalent;
};

BenchmarkPair qft_pair(std::size_t n);
BenchmarkPair pe_pair(std::size_t n);
BenchmarkPair bitflip_pair(CodeError err);
BenchmarkPair phaseflip_pair(CodeError err);
BenchmarkPair teleport_pair();
BenchmarkPair state_inject_pair(const std::string &gate);

/// Suites: "qft" (n = 2..max_n), "pe" (n = 2..min(max_n, 7)), "qec", "all".
std::vector<BenchmarkPair> suite(const std::string &name, std::size_t max_n);
const std::vector<std::string> &suite_names();

} // namespace dqcec::bench
