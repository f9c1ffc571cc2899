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

#include "dqcec/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace dqcec::bench {

namespace {

constexpr double kPi = std::numbers::pi;

std::string idx(const std::string &base, std::size_t k) { return base + std::to_string(k); }

void check_qft_size(std::size_t n, std::uint64_t input) {
    if (n < 2 || n > 16) throw BenchError("qft needs 2 <= n <= 16");
    if (input >> n) throw BenchError("qft input does not fit in n bits");
}

CircuitSpec qft_header(const std::string &name, std::size_t n, std::uint64_t input) {
    CircuitSpec s;
    s.name = name + "_" + std::to_string(n);
    for (std::size_t k = 0; k < n; ++k) {
        s.qubits.push_back(idx("q", k));
        s.fixed_init.emplace_back(idx("q", k), (input >> k) & 1U ? InitState::one() : InitState::zero());
        s.output_bits.push_back(idx("c", k));
    }
    return s;
}

void check_pe(std::size_t n, double phi) {
    if (n < 2 || n > 7) throw BenchError("pe needs 2 <= n <= 7");
    if (!(phi >= 0.0 && phi < 1.0)) throw BenchError("pe needs 0 <= phi < 1");
}

// Counting qubits q1..qn and the eigenstate register r. Output bits are
// listed c_n ... c_1 because q_k ends up holding φ_{n+1-k}.
CircuitSpec pe_header(const std::string &name, std::size_t n) {
    CircuitSpec s;
    s.name = name + "_" + std::to_string(n);
    for (std::size_t k = 1; k <= n; ++k) {
        s.qubits.push_back(idx("q", k));
        s.fixed_init.emplace_back(idx("q", k), InitState::zero());
    }
    s.qubits.push_back("r");
    s.fixed_init.emplace_back("r", InitState::eigen("v", 1));
    for (std::size_t k = n; k >= 1; --k) s.output_bits.push_back(idx("c", k));
    return s;
}

Gate controlled_power(const std::string &control, double phi, std::size_t power) {
    return make_gate("CUPOW", {control, "r"}, {phi, static_cast<double>(power)});
}

Gate code_error(const char *pauli, CodeError err) { return make_gate(pauli, {idx("q", *err.qubit)}); }

void check_code_error(CodeError err) {
    if (err.qubit && *err.qubit > 2) throw BenchError("code error must sit on data qubit 0, 1 or 2");
}

CircuitSpec repetition_code(const std::string &name, CodeError err, bool phase) {
    check_code_error(err);
    CircuitSpec s;
    s.name = name;
    s.qubits = {"q0", "q1", "q2", "a0", "a1"};
    s.inputs = {"q0"};
    s.outputs = {"q0"};
    for (const char *q : {"q1", "q2", "a0", "a1"}) s.fixed_init.emplace_back(q, InitState::zero());
    DynCircuit &c = s.circuit;
    c.add(make_gate("CX", {"q0", "q1"})).add(make_gate("CX", {"q0", "q2"}));
    if (phase)
        for (const char *q : {"q0", "q1", "q2"}) c.add(make_gate("H", {q}));
    if (err.qubit) c.add(code_error(phase ? "Z" : "X", err));
    if (phase)
        for (const char *q : {"q0", "q1", "q2"}) c.add(make_gate("H", {q}));
    c.add(make_gate("CX", {"q0", "a0"})).add(make_gate("CX", {"q1", "a0"}));
    c.add(make_gate("CX", {"q1", "a1"})).add(make_gate("CX", {"q2", "a1"}));
    // syndrome s0 s1: 10 -> q0 flipped, 11 -> q1, 01 -> q2
    BranchStep fix{{{"a0", "a1"}, {"s0", "s1"}}, BoolFunc::identity(2), {}};
    fix.branches.resize(4);
    fix.branches[1].add(make_gate("X", {"q2"}));
    fix.branches[2].add(make_gate("X", {"q0"}));
    fix.branches[3].add(make_gate("X", {"q1"}));
    c.add(fix);
    c.add(make_gate("CX", {"q0", "q2"})).add(make_gate("CX", {"q0", "q1"}));
    return s;
}

double inject_angle(const std::string &gate) {
    if (gate == "S") return kPi / 2;
    if (gate == "T") return kPi / 4;
    throw BenchError("state injection supports S and T, not '" + gate + "'");
}

std::string code_suffix(CodeError err) { return err.qubit ? "_x" + std::to_string(*err.qubit) : ""; }

} // namespace

// --- QFT ----------------------------------------------------------------------

// q_j collects the rotations controlled by every finished qubit q_k (k < j)
// and is finished by its Hadamard.
CircuitSpec qft(std::size_t n, std::uint64_t input) {
    check_qft_size(n, input);
    CircuitSpec s = qft_header("qft", n, input);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k)
            s.circuit.add(make_gate("CP", {idx("q", k), idx("q", j)}, {kPi / std::ldexp(1.0, static_cast<int>(j - k))}));
        s.circuit.add(make_gate("H", {idx("q", j)}));
    }
    for (std::size_t k = 0; k < n; ++k) s.circuit.add(MeasureStep{{idx("q", k)}, {idx("c", k)}});
    return s;
}

CircuitSpec dyn_qft(std::size_t n, std::uint64_t input) {
    check_qft_size(n, input);
    CircuitSpec s = qft_header("dyn_qft", n, input);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k)
            s.circuit.add(ClassicalGate{{idx("c", k)},
                                        BoolFunc::identity(1),
                                        1,
                                        make_gate("P", {idx("q", j)}, {kPi / std::ldexp(1.0, static_cast<int>(j - k))})});
        s.circuit.add(make_gate("H", {idx("q", j)}));
        s.circuit.add(MeasureStep{{idx("q", j)}, {idx("c", j)}});
    }
    return s;
}

// --- phase estimation ---------------------------------------------------------

CircuitSpec pe(std::size_t n, double phi) {
    check_pe(n, phi);
    CircuitSpec s = pe_header("pe", n);
    for (std::size_t k = 1; k <= n; ++k) s.circuit.add(make_gate("H", {idx("q", k)}));
    for (std::size_t k = n; k >= 1; --k) s.circuit.add(controlled_power(idx("q", k), phi, n - k));
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t j = 1; j < k; ++j)
            s.circuit.add(make_gate("CP", {idx("q", j), idx("q", k)}, {-kPi / std::ldexp(1.0, static_cast<int>(k - j))}));
        s.circuit.add(make_gate("H", {idx("q", k)}));
    }
    for (std::size_t k = 1; k <= n; ++k) s.circuit.add(MeasureStep{{idx("q", k)}, {idx("c", k)}});
    return s;
}

CircuitSpec dyn_pe(std::size_t n, double phi) {
    check_pe(n, phi);
    CircuitSpec s = pe_header("dyn_pe", n);
    for (std::size_t k = 1; k <= n; ++k) {
        s.circuit.add(make_gate("H", {idx("q", k)}));
        s.circuit.add(controlled_power(idx("q", k), phi, n - k));
        for (std::size_t j = 1; j < k; ++j)
            s.circuit.add(ClassicalGate{{idx("c", j)},
                                        BoolFunc::identity(1),
                                        1,
                                        make_gate("P", {idx("q", k)}, {-kPi / std::ldexp(1.0, static_cast<int>(k - j))})});
        s.circuit.add(make_gate("H", {idx("q", k)}));
        s.circuit.add(MeasureStep{{idx("q", k)}, {idx("c", k)}});
    }
    return s;
}

double default_phase(std::size_t n) {
    // alternating bits 0.0101...
    const std::uint64_t k = (std::uint64_t{1} << n) / 3;
    return std::ldexp(static_cast<double>(k), -static_cast<int>(n));
}

// --- teleportation ------------------------------------------------------------

CircuitSpec teleport() {
    CircuitSpec s;
    s.name = "teleport";
    s.qubits = {"q", "q1", "q2"};
    s.fixed_init = {{"q1", InitState::zero()}, {"q2", InitState::zero()}};
    s.inputs = {"q"};
    s.outputs = {"q2"};
    DynCircuit &c = s.circuit;
    c.add(make_gate("H", {"q2"})).add(make_gate("CX", {"q2", "q1"}));
    c.add(make_gate("CX", {"q", "q1"})).add(make_gate("H", {"q"}));
    BranchStep fix{{{"q", "q1"}, {"c", "c1"}}, BoolFunc::identity(2), {}};
    fix.branches.resize(4);
    fix.branches[1].add(make_gate("X", {"q2"}));
    fix.branches[2].add(make_gate("Z", {"q2"}));
    fix.branches[3].add(make_gate("X", {"q2"})).add(make_gate("Z", {"q2"}));
    c.add(fix);
    return s;
}

CircuitSpec swap_teleport() {
    CircuitSpec s;
    s.name = "swap_teleport";
    s.qubits = {"q", "q2"};
    s.fixed_init = {{"q2", InitState::zero()}};
    s.inputs = {"q"};
    s.outputs = {"q2"};
    s.circuit.add(make_gate("SWAP", {"q", "q2"}));
    return s;
}

// --- error correction and state injection -------------------------------------

CircuitSpec bitflip_code(CodeError err) { return repetition_code("bitflip" + code_suffix(err), err, false); }
CircuitSpec phaseflip_code(CodeError err) { return repetition_code("phaseflip" + code_suffix(err), err, true); }

CircuitSpec logical_identity() {
    CircuitSpec s;
    s.name = "identity";
    s.qubits = {"q0"};
    s.inputs = {"q0"};
    s.outputs = {"q0"};
    return s;
}

CircuitSpec state_inject(const std::string &gate) {
    const double theta = inject_angle(gate);
    CircuitSpec s;
    s.name = "state_inject_" + gate;
    s.qubits = {"q", "m"};
    s.fixed_init = {{"m", InitState::plus()}};
    s.inputs = {"q"};
    s.outputs = {"q"};
    DynCircuit &c = s.circuit;
    c.add(make_gate("P", {"m"}, {theta}));
    c.add(make_gate("CX", {"q", "m"}));
    c.add(MeasureStep{{"m"}, {"c"}});
    c.add(ClassicalGate{{"c"}, BoolFunc::identity(1), 1, make_gate("P", {"q"}, {2 * theta})});
    return s;
}

CircuitSpec bare_gate(const std::string &gate) {
    inject_angle(gate);
    CircuitSpec s;
    s.name = gate;
    s.qubits = {"q"};
    s.inputs = {"q"};
    s.outputs = {"q"};
    s.circuit.add(make_gate(gate, {"q"}));
    return s;
}

// --- pairs and suites ---------------------------------------------------------

BenchmarkPair qft_pair(std::size_t n) {
    return {"qft_" + std::to_string(n), CheckMode::M, qft(n), dyn_qft(n), VerdictKind::Equivalent};
}

BenchmarkPair pe_pair(std::size_t n) {
    const double phi = default_phase(n);
    return {"PE_" + std::to_string(n), CheckMode::M, pe(n, phi), dyn_pe(n, phi), VerdictKind::Equivalent};
}

BenchmarkPair bitflip_pair(CodeError err) {
    return {"Bitflip" + code_suffix(err), CheckMode::Q, bitflip_code(err), logical_identity(), VerdictKind::Equivalent};
}

BenchmarkPair phaseflip_pair(CodeError err) {
    return {"Phaseflip" + code_suffix(err), CheckMode::Q, phaseflip_code(err), logical_identity(),
            VerdictKind::Equivalent};
}

BenchmarkPair teleport_pair() { return {"Teleportation", CheckMode::Q, teleport(), swap_teleport(), VerdictKind::Equivalent}; }

BenchmarkPair state_inject_pair(const std::string &gate) {
    return {"State_inject_" + gate, CheckMode::Q, state_inject(gate), bare_gate(gate), VerdictKind::Equivalent};
}

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names = {"qft", "pe", "qec", "all"};
    return names;
}

std::vector<BenchmarkPair> suite(const std::string &name, std::size_t max_n) {
    std::vector<BenchmarkPair> out;
    const bool all = name == "all";
    if (!all && name != "qft" && name != "pe" && name != "qec") throw BenchError("unknown suite '" + name + "'");
    if (all || name == "qft")
        for (std::size_t n = 2; n <= std::min<std::size_t>(max_n, 16); ++n) out.push_back(qft_pair(n));
    if (all || name == "pe")
        for (std::size_t n = 2; n <= std::min<std::size_t>(max_n, 7); ++n) out.push_back(pe_pair(n));
    if (all || name == "qec") {
        // one injected error each; the row keeps the plain code name
        for (BenchmarkPair p : {bitflip_pair({2}), phaseflip_pair({2})}) {
            p.name = p.name.substr(0, p.name.find('_'));
            out.push_back(std::move(p));
        }
        out.push_back(teleport_pair());
        out.push_back(state_inject_pair("S"));
        out.push_back(state_inject_pair("T"));
    }
    return out;
}

} // namespace dqcec::bench
