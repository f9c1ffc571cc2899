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

// Random desk-scale dynamic circuits and equivalent / mutated partners.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "dqcec/circuit.hpp"

namespace dqcec::testing {

struct RandomDqcOptions {
    std::size_t max_qubits = 4;
    std::size_t max_gates = 12;
    std::size_t max_measurements = 3;
    /// q-mode spec (open inputs/outputs) instead of a measured-output one.
    bool q_mode = false;
};

inline Gate random_gate(std::mt19937_64 &rng, const std::vector<QubitId> &qubits) {
    static const char *one[] = {"H", "X", "Y", "Z", "S", "SDG", "T", "TDG", "P"};
    static const char *two[] = {"CX", "CZ", "SWAP", "CP"};
    std::uniform_int_distribution<std::size_t> pick_q(0, qubits.size() - 1);
    if (qubits.size() >= 2 && rng() % 3 == 0) {
        std::string name = two[rng() % 4];
        std::size_t a = pick_q(rng), b = pick_q(rng);
        while (b == a) b = pick_q(rng);
        std::vector<double> params;
        if (name == "CP") params.push_back(0.25 * static_cast<double>(1 + rng() % 7));
        return make_gate(name, {qubits[a], qubits[b]}, params);
    }
    std::string name = one[rng() % 9];
    std::vector<double> params;
    if (name == "P") params.push_back(0.25 * static_cast<double>(1 + rng() % 7));
    return make_gate(name, {qubits[pick_q(rng)]}, params);
}

/// Gates only; used as branch bodies.
inline DynCircuit random_body(std::mt19937_64 &rng, const std::vector<QubitId> &qubits, std::size_t gates) {
    DynCircuit c;
    for (std::size_t i = 0; i < gates; ++i) c.add(random_gate(rng, qubits));
    return c;
}

inline CircuitSpec random_spec(std::mt19937_64 &rng, const RandomDqcOptions &opt) {
    CircuitSpec spec;
    spec.name = "random";
    const std::size_t n = 1 + rng() % opt.max_qubits;
    for (std::size_t i = 0; i < n; ++i) spec.qubits.push_back("q" + std::to_string(i));

    const std::size_t gate_budget = 1 + rng() % opt.max_gates;
    std::size_t meas_budget = rng() % (opt.max_measurements + 1);
    // m-mode specs keep one measurement for the output bits
    std::size_t out_meas = 0;
    if (!opt.q_mode) {
        if (meas_budget == 0) meas_budget = 1;
        out_meas = 1 + rng() % std::min<std::size_t>(meas_budget, n);
    }
    // q-mode specs measure every discarded qubit at the end
    std::size_t discarded = 0;
    if (opt.q_mode) {
        discarded = rng() % (std::min(n - 1, opt.max_measurements) + 1);
        meas_budget = std::max(meas_budget, discarded);
        out_meas = discarded;
    }
    std::size_t mid_meas = meas_budget - out_meas;

    std::vector<BitId> bits;
    std::size_t gates = 0;
    std::size_t bit_no = 0;
    while (gates < gate_budget || mid_meas > 0) {
        const auto roll = rng() % 10;
        if (mid_meas > 0 && (roll < 2 || gates >= gate_budget)) {
            QubitId q = spec.qubits[rng() % n];
            BitId b = "c" + std::to_string(bit_no++);
            --mid_meas;
            std::vector<QubitId> rest;
            for (const QubitId &r : spec.qubits)
                if (r != q) rest.push_back(r);
            if (!rest.empty() && rng() % 3 == 0 && gates + 2 <= gate_budget) {
                BranchStep br{{{q}, {b}}, BoolFunc::identity(1), {}};
                std::size_t g0 = rng() % 2, g1 = rng() % 3;
                br.branches.push_back(random_body(rng, rest, g0));
                br.branches.push_back(random_body(rng, rest, g1));
                gates += g0 + g1;
                spec.circuit.add(br);
            } else {
                spec.circuit.add(MeasureStep{{q}, {b}});
            }
            bits.push_back(b);
            continue;
        }
        if (gates >= gate_budget) break;
        Gate g = random_gate(rng, spec.qubits);
        ++gates;
        if (!bits.empty() && roll >= 7) {
            ClassicalGate cg;
            if (bits.size() >= 2 && rng() % 2 == 0) {
                std::size_t a = rng() % bits.size(), b = rng() % bits.size();
                while (b == a) b = rng() % bits.size();
                cg.bits = {bits[a], bits[b]};
                cg.func = rng() % 2 ? BoolFunc::parity(2) : BoolFunc::all_and(2);
            } else {
                cg.bits = {bits[rng() % bits.size()]};
                cg.func = BoolFunc::identity(1);
            }
            cg.value = static_cast<std::uint32_t>(rng() % 2);
            cg.gate = g;
            spec.circuit.add(cg);
        } else {
            spec.circuit.add(g);
        }
    }

    if (opt.q_mode) {
        for (const QubitId &q : spec.qubits) {
            if (rng() % 2 == 0 || spec.inputs.empty()) spec.inputs.push_back(q);
            else spec.fixed_init.emplace_back(q, rng() % 2 ? InitState::zero() : InitState::plus());
        }
        std::vector<QubitId> shuffled = spec.qubits;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < discarded) spec.circuit.add(MeasureStep{{shuffled[i]}, {"d" + std::to_string(i)}});
            else spec.outputs.push_back(shuffled[i]);
        }
        std::sort(spec.outputs.begin(), spec.outputs.end());
    } else {
        for (const QubitId &q : spec.qubits) {
            const auto k = rng() % 3;
            spec.fixed_init.emplace_back(q, k == 0 ? InitState::zero() : k == 1 ? InitState::one() : InitState::plus());
        }
        std::vector<QubitId> shuffled = spec.qubits;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t i = 0; i < out_meas; ++i) {
            BitId b = "m" + std::to_string(i);
            spec.circuit.add(MeasureStep{{shuffled[i]}, {b}});
            spec.output_bits.push_back(b);
        }
    }
    return spec;
}

/// Inserts an identity pair or splits a gate into an equivalent sequence.
inline CircuitSpec rewrite_equivalent(std::mt19937_64 &rng, CircuitSpec spec) {
    auto &steps = spec.circuit.steps;
    const std::size_t pos = rng() % (steps.size() + 1);
    QubitId q = spec.qubits[rng() % spec.qubits.size()];
    std::vector<Step> ins;
    switch (rng() % 4) {
    case 0: ins = {make_gate("H", {q}), make_gate("H", {q})}; break;
    case 1: ins = {make_gate("S", {q}), make_gate("SDG", {q})}; break;
    case 2: ins = {make_gate("T", {q}), make_gate("T", {q}), make_gate("SDG", {q})}; break;
    default: ins = {make_gate("X", {q}), make_gate("Z", {q}), make_gate("X", {q}), make_gate("Z", {q})}; break;
    }
    steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(pos), ins.begin(), ins.end());
    spec.name += "-rewritten";
    return spec;
}

/// One single-gate change: swap a gate, drop a gate, or flip a classical
/// control value. Falls back to inserting a gate when nothing applies.
inline CircuitSpec mutate(std::mt19937_64 &rng, CircuitSpec spec) {
    auto &steps = spec.circuit.steps;
    std::vector<std::size_t> gates, controls;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (std::holds_alternative<Gate>(steps[i])) gates.push_back(i);
        if (std::holds_alternative<ClassicalGate>(steps[i])) controls.push_back(i);
    }
    spec.name += "-mutated";
    const auto kind = rng() % 3;
    if (kind == 0 && !controls.empty()) {
        auto &cg = std::get<ClassicalGate>(steps[controls[rng() % controls.size()]]);
        cg.value ^= 1U;
        return spec;
    }
    if (kind == 1 && !gates.empty()) {
        steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(gates[rng() % gates.size()]));
        return spec;
    }
    if (!gates.empty()) {
        auto &g = std::get<Gate>(steps[gates[rng() % gates.size()]]);
        g = random_gate(rng, spec.qubits);
        return spec;
    }
    steps.insert(steps.begin(), random_gate(rng, spec.qubits));
    return spec;
}

} // namespace dqcec::testing
