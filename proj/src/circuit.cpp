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

#include "dqcec/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dqcec {

using cd = std::complex<double>;

const std::vector<GateInfo> &gate_library() {
    static const std::vector<GateInfo> lib = {
        {"ID", 1, 0},  {"H", 1, 0},  {"X", 1, 0},    {"Y", 1, 0},  {"Z", 1, 0},    {"S", 1, 0},
        {"SDG", 1, 0}, {"T", 1, 0},  {"TDG", 1, 0},  {"P", 1, 1},  {"CX", 2, 0},   {"CZ", 2, 0},
        {"CP", 2, 1},  {"SWAP", 2, 0}, {"CUPOW", 2, 2},
    };
    return lib;
}

const GateInfo &gate_info(const std::string &name) {
    for (const GateInfo &g : gate_library())
        if (g.name == name) return g;
    throw CircuitError("unknown gate '" + name + "'");
}

Eigen::MatrixXcd gate_matrix(const std::string &name, const std::vector<double> &params) {
    const GateInfo &info = gate_info(name);
    if (params.size() != info.params)
        throw CircuitError("gate " + name + " takes " + std::to_string(info.params) + " parameter(s)");
    const double s = 1.0 / std::sqrt(2.0);
    const cd i{0.0, 1.0};
    auto phase = [](double theta) { return std::polar(1.0, theta); };
    Eigen::MatrixXcd m;
    if (name == "ID") {
        m = Eigen::MatrixXcd::Identity(2, 2);
    } else if (name == "H") {
        m.resize(2, 2);
        m << s, s, s, -s;
    } else if (name == "X") {
        m.resize(2, 2);
        m << 0, 1, 1, 0;
    } else if (name == "Y") {
        m.resize(2, 2);
        m << 0, -i, i, 0;
    } else if (name == "Z") {
        m.resize(2, 2);
        m << 1, 0, 0, -1;
    } else if (name == "S" || name == "SDG" || name == "T" || name == "TDG" || name == "P") {
        double theta = name == "S"     ? std::numbers::pi / 2
                       : name == "SDG" ? -std::numbers::pi / 2
                       : name == "T"   ? std::numbers::pi / 4
                       : name == "TDG" ? -std::numbers::pi / 4
                                       : params[0];
        m = Eigen::MatrixXcd::Identity(2, 2);
        m(1, 1) = phase(theta);
    } else if (name == "CX") {
        m = Eigen::MatrixXcd::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    } else if (name == "CZ") {
        m = Eigen::MatrixXcd::Identity(4, 4);
        m(3, 3) = -1.0;
    } else if (name == "CP") {
        m = Eigen::MatrixXcd::Identity(4, 4);
        m(3, 3) = phase(params[0]);
    } else if (name == "CUPOW") {
        m = Eigen::MatrixXcd::Identity(4, 4);
        m(3, 3) = phase(2.0 * std::numbers::pi * params[0] * std::ldexp(1.0, static_cast<int>(params[1])));
    } else if (name == "SWAP") {
        m = Eigen::MatrixXcd::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    }
    return m;
}

Eigen::MatrixXcd Gate::matrix() const { return gate_matrix(name, params); }

Gate make_gate(std::string name, std::vector<QubitId> qubits, std::vector<double> params) {
    const GateInfo &info = gate_info(name);
    if (qubits.size() != info.arity)
        throw CircuitError("gate " + name + " acts on " + std::to_string(info.arity) + " qubit(s)");
    if (params.size() != info.params)
        throw CircuitError("gate " + name + " takes " + std::to_string(info.params) + " parameter(s)");
    return {std::move(name), std::move(params), std::move(qubits)};
}

Gate inverse(const Gate &g) {
    Gate r = g;
    if (g.name == "S") r.name = "SDG";
    else if (g.name == "SDG") r.name = "S";
    else if (g.name == "T") r.name = "TDG";
    else if (g.name == "TDG") r.name = "T";
    else if (g.name == "P" || g.name == "CP" || g.name == "CUPOW") r.params[0] = -g.params[0];
    return r;
}

std::array<std::complex<double>, 2> InitState::amplitudes() const {
    switch (kind) {
    case Kind::Zero:
        return {1.0, 0.0};
    case Kind::One:
        return {0.0, 1.0};
    case Kind::Plus:
        return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    case Kind::Eigen:
        return basis ? std::array<cd, 2>{0.0, 1.0} : std::array<cd, 2>{1.0, 0.0};
    }
    return {1.0, 0.0};
}

const InitState *CircuitSpec::init_of(const QubitId &q) const {
    for (const auto &[name, st] : fixed_init)
        if (name == q) return &st;
    return nullptr;
}

std::size_t CircuitSpec::qubit_ordinal(const QubitId &q) const {
    auto it = std::find(qubits.begin(), qubits.end(), q);
    if (it == qubits.end()) throw CircuitError("unknown qubit '" + q + "'");
    return static_cast<std::size_t>(it - qubits.begin());
}

// --- structure ----------------------------------------------------------------

std::set<QubitId> qvar(const Step &s) {
    std::set<QubitId> out;
    if (const auto *g = std::get_if<Gate>(&s)) {
        out.insert(g->qubits.begin(), g->qubits.end());
    } else if (const auto *m = std::get_if<MeasureStep>(&s)) {
        out.insert(m->qubits.begin(), m->qubits.end());
    } else if (const auto *cg = std::get_if<ClassicalGate>(&s)) {
        out.insert(cg->gate.qubits.begin(), cg->gate.qubits.end());
    } else {
        const auto &b = std::get<BranchStep>(s);
        out.insert(b.measure.qubits.begin(), b.measure.qubits.end());
        for (const DynCircuit &c : b.branches) {
            auto sub = qvar(c);
            out.insert(sub.begin(), sub.end());
        }
    }
    return out;
}

std::set<QubitId> qvar(const DynCircuit &c) {
    std::set<QubitId> out;
    for (const Step &s : c.steps) {
        auto sub = qvar(s);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

std::vector<BitId> bits_produced(const DynCircuit &c) {
    std::vector<BitId> out;
    for (const Step &s : c.steps) {
        if (const auto *m = std::get_if<MeasureStep>(&s)) {
            out.insert(out.end(), m->bits.begin(), m->bits.end());
        } else if (const auto *b = std::get_if<BranchStep>(&s)) {
            out.insert(out.end(), b->measure.bits.begin(), b->measure.bits.end());
            for (const DynCircuit &sub : b->branches) {
                auto more = bits_produced(sub);
                out.insert(out.end(), more.begin(), more.end());
            }
        }
    }
    return out;
}

std::set<BitId> bits_read(const DynCircuit &c) {
    std::set<BitId> out;
    for (const Step &s : c.steps) {
        if (const auto *cg = std::get_if<ClassicalGate>(&s)) {
            out.insert(cg->bits.begin(), cg->bits.end());
        } else if (const auto *b = std::get_if<BranchStep>(&s)) {
            for (const DynCircuit &sub : b->branches) {
                auto more = bits_read(sub);
                out.insert(more.begin(), more.end());
            }
        }
    }
    return out;
}

std::size_t gate_count(const DynCircuit &c) {
    std::size_t n = 0;
    for (const Step &s : c.steps) {
        if (std::holds_alternative<Gate>(s) || std::holds_alternative<ClassicalGate>(s)) ++n;
        if (const auto *b = std::get_if<BranchStep>(&s))
            for (const DynCircuit &sub : b->branches) n += gate_count(sub);
    }
    return n;
}

// --- validation ---------------------------------------------------------------

namespace {

template <typename T> bool has_duplicates(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

struct Validator {
    const CircuitSpec &spec;
    std::vector<ValidationIssue> issues;
    std::set<BitId> produced;

    void issue(const std::string &where, const std::string &msg) { issues.push_back({where, msg}); }

    bool known(const QubitId &q) const { return std::find(spec.qubits.begin(), spec.qubits.end(), q) != spec.qubits.end(); }

    void check_qubits(const std::string &where, const std::vector<QubitId> &qs) {
        for (const QubitId &q : qs)
            if (!known(q)) issue(where, "undeclared qubit '" + q + "'");
        if (has_duplicates(qs)) issue(where, "repeated qubit");
    }

    void check_gate(const std::string &where, const Gate &g) {
        try {
            const GateInfo &info = gate_info(g.name);
            if (g.qubits.size() != info.arity) issue(where, "gate " + g.name + " needs " + std::to_string(info.arity) + " qubit(s)");
            if (g.params.size() != info.params)
                issue(where, "gate " + g.name + " needs " + std::to_string(info.params) + " parameter(s)");
            for (double p : g.params)
                if (!std::isfinite(p)) issue(where, "non-finite gate parameter");
        } catch (const CircuitError &e) {
            issue(where, e.what());
        }
        check_qubits(where, g.qubits);
    }

    void check_measure(const std::string &where, const MeasureStep &m, std::set<BitId> &available) {
        check_qubits(where, m.qubits);
        if (m.qubits.size() != m.bits.size()) issue(where, "measurement needs one bit per qubit");
        for (const BitId &b : m.bits) {
            if (b.empty()) issue(where, "empty bit name");
            if (!produced.insert(b).second) issue(where, "bit '" + b + "' is written twice");
            available.insert(b);
        }
    }

    void walk(const DynCircuit &c, const std::string &prefix, std::set<BitId> &available) {
        for (std::size_t k = 0; k < c.steps.size(); ++k) {
            const std::string where = prefix + "step " + std::to_string(k);
            const Step &s = c.steps[k];
            if (const auto *g = std::get_if<Gate>(&s)) {
                check_gate(where, *g);
            } else if (const auto *m = std::get_if<MeasureStep>(&s)) {
                check_measure(where, *m, available);
            } else if (const auto *cg = std::get_if<ClassicalGate>(&s)) {
                check_gate(where, cg->gate);
                for (const BitId &b : cg->bits)
                    if (!available.count(b)) issue(where, "bit '" + b + "' is read before it is measured");
                if (has_duplicates(cg->bits)) issue(where, "repeated control bit");
                if (cg->func.arity() != cg->bits.size()) issue(where, "control function arity does not match its bits");
                if (cg->func.outputs() >= 32 || cg->value >= (std::uint64_t{1} << cg->func.outputs()))
                    issue(where, "control value out of range");
            } else {
                const auto &b = std::get<BranchStep>(s);
                check_measure(where, b.measure, available);
                if (b.dispatch.arity() != b.measure.qubits.size())
                    issue(where, "dispatch arity does not match the measured qubits");
                if (b.dispatch.outputs() >= 31 || b.branches.size() != (std::size_t{1} << b.dispatch.outputs())) {
                    issue(where, "dispatch needs exactly 2^t branches");
                }
                std::set<BitId> after = available;
                for (std::size_t i = 0; i < b.branches.size(); ++i) {
                    const std::string sub = where + " > branch " + std::to_string(i) + " > ";
                    auto vars = qvar(b.branches[i]);
                    for (const QubitId &r : b.measure.qubits)
                        if (vars.count(r)) issue(sub, "branch acts on measured qubit '" + r + "'");
                    std::set<BitId> inner = available;
                    walk(b.branches[i], sub, inner);
                    after.insert(inner.begin(), inner.end());
                }
                available = after;
            }
        }
    }
};

} // namespace

std::vector<ValidationIssue> validate(const CircuitSpec &spec) {
    Validator v{spec, {}, {}};
    if (spec.qubits.empty()) v.issue("header", "no qubits declared");
    for (const QubitId &q : spec.qubits)
        if (q.empty()) v.issue("header", "empty qubit name");
    if (has_duplicates(spec.qubits)) v.issue("header", "repeated qubit declaration");
    v.check_qubits("inputs", spec.inputs);
    v.check_qubits("outputs", spec.outputs);

    std::vector<QubitId> init_qubits;
    for (const auto &[q, st] : spec.fixed_init) {
        init_qubits.push_back(q);
        if (!v.known(q)) v.issue("init", "undeclared qubit '" + q + "'");
        if (std::find(spec.inputs.begin(), spec.inputs.end(), q) != spec.inputs.end())
            v.issue("init", "principal input '" + q + "' has a fixed state");
        if (st.kind == InitState::Kind::Eigen && st.basis != 0 && st.basis != 1)
            v.issue("init", "eigenstate basis value must be 0 or 1");
    }
    if (has_duplicates(init_qubits)) v.issue("init", "qubit initialised twice");
    for (const QubitId &q : spec.qubits) {
        bool is_input = std::find(spec.inputs.begin(), spec.inputs.end(), q) != spec.inputs.end();
        if (!is_input && spec.init_of(q) == nullptr) v.issue("init", "qubit '" + q + "' is neither an input nor initialised");
    }

    std::set<BitId> available;
    v.walk(spec.circuit, "", available);

    if (!spec.output_bits.empty()) {
        if (!spec.inputs.empty()) v.issue("inputs", "a measured-output circuit must have every input fixed");
        if (has_duplicates(spec.output_bits)) v.issue("outbits", "repeated output bit");
        for (const BitId &b : spec.output_bits)
            if (!v.produced.count(b)) v.issue("outbits", "output bit '" + b + "' is never measured");
    }
    return v.issues;
}

void require_valid(const CircuitSpec &spec) {
    auto issues = validate(spec);
    if (issues.empty()) return;
    std::ostringstream os;
    os << "invalid circuit";
    if (!spec.name.empty()) os << " '" << spec.name << "'";
    for (const auto &i : issues) os << "\n  " << i.where << ": " << i.message;
    throw CircuitError(os.str());
}

// --- lowering -----------------------------------------------------------------

namespace {

struct MergedGate {
    Gate gate;
    std::vector<bool> members;
};

// Shortest common supersequence of `merged` and `branch`; gates of `branch`
// are tagged with member `which`.
std::vector<MergedGate> merge(const std::vector<MergedGate> &merged, const std::vector<Gate> &branch, std::size_t which,
                              std::size_t width) {
    const std::size_t n = merged.size(), m = branch.size();
    std::vector<std::vector<std::size_t>> lcs(n + 1, std::vector<std::size_t>(m + 1, 0));
    for (std::size_t a = n; a-- > 0;)
        for (std::size_t b = m; b-- > 0;)
            lcs[a][b] = merged[a].gate == branch[b] ? 1 + lcs[a + 1][b + 1] : std::max(lcs[a + 1][b], lcs[a][b + 1]);
    std::vector<MergedGate> out;
    std::size_t a = 0, b = 0;
    while (a < n || b < m) {
        if (a < n && b < m && merged[a].gate == branch[b] && lcs[a][b] == 1 + lcs[a + 1][b + 1]) {
            out.push_back(merged[a]);
            out.back().members[which] = true;
            ++a;
            ++b;
        } else if (a < n && (b == m || lcs[a + 1][b] >= lcs[a][b + 1])) {
            out.push_back(merged[a++]);
        } else {
            MergedGate g{branch[b++], std::vector<bool>(width, false)};
            g.members[which] = true;
            out.push_back(std::move(g));
        }
    }
    return out;
}

bool only_gates(const DynCircuit &c) {
    return std::all_of(c.steps.begin(), c.steps.end(), [](const Step &s) { return std::holds_alternative<Gate>(s); });
}

void emit_controlled(DynCircuit &out, const MeasureStep &m, const BoolFunc &g, const Gate &gate) {
    const std::size_t r = g.arity();
    if (g.has_table()) {
        const auto &t = g.table();
        if (std::all_of(t.begin(), t.end(), [](std::uint32_t v) { return v == 1; })) {
            out.add(gate);
            return;
        }
        if (std::all_of(t.begin(), t.end(), [](std::uint32_t v) { return v == 0; })) return;
        for (std::size_t j = 0; j < r; ++j) {
            bool pos = true, neg = true;
            for (std::size_t x = 0; x < t.size(); ++x) {
                std::uint32_t bit = (x >> (r - 1 - j)) & 1U;
                pos = pos && t[x] == bit;
                neg = neg && t[x] == 1 - bit;
            }
            if (pos || neg) {
                out.add(ClassicalGate{{m.bits[j]}, BoolFunc::identity(1), pos ? 1U : 0U, gate});
                return;
            }
        }
    }
    out.add(ClassicalGate{m.bits, g, 1, gate});
}

} // namespace

DynCircuit lower_controls(const DynCircuit &c) {
    DynCircuit out;
    for (const Step &s : c.steps) {
        const auto *b = std::get_if<BranchStep>(&s);
        if (b == nullptr) {
            out.add(s);
            continue;
        }
        BranchStep lowered{b->measure, b->dispatch, {}};
        for (const DynCircuit &sub : b->branches) lowered.branches.push_back(lower_controls(sub));
        if (!std::all_of(lowered.branches.begin(), lowered.branches.end(), only_gates)) {
            out.add(std::move(lowered));
            continue;
        }
        const std::size_t width = lowered.branches.size();
        std::vector<MergedGate> merged;
        for (std::size_t i = 0; i < width; ++i) {
            std::vector<Gate> gates;
            for (const Step &st : lowered.branches[i].steps) gates.push_back(std::get<Gate>(st));
            merged = merge(merged, gates, i, width);
        }
        out.add(b->measure);
        for (const MergedGate &mg : merged) emit_controlled(out, b->measure, b->dispatch.preimage(mg.members), mg.gate);
    }
    return out;
}

} // namespace dqcec
