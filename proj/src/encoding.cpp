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

#include "dqcec/encoding.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>

#include "dqcec/logic.hpp"

namespace dqcec {

using tdd::Complex;
using tdd::Index;
using tdd::IndexKind;
using tdd::Rank;
using tdd::Tdd;

namespace {

constexpr std::uint64_t kMajorMax = (std::uint64_t{1} << 24) - 1;
constexpr std::uint64_t kMinorMax = 0xFFFFFFFFULL;

Rank make_rank(std::uint64_t group, std::uint64_t major, std::uint64_t minor) {
    return (group << 56) | (major << 32) | minor;
}

} // namespace

// --- planner ------------------------------------------------------------------

IndexPlanner::IndexPlanner(tdd::Manager &mgr, std::vector<QubitId> qubits, std::size_t output_bits)
    : mgr_(mgr), qubits_(std::move(qubits)), output_bits_(output_bits) {
    if (qubits_.size() > kMajorMax) throw EncodingError("too many qubits");
}

IndexPlanner IndexPlanner::for_pair(tdd::Manager &mgr, const CircuitSpec &a, const CircuitSpec &b) {
    std::vector<QubitId> merged = a.qubits;
    for (const QubitId &q : b.qubits)
        if (std::find(merged.begin(), merged.end(), q) == merged.end()) merged.push_back(q);
    return IndexPlanner(mgr, std::move(merged), std::max(a.output_bits.size(), b.output_bits.size()));
}

std::size_t IndexPlanner::ordinal(const QubitId &q) const {
    auto it = std::find(qubits_.begin(), qubits_.end(), q);
    if (it == qubits_.end()) throw EncodingError("qubit '" + q + "' unknown to the index planner");
    return static_cast<std::size_t>(it - qubits_.begin());
}

Index IndexPlanner::segment(const QubitId &q, std::size_t s) {
    if (s >= kMinorMax) throw EncodingError("too many wire segments");
    return mgr_.add_index(q + "#" + std::to_string(s), make_rank(1, kMajorMax - ordinal(q), kMinorMax - s),
                          IndexKind::QuantumWire);
}

Index IndexPlanner::output(const QubitId &q) {
    return mgr_.add_index(q + "#out", make_rank(1, kMajorMax - ordinal(q), 0), IndexKind::PrincipalOutput);
}

Index IndexPlanner::discard(const QubitId &q) {
    return mgr_.add_index(q + "#disc", make_rank(5, kMajorMax - ordinal(q), 0), IndexKind::Discard);
}

Index IndexPlanner::output_bit(std::size_t k) {
    if (k >= output_bits_) throw EncodingError("output bit position out of range");
    return mgr_.add_index("out[" + std::to_string(k) + "]", make_rank(7, kMajorMax - k, 0),
                          IndexKind::ClassicalOutcome);
}

Index IndexPlanner::bit(const BitId &b) {
    auto [it, fresh] = bit_slots_.emplace(b, bit_slots_.size());
    (void)fresh;
    if (it->second >= kMajorMax) throw EncodingError("too many classical bits");
    return mgr_.add_index(b, make_rank(6, kMajorMax - it->second, 0), IndexKind::ClassicalOutcome);
}

Index IndexPlanner::logic() {
    std::size_t k = next_logic_++;
    return mgr_.add_index("L#" + std::to_string(k), make_rank(4, 0, kMinorMax - k), IndexKind::Logic);
}

std::vector<Index> IndexPlanner::output_bit_indices() {
    std::vector<Index> out;
    for (std::size_t k = 0; k < output_bits_; ++k) out.push_back(output_bit(k));
    return out;
}

// --- elementary tensors -------------------------------------------------------

bool summable(const tdd::Manager &mgr, Index x) {
    IndexKind k = mgr.info(x).kind;
    return k == IndexKind::QuantumWire || k == IndexKind::Logic;
}

std::vector<Index> summed_indices(const tdd::Manager &mgr, const Tdd &a, const Tdd &b) {
    std::vector<Index> out;
    for (Index x : a.indices)
        if (summable(mgr, x) && std::find(b.indices.begin(), b.indices.end(), x) != b.indices.end()) out.push_back(x);
    return out;
}

Tdd copy_tensor(tdd::Manager &mgr, std::span<const Index> indices) {
    std::vector<Complex> v(std::size_t{1} << indices.size(), Complex{});
    v.front() = 1.0;
    v.back() = 1.0;
    return mgr.from_dense(v, indices);
}

Tdd measurement_tensor(tdd::Manager &mgr, bool controlling, Index c, Index x, Index y) {
    if (controlling) {
        std::vector<Index> idx = {c, x, y};
        return copy_tensor(mgr, idx);
    }
    std::vector<Index> idx = {x, y};
    return copy_tensor(mgr, idx);
}

Tdd gate_tensor(tdd::Manager &mgr, const Eigen::MatrixXcd &u, std::span<const Index> ins, std::span<const Index> outs) {
    const std::size_t k = ins.size();
    if (outs.size() != k || u.rows() != (Eigen::Index{1} << k) || u.cols() != u.rows())
        throw EncodingError("gate matrix does not match its wires");
    std::vector<Complex> v(std::size_t{1} << (2 * k));
    for (std::size_t o = 0; o < (std::size_t{1} << k); ++o)
        for (std::size_t i = 0; i < (std::size_t{1} << k); ++i)
            v[(o << k) | i] = u(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i));
    std::vector<Index> order(outs.begin(), outs.end());
    order.insert(order.end(), ins.begin(), ins.end());
    return mgr.from_dense(v, order);
}

Tdd controlled_gate_tensor(tdd::Manager &mgr, const Eigen::MatrixXcd &u, Index p, std::span<const Index> ins,
                           std::span<const Index> outs) {
    const std::size_t k = ins.size();
    if (outs.size() != k || u.rows() != (Eigen::Index{1} << k) || u.cols() != u.rows())
        throw EncodingError("gate matrix does not match its wires");
    const std::size_t half = std::size_t{1} << (2 * k);
    std::vector<Complex> v(2 * half);
    for (std::size_t o = 0; o < (std::size_t{1} << k); ++o)
        for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
            v[(o << k) | i] = o == i ? 1.0 : 0.0;
            v[half + ((o << k) | i)] = u(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i));
        }
    std::vector<Index> order = {p};
    order.insert(order.end(), outs.begin(), outs.end());
    order.insert(order.end(), ins.begin(), ins.end());
    return mgr.from_dense(v, order);
}

namespace {

Tdd indicator(tdd::Manager &mgr, Index x, bool value) {
    std::vector<Complex> v = {value ? 0.0 : 1.0, value ? 1.0 : 0.0};
    std::vector<Index> idx = {x};
    return mgr.from_dense(v, idx);
}

Tdd state_tensor(tdd::Manager &mgr, Index x, const std::array<std::complex<double>, 2> &amp) {
    std::vector<Complex> v = {amp[0], amp[1]};
    std::vector<Index> idx = {x};
    return mgr.from_dense(v, idx);
}

void track(tdd::Manager &mgr, const Tdd &t, ContractStats &stats) {
    stats.max_nodes = std::max(stats.max_nodes, mgr.node_count(t));
    if (t.indices.size() > stats.max_open)
        throw EncodingError("contraction exceeds " + std::to_string(stats.max_open) + " open indices");
}

// --- encoder ------------------------------------------------------------------

using Frontier = std::map<QubitId, std::optional<std::size_t>>;

class Encoder {
  public:
    Encoder(IndexPlanner &planner, const CircuitSpec &spec, EncodeMode mode, ContractStats &stats)
        : pl_(planner), mgr_(planner.manager()), spec_(spec), mode_(mode), stats_(stats) {
        for (const BitId &b : spec.output_bits)
            if (mode != EncodeMode::Open) used_.insert(b);
        auto read = bits_read(spec.circuit);
        used_.insert(read.begin(), read.end());
        collect(spec.circuit);
        for (const QubitId &q : spec.qubits) next_seg_[q] = 1;
    }

    std::vector<TensorItem> run() {
        std::vector<TensorItem> items;
        Frontier fr;
        for (const QubitId &q : spec_.qubits) fr[q] = 0;
        if (mode_ != EncodeMode::Open) {
            for (const QubitId &q : spec_.qubits) {
                const InitState *st = spec_.init_of(q);
                if (st == nullptr) continue;
                items.push_back({state_tensor(mgr_, pl_.segment(q, 0), st->amplitudes()), pl_.ordinal(q), true,
                                 "init " + q});
            }
        }
        walk(spec_.circuit, fr, items, {}, true);
        for (const QubitId &q : spec_.qubits) {
            if (!fr[q]) continue;
            bool keep = mode_ == EncodeMode::Open || mode_ == EncodeMode::M || is_output(q);
            Index target = keep ? pl_.output(q) : pl_.discard(q);
            std::vector<Index> idx = {pl_.segment(q, *fr[q]), target};
            items.push_back({copy_tensor(mgr_, idx), pl_.ordinal(q), false, "cap " + q});
        }
        return items;
    }

  private:
    void collect(const DynCircuit &c) {
        for (const Step &s : c.steps) {
            if (const auto *m = std::get_if<MeasureStep>(&s)) {
                for (std::size_t i = 0; i < m->qubits.size(); ++i) producer_[m->bits[i]] = m->qubits[i];
            } else if (const auto *b = std::get_if<BranchStep>(&s)) {
                for (std::size_t i = 0; i < b->measure.qubits.size(); ++i) {
                    producer_[b->measure.bits[i]] = b->measure.qubits[i];
                    used_.insert(b->measure.bits[i]);
                }
                for (const DynCircuit &sub : b->branches) collect(sub);
            }
        }
    }

    bool is_output(const QubitId &q) const {
        return std::find(spec_.outputs.begin(), spec_.outputs.end(), q) != spec_.outputs.end();
    }

    Index bit_index(const BitId &b) {
        auto it = std::find(spec_.output_bits.begin(), spec_.output_bits.end(), b);
        if (it != spec_.output_bits.end()) return pl_.output_bit(static_cast<std::size_t>(it - spec_.output_bits.begin()));
        return pl_.bit(b);
    }

    Index current(const Frontier &fr, const QubitId &q) {
        auto it = fr.find(q);
        if (it == fr.end() || !it->second) throw EncodingError("qubit '" + q + "' is used after its wire was closed");
        return pl_.segment(q, *it->second);
    }

    std::size_t advance(Frontier &fr, const QubitId &q) {
        std::size_t s = next_seg_[q]++;
        fr[q] = s;
        return s;
    }

    std::size_t owner_of(const std::set<QubitId> &qs, const std::set<BitId> &bits) const {
        std::size_t best = pl_.qubits().size();
        for (const QubitId &q : qs) best = std::min(best, pl_.ordinal(q));
        for (const BitId &b : bits) {
            auto it = producer_.find(b);
            if (it != producer_.end()) best = std::min(best, pl_.ordinal(it->second));
        }
        return best == pl_.qubits().size() ? 0 : best;
    }

    void measure(const QubitId &q, const BitId &b, bool later, bool top, Frontier &fr, std::vector<TensorItem> &out) {
        Index x = current(fr, q);
        const bool used = used_.count(b) > 0;
        const std::size_t owner = pl_.ordinal(q);
        if (mode_ == EncodeMode::Open) {
            if (!used) return;
        } else if (!later && top && !is_output(q)) {
            if (!used && mode_ == EncodeMode::M) return;
            std::vector<Index> idx = {bit_index(b), x};
            out.push_back({copy_tensor(mgr_, idx), owner, false, "measure " + q});
            fr[q] = std::nullopt;
            return;
        }
        Index c = bit_index(b);
        Index y = pl_.segment(q, advance(fr, q));
        out.push_back({measurement_tensor(mgr_, true, c, x, y), owner, false, "measure " + q});
    }

    void gate(const Gate &g, Frontier &fr, std::vector<TensorItem> &out) {
        std::vector<Index> ins, outs;
        for (const QubitId &q : g.qubits) ins.push_back(current(fr, q));
        for (const QubitId &q : g.qubits) outs.push_back(pl_.segment(q, advance(fr, q)));
        std::set<QubitId> qs(g.qubits.begin(), g.qubits.end());
        out.push_back({gate_tensor(mgr_, g.matrix(), ins, outs), owner_of(qs, {}), false, g.name});
    }

    void classical_gate(const ClassicalGate &cg, Frontier &fr, std::vector<TensorItem> &out) {
        std::vector<Index> ins, outs, bits;
        for (const QubitId &q : cg.gate.qubits) ins.push_back(current(fr, q));
        for (const QubitId &q : cg.gate.qubits) outs.push_back(pl_.segment(q, advance(fr, q)));
        for (const BitId &b : cg.bits) bits.push_back(bit_index(b));
        std::vector<bool> accepted(std::size_t{1} << cg.func.outputs(), false);
        accepted.at(cg.value) = true;
        BoolFunc pred = cg.func.preimage(accepted);
        Index p = pl_.logic();
        Tdd logic = func_to_tensor(mgr_, pred, bits, p);
        Tdd psi = controlled_gate_tensor(mgr_, cg.gate.matrix(), p, ins, outs);
        std::vector<Index> shared = {p};
        Tdd t = mgr_.contract(logic, psi, shared);
        track(mgr_, t, stats_);
        std::set<QubitId> qs(cg.gate.qubits.begin(), cg.gate.qubits.end());
        std::set<BitId> bs(cg.bits.begin(), cg.bits.end());
        out.push_back({t, owner_of(qs, bs), false, "if " + cg.gate.name});
    }

    void branch(const BranchStep &b, const std::set<QubitId> &later, bool top, Frontier &fr,
                std::vector<TensorItem> &out) {
        std::set<QubitId> iface;
        std::set<BitId> produced_any, read_inside;
        std::vector<std::set<BitId>> produced(b.branches.size());
        for (std::size_t i = 0; i < b.branches.size(); ++i) {
            auto q = qvar(b.branches[i]);
            iface.insert(q.begin(), q.end());
            auto p = bits_produced(b.branches[i]);
            produced[i].insert(p.begin(), p.end());
            produced_any.insert(p.begin(), p.end());
            auto r = bits_read(b.branches[i]);
            read_inside.insert(r.begin(), r.end());
        }
        for (std::size_t i = 0; i < b.measure.qubits.size(); ++i) {
            const QubitId &q = b.measure.qubits[i];
            measure(q, b.measure.bits[i], later.count(q) > 0 || iface.count(q) > 0, top, fr, out);
        }
        Frontier entry = fr;
        std::map<QubitId, Index> finish;
        for (const QubitId &q : iface) current(fr, q);
        for (const QubitId &q : iface) finish.emplace(q, pl_.segment(q, advance(fr, q)));

        std::vector<Index> ys;
        for (std::size_t j = 0; j < b.dispatch.outputs(); ++j) ys.push_back(pl_.logic());

        Tdd sum = mgr_.constant(0.0);
        for (std::size_t i = 0; i < b.branches.size(); ++i) {
            Frontier local = entry;
            std::vector<TensorItem> body;
            walk(b.branches[i], local, body, later, false);
            std::vector<Tdd> parts;
            for (TensorItem &t : body) parts.push_back(std::move(t.tensor));
            for (const QubitId &q : iface) {
                std::vector<Index> idx = {current(local, q), finish.at(q)};
                parts.push_back(copy_tensor(mgr_, idx));
            }
            for (const BitId &c : produced_any)
                if (!produced[i].count(c)) parts.push_back(indicator(mgr_, bit_index(c), false));
            for (std::size_t j = 0; j < ys.size(); ++j)
                parts.push_back(indicator(mgr_, ys[j], (i >> (ys.size() - 1 - j)) & 1U));
            Tdd ti = contract_sequence(mgr_, parts, stats_);
            sum = mgr_.add(sum, ti);
            track(mgr_, sum, stats_);
        }
        std::vector<Index> rbits;
        for (const BitId &c : b.measure.bits) rbits.push_back(bit_index(c));
        Tdd select = lift(mgr_, b.dispatch, rbits, ys);
        Tdd t = mgr_.contract(select, sum, ys);
        track(mgr_, t, stats_);

        std::set<QubitId> qs = iface;
        qs.insert(b.measure.qubits.begin(), b.measure.qubits.end());
        std::set<BitId> bs(b.measure.bits.begin(), b.measure.bits.end());
        bs.insert(read_inside.begin(), read_inside.end());
        out.push_back({t, owner_of(qs, bs), false, "branch"});
    }

    void walk(const DynCircuit &c, Frontier &fr, std::vector<TensorItem> &out, const std::set<QubitId> &outer_later,
              bool top) {
        // qubits touched by steps after position k
        std::vector<std::set<QubitId>> after(c.steps.size() + 1, outer_later);
        for (std::size_t k = c.steps.size(); k-- > 0;) {
            after[k] = after[k + 1];
            auto q = qvar(c.steps[k]);
            after[k].insert(q.begin(), q.end());
        }
        for (std::size_t k = 0; k < c.steps.size(); ++k) {
            const Step &s = c.steps[k];
            const std::set<QubitId> &later = after[k + 1];
            if (const auto *g = std::get_if<Gate>(&s)) {
                gate(*g, fr, out);
            } else if (const auto *m = std::get_if<MeasureStep>(&s)) {
                for (std::size_t i = 0; i < m->qubits.size(); ++i)
                    measure(m->qubits[i], m->bits[i], later.count(m->qubits[i]) > 0, top, fr, out);
            } else if (const auto *cg = std::get_if<ClassicalGate>(&s)) {
                classical_gate(*cg, fr, out);
            } else {
                branch(std::get<BranchStep>(s), later, top, fr, out);
            }
        }
    }

    IndexPlanner &pl_;
    tdd::Manager &mgr_;
    const CircuitSpec &spec_;
    EncodeMode mode_;
    ContractStats &stats_;
    std::set<BitId> used_;
    std::map<BitId, QubitId> producer_;
    std::map<QubitId, std::size_t> next_seg_;
};

} // namespace

std::vector<TensorItem> encode(IndexPlanner &planner, const CircuitSpec &spec, EncodeMode mode) {
    ContractStats stats;
    return Encoder(planner, spec, mode, stats).run();
}

ContractionPlan plan_sequential(const std::vector<TensorItem> &items) {
    ContractionPlan plan{PlanKind::Sequential, {{}}};
    for (std::size_t i = 0; i < items.size(); ++i)
        if (!items[i].init) plan.groups[0].push_back(i);
    for (std::size_t i = 0; i < items.size(); ++i)
        if (items[i].init) plan.groups[0].push_back(i);
    return plan;
}

ContractionPlan plan_per_qubit(const std::vector<TensorItem> &items, std::size_t qubit_count) {
    ContractionPlan plan{PlanKind::PerQubit, std::vector<std::vector<std::size_t>>(std::max<std::size_t>(qubit_count, 1))};
    std::vector<std::vector<std::size_t>> inits(plan.groups.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!items[i].init) continue;
        std::size_t owner = items[i].owner;
        const Index x = items[i].tensor.indices.at(0);
        for (const TensorItem &t : items) {
            if (t.init) continue;
            if (std::find(t.tensor.indices.begin(), t.tensor.indices.end(), x) != t.tensor.indices.end()) {
                owner = t.owner;
                break;
            }
        }
        inits.at(owner).push_back(i);
    }
    for (std::size_t g = 0; g < plan.groups.size(); ++g) plan.groups[g] = inits[g];
    for (std::size_t i = 0; i < items.size(); ++i)
        if (!items[i].init) plan.groups.at(items[i].owner).push_back(i);
    return plan;
}

tdd::Tdd contract_sequence(tdd::Manager &mgr, const std::vector<Tdd> &tensors, ContractStats &stats) {
    if (tensors.empty()) return mgr.constant(1.0);
    Tdd acc = tensors.front();
    track(mgr, acc, stats);
    for (std::size_t i = 1; i < tensors.size(); ++i) {
        track(mgr, tensors[i], stats);
        acc = mgr.contract(acc, tensors[i], summed_indices(mgr, acc, tensors[i]));
        ++stats.contractions;
        track(mgr, acc, stats);
    }
    return acc;
}

Compiled compile(IndexPlanner &planner, const CircuitSpec &spec, EncodeMode mode, PlanKind plan_kind,
                 std::size_t max_open, bool combine) {
    require_valid(spec);
    auto t0 = std::chrono::steady_clock::now();
    CircuitSpec lowered = spec;
    lowered.circuit = lower_controls(spec.circuit);
    ContractStats stats;
    stats.max_open = max_open;
    std::vector<TensorItem> items = Encoder(planner, lowered, mode, stats).run();
    ContractionPlan plan = plan_kind == PlanKind::Sequential ? plan_sequential(items)
                                                             : plan_per_qubit(items, planner.qubits().size());
    Compiled out;
    tdd::Manager &mgr = planner.manager();
    for (const auto &group : plan.groups) {
        std::vector<Tdd> tensors;
        for (std::size_t i : group) tensors.push_back(items[i].tensor);
        out.groups.push_back(contract_sequence(mgr, tensors, stats));
    }
    if (!combine) out.tdd = mgr.constant(1.0);
    else out.tdd = out.groups.size() == 1 ? out.groups.front() : contract_sequence(mgr, out.groups, stats);
    out.stats.final_nodes = mgr.node_count(out.tdd);
    out.stats.max_nodes = std::max(stats.max_nodes, out.stats.final_nodes);
    out.stats.plan = plan_kind;
    out.stats.tdd_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

Compiled compile_open(tdd::Manager &mgr, const CircuitSpec &spec) {
    IndexPlanner planner(mgr, spec.qubits, spec.output_bits.size());
    return compile(planner, spec, EncodeMode::Open, PlanKind::Sequential);
}

std::string to_string(PlanKind plan) { return plan == PlanKind::Sequential ? "basic" : "partitioned"; }

} // namespace dqcec
