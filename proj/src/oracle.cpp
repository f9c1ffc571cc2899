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

#include "dqcec/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace dqcec::oracle {

namespace {

struct Register {
    const std::vector<QubitId> &qubits;
    std::size_t n() const { return qubits.size(); }
    std::size_t bit(const QubitId &q) const {
        auto it = std::find(qubits.begin(), qubits.end(), q);
        if (it == qubits.end()) throw OracleError("qubit '" + q + "' not in register");
        return n() - 1 - static_cast<std::size_t>(it - qubits.begin());
    }
};

// rows of m <- G applied on the listed qubit bits
void apply_gate(Eigen::MatrixXcd &m, const Eigen::MatrixXcd &g, const std::vector<std::size_t> &bits) {
    const std::size_t k = bits.size();
    // one- and two-qubit gates: in-place butterflies, column by column
    if (k == 1 || k == 2) {
        const std::size_t dim = static_cast<std::size_t>(m.rows());
        const std::size_t s0 = std::size_t{1} << bits[0];
        const std::size_t s1 = k == 2 ? std::size_t{1} << bits[1] : 0;
        const std::size_t mask = s0 | s1;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::complex<double> *col = m.data() + c * m.rows();
            for (std::size_t base = 0; base < dim; ++base) {
                if (base & mask) continue;
                if (k == 1) {
                    const auto a0 = col[base], a1 = col[base | s0];
                    col[base] = g(0, 0) * a0 + g(0, 1) * a1;
                    col[base | s0] = g(1, 0) * a0 + g(1, 1) * a1;
                } else {
                    const std::size_t r[4] = {base, base | s1, base | s0, base | s0 | s1};
                    const std::complex<double> a[4] = {col[r[0]], col[r[1]], col[r[2]], col[r[3]]};
                    for (Eigen::Index i = 0; i < 4; ++i)
                        col[r[i]] = g(i, 0) * a[0] + g(i, 1) * a[1] + g(i, 2) * a[2] + g(i, 3) * a[3];
                }
            }
        }
        return;
    }
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    std::size_t mask = 0;
    for (std::size_t b : bits) mask |= std::size_t{1} << b;
    std::vector<std::size_t> rows(std::size_t{1} << k);
    Eigen::MatrixXcd block(rows.size(), m.cols());
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & mask) continue;
        for (std::size_t a = 0; a < rows.size(); ++a) {
            std::size_t r = base;
            for (std::size_t j = 0; j < k; ++j)
                if ((a >> (k - 1 - j)) & 1U) r |= std::size_t{1} << bits[j];
            rows[a] = r;
            block.row(static_cast<Eigen::Index>(a)) = m.row(static_cast<Eigen::Index>(r));
        }
        Eigen::MatrixXcd out = g * block;
        for (std::size_t a = 0; a < rows.size(); ++a)
            m.row(static_cast<Eigen::Index>(rows[a])) = out.row(static_cast<Eigen::Index>(a));
    }
}

// A branch during simulation. Qubits that were measured and not touched since
// are stored as fixed bits; op keeps only the rows consistent with them, so a
// branch that measured k idle qubits holds 2^(n-k) rows instead of 2^n.
struct Work {
    OutcomeRecord record;
    Eigen::MatrixXcd op;
    std::size_t fixed_mask = 0;
    std::size_t fixed_vals = 0;
};

using WorkSet = std::vector<Work>;

// row position of register bit p once the fixed bits are removed
std::size_t compact_pos(std::size_t mask, std::size_t p) {
    return p - static_cast<std::size_t>(__builtin_popcountll(mask & ((std::size_t{1} << p) - 1)));
}

void unfix(Work &w, std::size_t p) {
    const std::size_t bit = std::size_t{1} << p;
    if (!(w.fixed_mask & bit)) return;
    const std::size_t v = (w.fixed_vals & bit) ? 1 : 0;
    w.fixed_mask &= ~bit;
    w.fixed_vals &= ~bit;
    const std::size_t c = compact_pos(w.fixed_mask, p);
    const std::size_t low = (std::size_t{1} << c) - 1;
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(w.op.rows() * 2, w.op.cols());
    for (Eigen::Index r = 0; r < w.op.rows(); ++r) {
        const auto ur = static_cast<std::size_t>(r);
        const std::size_t nr = ((ur & ~low) << 1) | (v << c) | (ur & low);
        next.row(static_cast<Eigen::Index>(nr)) = w.op.row(r);
    }
    w.op = std::move(next);
}

// Keeps the rows where register bit p equals `want`; false when none remain.
bool fix(Work &w, std::size_t p, bool want) {
    const std::size_t bit = std::size_t{1} << p;
    if (w.fixed_mask & bit) return ((w.fixed_vals & bit) != 0) == want;
    const std::size_t c = compact_pos(w.fixed_mask, p);
    const std::size_t low = (std::size_t{1} << c) - 1;
    Eigen::MatrixXcd next(w.op.rows() / 2, w.op.cols());
    for (Eigen::Index r = 0; r < next.rows(); ++r) {
        const auto ur = static_cast<std::size_t>(r);
        const std::size_t src = ((ur & ~low) << 1) | (static_cast<std::size_t>(want) << c) | (ur & low);
        next.row(r) = w.op.row(static_cast<Eigen::Index>(src));
    }
    w.op = std::move(next);
    w.fixed_mask |= bit;
    if (want) w.fixed_vals |= bit;
    return true;
}

void apply_to(Work &w, const Eigen::MatrixXcd &u, const std::vector<std::size_t> &bits) {
    for (std::size_t b : bits) unfix(w, b);
    std::vector<std::size_t> cbits;
    for (std::size_t b : bits) cbits.push_back(compact_pos(w.fixed_mask, b));
    apply_gate(w.op, u, cbits);
}

Eigen::MatrixXcd expanded(Work w) {
    for (std::size_t p = 0; w.fixed_mask != 0; ++p) unfix(w, p);
    return std::move(w.op);
}

bool is_zero(const Eigen::MatrixXcd &m) { return m.size() == 0 || m.cwiseAbs().maxCoeff() < 1e-14; }

struct Runner {
    Register reg;
    const Limits &limits;

    std::vector<std::size_t> bits_of(const std::vector<QubitId> &qs) const {
        std::vector<std::size_t> out;
        for (const QubitId &q : qs) out.push_back(reg.bit(q));
        return out;
    }

    void guard(const WorkSet &e) const {
        if (e.size() > limits.max_members) throw OracleError("ensemble exceeds the member limit");
        std::size_t entries = 0;
        for (const Work &w : e) entries += static_cast<std::size_t>(w.op.size());
        if (entries > limits.max_entries) throw OracleError("ensemble exceeds the dense size limit");
    }

    WorkSet measure(WorkSet in, const MeasureStep &m) const {
        auto bits = bits_of(m.qubits);
        const std::size_t k = bits.size();
        WorkSet out;
        for (Work &mem : in) {
            for (std::size_t j = 0; j < (std::size_t{1} << k); ++j) {
                Work next = mem;
                bool alive = true;
                for (std::size_t t = 0; t < k && alive; ++t) alive = fix(next, bits[t], (j >> (k - 1 - t)) & 1U);
                if (!alive || is_zero(next.op)) continue;
                for (std::size_t t = 0; t < m.bits.size(); ++t)
                    next.record.emplace_back(m.bits[t], ((j >> (m.bits.size() - 1 - t)) & 1U) != 0);
                out.push_back(std::move(next));
            }
        }
        guard(out);
        return out;
    }

    WorkSet run(const DynCircuit &c, WorkSet e) const {
        for (const Step &s : c.steps) {
            if (const auto *g = std::get_if<Gate>(&s)) {
                auto bits = bits_of(g->qubits);
                Eigen::MatrixXcd u = g->matrix();
                for (Work &m : e) apply_to(m, u, bits);
                guard(e);
            } else if (const auto *ms = std::get_if<MeasureStep>(&s)) {
                e = measure(std::move(e), *ms);
            } else if (const auto *cg = std::get_if<ClassicalGate>(&s)) {
                auto bits = bits_of(cg->gate.qubits);
                Eigen::MatrixXcd u = cg->gate.matrix();
                for (Work &m : e) {
                    std::uint64_t x = 0;
                    for (const BitId &b : cg->bits) x = (x << 1) | (bit_value(m.record, b) ? 1U : 0U);
                    if (cg->func.eval(x) == cg->value) apply_to(m, u, bits);
                }
                guard(e);
            } else {
                const auto &b = std::get<BranchStep>(s);
                WorkSet measured = measure(std::move(e), b.measure);
                WorkSet next;
                for (Work &m : measured) {
                    std::uint64_t j = 0;
                    for (const BitId &bit : b.measure.bits) j = (j << 1) | (bit_value(m.record, bit) ? 1U : 0U);
                    std::uint32_t i = b.dispatch.eval(j);
                    WorkSet sub = run(b.branches.at(i), WorkSet{std::move(m)});
                    for (Work &x : sub) next.push_back(std::move(x));
                    guard(next);
                }
                e = std::move(next);
            }
        }
        return e;
    }

    Ensemble finish(WorkSet e) const {
        const std::size_t full = std::size_t{1} << reg.n();
        if (!e.empty() && e.size() * full * static_cast<std::size_t>(e[0].op.cols()) > limits.max_entries)
            throw OracleError("ensemble exceeds the dense size limit");
        Ensemble out;
        out.reserve(e.size());
        for (Work &w : e) out.push_back(Member{std::move(w.record), expanded(std::move(w))});
        return out;
    }
};

Eigen::MatrixXcd input_embedding(const CircuitSpec &spec) {
    const std::size_t n = spec.qubits.size();
    const std::size_t k = spec.inputs.size();
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n),
                                                 static_cast<Eigen::Index>(std::size_t{1} << k));
    for (std::size_t a = 0; a < (std::size_t{1} << k); ++a) {
        std::vector<std::complex<double>> col{1.0};
        for (const QubitId &q : spec.qubits) {
            std::array<std::complex<double>, 2> amp;
            auto pos = std::find(spec.inputs.begin(), spec.inputs.end(), q);
            if (pos != spec.inputs.end()) {
                std::size_t j = static_cast<std::size_t>(pos - spec.inputs.begin());
                bool bit = (a >> (k - 1 - j)) & 1U;
                amp = {bit ? 0.0 : 1.0, bit ? 1.0 : 0.0};
            } else {
                const InitState *st = spec.init_of(q);
                if (st == nullptr) throw OracleError("qubit '" + q + "' has no input state");
                amp = st->amplitudes();
            }
            std::vector<std::complex<double>> next(col.size() * 2);
            for (std::size_t x = 0; x < col.size(); ++x) {
                next[2 * x] = col[x] * amp[0];
                next[2 * x + 1] = col[x] * amp[1];
            }
            col = std::move(next);
        }
        for (std::size_t x = 0; x < col.size(); ++x) v(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) = col[x];
    }
    return v;
}

void check_size(const CircuitSpec &spec, const Limits &limits) {
    if (spec.qubits.size() > limits.max_qubits) throw OracleError("too many qubits for the dense oracle");
}

std::size_t record_outputs(const CircuitSpec &spec, const OutcomeRecord &r) {
    std::size_t s = 0;
    for (const BitId &b : spec.output_bits) s = (s << 1) | (bit_value(r, b) ? 1U : 0U);
    return s;
}

} // namespace

bool bit_value(const OutcomeRecord &record, const BitId &bit) {
    for (const auto &[name, v] : record)
        if (name == bit) return v;
    return false;
}

Eigen::MatrixXcd embed(const Gate &g, const std::vector<QubitId> &qubits) {
    Register reg{qubits};
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << reg.n());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    std::vector<std::size_t> bits;
    for (const QubitId &q : g.qubits) bits.push_back(reg.bit(q));
    apply_gate(m, g.matrix(), bits);
    return m;
}

Ensemble semantics(const DynCircuit &c, const std::vector<QubitId> &qubits, const Limits &limits) {
    if (qubits.size() > limits.max_qubits) throw OracleError("too many qubits for the dense oracle");
    Runner runner{{qubits}, limits};
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits.size());
    WorkSet start{Work{{}, Eigen::MatrixXcd::Identity(dim, dim)}};
    runner.guard(start);
    return runner.finish(runner.run(c, std::move(start)));
}

namespace {

WorkSet run_compact(const CircuitSpec &spec, const Limits &limits) {
    check_size(spec, limits);
    Runner runner{{spec.qubits}, limits};
    WorkSet start{Work{{}, input_embedding(spec)}};
    runner.guard(start);
    return runner.run(spec.circuit, std::move(start));
}

} // namespace

Ensemble run_spec(const CircuitSpec &spec, const Limits &limits) {
    Runner runner{{spec.qubits}, limits};
    return runner.finish(run_compact(spec, limits));
}

Eigen::MatrixXcd branch_choi(const CircuitSpec &spec, const Eigen::MatrixXcd &k) {
    const std::size_t kin = spec.inputs.size();
    const std::size_t kout = spec.outputs.size();
    Register reg{spec.qubits};
    std::vector<std::size_t> out_bits;
    for (const QubitId &q : spec.outputs) out_bits.push_back(reg.bit(q));
    std::vector<std::size_t> disc_bits;
    for (const QubitId &q : spec.qubits)
        if (std::find(spec.outputs.begin(), spec.outputs.end(), q) == spec.outputs.end()) disc_bits.push_back(reg.bit(q));
    const std::size_t nd = disc_bits.size();

    const auto rows = static_cast<Eigen::Index>(std::size_t{1} << (kin + kout));
    const auto cols = static_cast<Eigen::Index>(std::size_t{1} << nd);
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(rows, cols);
    for (std::size_t a = 0; a < (std::size_t{1} << kin); ++a) {
        for (std::size_t i = 0; i < (std::size_t{1} << kout); ++i) {
            for (std::size_t e = 0; e < (std::size_t{1} << nd); ++e) {
                std::size_t full = 0;
                for (std::size_t j = 0; j < kout; ++j)
                    if ((i >> (kout - 1 - j)) & 1U) full |= std::size_t{1} << out_bits[j];
                for (std::size_t j = 0; j < nd; ++j)
                    if ((e >> (nd - 1 - j)) & 1U) full |= std::size_t{1} << disc_bits[j];
                w(static_cast<Eigen::Index>((a << kout) | i), static_cast<Eigen::Index>(e)) =
                    k(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(a));
            }
        }
    }
    return w * w.adjoint();
}

Eigen::MatrixXcd superoperator(const CircuitSpec &spec, const Limits &limits) {
    Ensemble e = run_spec(spec, limits);
    const auto block = static_cast<Eigen::Index>(std::size_t{1} << (spec.inputs.size() + spec.outputs.size()));
    const std::size_t classes = std::size_t{1} << spec.output_bits.size();
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(block * static_cast<Eigen::Index>(classes),
                                                block * static_cast<Eigen::Index>(classes));
    for (const Member &m : e) {
        auto s = static_cast<Eigen::Index>(record_outputs(spec, m.record));
        j.block(s * block, s * block, block, block) += branch_choi(spec, m.op);
    }
    return j;
}

Eigen::MatrixXcd identity_choi(std::size_t qubits) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << qubits);
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) j(a * d + a, b * d + b) = 1.0;
    return j;
}

std::vector<double> outcome_distribution(const CircuitSpec &spec, const Limits &limits) {
    if (!spec.inputs.empty()) throw OracleError("outcome distribution needs every input fixed");
    // fixed rows carry no amplitude, so the compact form gives the same norms
    WorkSet e = run_compact(spec, limits);
    std::vector<double> p(std::size_t{1} << spec.output_bits.size(), 0.0);
    for (const Work &m : e) p[record_outputs(spec, m.record)] += m.op.squaredNorm();
    return p;
}

std::size_t outcome_index(const std::string &bits) {
    std::size_t s = 0;
    for (char c : bits) s = (s << 1) | (c == '1' ? 1U : 0U);
    return s;
}

double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool oracle_m_eq(const CircuitSpec &a, const CircuitSpec &b, double tol, const Limits &limits) {
    if (a.output_bits.size() != b.output_bits.size()) return false;
    auto pa = outcome_distribution(a, limits);
    auto pb = outcome_distribution(b, limits);
    for (std::size_t i = 0; i < pa.size(); ++i)
        if (std::abs(pa[i] - pb[i]) > tol) return false;
    return true;
}

namespace {

// Normalised Choi matrices of the reachable branches.
std::vector<Eigen::MatrixXcd> normalised_branches(const CircuitSpec &spec, const Limits &limits) {
    Ensemble e = run_spec(spec, limits);
    const std::size_t kin = spec.inputs.size();
    const std::size_t kout = spec.outputs.size();
    std::vector<Eigen::MatrixXcd> out;
    for (const Member &m : e) {
        Eigen::MatrixXcd j = branch_choi(spec, m.op);
        double best = 0.0;
        for (std::size_t a = 0; a < (std::size_t{1} << kin); ++a) {
            double tr = 0.0;
            for (std::size_t i = 0; i < (std::size_t{1} << kout); ++i) {
                auto r = static_cast<Eigen::Index>((a << kout) | i);
                tr += j(r, r).real();
            }
            best = std::max(best, tr);
        }
        if (best < 1e-12) continue;
        out.push_back(j * (std::ldexp(1.0, static_cast<int>(kin)) / j.trace().real()));
    }
    return out;
}

} // namespace

bool oracle_q_eq(const CircuitSpec &a, const CircuitSpec &b, double tol, const Limits &limits) {
    if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size()) return false;
    auto ja = normalised_branches(a, limits);
    auto jb = normalised_branches(b, limits);
    if (ja.empty() || jb.empty()) return ja.empty() && jb.empty();
    const Eigen::MatrixXcd &ref = ja.front();
    for (const auto *list : {&ja, &jb})
        for (const Eigen::MatrixXcd &j : *list)
            if (max_abs_diff(j, ref) > tol) return false;
    return true;
}

bool oracle_full_eq(const CircuitSpec &a, const CircuitSpec &b, double tol, const Limits &limits) {
    if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size() ||
        a.output_bits.size() != b.output_bits.size())
        return false;
    return max_abs_diff(superoperator(a, limits), superoperator(b, limits)) <= tol;
}

} // namespace dqcec::oracle
