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

#include "dqcec/equivalence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dqcec {

using tdd::Edge;
using tdd::Index;
using tdd::IndexKind;
using tdd::Node;
using tdd::Tdd;

std::string to_string(VerdictKind v) {
    switch (v) {
    case VerdictKind::Equivalent: return "Equivalent";
    case VerdictKind::NotEquivalent: return "NotEquivalent";
    case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string to_string(CheckMode m) { return m == CheckMode::M ? "m" : "q"; }
std::string to_string(Plan p) { return p == Plan::Basic ? "basic" : "partitioned"; }

double default_eps() {
    const char *env = std::getenv("DQCEC_EPS");
    if (env == nullptr || *env == '\0') return kDefaultEps;
    char *end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v >= 0.0) || !std::isfinite(v))
        throw CheckError(std::string("DQCEC_EPS is not a non-negative number: '") + env + "'");
    return v;
}

// --- m_eq ---------------------------------------------------------------------

namespace {

class MassTable {
  public:
    MassTable(const tdd::Manager &mgr, const Tdd &t, std::span<const Index> m) : mgr_(mgr) {
        for (Index x : t.indices)
            if (std::find(m.begin(), m.end(), x) == m.end()) rest_.push_back(x);
    }

    double mass(const Edge &e) {
        if (mgr_.is_zero(e.weight)) return 0.0;
        auto [it, fresh] = memo_.try_emplace(e.node, 0.0);
        if (fresh) it->second = mgr_.norm(Edge{{1.0, 0.0}, e.node}, rest_);
        return std::norm(e.weight) * it->second;
    }

    const std::vector<Index> &rest() const { return rest_; }

  private:
    const tdd::Manager &mgr_;
    std::vector<Index> rest_;
    std::unordered_map<const Node *, double> memo_;
};

std::pair<Edge, Edge> split(const Edge &e, tdd::Rank r) {
    if (e.node->is_terminal() || e.node->rank != r) return {e, e};
    return {Edge{e.weight * e.node->low.weight, e.node->low.node}, Edge{e.weight * e.node->high.weight, e.node->high.node}};
}

void check_topmost(const tdd::Manager &mgr, const Tdd &t, std::span<const Index> m) {
    tdd::Rank lowest_m = ~tdd::Rank{0};
    for (Index x : m) lowest_m = std::min(lowest_m, mgr.rank(x));
    for (Index x : t.indices)
        if (std::find(m.begin(), m.end(), x) == m.end() && mgr.rank(x) > lowest_m)
            throw CheckError("measurement indices are not on top of index '" + mgr.info(x).name + "'");
}

} // namespace

bool m_eq(const tdd::Manager &mgr, const Tdd &t1, const Tdd &t2, std::span<const Index> m, double eps,
          MWitness *witness) {
    if (t1.owner != &mgr || t2.owner != &mgr) throw CheckError("tensors belong to another manager");
    std::vector<Index> order(m.begin(), m.end());
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return mgr.rank(a) > mgr.rank(b); });
    check_topmost(mgr, t1, order);
    check_topmost(mgr, t2, order);
    MassTable mass1(mgr, t1, order), mass2(mgr, t2, order);
    const bool same_rest = mass1.rest() == mass2.rest();

    // outcome string in the caller's index order
    std::vector<std::size_t> slot(order.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        slot[k] = static_cast<std::size_t>(std::find(m.begin(), m.end(), order[k]) - m.begin());
    std::string outcome(m.size(), '0');

    std::function<bool(const Edge &, const Edge &, std::size_t)> rec = [&](const Edge &a, const Edge &b,
                                                                         std::size_t k) -> bool {
        if (same_rest && a.node == b.node && mgr.weights_equal(a.weight, b.weight)) return true;
        if (k == order.size()) {
            double p1 = mass1.mass(a), p2 = mass2.mass(b);
            if (std::abs(p1 - p2) <= eps) return true;
            if (witness != nullptr) *witness = {outcome, p1, p2};
            return false;
        }
        const tdd::Rank r = mgr.rank(order[k]);
        auto [a0, a1] = split(a, r);
        auto [b0, b1] = split(b, r);
        outcome[slot[k]] = '0';
        if (!rec(a0, b0, k + 1)) return false;
        outcome[slot[k]] = '1';
        bool ok = rec(a1, b1, k + 1);
        outcome[slot[k]] = '0';
        return ok;
    };
    return rec(t1.root, t2.root, 0);
}

// --- q_eq ---------------------------------------------------------------------

namespace {

std::vector<Leaf> peel(const tdd::Manager &mgr, const Tdd &t, std::span<const IndexKind> kinds, bool *discard_split) {
    std::vector<Leaf> out;
    if (mgr.is_zero(t.root.weight)) return out;
    std::function<void(const Edge &, const std::string &)> walk = [&](const Edge &e, const std::string &path) {
        const Node *n = e.node;
        if (n->is_terminal() || std::find(kinds.begin(), kinds.end(), mgr.info(n->index).kind) == kinds.end()) {
            out.push_back({e, path});
            return;
        }
        const bool low = !mgr.is_zero(n->low.weight), high = !mgr.is_zero(n->high.weight);
        if (discard_split != nullptr && low && high && mgr.info(n->index).kind == IndexKind::Discard)
            *discard_split = true;
        const std::string name = mgr.info(n->index).name;
        const std::string sep = path.empty() ? "" : " ";
        if (low) walk(Edge{e.weight * n->low.weight, n->low.node}, path + sep + name + "=0");
        if (high) walk(Edge{e.weight * n->high.weight, n->high.node}, path + sep + name + "=1");
    };
    walk(t.root, "");
    return out;
}

constexpr IndexKind kPeelKinds[] = {IndexKind::ClassicalOutcome, IndexKind::Discard};

} // namespace

std::vector<Leaf> get_nodes(const tdd::Manager &mgr, const Tdd &t, std::span<const IndexKind> kinds) {
    return peel(mgr, t, kinds, nullptr);
}

QResult q_eq(const tdd::Manager &mgr, const Tdd &t1, const Tdd &t2, bool strict, double eps) {
    if (t1.owner != &mgr || t2.owner != &mgr) throw CheckError("tensors belong to another manager");
    QResult r;
    auto l1 = peel(mgr, t1, kPeelKinds, &r.discard_split);
    auto l2 = peel(mgr, t2, kPeelKinds, &r.discard_split);
    if (l1.empty() || l2.empty()) {
        r.equal = l1.empty() && l2.empty();
        if (!r.equal) r.witness = l1.empty() ? "first circuit has no reachable branch" : "second circuit has no reachable branch";
        return r;
    }
    const Node *ref = l1.front().edge.node;
    for (const auto *list : {&l1, &l2}) {
        for (const Leaf &leaf : *list) {
            if (leaf.edge.node == ref) continue;
            const char *which = list == &l1 ? "first" : "second";
            r.witness = std::string("branch [") + leaf.path + "] of the " + which +
                        " circuit leaves a different state than branch [" + l1.front().path + "] of the first";
            return r;
        }
    }
    if (strict) {
        const double m1 = mgr.norm(t1), m2 = mgr.norm(t2);
        if (std::abs(m1 - m2) > eps * std::max(1.0, std::max(m1, m2))) {
            std::ostringstream os;
            os << "total branch mass differs: " << m1 << " vs " << m2;
            r.witness = os.str();
            return r;
        }
    }
    r.equal = true;
    return r;
}

// --- check --------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void require_compatible(const CircuitSpec &a, const CircuitSpec &b, CheckMode mode) {
    if (mode == CheckMode::M) {
        if (!a.inputs.empty() || !b.inputs.empty()) throw CheckError("m-equivalence needs every input fixed");
        if (a.output_bits.empty() || b.output_bits.empty()) throw CheckError("m-equivalence needs output bits");
        if (a.output_bits.size() != b.output_bits.size())
            throw CheckError("the circuits have different numbers of output bits");
    } else {
        if (a.inputs != b.inputs) throw CheckError("the circuits have different principal inputs");
        if (a.outputs != b.outputs) throw CheckError("the circuits have different principal outputs");
    }
}

class Checker {
  public:
    Checker(const CircuitSpec &a, const CircuitSpec &b, const CheckOptions &opt)
        : a_(a), b_(b), opt_(opt), planner_(IndexPlanner::for_pair(mgr_, a, b)) {}

    CheckResult run() {
        auto t0 = Clock::now();
        CheckResult r = opt_.plan == Plan::Basic ? basic() : partitioned();
        r.stats.time = seconds_since(t0);
        return r;
    }

  private:
    EncodeMode encode_mode() const { return opt_.mode == CheckMode::M ? EncodeMode::M : EncodeMode::Q; }

    Verdict decide(const Tdd &ta, const Tdd &tb) {
        if (opt_.mode == CheckMode::M) {
            MWitness w;
            auto m = planner_.output_bit_indices();
            if (m_eq(mgr_, ta, tb, m, opt_.eps, &w)) return Verdict::equivalent();
            std::ostringstream os;
            os << "outcome " << w.outcome << ": probability " << w.p1 << " vs " << w.p2;
            return Verdict::not_equivalent(os.str());
        }
        QResult q = q_eq(mgr_, ta, tb, opt_.strict, opt_.eps);
        if (q.equal) return Verdict::equivalent();
        if (q.discard_split)
            return Verdict::inconclusive("output state is mixed over discarded qubits; comparing it needs a partial trace");
        return Verdict::not_equivalent(q.witness);
    }

    CheckResult basic() {
        CheckResult r;
        Compiled ca = compile(planner_, a_, encode_mode(), PlanKind::Sequential, opt_.max_open);
        Compiled cb = compile(planner_, b_, encode_mode(), PlanKind::Sequential, opt_.max_open);
        r.stats.tdd_time = ca.stats.tdd_time + cb.stats.tdd_time;
        r.stats.nodes = ca.stats.final_nodes;
        r.stats.max_nodes = std::max(ca.stats.max_nodes, cb.stats.max_nodes);
        r.verdict = decide(ca.tdd, cb.tdd);
        return r;
    }

    bool outcome_independent(const Tdd &t) {
        auto leaves = get_nodes(mgr_, t, kPeelKinds);
        for (const Leaf &l : leaves)
            if (l.edge.node != leaves.front().edge.node) return false;
        return true;
    }

    CheckResult partitioned() {
        CheckResult r;
        Compiled ca = compile(planner_, a_, encode_mode(), PlanKind::PerQubit, opt_.max_open, false);
        Compiled cb = compile(planner_, b_, encode_mode(), PlanKind::PerQubit, opt_.max_open, false);
        r.stats.tdd_time = ca.stats.tdd_time + cb.stats.tdd_time;
        r.stats.max_nodes = std::max(ca.stats.max_nodes, cb.stats.max_nodes);

        auto t0 = Clock::now();
        std::vector<Tdd> keep_a, keep_b, drop_a, drop_b;
        for (std::size_t g = 0; g < ca.groups.size(); ++g) {
            const Tdd &ga = ca.groups[g], &gb = cb.groups[g];
            bool discard = mgr_.identical(ga, gb) && (opt_.mode == CheckMode::M || outcome_independent(ga));
            if (discard) {
                ++r.stats.discarded_partitions;
                drop_a.push_back(ga);
                drop_b.push_back(gb);
            } else {
                keep_a.push_back(ga);
                keep_b.push_back(gb);
            }
        }
        ContractStats cs;
        cs.max_open = opt_.max_open;
        Tdd ra = contract_sequence(mgr_, keep_a, cs);
        Tdd rb = contract_sequence(mgr_, keep_b, cs);
        r.stats.nodes = mgr_.node_count(ra);
        // in q-mode equal tensors must also be outcome independent
        const bool settled = keep_a.empty() || (mgr_.identical(ra, rb) &&
                                                (opt_.mode == CheckMode::M || outcome_independent(ra)));
        if (settled) {
            r.stats.tdd_time += seconds_since(t0);
            r.stats.max_nodes = std::max(r.stats.max_nodes, cs.max_nodes);
            r.verdict = Verdict::equivalent();
            return r;
        }
        // undischarged parts differ: bring the discarded ones back in
        std::vector<Tdd> all_a = {ra}, all_b = {rb};
        all_a.insert(all_a.end(), drop_a.begin(), drop_a.end());
        all_b.insert(all_b.end(), drop_b.begin(), drop_b.end());
        Tdd ta = contract_sequence(mgr_, all_a, cs);
        Tdd tb = contract_sequence(mgr_, all_b, cs);
        r.stats.tdd_time += seconds_since(t0);
        r.stats.max_nodes = std::max(r.stats.max_nodes, cs.max_nodes);
        r.stats.nodes = mgr_.node_count(ta);
        r.verdict = decide(ta, tb);
        if (r.verdict.kind != VerdictKind::NotEquivalent) return r;

        CheckResult again = basic();
        again.stats.fallback = true;
        again.stats.tdd_time += r.stats.tdd_time;
        again.stats.max_nodes = std::max(again.stats.max_nodes, r.stats.max_nodes);
        again.stats.discarded_partitions = r.stats.discarded_partitions;
        return again;
    }

    const CircuitSpec &a_;
    const CircuitSpec &b_;
    CheckOptions opt_;
    tdd::Manager mgr_;
    IndexPlanner planner_;
};

} // namespace

CheckResult check(const CircuitSpec &a, const CircuitSpec &b, const CheckOptions &options) {
    require_valid(a);
    require_valid(b);
    require_compatible(a, b, options.mode);
    return Checker(a, b, options).run();
}

} // namespace dqcec
