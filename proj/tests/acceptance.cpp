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

// Acceptance run: one PASS/FAIL line per criterion, details on stderr.
// Usage: acceptance [criterion...]   (default: all of 1..7)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dqcec/benchmarks.hpp"
#include "dqcec/encoding.hpp"
#include "dqcec/equivalence.hpp"
#include "dqcec/oracle.hpp"
#include "support/dense.hpp"
#include "support/mutations.hpp"
#include "support/random_dqc.hpp"

namespace {

using namespace dqcec;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string summary;
};

// Problems go to stderr as they are found; the summary line goes to stdout.
void note(const std::string &msg) { std::cerr << "    " << msg << "\n"; }

// Every pair the equivalence and mutation criteria run over.
std::vector<bench::BenchmarkPair> all_pairs() {
    std::vector<bench::BenchmarkPair> pairs;
    for (std::size_t n = 2; n <= 12; ++n) pairs.push_back(bench::qft_pair(n));
    for (std::size_t n = 2; n <= 7; ++n) pairs.push_back(bench::pe_pair(n));
    for (std::optional<std::size_t> q : {std::optional<std::size_t>{}, std::optional<std::size_t>{0},
                                         std::optional<std::size_t>{1}, std::optional<std::size_t>{2}}) {
        pairs.push_back(bench::bitflip_pair({q}));
        pairs.push_back(bench::phaseflip_pair({q}));
    }
    pairs.push_back(bench::teleport_pair());
    pairs.push_back(bench::state_inject_pair("S"));
    pairs.push_back(bench::state_inject_pair("T"));
    return pairs;
}

CheckResult run(const bench::BenchmarkPair &p, Plan plan) {
    CheckOptions o;
    o.mode = p.mode;
    o.plan = plan;
    return check(p.a, p.b, o);
}

// Results of both plans on every pair, shared by criteria 1 and 5.
struct PairRuns {
    std::vector<bench::BenchmarkPair> pairs;
    std::vector<CheckResult> basic, partitioned;
};

const PairRuns &pair_runs() {
    static const PairRuns runs = [] {
        PairRuns r;
        r.pairs = all_pairs();
        for (const auto &p : r.pairs) {
            r.partitioned.push_back(run(p, Plan::Partitioned));
            r.basic.push_back(run(p, Plan::Basic));
        }
        return r;
    }();
    return runs;
}

Outcome criterion1() {
    const PairRuns &r = pair_runs();
    Outcome o;
    double slowest = 0.0;
    std::string slowest_name;
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
        for (const CheckResult *res : {&r.partitioned[i], &r.basic[i]}) {
            const std::string plan = res == &r.partitioned[i] ? "partitioned" : "basic";
            if (res->verdict.kind != VerdictKind::Equivalent) {
                o.pass = false;
                note(r.pairs[i].name + " (" + plan + "): " + to_string(res->verdict.kind) + " " + res->verdict.detail);
            }
            if (res->stats.time >= 30.0) {
                o.pass = false;
                note(r.pairs[i].name + " (" + plan + ") took " + std::to_string(res->stats.time) + " s");
            }
            if (res->stats.time > slowest) {
                slowest = res->stats.time;
                slowest_name = r.pairs[i].name + " " + plan;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu pairs x 2 plans Equivalent; slowest %s %.2f s", r.pairs.size(),
                  slowest_name.c_str(), slowest);
    o.summary = buf;
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::string counts;
    for (std::size_t n = 2; n <= 9; ++n) {
        tdd::Manager mgr;
        const std::size_t nodes = compile_open(mgr, bench::qft(n)).stats.final_nodes;
        const std::size_t want = (std::size_t{1} << (n + 1)) - 1;
        counts += (counts.empty() ? "" : ",") + std::to_string(nodes);
        if (nodes != want) {
            o.pass = false;
            note("qft_" + std::to_string(n) + ": " + std::to_string(nodes) + " nodes, table has " +
                 std::to_string(want));
        }
    }
    o.summary = "qft_2..9 nodes {" + counts + "}";
    return o;
}

VerdictKind expect_of(bool eq) { return eq ? VerdictKind::Equivalent : VerdictKind::NotEquivalent; }

Outcome criterion3() {
    const auto t0 = Clock::now();
    Outcome o;
    std::mt19937_64 rng(20260101);
    std::size_t pairs = 0, mutated = 0, agree = 0, checks = 0, equivalent = 0, literal_gaps = 0;
    for (bool q : {false, true}) {
        testing::RandomDqcOptions opt;
        opt.q_mode = q;
        for (int trial = 0; trial < 120; ++trial) {
            CircuitSpec a = testing::random_spec(rng, opt);
            const bool mutate = trial % 2 == 1;
            CircuitSpec b = mutate ? testing::mutate(rng, a) : testing::rewrite_equivalent(rng, a);
            const bool truth = q ? oracle::oracle_q_eq(a, b) : oracle::oracle_m_eq(a, b);
            ++pairs;
            mutated += mutate;
            equivalent += truth;
            for (Plan plan : {Plan::Basic, Plan::Partitioned}) {
                CheckOptions co;
                co.mode = q ? CheckMode::Q : CheckMode::M;
                co.plan = plan;
                const VerdictKind literal = check(a, b, co).verdict.kind;
                bool ok = literal == expect_of(truth);
                if (q) {
                    co.strict = true;
                    const VerdictKind strict = check(a, b, co).verdict.kind;
                    if (!ok) {
                        ++literal_gaps;
                        note("literal q disagreement, trial " + std::to_string(trial) + " plan " + to_string(plan) +
                             ": checker " + to_string(literal) + ", oracle " + (truth ? "equal" : "different"));
                    }
                    // a literal gap is tolerated only where strict mode agrees
                    ok = ok || strict == expect_of(truth);
                }
                ++checks;
                if (ok) {
                    ++agree;
                } else {
                    o.pass = false;
                    note("disagreement: mode " + std::string(q ? "q" : "m") + " trial " + std::to_string(trial) +
                         " plan " + to_string(plan));
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 300.0) o.pass = false;
    if (pairs < 200) o.pass = false;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu/%zu verdicts agree over %zu pairs (%zu mutated, %zu equivalent, %zu literal-q gaps) in %.1f s",
                  agree, checks, pairs, mutated, equivalent, literal_gaps, secs);
    o.summary = buf;
    return o;
}

Outcome criterion4() {
    Outcome o;
    const double choi_err =
        oracle::max_abs_diff(oracle::superoperator(bench::teleport()), oracle::identity_choi(1));
    const double p01 = oracle::outcome_distribution(bench::dyn_pe(2, 0.25))[oracle::outcome_index("01")];
    // the decision-diagram side of the same claims
    CheckOptions co;
    co.mode = CheckMode::Q;
    const bool tdd_teleport = check(bench::teleport(), bench::swap_teleport(), co).verdict.kind == VerdictKind::Equivalent;
    tdd::Manager mgr;
    CircuitSpec pe = bench::dyn_pe(2, 0.25);
    IndexPlanner pl(mgr, pe.qubits, pe.output_bits.size());
    Compiled c = compile(pl, pe, EncodeMode::M, PlanKind::Sequential);
    auto bits = pl.output_bit_indices();
    // output bits read c2 c1 = "01"
    const double tdd_p01 = mgr.norm(mgr.slice(mgr.slice(c.tdd, bits[0], false), bits[1], true));
    if (choi_err > 1e-10) {
        o.pass = false;
        note("teleport Choi differs from identity by " + std::to_string(choi_err));
    }
    if (std::abs(p01 - 1.0) > 1e-9 || std::abs(tdd_p01 - 1.0) > 1e-9) {
        o.pass = false;
        note("dyn_pe(2, 0.25): p(01) oracle " + std::to_string(p01) + ", diagram " + std::to_string(tdd_p01));
    }
    if (!tdd_teleport) {
        o.pass = false;
        note("checker does not find teleport q-equivalent to a swap");
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "teleport Choi error %.1e; dyn_pe(2,0.25) p(01) = %.12f (oracle), %.12f (diagram)",
                  choi_err, p01, tdd_p01);
    o.summary = buf;
    return o;
}

Outcome criterion5() {
    const PairRuns &r = pair_runs();
    Outcome o;
    std::string rows;
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
        if (r.basic[i].verdict.kind != r.partitioned[i].verdict.kind) {
            o.pass = false;
            note(r.pairs[i].name + ": plans disagree");
        }
    }
    for (std::size_t n = 8; n <= 12; ++n) {
        const std::string name = "qft_" + std::to_string(n);
        for (std::size_t i = 0; i < r.pairs.size(); ++i) {
            if (r.pairs[i].name != name) continue;
            const std::size_t part = r.partitioned[i].stats.max_nodes, basic = r.basic[i].stats.max_nodes;
            rows += (rows.empty() ? "" : ", ") + name + " " + std::to_string(part) + "/" + std::to_string(basic);
            if (!(part < basic)) {
                o.pass = false;
                note(name + ": partitioned max " + std::to_string(part) + " not below basic " + std::to_string(basic));
            }
        }
    }
    o.summary = "max nodes partitioned/basic: " + rows + "; verdicts compared on " + std::to_string(r.pairs.size()) +
                " pairs";
    return o;
}

Outcome criterion6() {
    using testing::DenseTensor;
    const auto t0 = Clock::now();
    Outcome o;
    std::mt19937_64 rng(6);
    tdd::Manager mgr;
    std::vector<tdd::Index> idx;
    for (int i = 0; i < 6; ++i)
        idx.push_back(mgr.add_index("x" + std::to_string(i), static_cast<tdd::Rank>(10 * (i + 1)),
                                    tdd::IndexKind::QuantumWire));
    auto pick = [&](std::size_t k) {
        std::vector<tdd::Index> v = idx;
        std::shuffle(v.begin(), v.end(), rng);
        v.resize(k);
        return v;
    };
    auto fail = [&](const std::string &msg) {
        o.pass = false;
        note(msg);
    };

    // canonicity: dense equality <=> identical, 500 pairs
    std::size_t canon = 0, canon_equal = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = 1 + trial % 6;
        DenseTensor d{pick(k), testing::random_values(rng, std::size_t{1} << k, trial % 3 != 0)};
        tdd::Tdd a = mgr.from_dense(d.values, d.indices);
        // second tensor: same values in another index order, or a nearby tensor
        std::vector<tdd::Index> perm = d.indices;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<tdd::Complex> other = testing::expand(d, perm);
        if (trial % 2) other[rng() % other.size()] += tdd::Complex{trial % 4 == 1 ? 1e-3 : 0.5, 0.0};
        tdd::Tdd b = mgr.from_dense(other, perm);
        const bool dense_equal = testing::max_abs_diff(mgr.to_dense(b, d.indices), d.values) < 1e-12;
        canon_equal += dense_equal;
        if (dense_equal != mgr.identical(a, b)) fail("canonicity trial " + std::to_string(trial));
        else ++canon;
    }

    // operations against the dense reference
    std::size_t ops = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        DenseTensor a{pick(1 + trial % 5), {}}, b{pick(1 + (trial / 5) % 5), {}};
        a.values = testing::random_values(rng, std::size_t{1} << a.indices.size(), trial % 2);
        b.values = testing::random_values(rng, std::size_t{1} << b.indices.size(), trial % 2);
        tdd::Tdd ta = mgr.from_dense(a.values, a.indices), tb = mgr.from_dense(b.values, b.indices);

        std::vector<tdd::Index> all = testing::union_of(a.indices, b.indices);
        std::vector<tdd::Complex> sum = testing::expand(a, all), eb = testing::expand(b, all);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += eb[i];
        worst = std::max(worst, testing::max_abs_diff(mgr.to_dense(mgr.add(ta, tb), all), sum));

        std::vector<tdd::Index> shared, out;
        for (tdd::Index x : a.indices)
            if (std::find(b.indices.begin(), b.indices.end(), x) != b.indices.end() && rng() % 3) shared.push_back(x);
        for (tdd::Index x : all)
            if (std::find(shared.begin(), shared.end(), x) == shared.end()) out.push_back(x);
        worst = std::max(worst, testing::max_abs_diff(mgr.to_dense(mgr.contract(ta, tb, shared), out),
                                                      testing::contract(a, b, out)));

        const std::size_t which = rng() % a.indices.size();
        const bool value = rng() & 1;
        std::vector<tdd::Index> rest;
        std::vector<tdd::Complex> want;
        for (std::size_t i = 0; i < a.indices.size(); ++i)
            if (i != which) rest.push_back(a.indices[i]);
        const std::size_t m = a.indices.size();
        for (std::size_t x = 0; x < a.values.size(); ++x)
            if (((x >> (m - 1 - which)) & 1U) == static_cast<std::size_t>(value)) want.push_back(a.values[x]);
        worst = std::max(worst, testing::max_abs_diff(mgr.to_dense(mgr.slice(ta, a.indices[which], value), rest), want));
        ops += 3;
    }
    if (worst > 1e-8) fail("dense mismatch " + std::to_string(worst));

    // normalized-state diagrams
    std::size_t states = 0;
    double norm_err = 0.0;
    std::vector<CircuitSpec> specs;
    for (std::size_t n = 2; n <= 8; ++n) specs.push_back(bench::qft(n, (n * 37) % (std::size_t{1} << n)));
    for (std::size_t n = 2; n <= 6; ++n) specs.push_back(bench::dyn_pe(n, bench::default_phase(n)));
    testing::RandomDqcOptions opt;
    for (int i = 0; i < 100; ++i) specs.push_back(testing::random_spec(rng, opt));
    for (const CircuitSpec &s : specs) {
        for (PlanKind plan : {PlanKind::Sequential, PlanKind::PerQubit}) {
            tdd::Manager m;
            IndexPlanner pl(m, s.qubits, s.output_bits.size());
            Compiled c = compile(pl, s, EncodeMode::M, plan);
            norm_err = std::max(norm_err, std::abs(m.norm(c.tdd) - 1.0));
            ++states;
        }
    }
    if (norm_err > 1e-9) fail("state norm off by " + std::to_string(norm_err));

    const double secs = seconds_since(t0);
    if (secs >= 120.0) fail("took " + std::to_string(secs) + " s");
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "canonicity %zu/500 (%zu equal pairs); %zu ops max error %.1e; %zu state norms max error %.1e; %.1f s",
                  canon, canon_equal, ops, worst, states, norm_err, secs);
    o.summary = buf;
    return o;
}

Outcome criterion7() {
    const auto t0 = Clock::now();
    Outcome o;
    std::size_t pairs = 0, mutants = 0, inconclusive = 0, equivalent_mutants = 0;
    std::map<testing::MutationKind, std::size_t> kinds;
    for (const auto &pair : all_pairs()) {
        ++pairs;
        // mutate the dynamic side and compare against the untouched other side
        const bool mutate_a = testing::dynamic_steps(pair.a.circuit) > testing::dynamic_steps(pair.b.circuit);
        const CircuitSpec &dyn = mutate_a ? pair.a : pair.b;
        const CircuitSpec &ref = mutate_a ? pair.b : pair.a;
        std::vector<double> ref_dist;
        if (pair.mode == CheckMode::M) ref_dist = oracle::outcome_distribution(ref);
        auto oracle_differs = [&](const CircuitSpec &m) {
            if (pair.mode == CheckMode::Q) return !oracle::oracle_q_eq(ref, m);
            auto d = oracle::outcome_distribution(m);
            double diff = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) diff = std::max(diff, std::abs(d[i] - ref_dist[i]));
            return diff > 1e-9;
        };

        const auto pair_t0 = Clock::now();
        std::size_t found = 0, tried = 0;
        for (const testing::Mutant &m : testing::interleaved_mutants(dyn, std::hash<std::string>{}(pair.name))) {
            if (found == 10) break;
            ++tried;
            if (!oracle_differs(m.spec)) {
                ++equivalent_mutants;  // semantically neutral edit, not a mutation of behaviour
                continue;
            }
            CheckOptions co;
            co.mode = pair.mode;
            const VerdictKind v = (mutate_a ? check(m.spec, ref, co) : check(ref, m.spec, co)).verdict.kind;
            if (v == VerdictKind::Inconclusive) {
                ++inconclusive;
                note(pair.name + ": inconclusive on " + m.where + " (not counted)");
                continue;
            }
            ++found;
            ++mutants;
            ++kinds[m.kind];
            if (v != VerdictKind::NotEquivalent) {
                o.pass = false;
                note(pair.name + ": checker misses " + testing::to_string(m.kind) + " at " + m.where);
            }
        }
        char line[160];
        std::snprintf(line, sizeof line, "%s: %zu candidates tried, %.1f s", pair.name.c_str(), tried,
                      seconds_since(pair_t0));
        note(line);
        if (found < 10) {
            o.pass = false;
            note(pair.name + ": only " + std::to_string(found) + " behaviour-changing mutants");
        }
    }
    char buf[300];
    std::snprintf(buf, sizeof buf,
                  "%zu pairs x 10 mutants = %zu NotEquivalent from checker and oracle (swap %zu, drop %zu, control %zu); "
                  "skipped %zu oracle-equivalent, %zu inconclusive; %.1f s",
                  pairs, mutants, kinds[testing::MutationKind::GateSwap], kinds[testing::MutationKind::DroppedCorrection],
                  kinds[testing::MutationKind::WrongControl], equivalent_mutants, inconclusive, seconds_since(t0));
    o.summary = buf;
    return o;
}

} // namespace

int main(int argc, char **argv) {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7};
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > 7) {
            std::cerr << "usage: acceptance [1-7 ...]\n";
            return 2;
        }
        selected.insert(k);
    }
    if (selected.empty())
        for (int k = 1; k <= 7; ++k) selected.insert(k);

    bool all = true;
    for (int k : selected) {
        std::cerr << "criterion " << k << ":\n";
        Outcome o;
        try {
            o = criteria[static_cast<std::size_t>(k - 1)]();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.summary << std::endl;
    }
    return all ? 0 : 1;
}
