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

#include "dqcec/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dqcec/benchmarks.hpp"
#include "dqcec/encoding.hpp"
#include "dqcec/oracle.hpp"
#include "dqcec/text_format.hpp"

namespace dqcec::cli {

namespace {

double centi(double seconds) { return std::round(seconds * 100.0) / 100.0; }

std::size_t open_nodes(const CircuitSpec &spec) {
    tdd::Manager mgr;
    return compile_open(mgr, spec).stats.final_nodes;
}

std::optional<Plan> parse_plan(const std::string &s) {
    if (s == "basic") return Plan::Basic;
    if (s == "partitioned") return Plan::Partitioned;
    return std::nullopt;
}

bool has_suffix_number(const std::string &name, const std::string &prefix, std::size_t &n) {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return false;
    const std::string tail = name.substr(prefix.size());
    if (tail.find_first_not_of("0123456789") != std::string::npos || tail.size() > 3) return false;
    n = std::stoul(tail);
    return true;
}

} // namespace

std::string to_json_line(const Report &r) {
    nlohmann::ordered_json j;
    j["benchmark"] = r.benchmark;
    j["mode"] = r.mode;
    j["plan"] = r.plan;
    j["verdict"] = r.verdict;
    j["tdd_time"] = centi(r.tdd_time);
    j["time"] = centi(r.time);
    j["nodes"] = r.nodes;
    j["m_nodes"] = r.m_nodes;
    j["detail"] = r.detail;
    return j.dump();
}

std::string format_table(const std::vector<Report> &rows) {
    std::size_t w = 9;
    for (const Report &r : rows) w = std::max(w, r.benchmark.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(w)) << "benchmark" << "  mode  " << std::setw(12) << "plan"
       << std::setw(14) << "verdict" << std::right << std::setw(9) << "tdd_time" << std::setw(9) << "time"
       << std::setw(9) << "nodes" << std::setw(9) << "m_nodes" << "\n";
    os << std::fixed << std::setprecision(2);
    for (const Report &r : rows)
        os << std::left << std::setw(static_cast<int>(w)) << r.benchmark << "  " << std::setw(4) << r.mode << "  "
           << std::setw(12) << r.plan << std::setw(14) << r.verdict << std::right << std::setw(9) << centi(r.tdd_time)
           << std::setw(9) << centi(r.time) << std::setw(9) << r.nodes << std::setw(9) << r.m_nodes << "\n";
    return os.str();
}

int exit_code(VerdictKind v) {
    switch (v) {
    case VerdictKind::Equivalent: return 0;
    case VerdictKind::NotEquivalent: return 1;
    case VerdictKind::Inconclusive: return 2;
    }
    return kExitError;
}

int run_check(const CheckArgs &args, std::ostream &out, std::ostream &err) {
    try {
        CircuitSpec a = load_circuit(args.file_a);
        CircuitSpec b = load_circuit(args.file_b);
        Report r;
        r.benchmark = (a.name.empty() ? args.file_a : a.name) + " vs " + (b.name.empty() ? args.file_b : b.name);
        r.mode = args.mode;
        VerdictKind kind;
        if (args.mode == "full") {
            r.plan = "oracle";
            auto t0 = std::chrono::steady_clock::now();
            const bool eq = oracle::oracle_full_eq(a, b);
            r.time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            kind = eq ? VerdictKind::Equivalent : VerdictKind::NotEquivalent;
        } else {
            CheckOptions o;
            if (args.mode == "m") o.mode = CheckMode::M;
            else if (args.mode == "q") o.mode = CheckMode::Q;
            else throw CheckError("unknown mode '" + args.mode + "' (m, q or full)");
            auto plan = parse_plan(args.plan);
            if (!plan) throw CheckError("unknown plan '" + args.plan + "' (basic or partitioned)");
            o.plan = *plan;
            o.strict = args.strict_q;
            o.eps = args.eps.value_or(default_eps());
            r.plan = args.plan;
            CheckResult res = check(a, b, o);
            kind = res.verdict.kind;
            r.detail = res.verdict.detail;
            r.tdd_time = res.stats.tdd_time;
            r.time = res.stats.time;
            r.m_nodes = res.stats.max_nodes;
        }
        r.verdict = to_string(kind);
        r.nodes = open_nodes(a);
        out << to_json_line(r) << "\n";
        if (args.table) out << format_table({r});
        return exit_code(kind);
    } catch (const std::exception &e) {
        err << "dqcec check: " << e.what() << "\n";
        return kExitError;
    }
}

int run_bench(const BenchArgs &args, std::ostream &out, std::ostream &err) {
    std::vector<bench::BenchmarkPair> pairs;
    std::vector<Plan> plans;
    try {
        if (args.plan == "both") plans = {Plan::Basic, Plan::Partitioned};
        else if (auto p = parse_plan(args.plan)) plans = {*p};
        else throw bench::BenchError("unknown plan '" + args.plan + "' (basic, partitioned or both)");
        pairs = bench::suite(args.suite, args.max_n);
    } catch (const std::exception &e) {
        err << "dqcec bench: " << e.what() << "\n";
        return kExitError;
    }
    if (pairs.empty()) {
        err << "dqcec bench: suite '" << args.suite << "' with --max-n " << args.max_n << " selects no benchmarks\n";
        return kExitError;
    }

    struct Job {
        const bench::BenchmarkPair *pair;
        Plan plan;
    };
    std::vector<Job> jobs;
    for (const auto &p : pairs)
        for (Plan plan : plans) jobs.push_back({&p, plan});
    std::vector<Report> rows(jobs.size());
    std::vector<char> ok(jobs.size(), 0);  // not vector<bool>: rows are written concurrently

    // Each row owns its managers, so rows are independent.
    auto run_row = [&](std::size_t i) {
        const Job &job = jobs[i];
        Report &r = rows[i];
        r.benchmark = job.pair->name;
        r.mode = to_string(job.pair->mode);
        r.plan = to_string(job.plan);
        try {
            CheckOptions o;
            o.mode = job.pair->mode;
            o.plan = job.plan;
            o.eps = default_eps();
            CheckResult res = check(job.pair->a, job.pair->b, o);
            r.verdict = to_string(res.verdict.kind);
            r.detail = res.verdict.detail;
            r.tdd_time = res.stats.tdd_time;
            r.time = res.stats.time;
            r.m_nodes = res.stats.max_nodes;
            r.nodes = open_nodes(job.pair->a);
            ok[i] = res.verdict.kind == job.pair->expected;
        } catch (const std::exception &e) {
            r.verdict = "error";
            r.detail = e.what();
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(args.jobs, jobs.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < jobs.size(); i = next++) run_row(i);
            });
        for (auto &t : pool) t.join();
    }

    if (args.json)
        for (const Report &r : rows) out << to_json_line(r) << "\n";
    if (args.table) out << format_table(rows);
    bool all_ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (ok[i]) continue;
        all_ok = false;
        err << "dqcec bench: " << rows[i].benchmark << " (" << rows[i].plan << "): " << rows[i].verdict
            << (rows[i].detail.empty() ? "" : ": " + rows[i].detail) << "\n";
    }
    return all_ok ? 0 : 1;
}

int run_print(const std::string &file, std::ostream &out, std::ostream &err) {
    try {
        out << print_circuit(load_circuit(file));
        return 0;
    } catch (const std::exception &e) {
        err << "dqcec print: " << e.what() << "\n";
        return kExitError;
    }
}

CircuitSpec benchmark_circuit(const std::string &name) {
    std::size_t n = 0;
    if (has_suffix_number(name, "qft_", n)) return bench::qft(n);
    if (has_suffix_number(name, "dyn_qft_", n)) return bench::dyn_qft(n);
    if (has_suffix_number(name, "pe_", n)) return bench::pe(n, bench::default_phase(n));
    if (has_suffix_number(name, "dyn_pe_", n)) return bench::dyn_pe(n, bench::default_phase(n));
    if (name == "teleport") return bench::teleport();
    if (name == "swap_teleport") return bench::swap_teleport();
    if (name == "identity") return bench::logical_identity();
    if (name == "S" || name == "T") return bench::bare_gate(name);
    if (name == "state_inject_S" || name == "state_inject_T") return bench::state_inject(name.substr(13));
    for (bool phase : {false, true}) {
        const std::string base = phase ? "phaseflip" : "bitflip";
        bench::CodeError e;
        if (name == base) return phase ? bench::phaseflip_code(e) : bench::bitflip_code(e);
        if (has_suffix_number(name, base + "_x", n)) {
            e.qubit = n;
            return phase ? bench::phaseflip_code(e) : bench::bitflip_code(e);
        }
    }
    throw bench::BenchError("unknown benchmark circuit '" + name + "'");
}

std::vector<std::string> benchmark_circuit_names() {
    return {"qft_N",    "dyn_qft_N", "pe_N",        "dyn_pe_N",       "teleport",       "swap_teleport", "identity",
            "S",        "T",         "bitflip",     "bitflip_xK",     "phaseflip",      "phaseflip_xK",  "state_inject_S",
            "state_inject_T"};
}

int run_emit(const std::string &name, std::ostream &out, std::ostream &err) {
    try {
        out << print_circuit(benchmark_circuit(name));
        return 0;
    } catch (const std::exception &e) {
        err << "dqcec emit: " << e.what() << "\n";
        return kExitError;
    }
}

int run_dot(const std::string &file, std::ostream &out, std::ostream &err) {
    try {
        CircuitSpec spec = load_circuit(file);
        tdd::Manager mgr;
        Compiled c = compile_open(mgr, spec);
        out << mgr.to_dot(c.tdd);
        return 0;
    } catch (const std::exception &e) {
        err << "dqcec dot: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace dqcec::cli
