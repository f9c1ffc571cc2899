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

// Command implementations behind the dqcec executable. Each returns the
// process exit code and writes to the given streams.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dqcec/circuit.hpp"
#include "dqcec/equivalence.hpp"

namespace dqcec::cli {

/// One result row. JSON field order: benchmark, mode, plan, verdict,
/// tdd_time, time, nodes, m_nodes, detail. Times are seconds rounded to 0.01.
struct Report {
    std::string benchmark;
    std::string mode;
    std::string plan;
    std::string verdict;
    double tdd_time = 0.0;
    double time = 0.0;
    std::size_t nodes = 0;
    std::size_t m_nodes = 0;
    std::string detail;
};

std::string to_json_line(const Report &r);
std::string format_table(const std::vector<Report> &rows);

/// 0 Equivalent, 1 NotEquivalent, 2 Inconclusive.
int exit_code(VerdictKind v);
constexpr int kExitError = 2;

struct CheckArgs {
    std::string file_a;
    std::string file_b;
    std::string mode = "m";  // m, q or full
    std::string plan = "partitioned";
    bool strict_q = false;
    std::optional<double> eps;
    bool table = false;
};
int run_check(const CheckArgs &args, std::ostream &out, std::ostream &err);

struct BenchArgs {
    std::string suite = "all";
    std::size_t max_n = 12;
    std::string plan = "partitioned";  // basic, partitioned or both
    std::size_t jobs = 1;
    bool json = true;
    bool table = true;
};
/// 0 when every row meets its expected verdict, 1 otherwise, 2 on usage
/// errors. Row failures are reported and the run continues.
int run_bench(const BenchArgs &args, std::ostream &out, std::ostream &err);

/// Canonical text of a circuit file.
int run_print(const std::string &file, std::ostream &out, std::ostream &err);

/// Benchmark circuit by name ("qft_4", "dyn_pe_3", "teleport", "bitflip_x1",
/// "state_inject_T", "identity", "S", ...).
CircuitSpec benchmark_circuit(const std::string &name);
std::vector<std::string> benchmark_circuit_names();
int run_emit(const std::string &name, std::ostream &out, std::ostream &err);

/// Graph description of the circuit's open-wire decision diagram.
int run_dot(const std::string &file, std::ostream &out, std::ostream &err);

} // namespace dqcec::cli
