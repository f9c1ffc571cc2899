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

#include <iostream>

#include <CLI11.hpp>

#include "dqcec/cli.hpp"

int main(int argc, char **argv) {
    using namespace dqcec::cli;
    CLI::App app{"Equivalence checking of dynamic quantum circuits with tensor decision diagrams"};
    app.require_subcommand(1);

    CheckArgs check;
    double eps = 0.0;
    auto *c = app.add_subcommand("check", "Compare two circuit files; exit 0 equivalent, 1 not, 2 error or inconclusive");
    c->add_option("file_a", check.file_a, "First circuit (its open diagram gives the nodes column)")->required();
    c->add_option("file_b", check.file_b, "Second circuit")->required();
    c->add_option("--mode", check.mode, "m: output distributions, q: output states, full: dense oracle")
        ->check(CLI::IsMember({"m", "q", "full"}));
    c->add_option("--plan", check.plan)->check(CLI::IsMember({"basic", "partitioned"}));
    c->add_flag("--strict-q", check.strict_q, "Also compare branch probabilities in q mode");
    auto *eps_opt = c->add_option("--eps", eps, "Probability tolerance (default: DQCEC_EPS or 1e-10)")
                        ->check(CLI::NonNegativeNumber);
    c->add_flag("--table", check.table, "Also print a human-readable table");

    BenchArgs bench;
    bool no_table = false, no_json = false;
    auto *b = app.add_subcommand("bench", "Run a benchmark suite; exit 0 when every row meets its expected verdict");
    b->add_option("--suite", bench.suite)->check(CLI::IsMember({"qft", "pe", "qec", "all"}));
    b->add_option("--max-n", bench.max_n, "Largest qft / pe size")->check(CLI::Range(0, 16));
    b->add_option("--plan", bench.plan)->check(CLI::IsMember({"basic", "partitioned", "both"}));
    b->add_option("--jobs,-j", bench.jobs, "Worker threads")->check(CLI::Range(1, 256));
    b->add_flag("--no-table", no_table, "Only emit JSON lines");
    b->add_flag("--no-json", no_json, "Only print the table");

    std::string file;
    auto *p = app.add_subcommand("print", "Print a circuit file in canonical form");
    p->add_option("file", file)->required();

    std::string name;
    auto *e = app.add_subcommand("emit", "Print a benchmark circuit as text");
    e->add_option("name", name, "qft_N, dyn_qft_N, pe_N, dyn_pe_N, teleport, swap_teleport, identity, S, T, "
                                "bitflip[_xK], phaseflip[_xK], state_inject_S, state_inject_T")
        ->required();

    auto *d = app.add_subcommand("dot", "Graphviz text of a circuit's open-wire diagram");
    d->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : kExitError;
    }

    if (c->parsed()) {
        if (eps_opt->count() > 0) check.eps = eps;
        return run_check(check, std::cout, std::cerr);
    }
    if (b->parsed()) {
        bench.table = !no_table;
        bench.json = !no_json;
        return run_bench(bench, std::cout, std::cerr);
    }
    if (p->parsed()) return run_print(file, std::cout, std::cerr);
    if (e->parsed()) return run_emit(name, std::cout, std::cerr);
    return run_dot(file, std::cout, std::cerr);
}
