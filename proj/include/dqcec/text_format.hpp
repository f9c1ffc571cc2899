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

// Line-oriented circuit text.
//
//   name teleport
//   qubits q q1 q2
//   inputs q
//   outputs q2
//   outbits
//   init q1=0 q2=0            # 0, 1, + or eig(label,basis)
//
//   func maj 3 -> 1           # user truth table, rows `bits -> bits`
//   000 -> 0
//   ...
//   end
//
//   sub fix_x {               # named subcircuit for dispatch branches
//   gate X q2
//   }
//
//   gate H q2
//   gate CP(0.5) q0 q1
//   measure q q1 -> c c1
//   dispatch id(c, c1) { 0: skip, 1: fix_x, 2: fix_z, 3: fix_zx }
//   ifc xor(c, c1) == 1 apply X q2
//
// A dispatch line turns the measurement right before it into a branch.
// Built-in functions: id, not (bitwise), and, or, xor (single output).

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dqcec/circuit.hpp"

namespace dqcec {

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string &message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses and validates. Every failure is a ParseError.
CircuitSpec parse_circuit(std::string_view text);

/// Canonical text; parse_circuit(print_circuit(s)) == s for valid specs.
std::string print_circuit(const CircuitSpec &spec);

/// Reads a file and parses it; I/O problems are ParseErrors at line 0.
CircuitSpec load_circuit(const std::string &path);

} // namespace dqcec
