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

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqcec/tdd.hpp"

namespace dqcec {

class LogicError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Reduced ordered BDD over variables 0..n-1 (variable 0 at the top).
/// Every Bdd owns its node store; operations produce fresh stores.
class Bdd {
  public:
    static constexpr std::uint32_t kFalse = 0;
    static constexpr std::uint32_t kTrue = 1;

    struct Node {
        std::uint32_t var;
        std::uint32_t low;
        std::uint32_t high;
        friend bool operator==(const Node &, const Node &) = default;
    };

    Bdd() = default;
    static Bdd constant(std::size_t arity, bool value);
    static Bdd variable(std::size_t arity, std::size_t var);
    /// `table[a]` is the value at assignment a; variable 0 is the most
    /// significant bit of a.
    static Bdd from_table(std::size_t arity, const std::vector<bool> &table);

    enum class Op { And, Or, Xor };
    static Bdd apply(Op op, const Bdd &a, const Bdd &b);
    Bdd negate() const;

    std::size_t arity() const { return arity_; }
    std::uint32_t root() const { return root_; }
    const Node &node(std::uint32_t id) const { return nodes_.at(id); }
    /// Internal nodes (terminals excluded).
    std::size_t size() const;

    bool eval(std::span<const bool> input) const;
    bool eval(std::uint64_t input) const;

    friend bool operator==(const Bdd &a, const Bdd &b);

  private:
    friend struct BddBuilder;

    std::size_t arity_ = 0;
    std::vector<Node> nodes_;
    std::uint32_t root_ = kFalse;
};

/// Total Boolean function {0,1}^arity -> {0,1}^outputs. The first input is
/// the most significant bit of the input value, likewise for outputs.
/// Stored as a truth table up to kTableLimit inputs, as one BDD per output
/// bit beyond that.
class BoolFunc {
  public:
    static constexpr std::size_t kTableLimit = 16;

    BoolFunc() = default;
    static BoolFunc from_table(std::size_t arity, std::size_t outputs, std::vector<std::uint32_t> table);
    static BoolFunc from_bdds(std::vector<Bdd> bits);

    static BoolFunc identity(std::size_t arity);
    static BoolFunc constant(std::size_t arity, std::size_t outputs, std::uint32_t value);
    static BoolFunc all_and(std::size_t arity);
    static BoolFunc all_or(std::size_t arity);
    static BoolFunc parity(std::size_t arity);
    /// Bitwise complement of the inputs (arity outputs).
    static BoolFunc complement(std::size_t arity);
    /// Single-output indicator of input == value.
    static BoolFunc equals(std::size_t arity, std::uint64_t value);

    std::size_t arity() const { return arity_; }
    std::size_t outputs() const { return outputs_; }
    bool has_table() const { return !bdds_present_; }

    std::uint32_t eval(std::uint64_t input) const;
    /// Output bit `j` (0 = most significant) as a single-output function.
    BoolFunc output_bit(std::size_t j) const;
    Bdd to_bdd(std::size_t j) const;
    /// Single-output function g(x) = [f(x) in accepted].
    BoolFunc preimage(const std::vector<bool> &accepted) const;

    /// Full truth table; only for arity <= kTableLimit.
    const std::vector<std::uint32_t> &table() const;

    friend bool operator==(const BoolFunc &a, const BoolFunc &b);

  private:
    std::size_t arity_ = 0;
    std::size_t outputs_ = 0;
    std::vector<std::uint32_t> table_;
    std::vector<Bdd> bdds_;
    bool bdds_present_ = false;
};

/// Lifts a single-output function to the 0/1 tensor φ(x..., y) = [f(x) = y].
tdd::Tdd func_to_tensor(tdd::Manager &mgr, const BoolFunc &f, std::span<const tdd::Index> inputs, tdd::Index output);

/// Same tensor built from a BDD by redirecting terminal edges to y-nodes.
tdd::Tdd bdd_to_tdd(tdd::Manager &mgr, const Bdd &b, std::span<const tdd::Index> inputs, tdd::Index output);

/// Multi-output lift: product of the per-output-bit tensors.
tdd::Tdd lift(tdd::Manager &mgr, const BoolFunc &f, std::span<const tdd::Index> inputs,
              std::span<const tdd::Index> outputs);

/// Contracts the parts of a classical network; an internal index is summed
/// once no remaining part carries it.
tdd::Tdd compose_logic(tdd::Manager &mgr, const std::vector<tdd::Tdd> &parts, std::span<const tdd::Index> internal);

/// Truth-table text: one `bits -> bits` line per input assignment.
std::string print_truth_table(const BoolFunc &f);
BoolFunc parse_truth_table(std::string_view text);

} // namespace dqcec
