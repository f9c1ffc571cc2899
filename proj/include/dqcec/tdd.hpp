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

#include <complex>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dqcec::tdd {

using Complex = std::complex<double>;

/// Position in the global index order. Larger ranks sit nearer the root;
/// rank 0 is reserved for the terminal.
using Rank = std::uint64_t;

enum class IndexKind {
    QuantumWire,
    ClassicalOutcome,
    PrincipalOutput,
    Discard,
    Logic,
};

std::string_view to_string(IndexKind kind);

/// Handle of an index registered in a Manager.
struct Index {
    std::uint32_t id = 0;
    friend bool operator==(Index, Index) = default;
    friend auto operator<=>(Index, Index) = default;
};

struct IndexInfo {
    std::string name;
    Rank rank = 0;
    IndexKind kind = IndexKind::QuantumWire;
};

class TddError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Node;

struct Edge {
    Complex weight{0.0, 0.0};
    const Node *node = nullptr;
};

/// Decision-diagram node. The terminal has rank 0 and null successors.
/// Nodes are immutable once placed in the unique table.
struct Node {
    Index index{};
    Rank rank = 0;
    Edge low;
    Edge high;

    bool is_terminal() const { return rank == 0; }
};

class Manager;

/// A tensor: root edge plus its open indices, sorted by descending rank.
struct Tdd {
    Edge root;
    std::vector<Index> indices;
    const Manager *owner = nullptr;
};

struct ManagerConfig {
    double grid = 1e-9;
    std::size_t dense_limit = 20;
};

/// Owns the index order, the unique table and the computed tables.
/// Not thread-safe; use one manager per thread.
class Manager {
  public:
    explicit Manager(ManagerConfig config = {});
    Manager(const Manager &) = delete;
    Manager &operator=(const Manager &) = delete;

    const ManagerConfig &config() const { return config_; }

    // --- index order -------------------------------------------------------

    /// Registers `name` at `rank`. Re-registering an existing name with the
    /// same rank and kind returns the existing handle.
    Index add_index(std::string name, Rank rank, IndexKind kind);
    std::optional<Index> find_index(std::string_view name) const;
    const IndexInfo &info(Index index) const { return indices_.at(index.id); }
    Rank rank(Index index) const { return indices_.at(index.id).rank; }
    std::size_t index_count() const { return indices_.size(); }

    // --- weights -----------------------------------------------------------

    bool is_zero(Complex w) const;
    bool weights_equal(Complex a, Complex b) const;

    // --- construction ------------------------------------------------------

    const Node *terminal() const { return &terminal_; }
    Edge zero_edge() const { return {Complex{0.0, 0.0}, &terminal_}; }
    Edge one_edge() const { return {Complex{1.0, 0.0}, &terminal_}; }

    /// Canonical edge for a node over `index` with the given successors.
    Edge make_edge(Index index, Edge low, Edge high);

    Tdd constant(Complex value);
    Tdd from_dense(std::span<const Complex> values, std::span<const Index> indices);
    /// Dense values in the order of `order` (first index is the most
    /// significant bit). Defaults to the tensor's own index list.
    std::vector<Complex> to_dense(const Tdd &t, std::span<const Index> order) const;
    std::vector<Complex> to_dense(const Tdd &t) const { return to_dense(t, t.indices); }
    Complex evaluate(const Edge &root, const std::unordered_map<std::uint32_t, bool> &assignment) const;

    // --- algebra -----------------------------------------------------------

    Tdd slice(const Tdd &t, Index x, bool value);
    Tdd add(const Tdd &a, const Tdd &b);
    Tdd scale(const Tdd &t, Complex factor);
    Tdd negate(const Tdd &t) { return scale(t, Complex{-1.0, 0.0}); }
    /// Sums over `shared`; indices common to both operands but not listed in
    /// `shared` are kept and multiplied pointwise.
    Tdd contract(const Tdd &a, const Tdd &b, std::span<const Index> shared);
    Tdd conjugate(const Tdd &t);

    /// Σ over all assignments of |value|².
    double norm(const Tdd &t) const;
    double norm(const Edge &root, std::span<const Index> indices) const;

    bool identical(const Tdd &a, const Tdd &b) const;

    /// Reachable nodes including the terminal.
    std::size_t node_count(const Edge &root) const;
    std::size_t node_count(const Tdd &t) const { return node_count(t.root); }
    std::size_t unique_table_size() const { return unique_.size(); }

    /// Graphviz rendering for debugging.
    std::string to_dot(const Tdd &t) const;

    Edge scale_edge(const Edge &e, Complex factor) const;
    Edge add_edges(const Edge &a, const Edge &b);
    /// Cofactor of an edge at `x` (returns the edge itself when x is absent).
    Edge cofactor(const Edge &e, Rank x_rank, bool value) const;

    std::vector<Index> sorted_indices(std::vector<Index> indices) const;

  private:
    struct WeightKey {
        std::int64_t re = 0;
        std::int64_t im = 0;
        friend bool operator==(const WeightKey &, const WeightKey &) = default;
    };
    struct NodeKey {
        std::uint32_t index;
        const Node *low;
        const Node *high;
        WeightKey wl;
        WeightKey wh;
        friend bool operator==(const NodeKey &, const NodeKey &) = default;
    };
    struct NodeKeyHash {
        std::size_t operator()(const NodeKey &k) const;
    };
    struct AddKey {
        const Node *a;
        const Node *b;
        WeightKey ratio;
        friend bool operator==(const AddKey &, const AddKey &) = default;
    };
    struct AddKeyHash {
        std::size_t operator()(const AddKey &k) const;
    };

    WeightKey quantize(Complex w) const;
    void check_owner(const Tdd &t) const;

    ManagerConfig config_;
    std::vector<IndexInfo> indices_;
    std::unordered_map<std::string, Index> by_name_;
    std::unordered_map<Rank, Index> by_rank_;
    Node terminal_;
    std::deque<Node> nodes_;
    std::unordered_map<NodeKey, const Node *, NodeKeyHash> unique_;
    std::unordered_map<AddKey, Edge, AddKeyHash> add_cache_;
};

} // namespace dqcec::tdd
