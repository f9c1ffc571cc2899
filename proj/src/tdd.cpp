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

#include "dqcec/tdd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace dqcec::tdd {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_ptr(const void *p) { return std::hash<const void *>{}(p); }

struct PairKey {
    const Node *a;
    const Node *b;
    friend bool operator==(const PairKey &, const PairKey &) = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey &k) const { return mix(hash_ptr(k.a), hash_ptr(k.b)); }
};

// Number of ranks in `sorted` strictly between lo and hi.
std::size_t count_between(const std::vector<Rank> &sorted, Rank lo, Rank hi) {
    if (hi <= lo + 1) return 0;
    auto first = std::upper_bound(sorted.begin(), sorted.end(), lo);
    auto last = std::lower_bound(sorted.begin(), sorted.end(), hi);
    return last > first ? static_cast<std::size_t>(last - first) : 0;
}

constexpr Rank kAboveAll = std::numeric_limits<Rank>::max();

} // namespace

std::string_view to_string(IndexKind kind) {
    switch (kind) {
    case IndexKind::QuantumWire:
        return "wire";
    case IndexKind::ClassicalOutcome:
        return "outcome";
    case IndexKind::PrincipalOutput:
        return "output";
    case IndexKind::Discard:
        return "discard";
    case IndexKind::Logic:
        return "logic";
    }
    return "?";
}

std::size_t Manager::NodeKeyHash::operator()(const NodeKey &k) const {
    std::size_t h = k.index;
    h = mix(h, hash_ptr(k.low));
    h = mix(h, hash_ptr(k.high));
    h = mix(h, static_cast<std::size_t>(k.wl.re));
    h = mix(h, static_cast<std::size_t>(k.wl.im));
    h = mix(h, static_cast<std::size_t>(k.wh.re));
    h = mix(h, static_cast<std::size_t>(k.wh.im));
    return h;
}

std::size_t Manager::AddKeyHash::operator()(const AddKey &k) const {
    std::size_t h = hash_ptr(k.a);
    h = mix(h, hash_ptr(k.b));
    h = mix(h, static_cast<std::size_t>(k.ratio.re));
    h = mix(h, static_cast<std::size_t>(k.ratio.im));
    return h;
}

Manager::Manager(ManagerConfig config) : config_(config) {
    if (!(config_.grid > 0.0)) throw TddError("weight grid must be positive");
    terminal_.rank = 0;
    terminal_.low = {};
    terminal_.high = {};
}

Index Manager::add_index(std::string name, Rank rank, IndexKind kind) {
    if (rank == 0) throw TddError("rank 0 is reserved for the terminal");
    if (auto it = by_name_.find(name); it != by_name_.end()) {
        const IndexInfo &old = indices_[it->second.id];
        if (old.rank != rank || old.kind != kind)
            throw TddError("index '" + name + "' re-registered with a different rank or kind");
        return it->second;
    }
    if (by_rank_.count(rank)) throw TddError("rank already taken by index '" + indices_[by_rank_[rank].id].name + "'");
    Index idx{static_cast<std::uint32_t>(indices_.size())};
    indices_.push_back({name, rank, kind});
    by_name_.emplace(std::move(name), idx);
    by_rank_.emplace(rank, idx);
    return idx;
}

std::optional<Index> Manager::find_index(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

Manager::WeightKey Manager::quantize(Complex w) const {
    return {std::llround(w.real() / config_.grid), std::llround(w.imag() / config_.grid)};
}

bool Manager::is_zero(Complex w) const { return quantize(w) == WeightKey{}; }

bool Manager::weights_equal(Complex a, Complex b) const { return quantize(a) == quantize(b); }

void Manager::check_owner(const Tdd &t) const {
    if (t.owner != this) throw TddError("TDD belongs to a different manager");
}

std::vector<Index> Manager::sorted_indices(std::vector<Index> indices) const {
    std::sort(indices.begin(), indices.end(), [&](Index a, Index b) { return rank(a) > rank(b); });
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return indices;
}

Edge Manager::scale_edge(const Edge &e, Complex factor) const {
    Complex w = e.weight * factor;
    if (is_zero(w)) return zero_edge();
    return {w, e.node};
}

Edge Manager::make_edge(Index index, Edge low, Edge high) {
    const Rank r = rank(index);
    if (low.node == nullptr || high.node == nullptr) throw TddError("null successor");
    if (low.node->rank >= r || high.node->rank >= r) throw TddError("successor rank not below node rank");
    if (is_zero(low.weight)) low = zero_edge();
    if (is_zero(high.weight)) high = zero_edge();
    if (low.node == high.node && weights_equal(low.weight, high.weight)) return low;

    const Complex pivot = is_zero(low.weight) ? high.weight : low.weight;
    Edge nl{low.weight / pivot, low.node};
    Edge nh{high.weight / pivot, high.node};
    if (!is_zero(low.weight))
        nl.weight = 1.0;
    else
        nh.weight = 1.0;

    NodeKey key{index.id, nl.node, nh.node, quantize(nl.weight), quantize(nh.weight)};
    auto it = unique_.find(key);
    if (it != unique_.end()) return {pivot, it->second};
    Node &n = nodes_.emplace_back();
    n.index = index;
    n.rank = r;
    n.low = nl;
    n.high = nh;
    unique_.emplace(key, &n);
    return {pivot, &n};
}

Tdd Manager::constant(Complex value) {
    Edge e = is_zero(value) ? zero_edge() : Edge{value, &terminal_};
    return {e, {}, this};
}

Tdd Manager::from_dense(std::span<const Complex> values, std::span<const Index> indices) {
    const std::size_t n = indices.size();
    if (n > config_.dense_limit) throw TddError("dense tensor exceeds the configured index limit");
    if (values.size() != (std::size_t{1} << n)) throw TddError("dense tensor size does not match index count");
    std::vector<Index> order(indices.begin(), indices.end());
    std::vector<Index> sorted = sorted_indices(order);
    if (sorted.size() != n) throw TddError("duplicate index in dense tensor");

    // bit position of each sorted index within the flat offset
    std::vector<std::size_t> bit(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), sorted[i]) - order.begin());
        bit[i] = n - 1 - pos;
    }
    std::function<Edge(std::size_t, std::size_t)> build = [&](std::size_t level, std::size_t flat) -> Edge {
        if (level == n) {
            Complex v = values[flat];
            return is_zero(v) ? zero_edge() : Edge{v, &terminal_};
        }
        Edge lo = build(level + 1, flat);
        Edge hi = build(level + 1, flat | (std::size_t{1} << bit[level]));
        return make_edge(sorted[level], lo, hi);
    };
    return {build(0, 0), std::move(sorted), this};
}

std::vector<Complex> Manager::to_dense(const Tdd &t, std::span<const Index> order) const {
    check_owner(t);
    const std::size_t m = order.size();
    if (m > config_.dense_limit) throw TddError("dense expansion exceeds the configured index limit");
    for (Index x : t.indices)
        if (std::find(order.begin(), order.end(), x) == order.end())
            throw TddError("dense order misses index '" + info(x).name + "'");
    std::vector<std::int8_t> value(indices_.size(), -1);
    std::vector<Complex> out(std::size_t{1} << m);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        for (std::size_t i = 0; i < m; ++i) value[order[i].id] = static_cast<std::int8_t>((flat >> (m - 1 - i)) & 1U);
        Complex acc = t.root.weight;
        const Node *n = t.root.node;
        while (!n->is_terminal() && acc != Complex{}) {
            const Edge &e = value[n->index.id] == 1 ? n->high : n->low;
            acc *= e.weight;
            n = e.node;
        }
        out[flat] = acc;
    }
    return out;
}

Complex Manager::evaluate(const Edge &root, const std::unordered_map<std::uint32_t, bool> &assignment) const {
    Complex acc = root.weight;
    const Node *n = root.node;
    while (n != nullptr && !n->is_terminal()) {
        auto it = assignment.find(n->index.id);
        if (it == assignment.end()) throw TddError("assignment misses index '" + info(n->index).name + "'");
        const Edge &e = it->second ? n->high : n->low;
        acc *= e.weight;
        n = e.node;
    }
    return acc;
}

Edge Manager::cofactor(const Edge &e, Rank x_rank, bool value) const {
    if (e.node->rank != x_rank) return e;
    const Edge &c = value ? e.node->high : e.node->low;
    return scale_edge(c, e.weight);
}

Tdd Manager::slice(const Tdd &t, Index x, bool value) {
    check_owner(t);
    auto pos = std::find(t.indices.begin(), t.indices.end(), x);
    if (pos == t.indices.end()) return t;
    const Rank xr = rank(x);
    std::unordered_map<const Node *, Edge> memo;
    std::function<Edge(const Node *)> rec = [&](const Node *n) -> Edge {
        if (n->rank < xr) return {1.0, n};
        if (n->rank == xr) return value ? n->high : n->low;
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        Edge lo = scale_edge(rec(n->low.node), n->low.weight);
        Edge hi = scale_edge(rec(n->high.node), n->high.weight);
        Edge r = make_edge(n->index, lo, hi);
        memo.emplace(n, r);
        return r;
    };
    Tdd out{zero_edge(), t.indices, this};
    out.indices.erase(out.indices.begin() + (pos - t.indices.begin()));
    if (!is_zero(t.root.weight)) out.root = scale_edge(rec(t.root.node), t.root.weight);
    return out;
}

Edge Manager::add_edges(const Edge &a_in, const Edge &b_in) {
    if (is_zero(a_in.weight)) return b_in;
    if (is_zero(b_in.weight)) return a_in;
    Edge a = a_in;
    Edge b = b_in;
    if (a.node == b.node) {
        Complex w = a.weight + b.weight;
        return is_zero(w) ? zero_edge() : Edge{w, a.node};
    }
    if (std::less<const Node *>{}(b.node, a.node)) std::swap(a, b);
    const Complex ratio = b.weight / a.weight;
    AddKey key{a.node, b.node, quantize(ratio)};
    if (auto it = add_cache_.find(key); it != add_cache_.end()) return scale_edge(it->second, a.weight);

    const Rank top = std::max(a.node->rank, b.node->rank);
    const Index x = a.node->rank == top ? a.node->index : b.node->index;
    Edge ua{1.0, a.node};
    Edge ub{ratio, b.node};
    Edge lo = add_edges(cofactor(ua, top, false), cofactor(ub, top, false));
    Edge hi = add_edges(cofactor(ua, top, true), cofactor(ub, top, true));
    Edge r = make_edge(x, lo, hi);
    add_cache_.emplace(key, r);
    return scale_edge(r, a.weight);
}

Tdd Manager::add(const Tdd &a, const Tdd &b) {
    check_owner(a);
    check_owner(b);
    std::vector<Index> all = a.indices;
    all.insert(all.end(), b.indices.begin(), b.indices.end());
    return {add_edges(a.root, b.root), sorted_indices(std::move(all)), this};
}

Tdd Manager::scale(const Tdd &t, Complex factor) {
    check_owner(t);
    return {scale_edge(t.root, factor), t.indices, this};
}

Tdd Manager::contract(const Tdd &a, const Tdd &b, std::span<const Index> shared) {
    check_owner(a);
    check_owner(b);
    auto has = [](const std::vector<Index> &v, Index x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    std::vector<Rank> shared_ranks;
    for (Index x : shared) {
        if (!has(a.indices, x) || !has(b.indices, x))
            throw TddError("contracted index '" + info(x).name + "' is not shared by both operands");
        shared_ranks.push_back(rank(x));
    }
    std::sort(shared_ranks.begin(), shared_ranks.end());
    shared_ranks.erase(std::unique(shared_ranks.begin(), shared_ranks.end()), shared_ranks.end());
    auto is_shared = [&](Rank r) { return std::binary_search(shared_ranks.begin(), shared_ranks.end(), r); };

    std::vector<Index> out_indices;
    for (const auto *side : {&a.indices, &b.indices})
        for (Index x : *side)
            if (!is_shared(rank(x))) out_indices.push_back(x);
    out_indices = sorted_indices(std::move(out_indices));

    if (is_zero(a.root.weight) || is_zero(b.root.weight)) return {zero_edge(), out_indices, this};

    std::unordered_map<PairKey, Edge, PairKeyHash> memo;
    std::function<Edge(const Node *, const Node *)> rec = [&](const Node *na, const Node *nb) -> Edge {
        if (na->is_terminal() && nb->is_terminal()) return one_edge();
        PairKey key = std::less<const Node *>{}(na, nb) ? PairKey{na, nb} : PairKey{nb, na};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const Rank top = std::max(na->rank, nb->rank);
        const Index x = na->rank == top ? na->index : nb->index;
        Edge branch[2];
        for (int v = 0; v < 2; ++v) {
            Edge ea = na->rank == top ? (v ? na->high : na->low) : Edge{1.0, na};
            Edge eb = nb->rank == top ? (v ? nb->high : nb->low) : Edge{1.0, nb};
            if (is_zero(ea.weight) || is_zero(eb.weight)) {
                branch[v] = zero_edge();
                continue;
            }
            const Rank sub = std::max(ea.node->rank, eb.node->rank);
            const double factor = std::ldexp(1.0, static_cast<int>(count_between(shared_ranks, sub, top)));
            branch[v] = scale_edge(rec(ea.node, eb.node), ea.weight * eb.weight * factor);
        }
        Edge r = is_shared(top) ? add_edges(branch[0], branch[1]) : make_edge(x, branch[0], branch[1]);
        memo.emplace(key, r);
        return r;
    };
    const Rank top = std::max(a.root.node->rank, b.root.node->rank);
    const double factor = std::ldexp(1.0, static_cast<int>(count_between(shared_ranks, top, kAboveAll)));
    Edge r = scale_edge(rec(a.root.node, b.root.node), a.root.weight * b.root.weight * factor);
    return {r, std::move(out_indices), this};
}

Tdd Manager::conjugate(const Tdd &t) {
    check_owner(t);
    std::unordered_map<const Node *, Edge> memo;
    std::function<Edge(const Node *)> rec = [&](const Node *n) -> Edge {
        if (n->is_terminal()) return one_edge();
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        Edge lo = scale_edge(rec(n->low.node), std::conj(n->low.weight));
        Edge hi = scale_edge(rec(n->high.node), std::conj(n->high.weight));
        Edge r = make_edge(n->index, lo, hi);
        memo.emplace(n, r);
        return r;
    };
    if (is_zero(t.root.weight)) return {zero_edge(), t.indices, this};
    return {scale_edge(rec(t.root.node), std::conj(t.root.weight)), t.indices, this};
}

double Manager::norm(const Tdd &t) const {
    check_owner(t);
    return norm(t.root, t.indices);
}

double Manager::norm(const Edge &root, std::span<const Index> indices) const {
    if (is_zero(root.weight)) return 0.0;
    std::vector<Rank> ranks;
    ranks.reserve(indices.size());
    for (Index x : indices) ranks.push_back(rank(x));
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());

    std::unordered_map<const Node *, double> memo;
    std::function<double(const Node *)> g = [&](const Node *n) -> double {
        if (n->is_terminal()) return 1.0;
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        double acc = 0.0;
        for (const Edge *e : {&n->low, &n->high}) {
            if (is_zero(e->weight)) continue;
            acc += std::norm(e->weight) * g(e->node) *
                   std::ldexp(1.0, static_cast<int>(count_between(ranks, e->node->rank, n->rank)));
        }
        memo.emplace(n, acc);
        return acc;
    };
    return std::norm(root.weight) * g(root.node) *
           std::ldexp(1.0, static_cast<int>(count_between(ranks, root.node->rank, kAboveAll)));
}

bool Manager::identical(const Tdd &a, const Tdd &b) const {
    if (a.owner != b.owner) throw TddError("cannot compare TDDs from different managers");
    check_owner(a);
    if (is_zero(a.root.weight) && is_zero(b.root.weight)) return true;
    return a.root.node == b.root.node && weights_equal(a.root.weight, b.root.weight);
}

std::size_t Manager::node_count(const Edge &root) const {
    if (root.node == nullptr) return 0;
    std::unordered_set<const Node *> seen;
    std::vector<const Node *> stack{root.node};
    while (!stack.empty()) {
        const Node *n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->is_terminal()) continue;
        stack.push_back(n->low.node);
        stack.push_back(n->high.node);
    }
    return seen.size();
}

namespace {

std::string weight_label(Complex w) {
    std::ostringstream os;
    os.precision(4);
    if (w.imag() == 0.0)
        os << w.real();
    else
        os << w.real() << (w.imag() < 0 ? "-" : "+") << std::abs(w.imag()) << "i";
    return os.str();
}

} // namespace

std::string Manager::to_dot(const Tdd &t) const {
    check_owner(t);
    std::ostringstream os;
    std::unordered_map<const Node *, std::size_t> id;
    std::vector<const Node *> order;
    std::vector<const Node *> stack{t.root.node};
    while (!stack.empty()) {
        const Node *n = stack.back();
        stack.pop_back();
        if (id.count(n)) continue;
        id.emplace(n, order.size());
        order.push_back(n);
        if (!n->is_terminal()) {
            stack.push_back(n->high.node);
            stack.push_back(n->low.node);
        }
    }
    os << "digraph tdd {\n  root [shape=point];\n";
    for (const Node *n : order) {
        if (n->is_terminal())
            os << "  n" << id[n] << " [shape=box,label=\"1\"];\n";
        else
            os << "  n" << id[n] << " [shape=circle,label=\"" << info(n->index).name << "\"];\n";
    }
    os << "  root -> n" << id[t.root.node] << " [label=\"" << weight_label(t.root.weight) << "\"];\n";
    for (const Node *n : order) {
        if (n->is_terminal()) continue;
        if (!is_zero(n->low.weight))
            os << "  n" << id[n] << " -> n" << id[n->low.node] << " [style=dashed,label=\""
               << weight_label(n->low.weight) << "\"];\n";
        if (!is_zero(n->high.weight))
            os << "  n" << id[n] << " -> n" << id[n->high.node] << " [label=\"" << weight_label(n->high.weight)
               << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace dqcec::tdd
