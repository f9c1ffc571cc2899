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

#include "dqcec/logic.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace dqcec {

namespace {

constexpr std::uint32_t kTerminalVar = std::numeric_limits<std::uint32_t>::max();

std::uint64_t pack(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

} // namespace

struct BddBuilder {
    Bdd out;
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> unique;

    explicit BddBuilder(std::size_t arity) {
        out.arity_ = arity;
        out.nodes_ = {{kTerminalVar, Bdd::kFalse, Bdd::kFalse}, {kTerminalVar, Bdd::kTrue, Bdd::kTrue}};
    }

    std::uint32_t make(std::uint32_t var, std::uint32_t low, std::uint32_t high) {
        if (low == high) return low;
        auto key = std::make_tuple(var, low, high);
        if (auto it = unique.find(key); it != unique.end()) return it->second;
        auto id = static_cast<std::uint32_t>(out.nodes_.size());
        out.nodes_.push_back({var, low, high});
        unique.emplace(key, id);
        return id;
    }

    Bdd finish(std::uint32_t root) {
        out.root_ = root;
        return std::move(out);
    }
};

Bdd Bdd::constant(std::size_t arity, bool value) {
    BddBuilder b(arity);
    return b.finish(value ? kTrue : kFalse);
}

Bdd Bdd::variable(std::size_t arity, std::size_t var) {
    if (var >= arity) throw LogicError("BDD variable out of range");
    BddBuilder b(arity);
    return b.finish(b.make(static_cast<std::uint32_t>(var), kFalse, kTrue));
}

Bdd Bdd::from_table(std::size_t arity, const std::vector<bool> &table) {
    if (arity > 30 || table.size() != (std::size_t{1} << arity)) throw LogicError("truth table size mismatch");
    BddBuilder b(arity);
    std::function<std::uint32_t(std::size_t, std::size_t)> rec = [&](std::size_t var, std::size_t offset) {
        if (var == arity) return table[offset] ? kTrue : kFalse;
        std::size_t half = std::size_t{1} << (arity - 1 - var);
        std::uint32_t lo = rec(var + 1, offset);
        std::uint32_t hi = rec(var + 1, offset + half);
        return b.make(static_cast<std::uint32_t>(var), lo, hi);
    };
    return b.finish(rec(0, 0));
}

Bdd Bdd::apply(Op op, const Bdd &a, const Bdd &b) {
    if (a.arity_ != b.arity_) throw LogicError("BDD arity mismatch");
    BddBuilder out(a.arity_);
    std::unordered_map<std::uint64_t, std::uint32_t> memo;
    std::function<std::uint32_t(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t x, std::uint32_t y) {
        const Node &nx = a.nodes_[x];
        const Node &ny = b.nodes_[y];
        if (nx.var == kTerminalVar && ny.var == kTerminalVar) {
            bool vx = x == kTrue, vy = y == kTrue;
            bool r = op == Op::And ? (vx && vy) : op == Op::Or ? (vx || vy) : (vx != vy);
            return r ? kTrue : kFalse;
        }
        if (auto it = memo.find(pack(x, y)); it != memo.end()) return it->second;
        const std::uint32_t var = std::min(nx.var, ny.var);
        std::uint32_t xl = nx.var == var ? nx.low : x, xh = nx.var == var ? nx.high : x;
        std::uint32_t yl = ny.var == var ? ny.low : y, yh = ny.var == var ? ny.high : y;
        std::uint32_t lo = rec(xl, yl);
        std::uint32_t hi = rec(xh, yh);
        std::uint32_t r = out.make(var, lo, hi);
        memo.emplace(pack(x, y), r);
        return r;
    };
    return out.finish(rec(a.root_, b.root_));
}

Bdd Bdd::negate() const {
    return apply(Op::Xor, *this, constant(arity_, true));
}

std::size_t Bdd::size() const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::uint32_t> stack{root_};
    std::size_t count = 0;
    while (!stack.empty()) {
        std::uint32_t id = stack.back();
        stack.pop_back();
        if (id <= kTrue || seen[id]) continue;
        seen[id] = true;
        ++count;
        stack.push_back(nodes_[id].low);
        stack.push_back(nodes_[id].high);
    }
    return count;
}

bool Bdd::eval(std::span<const bool> input) const {
    if (input.size() != arity_) throw LogicError("BDD input width mismatch");
    std::uint32_t id = root_;
    while (id > kTrue) id = input[nodes_[id].var] ? nodes_[id].high : nodes_[id].low;
    return id == kTrue;
}

bool Bdd::eval(std::uint64_t input) const {
    if (arity_ > 64) throw LogicError("BDD arity too large for integer input");
    std::uint32_t id = root_;
    while (id > kTrue) {
        bool bit = (input >> (arity_ - 1 - nodes_[id].var)) & 1U;
        id = bit ? nodes_[id].high : nodes_[id].low;
    }
    return id == kTrue;
}

bool operator==(const Bdd &a, const Bdd &b) {
    if (a.arity_ != b.arity_) return false;
    std::unordered_map<std::uint32_t, std::uint32_t> map;
    std::function<bool(std::uint32_t, std::uint32_t)> iso = [&](std::uint32_t x, std::uint32_t y) {
        if (x <= Bdd::kTrue || y <= Bdd::kTrue) return x == y;
        if (auto it = map.find(x); it != map.end()) return it->second == y;
        const auto &nx = a.nodes_[x];
        const auto &ny = b.nodes_[y];
        if (nx.var != ny.var) return false;
        map.emplace(x, y);
        return iso(nx.low, ny.low) && iso(nx.high, ny.high);
    };
    return iso(a.root_, b.root_);
}

// --- BoolFunc ---------------------------------------------------------------

BoolFunc BoolFunc::from_table(std::size_t arity, std::size_t outputs, std::vector<std::uint32_t> table) {
    if (arity > kTableLimit) throw LogicError("truth table arity exceeds " + std::to_string(kTableLimit));
    if (outputs > 31) throw LogicError("too many function outputs");
    if (table.size() != (std::size_t{1} << arity)) throw LogicError("truth table must have 2^arity rows");
    for (std::uint32_t v : table)
        if (v >= (std::uint32_t{1} << outputs)) throw LogicError("truth table value exceeds output width");
    BoolFunc f;
    f.arity_ = arity;
    f.outputs_ = outputs;
    f.table_ = std::move(table);
    return f;
}

BoolFunc BoolFunc::from_bdds(std::vector<Bdd> bits) {
    if (bits.empty()) throw LogicError("from_bdds needs at least one output");
    const std::size_t arity = bits[0].arity();
    for (const Bdd &b : bits)
        if (b.arity() != arity) throw LogicError("output BDDs disagree on arity");
    if (arity <= kTableLimit) {
        std::vector<std::uint32_t> table(std::size_t{1} << arity);
        for (std::size_t x = 0; x < table.size(); ++x)
            for (const Bdd &b : bits) table[x] = (table[x] << 1) | (b.eval(std::uint64_t{x}) ? 1U : 0U);
        return from_table(arity, bits.size(), std::move(table));
    }
    BoolFunc f;
    f.arity_ = arity;
    f.outputs_ = bits.size();
    f.bdds_ = std::move(bits);
    f.bdds_present_ = true;
    return f;
}

namespace {

BoolFunc tabulate(std::size_t arity, std::size_t outputs, const std::function<std::uint32_t(std::uint64_t)> &fn) {
    std::vector<std::uint32_t> table(std::size_t{1} << arity);
    for (std::size_t x = 0; x < table.size(); ++x) table[x] = fn(x);
    return BoolFunc::from_table(arity, outputs, std::move(table));
}

Bdd fold(std::size_t arity, Bdd::Op op, bool empty_value, const std::function<Bdd(std::size_t)> &term) {
    Bdd acc = Bdd::constant(arity, empty_value);
    for (std::size_t j = 0; j < arity; ++j) acc = Bdd::apply(op, acc, term(j));
    return acc;
}

} // namespace

BoolFunc BoolFunc::identity(std::size_t arity) {
    if (arity <= kTableLimit)
        return tabulate(arity, arity, [](std::uint64_t x) { return static_cast<std::uint32_t>(x); });
    std::vector<Bdd> bits;
    for (std::size_t j = 0; j < arity; ++j) bits.push_back(Bdd::variable(arity, j));
    return from_bdds(std::move(bits));
}

BoolFunc BoolFunc::constant(std::size_t arity, std::size_t outputs, std::uint32_t value) {
    if (arity <= kTableLimit) return tabulate(arity, outputs, [&](std::uint64_t) { return value; });
    std::vector<Bdd> bits;
    for (std::size_t j = 0; j < outputs; ++j) bits.push_back(Bdd::constant(arity, (value >> (outputs - 1 - j)) & 1U));
    return from_bdds(std::move(bits));
}

BoolFunc BoolFunc::all_and(std::size_t arity) {
    if (arity <= kTableLimit) {
        std::uint64_t full = (std::uint64_t{1} << arity) - 1;
        return tabulate(arity, 1, [&](std::uint64_t x) { return x == full ? 1U : 0U; });
    }
    return from_bdds({fold(arity, Bdd::Op::And, true, [&](std::size_t j) { return Bdd::variable(arity, j); })});
}

BoolFunc BoolFunc::all_or(std::size_t arity) {
    if (arity <= kTableLimit) return tabulate(arity, 1, [](std::uint64_t x) { return x != 0 ? 1U : 0U; });
    return from_bdds({fold(arity, Bdd::Op::Or, false, [&](std::size_t j) { return Bdd::variable(arity, j); })});
}

BoolFunc BoolFunc::parity(std::size_t arity) {
    if (arity <= kTableLimit)
        return tabulate(arity, 1, [](std::uint64_t x) { return static_cast<std::uint32_t>(__builtin_popcountll(x) & 1); });
    return from_bdds({fold(arity, Bdd::Op::Xor, false, [&](std::size_t j) { return Bdd::variable(arity, j); })});
}

BoolFunc BoolFunc::complement(std::size_t arity) {
    if (arity <= kTableLimit) {
        std::uint64_t full = (std::uint64_t{1} << arity) - 1;
        return tabulate(arity, arity, [&](std::uint64_t x) { return static_cast<std::uint32_t>(~x & full); });
    }
    std::vector<Bdd> bits;
    for (std::size_t j = 0; j < arity; ++j) bits.push_back(Bdd::variable(arity, j).negate());
    return from_bdds(std::move(bits));
}

BoolFunc BoolFunc::equals(std::size_t arity, std::uint64_t value) {
    if (arity <= kTableLimit) return tabulate(arity, 1, [&](std::uint64_t x) { return x == value ? 1U : 0U; });
    return from_bdds({fold(arity, Bdd::Op::And, true, [&](std::size_t j) {
        Bdd v = Bdd::variable(arity, j);
        return ((value >> (arity - 1 - j)) & 1U) ? v : v.negate();
    })});
}

std::uint32_t BoolFunc::eval(std::uint64_t input) const {
    if (!bdds_present_) {
        if (input >= table_.size()) throw LogicError("function input out of range");
        return table_[input];
    }
    std::uint32_t out = 0;
    for (const Bdd &b : bdds_) out = (out << 1) | (b.eval(input) ? 1U : 0U);
    return out;
}

BoolFunc BoolFunc::output_bit(std::size_t j) const {
    if (j >= outputs_) throw LogicError("output bit out of range");
    if (bdds_present_) return from_bdds({bdds_[j]});
    const std::size_t shift = outputs_ - 1 - j;
    return tabulate(arity_, 1, [&](std::uint64_t x) { return (table_[x] >> shift) & 1U; });
}

Bdd BoolFunc::to_bdd(std::size_t j) const {
    if (j >= outputs_) throw LogicError("output bit out of range");
    if (bdds_present_) return bdds_[j];
    const std::size_t shift = outputs_ - 1 - j;
    std::vector<bool> bits(table_.size());
    for (std::size_t x = 0; x < table_.size(); ++x) bits[x] = (table_[x] >> shift) & 1U;
    return Bdd::from_table(arity_, bits);
}

BoolFunc BoolFunc::preimage(const std::vector<bool> &accepted) const {
    if (accepted.size() != (std::size_t{1} << outputs_)) throw LogicError("accepted set must cover 2^outputs values");
    if (!bdds_present_) return tabulate(arity_, 1, [&](std::uint64_t x) { return accepted[table_[x]] ? 1U : 0U; });
    Bdd acc = Bdd::constant(arity_, false);
    for (std::size_t v = 0; v < accepted.size(); ++v) {
        if (!accepted[v]) continue;
        Bdd term = Bdd::constant(arity_, true);
        for (std::size_t j = 0; j < outputs_; ++j) {
            bool bit = (v >> (outputs_ - 1 - j)) & 1U;
            term = Bdd::apply(Bdd::Op::And, term, bit ? bdds_[j] : bdds_[j].negate());
        }
        acc = Bdd::apply(Bdd::Op::Or, acc, term);
    }
    return from_bdds({acc});
}

const std::vector<std::uint32_t> &BoolFunc::table() const {
    if (bdds_present_) throw LogicError("function is stored as BDDs");
    return table_;
}

bool operator==(const BoolFunc &a, const BoolFunc &b) {
    return a.arity_ == b.arity_ && a.outputs_ == b.outputs_ && a.bdds_present_ == b.bdds_present_ &&
           a.table_ == b.table_ && a.bdds_ == b.bdds_;
}

// --- tensor lifts -----------------------------------------------------------

namespace {

void check_distinct(std::span<const tdd::Index> inputs, tdd::Index output) {
    std::vector<tdd::Index> all(inputs.begin(), inputs.end());
    all.push_back(output);
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw LogicError("logic tensor indices must be distinct");
}

tdd::Tdd indicator(tdd::Manager &mgr, tdd::Index x, bool value) {
    std::vector<tdd::Complex> v = {value ? 0.0 : 1.0, value ? 1.0 : 0.0};
    std::vector<tdd::Index> idx = {x};
    return mgr.from_dense(v, idx);
}

} // namespace

tdd::Tdd func_to_tensor(tdd::Manager &mgr, const BoolFunc &f, std::span<const tdd::Index> inputs, tdd::Index output) {
    if (f.outputs() != 1) throw LogicError("func_to_tensor needs a single-output function");
    if (f.arity() != inputs.size()) throw LogicError("input index count does not match function arity");
    check_distinct(inputs, output);
    const std::size_t n = inputs.size();
    if (!f.has_table() || n + 1 > mgr.config().dense_limit) return bdd_to_tdd(mgr, f.to_bdd(0), inputs, output);
    std::vector<tdd::Complex> values(std::size_t{2} << n);
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) values[2 * x + f.eval(x)] = 1.0;
    std::vector<tdd::Index> order(inputs.begin(), inputs.end());
    order.push_back(output);
    return mgr.from_dense(values, order);
}

tdd::Tdd bdd_to_tdd(tdd::Manager &mgr, const Bdd &b, std::span<const tdd::Index> inputs, tdd::Index output) {
    if (b.arity() != inputs.size()) throw LogicError("input index count does not match BDD arity");
    check_distinct(inputs, output);
    std::unordered_map<std::uint32_t, tdd::Tdd> memo;
    std::function<tdd::Tdd(std::uint32_t)> rec = [&](std::uint32_t id) -> tdd::Tdd {
        if (id == Bdd::kFalse) return indicator(mgr, output, false);
        if (id == Bdd::kTrue) return indicator(mgr, output, true);
        if (auto it = memo.find(id); it != memo.end()) return it->second;
        const Bdd::Node &n = b.node(id);
        tdd::Index x = inputs[n.var];
        tdd::Tdd lo = mgr.contract(indicator(mgr, x, false), rec(n.low), {});
        tdd::Tdd hi = mgr.contract(indicator(mgr, x, true), rec(n.high), {});
        tdd::Tdd r = mgr.add(lo, hi);
        memo.emplace(id, r);
        return r;
    };
    tdd::Tdd out = rec(b.root());
    std::vector<tdd::Index> all(inputs.begin(), inputs.end());
    all.push_back(output);
    out.indices = mgr.sorted_indices(std::move(all));
    return out;
}

tdd::Tdd lift(tdd::Manager &mgr, const BoolFunc &f, std::span<const tdd::Index> inputs,
              std::span<const tdd::Index> outputs) {
    if (outputs.size() != f.outputs()) throw LogicError("output index count does not match function outputs");
    tdd::Tdd acc = mgr.constant(1.0);
    acc.indices = mgr.sorted_indices({inputs.begin(), inputs.end()});
    for (std::size_t j = 0; j < outputs.size(); ++j)
        acc = mgr.contract(acc, func_to_tensor(mgr, f.output_bit(j), inputs, outputs[j]), {});
    return acc;
}

tdd::Tdd compose_logic(tdd::Manager &mgr, const std::vector<tdd::Tdd> &parts, std::span<const tdd::Index> internal) {
    if (parts.empty()) return mgr.constant(1.0);
    auto carries = [](const tdd::Tdd &t, tdd::Index x) {
        return std::find(t.indices.begin(), t.indices.end(), x) != t.indices.end();
    };
    tdd::Tdd acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::vector<tdd::Index> shared;
        for (tdd::Index x : internal) {
            if (!carries(acc, x) || !carries(parts[i], x)) continue;
            bool later = false;
            for (std::size_t j = i + 1; j < parts.size() && !later; ++j) later = carries(parts[j], x);
            if (!later) shared.push_back(x);
        }
        acc = mgr.contract(acc, parts[i], shared);
    }
    for (tdd::Index x : internal) {
        if (!carries(acc, x)) continue;
        std::vector<tdd::Complex> ones = {1.0, 1.0};
        std::vector<tdd::Index> idx = {x};
        acc = mgr.contract(acc, mgr.from_dense(ones, idx), idx);
    }
    return acc;
}

// --- truth-table text -------------------------------------------------------

namespace {

std::string bits_of(std::uint64_t v, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t j = 0; j < width; ++j)
        if ((v >> (width - 1 - j)) & 1U) s[j] = '1';
    return s;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

std::string print_truth_table(const BoolFunc &f) {
    if (f.arity() > BoolFunc::kTableLimit) throw LogicError("function too wide for truth-table text");
    std::ostringstream os;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << f.arity()); ++x)
        os << bits_of(x, f.arity()) << " -> " << bits_of(f.eval(x), f.outputs()) << "\n";
    return os.str();
}

BoolFunc parse_truth_table(std::string_view text) {
    std::optional<std::size_t> arity, outputs;
    std::map<std::uint64_t, std::uint32_t> rows;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw LogicError("line " + std::to_string(line_no) + ": expected 'bits -> bits'");
        std::string lhs = trim(line.substr(0, arrow));
        std::string rhs = trim(line.substr(arrow + 2));
        auto parse_bits = [&](const std::string &s) {
            std::uint64_t v = 0;
            for (char c : s) {
                if (c != '0' && c != '1') throw LogicError("line " + std::to_string(line_no) + ": bad bit '" + c + "'");
                v = (v << 1) | static_cast<std::uint64_t>(c - '0');
            }
            return v;
        };
        if (!arity) arity = lhs.size();
        if (!outputs) outputs = rhs.size();
        if (lhs.size() != *arity || rhs.size() != *outputs)
            throw LogicError("line " + std::to_string(line_no) + ": inconsistent row width");
        if (*arity > BoolFunc::kTableLimit) throw LogicError("truth table arity too large");
        std::uint64_t x = parse_bits(lhs);
        if (!rows.emplace(x, static_cast<std::uint32_t>(parse_bits(rhs))).second)
            throw LogicError("line " + std::to_string(line_no) + ": duplicate row");
    }
    if (!arity) throw LogicError("empty truth table");
    if (rows.size() != (std::size_t{1} << *arity)) throw LogicError("truth table is not total");
    std::vector<std::uint32_t> table;
    for (auto &[x, y] : rows) table.push_back(y);
    return BoolFunc::from_table(*arity, *outputs, std::move(table));
}

} // namespace dqcec
