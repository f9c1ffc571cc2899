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

#include "dqcec/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dqcec {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                         message),
      line_(line), column_(column) {}

namespace {

// --- lexer --------------------------------------------------------------------

struct Token {
    std::string text;
    std::size_t column = 0;
    bool special = false;
};

struct Line {
    std::size_t number = 0;
    std::string raw;
    std::vector<Token> tokens;
};

bool is_special(char c) { return c == '(' || c == ')' || c == '{' || c == '}' || c == ',' || c == ':' || c == '='; }

std::vector<Token> tokenize(const std::string &line) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        const char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
            ++i;
            continue;
        }
        if (line.compare(i, 2, "->") == 0 || line.compare(i, 2, "==") == 0) {
            out.push_back({line.substr(i, 2), i + 1, true});
            i += 2;
            continue;
        }
        if (is_special(c)) {
            out.push_back({std::string(1, c), i + 1, true});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !is_special(line[j]) && line[j] != '#' && line[j] != ' ' && line[j] != '\t' &&
               line[j] != '\r' && line[j] != '\v' && line[j] != '\f' && line.compare(j, 2, "->") != 0)
            ++j;
        out.push_back({line.substr(i, j - i), i + 1, false});
        i = j;
    }
    return out;
}

// --- parser -------------------------------------------------------------------

class Cursor {
  public:
    explicit Cursor(const Line &line) : line_(line) {}

    bool done() const { return pos_ >= line_.tokens.size(); }
    const Token &peek() const {
        if (done()) fail_end("unexpected end of line");
        return line_.tokens[pos_];
    }
    bool at(const std::string &text) const { return !done() && line_.tokens[pos_].text == text; }
    const Token &next() {
        const Token &t = peek();
        ++pos_;
        return t;
    }
    void expect(const std::string &text) {
        if (done()) fail_end("expected '" + text + "'");
        const Token &t = next();
        if (t.text != text) fail(t, "expected '" + text + "', found '" + t.text + "'");
    }
    const Token &word(const std::string &what) {
        if (done()) fail_end("expected " + what);
        const Token &t = next();
        if (t.special) fail(t, "expected " + what + ", found '" + t.text + "'");
        return t;
    }
    void finish() const {
        if (!done()) fail(line_.tokens[pos_], "unexpected '" + line_.tokens[pos_].text + "'");
    }

    [[noreturn]] void fail(const Token &t, const std::string &msg) const { throw ParseError(line_.number, t.column, msg); }
    [[noreturn]] void fail_end(const std::string &msg) const {
        throw ParseError(line_.number, line_.raw.size() + 1, msg);
    }
    const Line &line() const { return line_; }

  private:
    const Line &line_;
    std::size_t pos_ = 0;
};

double parse_double(const Cursor &cur, const Token &t) {
    double v = 0.0;
    const char *first = t.text.data();
    const char *last = first + t.text.size();
    if (!t.text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) cur.fail(t, "bad number '" + t.text + "'");
    return v;
}

std::uint64_t parse_uint(const Cursor &cur, const Token &t) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) cur.fail(t, "bad integer '" + t.text + "'");
    return v;
}

const std::set<std::string> kBuiltins = {"id", "not", "and", "or", "xor"};
const std::set<std::string> kKeywords = {"name", "qubits", "inputs",  "outputs", "outbits", "init", "func",
                                         "end",  "sub",    "gate",    "measure", "ifc",     "dispatch", "skip"};

class Parser {
  public:
    explicit Parser(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string raw;
        std::size_t no = 0;
        while (std::getline(in, raw)) lines_.push_back({++no, raw, tokenize(raw)});
    }

    CircuitSpec run() {
        std::size_t i = 0;
        while (i < lines_.size()) {
            const Line &line = lines_[i];
            if (line.tokens.empty()) {
                ++i;
                continue;
            }
            Cursor cur(line);
            const std::string &head = line.tokens.front().text;
            if (head == "func") {
                i = parse_func(i);
            } else if (head == "sub") {
                i = parse_sub(i);
            } else if (head == "name" || head == "qubits" || head == "inputs" || head == "outputs" ||
                       head == "outbits" || head == "init") {
                header(cur);
                ++i;
            } else {
                statement(cur, spec_.circuit);
                ++i;
            }
        }
        auto issues = validate(spec_);
        if (!issues.empty()) {
            std::string msg = "invalid circuit";
            for (const auto &is : issues) msg += "\n  " + is.where + ": " + is.message;
            throw ParseError(0, 0, msg);
        }
        return spec_;
    }

  private:
    bool declared(const QubitId &q) const {
        return std::find(spec_.qubits.begin(), spec_.qubits.end(), q) != spec_.qubits.end();
    }

    QubitId qubit(Cursor &cur) {
        const Token &t = cur.word("a qubit");
        if (!declared(t.text)) cur.fail(t, "undeclared qubit '" + t.text + "'");
        return t.text;
    }

    std::vector<std::string> names_to_end(Cursor &cur, const std::string &what) {
        std::vector<std::string> out;
        while (!cur.done()) out.push_back(cur.word(what).text);
        return out;
    }

    void header(Cursor &cur) {
        const Token &head = cur.next();
        if (head.text == "name") {
            spec_.name = cur.word("a circuit name").text;
            cur.finish();
        } else if (head.text == "qubits") {
            for (const std::string &q : names_to_end(cur, "a qubit name")) spec_.qubits.push_back(q);
        } else if (head.text == "inputs") {
            while (!cur.done()) spec_.inputs.push_back(qubit(cur));
        } else if (head.text == "outputs") {
            while (!cur.done()) spec_.outputs.push_back(qubit(cur));
        } else if (head.text == "outbits") {
            for (const std::string &b : names_to_end(cur, "a bit name")) spec_.output_bits.push_back(b);
        } else {
            while (!cur.done()) {
                QubitId q = qubit(cur);
                cur.expect("=");
                const Token &v = cur.word("an initial state");
                if (v.text == "0") {
                    spec_.fixed_init.emplace_back(q, InitState::zero());
                } else if (v.text == "1") {
                    spec_.fixed_init.emplace_back(q, InitState::one());
                } else if (v.text == "+") {
                    spec_.fixed_init.emplace_back(q, InitState::plus());
                } else if (v.text == "eig") {
                    cur.expect("(");
                    std::string label = cur.word("an eigenstate label").text;
                    cur.expect(",");
                    const Token &b = cur.word("a basis value");
                    std::uint64_t basis = parse_uint(cur, b);
                    if (basis > 1) cur.fail(b, "eigenstate basis value must be 0 or 1");
                    cur.expect(")");
                    spec_.fixed_init.emplace_back(q, InitState::eigen(label, static_cast<int>(basis)));
                } else {
                    cur.fail(v, "unknown initial state '" + v.text + "'");
                }
            }
        }
    }

    std::size_t parse_func(std::size_t i) {
        Cursor cur(lines_[i]);
        cur.next();
        const Token &name = cur.word("a function name");
        if (kBuiltins.count(name.text) || kKeywords.count(name.text)) cur.fail(name, "'" + name.text + "' is reserved");
        if (funcs_.count(name.text)) cur.fail(name, "function '" + name.text + "' defined twice");
        const Token &ar = cur.word("the arity");
        std::uint64_t arity = parse_uint(cur, ar);
        cur.expect("->");
        const Token &ou = cur.word("the output width");
        std::uint64_t outputs = parse_uint(cur, ou);
        cur.finish();
        if (arity == 0 || arity > BoolFunc::kTableLimit) cur.fail(ar, "arity must be 1..16");
        if (outputs == 0 || outputs > 30) cur.fail(ou, "output width must be 1..30");
        std::string body;
        std::size_t j = i + 1;
        for (; j < lines_.size(); ++j) {
            const auto &toks = lines_[j].tokens;
            if (toks.size() == 1 && toks[0].text == "end") break;
            body += lines_[j].raw + "\n";
        }
        if (j == lines_.size()) cur.fail(name, "function '" + name.text + "' has no 'end'");
        try {
            BoolFunc f = parse_truth_table(body);
            if (f.arity() != arity || f.outputs() != outputs)
                cur.fail(name, "truth table does not match the declared widths");
            funcs_.emplace(name.text, std::move(f));
        } catch (const LogicError &e) {
            cur.fail(name, std::string("in function '") + name.text + "': " + e.what());
        }
        return j + 1;
    }

    std::size_t parse_sub(std::size_t i) {
        Cursor cur(lines_[i]);
        cur.next();
        const Token &name = cur.word("a subcircuit name");
        if (name.text == "skip" || kKeywords.count(name.text)) cur.fail(name, "'" + name.text + "' is reserved");
        if (subs_.count(name.text)) cur.fail(name, "subcircuit '" + name.text + "' defined twice");
        cur.expect("{");
        cur.finish();
        DynCircuit body;
        std::size_t j = i + 1;
        for (; j < lines_.size(); ++j) {
            const Line &line = lines_[j];
            if (line.tokens.empty()) continue;
            if (line.tokens.size() == 1 && line.tokens[0].text == "}") break;
            Cursor inner(line);
            const std::string &head = line.tokens.front().text;
            if (head == "sub" || head == "func") inner.fail(line.tokens.front(), "'" + head + "' blocks cannot nest");
            statement(inner, body);
        }
        if (j == lines_.size()) cur.fail(name, "subcircuit '" + name.text + "' has no closing '}'");
        subs_.emplace(name.text, std::move(body));
        return j + 1;
    }

    struct Call {
        BoolFunc func;
        std::vector<BitId> bits;
    };

    Call call(Cursor &cur) {
        const Token &name = cur.word("a function name");
        cur.expect("(");
        Call c;
        if (!cur.at(")")) {
            c.bits.push_back(cur.word("a bit name").text);
            while (cur.at(",")) {
                cur.next();
                c.bits.push_back(cur.word("a bit name").text);
            }
        }
        cur.expect(")");
        const std::size_t n = c.bits.size();
        if (n == 0) cur.fail(name, "a function needs at least one bit");
        if (name.text == "id" || name.text == "not" || name.text == "and" || name.text == "or" || name.text == "xor") {
            if (n > BoolFunc::kTableLimit) cur.fail(name, "too many bits");
            if (name.text == "id") c.func = BoolFunc::identity(n);
            else if (name.text == "not") c.func = BoolFunc::complement(n);
            else if (name.text == "and") c.func = BoolFunc::all_and(n);
            else if (name.text == "or") c.func = BoolFunc::all_or(n);
            else c.func = BoolFunc::parity(n);
            return c;
        }
        auto it = funcs_.find(name.text);
        if (it == funcs_.end()) cur.fail(name, "unknown function '" + name.text + "'");
        if (it->second.arity() != n)
            cur.fail(name, "function '" + name.text + "' takes " + std::to_string(it->second.arity()) + " bit(s)");
        c.func = it->second;
        return c;
    }

    Gate gate(Cursor &cur) {
        const Token &name = cur.word("a gate name");
        std::vector<double> params;
        if (cur.at("(")) {
            cur.next();
            if (!cur.at(")")) {
                params.push_back(parse_double(cur, cur.word("a parameter")));
                while (cur.at(",")) {
                    cur.next();
                    params.push_back(parse_double(cur, cur.word("a parameter")));
                }
            }
            cur.expect(")");
        }
        std::vector<QubitId> qs;
        while (!cur.done()) qs.push_back(qubit(cur));
        try {
            return make_gate(name.text, qs, params);
        } catch (const CircuitError &e) {
            cur.fail(name, e.what());
        }
    }

    void statement(Cursor &cur, DynCircuit &target) {
        const Token &head = cur.next();
        if (head.text == "gate") {
            target.add(gate(cur));
        } else if (head.text == "measure") {
            MeasureStep m;
            while (!cur.at("->")) m.qubits.push_back(qubit(cur));
            cur.expect("->");
            while (!cur.done()) m.bits.push_back(cur.word("a bit name").text);
            if (m.qubits.empty()) cur.fail(head, "measure needs at least one qubit");
            if (m.qubits.size() != m.bits.size()) cur.fail(head, "measure needs one bit per qubit");
            target.add(m);
        } else if (head.text == "ifc") {
            ClassicalGate cg;
            Call c = call(cur);
            cg.func = c.func;
            cg.bits = c.bits;
            cur.expect("==");
            const Token &v = cur.word("a value");
            std::uint64_t value = parse_uint(cur, v);
            if (cg.func.outputs() >= 32 || value >= (std::uint64_t{1} << cg.func.outputs()))
                cur.fail(v, "value out of range for the function");
            cg.value = static_cast<std::uint32_t>(value);
            const Token &apply = cur.word("'apply'");
            if (apply.text != "apply") cur.fail(apply, "expected 'apply'");
            cg.gate = gate(cur);
            target.add(cg);
        } else if (head.text == "dispatch") {
            Call c = call(cur);
            if (target.steps.empty() || !std::holds_alternative<MeasureStep>(target.steps.back()) ||
                std::get<MeasureStep>(target.steps.back()).bits != c.bits)
                cur.fail(head, "dispatch must directly follow the measurement of its bits");
            if (c.func.outputs() > 10) cur.fail(head, "dispatch has too many branches");
            BranchStep b{std::get<MeasureStep>(target.steps.back()), c.func, {}};
            b.branches.resize(std::size_t{1} << c.func.outputs());
            std::vector<bool> seen(b.branches.size(), false);
            cur.expect("{");
            while (!cur.at("}")) {
                const Token &k = cur.word("a branch value");
                std::uint64_t key = parse_uint(cur, k);
                if (key >= b.branches.size()) cur.fail(k, "branch value out of range");
                if (seen[key]) cur.fail(k, "branch value given twice");
                seen[key] = true;
                cur.expect(":");
                const Token &sub = cur.word("a subcircuit name");
                if (sub.text != "skip") {
                    auto it = subs_.find(sub.text);
                    if (it == subs_.end()) cur.fail(sub, "unknown subcircuit '" + sub.text + "'");
                    b.branches[key] = it->second;
                }
                if (cur.at(",")) cur.next();
                else if (!cur.at("}")) cur.fail(cur.peek(), "expected ',' or '}'");
            }
            cur.expect("}");
            target.steps.back() = b;
        } else if (head.text == "skip") {
            // explicit empty statement
        } else {
            cur.fail(head, "unknown statement '" + head.text + "'");
        }
        cur.finish();
    }

    std::vector<Line> lines_;
    CircuitSpec spec_;
    std::map<std::string, BoolFunc> funcs_;
    std::map<std::string, DynCircuit> subs_;
};

// --- printer ------------------------------------------------------------------

std::string number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string join(const std::vector<std::string> &xs, const std::string &sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

class Printer {
  public:
    std::string run(const CircuitSpec &spec) {
        std::string header;
        if (!spec.name.empty()) header += "name " + spec.name + "\n";
        header += "qubits " + join(spec.qubits, " ") + "\n";
        if (!spec.inputs.empty()) header += "inputs " + join(spec.inputs, " ") + "\n";
        if (!spec.outputs.empty()) header += "outputs " + join(spec.outputs, " ") + "\n";
        if (!spec.output_bits.empty()) header += "outbits " + join(spec.output_bits, " ") + "\n";
        if (!spec.fixed_init.empty()) {
            std::vector<std::string> items;
            for (const auto &[q, st] : spec.fixed_init) items.push_back(q + "=" + init(st));
            header += "init " + join(items, " ") + "\n";
        }
        std::string body;
        emit(spec.circuit, body);
        std::string out = header;
        if (!funcs_text_.empty()) out += "\n" + funcs_text_;
        if (!subs_text_.empty()) out += "\n" + subs_text_;
        if (!body.empty()) out += "\n" + body;
        return out;
    }

  private:
    static std::string init(const InitState &st) {
        switch (st.kind) {
        case InitState::Kind::Zero: return "0";
        case InitState::Kind::One: return "1";
        case InitState::Kind::Plus: return "+";
        case InitState::Kind::Eigen: return "eig(" + st.label + "," + std::to_string(st.basis) + ")";
        }
        return "?";
    }

    std::string func_name(const BoolFunc &f) {
        const std::size_t n = f.arity();
        if (f == BoolFunc::identity(n)) return "id";
        if (f == BoolFunc::complement(n)) return "not";
        if (f == BoolFunc::all_and(n)) return "and";
        if (f == BoolFunc::all_or(n)) return "or";
        if (f == BoolFunc::parity(n)) return "xor";
        for (const auto &[g, name] : user_funcs_)
            if (g == f) return name;
        std::string name = "f" + std::to_string(user_funcs_.size());
        user_funcs_.emplace_back(f, name);
        funcs_text_ += "func " + name + " " + std::to_string(n) + " -> " + std::to_string(f.outputs()) + "\n" +
                       print_truth_table(f) + "end\n";
        return name;
    }

    std::string call(const BoolFunc &f, const std::vector<BitId> &bits) {
        return func_name(f) + "(" + join(bits, ", ") + ")";
    }

    static std::string gate(const Gate &g) {
        std::string out = g.name;
        if (!g.params.empty()) {
            std::vector<std::string> ps;
            for (double p : g.params) ps.push_back(number(p));
            out += "(" + join(ps, ", ") + ")";
        }
        return out + " " + join(g.qubits, " ");
    }

    static std::string measure(const MeasureStep &m) {
        return "measure " + join(m.qubits, " ") + " -> " + join(m.bits, " ") + "\n";
    }

    void emit(const DynCircuit &c, std::string &out) {
        for (const Step &s : c.steps) {
            if (const auto *g = std::get_if<Gate>(&s)) {
                out += "gate " + gate(*g) + "\n";
            } else if (const auto *m = std::get_if<MeasureStep>(&s)) {
                out += measure(*m);
            } else if (const auto *cg = std::get_if<ClassicalGate>(&s)) {
                out += "ifc " + call(cg->func, cg->bits) + " == " + std::to_string(cg->value) + " apply " +
                       gate(cg->gate) + "\n";
            } else {
                const auto &b = std::get<BranchStep>(s);
                std::vector<std::string> arms;
                for (std::size_t i = 0; i < b.branches.size(); ++i) {
                    std::string name = "skip";
                    if (!b.branches[i].steps.empty()) {
                        name = "b" + std::to_string(next_sub_++);
                        std::string inner;
                        emit(b.branches[i], inner);
                        subs_text_ += "sub " + name + " {\n" + inner + "}\n";
                    }
                    arms.push_back(std::to_string(i) + ": " + name);
                }
                out += measure(b.measure);
                out += "dispatch " + call(b.dispatch, b.measure.bits) + " { " + join(arms, ", ") + " }\n";
            }
        }
    }

    std::vector<std::pair<BoolFunc, std::string>> user_funcs_;
    std::string funcs_text_;
    std::string subs_text_;
    std::size_t next_sub_ = 0;
};

} // namespace

CircuitSpec parse_circuit(std::string_view text) {
    try {
        return Parser(text).run();
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        throw ParseError(0, 0, e.what());
    }
}

std::string print_circuit(const CircuitSpec &spec) { return Printer().run(spec); }

CircuitSpec load_circuit(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    try {
        return parse_circuit(os.str());
    } catch (const ParseError &e) {
        throw ParseError(e.line(), e.column(), path + ": " + (e.line() ? std::string(e.what()) : std::string(e.what())));
    }
}

} // namespace dqcec
