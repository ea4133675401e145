// Copyright 2026 The stabtree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabtree/program.hpp"

#include "stabtree/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace stabtree {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::Arity: return "ArityMismatch";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotHorn: return "NotHorn";
        case ErrorCode::MalformedScheme: return "MalformedScheme";
        case ErrorCode::NotASequence: return "NotASequence";
        case ErrorCode::NotAPath: return "NotAPath";
        case ErrorCode::NotANode: return "NotANode";
        case ErrorCode::NotStable: return "NotStable";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::TreeFormat: return "TreeFormat";
    }
    return "Unknown";
}

ParseError::ParseError(const std::string& msg, unsigned line, unsigned column)
    : Error(ErrorCode::Parse,
            std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line), column_(column) {}

// ---------------------------------------------------------------------------
// Terms and atoms
// ---------------------------------------------------------------------------

Term Term::variable(std::string name) {
    Term t;
    t.kind = Kind::Variable;
    t.name = std::move(name);
    return t;
}

Term Term::numeral(Natural value) {
    Term t;
    t.kind = Kind::Numeral;
    t.value = std::move(value);
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    if (name == "s" && args.size() == 1 && args[0].kind == Kind::Numeral) {
        return numeral(args[0].value + 1);
    }
    Term t;
    t.kind = Kind::Function;
    t.name = std::move(name);
    t.args = std::move(args);
    return t;
}

bool Term::is_ground() const {
    switch (kind) {
        case Kind::Variable: return false;
        case Kind::Numeral: return true;
        case Kind::Function:
            return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
    }
    return true;
}

std::size_t Term::depth() const {
    switch (kind) {
        case Kind::Variable: return 0;
        case Kind::Numeral: {
            auto v = to_u64(value);
            return v ? static_cast<std::size_t>(*v) : SIZE_MAX;
        }
        case Kind::Function: {
            std::size_t d = 0;
            for (const auto& a : args) d = std::max(d, a.depth());
            return args.empty() ? 0 : d + 1;
        }
    }
    return 0;
}

int compare(const Term& a, const Term& b) {
    if (a.kind != b.kind) {
        return a.kind < b.kind ? -1 : 1;
    }
    switch (a.kind) {
        case Term::Kind::Variable: return a.name.compare(b.name);
        case Term::Kind::Numeral: return cmp(a.value, b.value);
        case Term::Kind::Function: {
            if (int c = a.name.compare(b.name); c != 0) return c;
            if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
            }
            return 0;
        }
    }
    return 0;
}

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

int compare(const Atom& a, const Atom& b) {
    if (int c = a.predicate.compare(b.predicate); c != 0) return c;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
    }
    return 0;
}

bool Clause::is_ground() const {
    auto g = [](const Atom& a) { return a.is_ground(); };
    return head.is_ground() && std::all_of(premises.begin(), premises.end(), g) &&
           std::all_of(constraints.begin(), constraints.end(), g);
}

bool operator==(const Clause& a, const Clause& b) {
    return a.head == b.head && a.premises == b.premises && a.constraints == b.constraints;
}

bool Program::is_ground() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.is_ground(); });
}

std::string to_string(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Variable: return t.name;
        case Term::Kind::Numeral: return t.value.get_str(10);
        case Term::Kind::Function: {
            if (t.args.empty()) return t.name;
            std::string s = t.name + "(";
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                if (i) s += ",";
                s += to_string(t.args[i]);
            }
            return s + ")";
        }
    }
    return {};
}

std::string to_string(const Atom& a) {
    if (a.args.empty()) return a.predicate;
    std::string s = a.predicate + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) s += ",";
        s += to_string(a.args[i]);
    }
    return s + ")";
}

std::string to_string(const Clause& c) {
    std::string s = to_string(c.head);
    if (c.premises.empty() && c.constraints.empty()) return s + ".";
    s += " :- ";
    bool first = true;
    for (const auto& p : c.premises) {
        if (!first) s += ", ";
        s += to_string(p);
        first = false;
    }
    for (const auto& n : c.constraints) {
        if (!first) s += ", ";
        s += "not " + to_string(n);
        first = false;
    }
    return s + ".";
}

std::string to_string(const Program& p) {
    std::string s;
    for (const auto& c : p.clauses) {
        s += to_string(c);
        s += '\n';
    }
    return s;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Program parse() {
        Program p;
        skip_space();
        while (!at_end()) {
            p.clauses.push_back(clause());
            skip_space();
        }
        return p;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    unsigned line_ = 1;
    unsigned col_ = 1;
    std::map<std::string, std::pair<std::size_t, std::pair<unsigned, unsigned>>> arity_;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    void skip_space() {
        while (!at_end()) {
            char c = peek();
            if (c == '%') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip_space();
        if (peek() != c) {
            error(std::string("expected '") + c + "'" + found());
        }
        advance();
    }

    std::string found() const {
        if (at_end()) return ", found end of input";
        return std::string(", found '") + peek() + "'";
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    std::string identifier() {
        skip_space();
        std::size_t start = pos_;
        if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
            error("expected identifier" + found());
        }
        while (!at_end() && ident_char(peek())) advance();
        return std::string(text_.substr(start, pos_ - start));
    }

    Term term() {
        skip_space();
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
            return Term::numeral(Natural(std::string(text_.substr(start, pos_ - start)), 10));
        }
        std::string name = identifier();
        if (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_') {
            return Term::variable(std::move(name));
        }
        std::vector<Term> args;
        skip_space();
        if (peek() == '(') {
            advance();
            args.push_back(term());
            skip_space();
            while (peek() == ',') {
                advance();
                args.push_back(term());
                skip_space();
            }
            expect(')');
        }
        return Term::function(std::move(name), std::move(args));
    }

    Atom atom() {
        skip_space();
        unsigned line = line_, col = col_;
        Atom a;
        a.predicate = identifier();
        if (!std::islower(static_cast<unsigned char>(a.predicate[0]))) {
            throw ParseError("predicate names must start with a lowercase letter", line, col);
        }
        if (a.predicate == "not") {
            throw ParseError("'not' cannot be used as a predicate name", line, col);
        }
        skip_space();
        if (peek() == '(') {
            advance();
            a.args.push_back(term());
            skip_space();
            while (peek() == ',') {
                advance();
                a.args.push_back(term());
                skip_space();
            }
            expect(')');
        }
        record_arity(a, line, col);
        return a;
    }

    void record_arity(const Atom& a, unsigned line, unsigned col) {
        auto [it, inserted] = arity_.try_emplace(a.predicate, a.args.size(), std::pair{line, col});
        if (!inserted && it->second.first != a.args.size()) {
            throw Error(ErrorCode::Arity,
                        std::to_string(line) + ":" + std::to_string(col) + ": predicate '" +
                            a.predicate + "' used with arity " + std::to_string(a.args.size()) +
                            " but first used with arity " + std::to_string(it->second.first) +
                            " at " + std::to_string(it->second.second.first) + ":" +
                            std::to_string(it->second.second.second));
        }
    }

    bool keyword_not() {
        skip_space();
        if (text_.substr(pos_, 3) == "not" &&
            (pos_ + 3 >= text_.size() || !ident_char(text_[pos_ + 3]))) {
            advance();
            advance();
            advance();
            return true;
        }
        return false;
    }

    Clause clause() {
        Clause c;
        c.head = atom();
        skip_space();
        if (peek() == ':') {
            advance();
            if (peek() != '-') error("expected ':-'" + found());
            advance();
            do {
                if (keyword_not()) {
                    c.constraints.push_back(atom());
                } else {
                    c.premises.push_back(atom());
                }
                skip_space();
                if (peek() != ',') break;
                advance();
            } while (true);
        }
        expect('.');
        return c;
    }
};

} // namespace

Program parse_program(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Ground programs
// ---------------------------------------------------------------------------

bool NumeralOracle::is_builtin(std::string_view predicate, std::size_t arity) const {
    return predicate == "num" && arity == 1;
}

bool NumeralOracle::holds(const Atom& a) const {
    return a.args.size() == 1 && a.args[0].kind == Term::Kind::Numeral;
}

std::optional<AtomId> GroundProgram::find(const Atom& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<AtomId> GroundProgram::find(std::string_view atom_text) const {
    Program p = parse_program(std::string(atom_text) + ".");
    if (p.clauses.size() != 1) return std::nullopt;
    return find(p.clauses[0].head);
}

AtomId GroundProgram::intern(const Atom& a) {
    auto [it, inserted] = index_.try_emplace(a, static_cast<AtomId>(atoms_.size()));
    if (inserted) atoms_.push_back(a);
    return it->second;
}

bool GroundProgram::add_clause(GroundClause c) {
    auto norm = [](std::vector<AtomId>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    norm(c.premises);
    norm(c.constraints);
    auto [it, inserted] = clause_index_.try_emplace(c, clauses_.size());
    if (inserted) clauses_.push_back(std::move(c));
    return inserted;
}

bool GroundProgram::is_horn() const {
    return std::all_of(clauses_.begin(), clauses_.end(), [](const GroundClause& c) { return c.is_horn(); });
}

std::string GroundProgram::clause_text(const GroundClause& c) const {
    Clause out;
    out.head = atoms_.at(c.head);
    for (auto p : c.premises) out.premises.push_back(atoms_.at(p));
    for (auto n : c.constraints) out.constraints.push_back(atoms_.at(n));
    return to_string(out);
}

Program GroundProgram::to_program() const {
    Program p;
    for (const auto& c : clauses_) {
        Clause out;
        out.head = atoms_.at(c.head);
        for (auto a : c.premises) out.premises.push_back(atoms_.at(a));
        for (auto a : c.constraints) out.constraints.push_back(atoms_.at(a));
        p.clauses.push_back(std::move(out));
    }
    return p;
}

namespace {

// Interns a ground clause in first-occurrence order (head, premises,
// constraints), resolving built-in atoms through the oracle.
void add_instance(GroundProgram& g, const Clause& c, const BuiltinOracle* oracle) {
    auto builtin = [&](const Atom& a) {
        return oracle != nullptr && oracle->is_builtin(a.predicate, a.args.size());
    };
    for (const auto& p : c.premises) {
        if (builtin(p) && !oracle->holds(p)) return;
    }
    for (const auto& n : c.constraints) {
        if (builtin(n) && oracle->holds(n)) return;
    }
    GroundClause gc;
    gc.head = g.intern(c.head);
    for (const auto& p : c.premises) {
        if (!builtin(p)) gc.premises.push_back(g.intern(p));
    }
    for (const auto& n : c.constraints) {
        if (!builtin(n)) gc.constraints.push_back(g.intern(n));
    }
    g.add_clause(std::move(gc));
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (t.kind == Term::Kind::Variable) {
        if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    } else if (t.kind == Term::Kind::Function) {
        for (const auto& a : t.args) collect_vars(a, out);
    }
}

std::vector<std::string> clause_vars(const Clause& c) {
    std::vector<std::string> vars;
    auto scan = [&](const Atom& a) {
        for (const auto& t : a.args) collect_vars(t, vars);
    };
    scan(c.head);
    for (const auto& p : c.premises) scan(p);
    for (const auto& n : c.constraints) scan(n);
    return vars;
}

Term substitute(const Term& t, const std::map<std::string, const Term*>& sub) {
    switch (t.kind) {
        case Term::Kind::Variable: return *sub.at(t.name);
        case Term::Kind::Numeral: return t;
        case Term::Kind::Function: {
            std::vector<Term> args;
            args.reserve(t.args.size());
            for (const auto& a : t.args) args.push_back(substitute(a, sub));
            return Term::function(t.name, std::move(args));
        }
    }
    return t;
}

Atom substitute(const Atom& a, const std::map<std::string, const Term*>& sub) {
    Atom out;
    out.predicate = a.predicate;
    for (const auto& t : a.args) out.args.push_back(substitute(t, sub));
    return out;
}

void collect_symbols(const Term& t, std::map<std::string, std::size_t>& syms) {
    if (t.kind == Term::Kind::Function) {
        syms.emplace(t.name, t.args.size());
        for (const auto& a : t.args) collect_symbols(a, syms);
    }
}

} // namespace

GroundProgram GroundProgram::from_program(const Program& p) {
    if (!p.is_ground()) {
        fail(ErrorCode::InvalidArgument, "program contains variables; ground it first");
    }
    GroundProgram g;
    for (const auto& c : p.clauses) add_instance(g, c, nullptr);
    return g;
}

std::vector<Term> ground_universe(const Program& p, std::size_t depth) {
    // Function symbols in first-occurrence order, then s. Constants other than
    // 0 come from the program text.
    std::map<std::string, std::size_t> syms;
    auto scan = [&](const Atom& a) {
        for (const auto& t : a.args) collect_symbols(t, syms);
    };
    for (const auto& c : p.clauses) {
        scan(c.head);
        for (const auto& a : c.premises) scan(a);
        for (const auto& a : c.constraints) scan(a);
    }
    syms.erase("s");

    std::vector<Term> universe{Term::numeral(0)};
    for (const auto& [name, arity] : syms) {
        if (arity == 0) universe.push_back(Term::function(name, {}));
    }
    std::size_t level_start = 0;
    for (std::size_t d = 1; d <= depth; ++d) {
        std::size_t level_end = universe.size();
        std::vector<Term> next;
        // s(t) for t of depth exactly d-1.
        for (std::size_t i = level_start; i < level_end; ++i) {
            next.push_back(Term::function("s", {universe[i]}));
        }
        // f(t1..tn) with max depth exactly d-1.
        for (const auto& [name, arity] : syms) {
            if (arity == 0) continue;
            std::vector<std::size_t> idx(arity, 0);
            while (true) {
                bool deep = false;
                for (auto i : idx) deep = deep || i >= level_start;
                if (deep) {
                    std::vector<Term> args;
                    for (auto i : idx) args.push_back(universe[i]);
                    next.push_back(Term::function(name, std::move(args)));
                }
                std::size_t k = 0;
                while (k < arity && ++idx[k] == level_end) idx[k++] = 0;
                if (k == arity) break;
            }
        }
        level_start = level_end;
        universe.insert(universe.end(), next.begin(), next.end());
    }
    return universe;
}

GroundProgram ground_over(const Program& p, const std::vector<Term>& universe,
                          const BuiltinOracle* oracle, const HeadFilter& keep) {
    GroundProgram g;
    for (const auto& c : p.clauses) {
        auto vars = clause_vars(c);
        if (vars.empty()) {
            if (!keep || keep(c.head)) add_instance(g, c, oracle);
            continue;
        }
        g.set_exact(false);
        if (universe.empty()) continue;
        std::vector<std::size_t> idx(vars.size(), 0);
        std::map<std::string, const Term*> sub;
        while (true) {
            for (std::size_t i = 0; i < vars.size(); ++i) sub[vars[i]] = &universe[idx[i]];
            Clause inst;
            inst.head = substitute(c.head, sub);
            if (!keep || keep(inst.head)) {
                for (const auto& a : c.premises) inst.premises.push_back(substitute(a, sub));
                for (const auto& a : c.constraints) inst.constraints.push_back(substitute(a, sub));
                add_instance(g, inst, oracle);
            }
            // Last variable varies fastest.
            std::size_t k = vars.size();
            while (k > 0 && ++idx[k - 1] == universe.size()) idx[--k] = 0;
            if (k == 0) break;
        }
    }
    return g;
}

GroundProgram ground(const Program& p, std::size_t depth, const BuiltinOracle* oracle) {
    return ground_over(p, ground_universe(p, depth), oracle);
}

} // namespace stabtree
