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

// Syntax, parsing, printing and grounding of finite normal logic programs
// over a language with the constant 0 and the unary function s.

#pragma once

#include "stabtree/coding.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stabtree {

struct Term {
    enum class Kind { Variable, Numeral, Function };

    Kind kind = Kind::Numeral;
    std::string name;       // variable name or function symbol
    Natural value;          // numeral value n, standing for s^n(0)
    std::vector<Term> args; // function arguments; empty for constants

    static Term variable(std::string name);
    static Term numeral(Natural value);
    /// Builds f(args); s applied to a numeral folds into a numeral.
    static Term function(std::string name, std::vector<Term> args);

    bool is_ground() const;
    std::size_t depth() const;
};

int compare(const Term& a, const Term& b);
inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool is_ground() const;
};

int compare(const Atom& a, const Atom& b);
inline bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
inline bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

/// head <- premises, not constraints.
struct Clause {
    Atom head;
    std::vector<Atom> premises;
    std::vector<Atom> constraints;

    bool is_ground() const;
};

bool operator==(const Clause& a, const Clause& b);

struct Program {
    std::vector<Clause> clauses;

    bool is_ground() const;
};

inline bool operator==(const Program& a, const Program& b) { return a.clauses == b.clauses; }

/// Parses the clause text format. Throws ParseError (syntax) or Error(Arity).
Program parse_program(std::string_view text);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Clause& c);
std::string to_string(const Program& p);

/// Atom codes inside a ground program are positions in the Herbrand base.
using AtomId = std::uint32_t;

/// Premise and constraint lists are sorted and duplicate-free.
struct GroundClause {
    AtomId head = 0;
    std::vector<AtomId> premises;
    std::vector<AtomId> constraints;

    bool is_horn() const { return constraints.empty(); }
    friend bool operator==(const GroundClause&, const GroundClause&) = default;
    friend auto operator<=>(const GroundClause&, const GroundClause&) = default;
};

/// Evaluates atoms of predicates that are not defined by the program.
class BuiltinOracle {
public:
    virtual ~BuiltinOracle() = default;
    virtual bool is_builtin(std::string_view predicate, std::size_t arity) const = 0;
    virtual bool holds(const Atom& ground_atom) const = 0;
};

/// num/1 holds on every numeral; used when a program mentions num without
/// defining it.
class NumeralOracle final : public BuiltinOracle {
public:
    bool is_builtin(std::string_view predicate, std::size_t arity) const override;
    bool holds(const Atom& ground_atom) const override;
};

/// A finite set of ground clauses over a coded Herbrand base.
class GroundProgram {
public:
    GroundProgram() = default;

    /// Requires a variable-free program. Throws InvalidArgument otherwise.
    static GroundProgram from_program(const Program& p);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<GroundClause>& clauses() const { return clauses_; }
    std::size_t atom_count() const { return atoms_.size(); }

    /// False when this is a depth-bounded fragment of an infinite grounding.
    bool exact() const { return exact_; }
    void set_exact(bool exact) { exact_ = exact; }

    std::optional<AtomId> find(const Atom& a) const;
    std::optional<AtomId> find(std::string_view atom_text) const;
    AtomId intern(const Atom& a);
    /// Adds a clause unless an equal one is present; returns false on duplicates.
    bool add_clause(GroundClause c);

    bool is_horn() const;
    std::string atom_name(AtomId id) const { return to_string(atoms_.at(id)); }
    std::string clause_text(const GroundClause& c) const;
    Program to_program() const;

private:
    std::vector<Atom> atoms_;
    std::map<Atom, AtomId> index_;
    std::vector<GroundClause> clauses_;
    std::map<GroundClause, std::size_t> clause_index_;
    bool exact_ = true;
};

/// All ground instances with variables ranging over terms of nesting depth
/// <= depth. Built-in atoms are evaluated by the oracle and removed: a false
/// built-in premise or true built-in constraint drops the instance.
GroundProgram ground(const Program& p, std::size_t depth, const BuiltinOracle* oracle = nullptr);

using HeadFilter = std::function<bool(const Atom&)>;

/// Ground instances with variables ranging over an explicit term universe.
/// Instances whose head fails `keep` are skipped.
GroundProgram ground_over(const Program& p, const std::vector<Term>& universe,
                          const BuiltinOracle* oracle, const HeadFilter& keep = {});

/// Ground terms of nesting depth <= depth over 0, s and the symbols of p.
std::vector<Term> ground_universe(const Program& p, std::size_t depth);

} // namespace stabtree
