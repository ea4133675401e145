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

// Proof schemes: conditional derivations carrying their own support.
//
// A scheme is minimal when no scheme with the same conclusion uses a proper
// subset of its clauses. Minimal schemes never repeat a clause and never use
// two clauses with the same head, so each minimal clause set is an acyclic
// justification: one clause per derived atom, every atom needed by the
// conclusion. One scheme per minimal clause set is kept, with steps in
// topological order (lowest atom code first among ready atoms).

#pragma once

#include "stabtree/coding.hpp"
#include "stabtree/program.hpp"
#include "stabtree/semantics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stabtree {

struct SchemeStep {
    std::size_t clause; // index into GroundProgram::clauses()
    AtomId atom;        // derived atom, the clause head
    friend bool operator==(const SchemeStep&, const SchemeStep&) = default;
};

struct ProofScheme {
    std::vector<SchemeStep> steps;
    std::vector<AtomId> support; // sorted, duplicate-free

    AtomId conclusion() const { return steps.back().atom; }
    /// Sorted distinct clause indices.
    std::vector<std::size_t> clause_set() const;
    friend bool operator==(const ProofScheme&, const ProofScheme&) = default;
};

/// Builds the scheme with the given steps, computing the support. Throws
/// MalformedScheme when the steps do not form a derivation.
ProofScheme make_scheme(const GroundProgram& g, std::vector<SchemeStep> steps);

/// Canonical scheme over a clause set that forms an acyclic justification.
/// Throws MalformedScheme if the clauses cannot all fire.
ProofScheme canonical_scheme(const GroundProgram& g, const std::vector<std::size_t>& clauses);

/// Throws MalformedScheme unless steps chain correctly and the support is the
/// union of constraint sets.
void validate(const GroundProgram& g, const ProofScheme& ps);

Natural scheme_code(const GroundProgram& g, const ProofScheme& ps);
Natural clause_code(const GroundProgram& g, std::size_t clause);

std::string to_string(const GroundProgram& g, const ProofScheme& ps);

/// A minimal scheme with its code and the largest atom code mentioned by any
/// of its clauses.
struct CodedScheme {
    ProofScheme scheme;
    Natural code;
    AtomId max_atom = 0;
};

/// All minimal schemes concluding `atom` that use at most clause_budget
/// clauses, sorted by code.
std::vector<CodedScheme> enumerate_min_schemes(const GroundProgram& g, AtomId atom,
                                               std::size_t clause_budget);
std::vector<CodedScheme> enumerate_min_schemes(const GroundProgram& g, AtomId atom);

bool is_minimal(const GroundProgram& g, const ProofScheme& ps);

inline bool admits(const AtomSet& m, const ProofScheme& ps) {
    for (auto a : ps.support) {
        if (a < m.size() && m.test(a)) return false;
    }
    return true;
}

/// Complete minimal-scheme table of a finite ground program.
class SchemeTable {
public:
    explicit SchemeTable(const GroundProgram& g);
    SchemeTable(const GroundProgram& g, std::size_t clause_budget);

    const std::vector<CodedScheme>& of(AtomId atom) const { return table_.at(atom); }
    std::size_t atom_count() const { return table_.size(); }
    /// True when the search was exhaustive for an exact grounding.
    bool saturated() const { return saturated_; }

private:
    std::vector<std::vector<CodedScheme>> table_;
    bool saturated_ = true;
};

/// Stability through supports: every atom of m has an admitted minimal
/// scheme and no other atom does.
bool stable_by_schemes(const GroundProgram& g, const AtomSet& m);
bool stable_by_schemes(const SchemeTable& t, const AtomSet& m);

/// Codes of minimal schemes all of whose clause atoms are below k.
std::vector<Natural> n_k(const SchemeTable& t, std::uint64_t k);
std::vector<Natural> n_k(const GroundProgram& g, std::uint64_t k);
/// Canonical index of n_k. Throws TooLarge when a code is too big to serve
/// as an exponent.
Natural h_index(const GroundProgram& g, std::uint64_t k);

// ---------------------------------------------------------------------------
// Defining equations
// ---------------------------------------------------------------------------

using Support = std::vector<AtomId>;

/// Total order on finite sets: empty first, then by largest element, then by
/// size, then lexicographically.
bool support_less(const Support& u, const Support& v);

/// The inclusion-minimal members of a support list, order preserved.
std::vector<Support> inclusion_minimal(const std::vector<Support>& supports);

struct DefiningEquation {
    AtomId atom = 0;
    std::vector<Support> supports; // ordered by support_less
    bool reduced = false;
    bool saturated = true;
};

DefiningEquation defining_equation(const GroundProgram& g, AtomId atom, bool reduced);
DefiningEquation defining_equation(const SchemeTable& t, AtomId atom, bool reduced);
/// "q <=> (~r)"; empty support prints as "true", no support as "false".
std::string to_string(const GroundProgram& g, const DefiningEquation& eq);

/// All subsets satisfying every (reduced) defining equation.
std::vector<AtomSet> models_of_theory(const GroundProgram& g, bool reduced,
                                      std::size_t atom_limit = kDefaultAtomLimit);

struct FsProbe {
    std::size_t supports_found = 0; // inclusion-minimal supports
    bool saturated = false;
};

FsProbe fs_probe(const GroundProgram& g, AtomId atom, std::size_t clause_budget);

// ---------------------------------------------------------------------------
// Blocking sets and constrained stability
// ---------------------------------------------------------------------------

struct BlockingResult {
    bool holds = false;
    bool fs_condition = false; // condition (1)
    /// First subset S of {0..m} (as a bitmask) that satisfies none of the
    /// escape clauses, when condition (2) fails.
    std::optional<std::uint64_t> counterexample;
};

inline constexpr std::uint64_t kMaxBlockingM = 20;

/// Explicit initial blocking set check at m. With require_fs = false this is
/// the plain initial blocking set. Throws TooLarge when m > 20.
BlockingResult explicit_blocking_set(const GroundProgram& g, std::uint64_t m,
                                     bool require_fs = true);

/// Smallest m <= max_m with an explicit initial blocking set.
std::optional<std::uint64_t> minimal_blocking_m(const GroundProgram& g, std::uint64_t max_m);

struct SchemePin {
    AtomId atom;
    ProofScheme scheme;
};

/// Whether some stable model contains every pinned atom with the pinned
/// scheme as its least-code admitted minimal scheme, and omits every
/// unpinned atom coded below the largest pinned atom.
bool exists_constrained_stable(const GroundProgram& g, const std::vector<SchemePin>& pins,
                               std::size_t atom_limit = kDefaultAtomLimit);

} // namespace stabtree
