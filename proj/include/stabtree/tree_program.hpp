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

// The program of a tree: seven clauses over ipath, notpath and control whose
// stable models correspond to the infinite paths of the tree.
//
// The auxiliary predicates (tree, seq, samelength, diff, shorter, length,
// notincluded, num) are not defined by clauses. Their fixed least model is
// supplied by an oracle that decides them from the tree and the sequence
// coding.
//
// Stable models of the tree program are infinite, so checks run on finite
// fragments. Atoms are coded as 3n for ipath(n), 3n+1 for notpath(n) and
// 3n+2 for control(n). An atom bound B selects the region of depth D: the
// ipath and notpath atoms of every node of length <= D together with
// control(0..D), where D is the largest depth whose whole region is coded
// at or below B. Proof schemes of region atoms only mention region atoms, so
// stability of a model restricted to the region is decided inside it.

#pragma once

#include "stabtree/coding.hpp"
#include "stabtree/program.hpp"
#include "stabtree/semantics.hpp"
#include "stabtree/trees.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stabtree {

enum class PtPredicate { IPath = 0, NotPath = 1, Control = 2 };

struct PtAtom {
    PtPredicate pred = PtPredicate::IPath;
    Natural arg;

    friend bool operator==(const PtAtom& a, const PtAtom& b) { return a.pred == b.pred && a.arg == b.arg; }
};

Natural atom_code(const PtAtom& a);
PtAtom decode_atom(const Natural& code);
std::string to_string(const PtAtom& a);

/// A finite set of tree-program atoms, by atom code.
using Fragment = std::set<Natural>;

/// Truth of the auxiliary predicates on numerals.
class TreeOracle final : public BuiltinOracle {
public:
    explicit TreeOracle(std::shared_ptr<const TreeSpec> spec) : spec_(std::move(spec)) {}
    bool is_builtin(std::string_view predicate, std::size_t arity) const override;
    bool holds(const Atom& ground_atom) const override;

    bool tree(const Natural& n) const;

private:
    std::shared_ptr<const TreeSpec> spec_;
};

class TreeProgram {
public:
    static TreeProgram compile(TreeSpec spec);

    const TreeSpec& spec() const { return *spec_; }
    /// Clauses (1)-(7).
    const Program& program() const { return program_; }
    const TreeOracle& oracle() const { return *oracle_; }
    /// Program text, auxiliary predicates listed as "% builtin" comments.
    std::string text() const;

private:
    std::shared_ptr<const TreeSpec> spec_;
    std::shared_ptr<const TreeOracle> oracle_;
    Program program_;
};

struct CodedNode {
    Node node;
    Natural code;
};

/// Nodes of the checked region, grouped by length.
struct Region {
    std::size_t depth = 0;
    std::vector<std::vector<CodedNode>> levels; // levels[d]: nodes of length d, by code
    std::size_t atom_count() const;
    bool contains(const PtAtom& a) const;
    std::vector<PtAtom> atoms() const; // sorted by code

    std::set<Natural> node_codes;
};

/// Largest region coded at or below atom_bound. Throws Overflow when an
/// infinite level has a node coded within the bound, InvalidArgument when
/// the bound does not even cover control(0).
Region region_for_bound(const TreeProgram& tp, const Natural& atom_bound);

/// Nodes with code <= bound, in code order.
std::vector<CodedNode> nodes_up_to_code(const TreeSpec& t, const Natural& bound);

/// The part of M_beta coded at or below atom_bound. Throws NotAPath.
Fragment m_beta(const TreeProgram& tp, const PathDesc& beta, const Natural& atom_bound);

using PtSupport = std::set<Natural>;

struct SupportCensus {
    std::vector<PtSupport> supports;               // distinct, all routes
    std::map<std::string, std::size_t> by_route; // "(1)".."(7)" -> distinct supports found
    bool saturated = true;
};

/// Supports of the minimal proof schemes of a tree-program atom, from the
/// clause-by-clause case analysis. At most budget supports are collected.
SupportCensus atom_supports(const TreeProgram& tp, const PtAtom& a, std::size_t budget);

struct Census {
    std::size_t count = 0; // inclusion-minimal supports found
    bool saturated = true;
    std::map<std::string, std::size_t> by_route;
};

Census scheme_census(const TreeProgram& tp, const PtAtom& a, std::size_t budget);

struct FragmentVerdict {
    bool pass = false;
    std::optional<PtAtom> witness;
    std::string reason;
    std::size_t depth = 0;        // region depth checked
    std::size_t region_atoms = 0; // atoms decided
    std::vector<Natural> unverified; // atoms of M outside the region
};

/// Bounded stability check of a fragment: every region atom is in M exactly
/// when one of its proof schemes is admitted by M, and no atom of M lacks
/// proof schemes altogether.
FragmentVerdict check_stable_fragment(const TreeProgram& tp, const Fragment& m, const Natural& atom_bound,
                                      std::size_t scheme_budget);

/// The ground program of the region, instantiated from the clause text with
/// the oracle evaluating auxiliary atoms.
GroundProgram region_program(const TreeProgram& tp, const Region& region);

/// Fragment to an interpretation of a region program; atoms outside it are
/// dropped.
AtomSet fragment_to_set(const GroundProgram& g, const Fragment& m);

/// Single-atom flips: each region atom toggled, then up to extra additions of
/// atoms whose argument is not a node, all coded at or below atom_bound.
std::vector<Fragment> single_flips(const TreeProgram& tp, const Fragment& m, const Natural& atom_bound,
                                   std::size_t extra);

} // namespace stabtree
