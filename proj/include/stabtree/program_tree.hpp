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

// The tree of a finite ground program. Infinite paths are exactly the
// sequences f_M of stable models M: f(2i) is 1 when atom i is in M, f(2i+1)
// is the least code of a minimal proof scheme of i admitted by M (0 when i is
// not in M). Codes >= the number of atoms are not atoms, so every path ends
// in zeros.
//
// A node sigma = (sigma(0), ..., sigma(k)) is checked as follows, with kbar
// the largest odd number below k (0 when k = 1), sbar the prefix of length
// kbar + 1, I and O the atoms marked 1 and 0 in sbar, and N the codes of
// minimal schemes mentioning only atoms below floor(k/2):
//   even entries are 0 or 1;
//   (a) sigma(2i) = 0 forces sigma(2i+1) = 0, for every 2i+1 <= k;
//   (e) sigma(2i) = 1 forces sigma(2i+1) to be the least code among minimal
//       schemes of i with its support, for every 2i+1 <= k;
//   (b) for 2i+1 <= kbar and sigma(2i) = 1, that scheme's support misses I;
//   (c) for 2i+1 <= kbar and sigma(2i) = 1, no code in N below sigma(2i+1)
//       belongs to a minimal scheme of i supported inside O;
//   (d) for 2i+1 <= kbar and sigma(2i) = 0, no code in N belongs to a minimal
//       scheme of i supported inside O.

#pragma once

#include "stabtree/coding.hpp"
#include "stabtree/program.hpp"
#include "stabtree/schemes.hpp"
#include "stabtree/semantics.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stabtree {

struct ProgramTreeOptions {
    /// Use N_k in (c) and (d) instead of N_floor(k/2).
    bool full_n_k = false;
};

struct NodeVerdict {
    bool member = true;
    char condition = 0;   // failing condition: 'a'..'e', or 'v' for an even entry outside {0,1}
    std::size_t atom = 0; // the i of the failing condition
};

class ProgramTree {
public:
    explicit ProgramTree(GroundProgram g, ProgramTreeOptions options = {});
    // The index points into the scheme table.
    ProgramTree(const ProgramTree&) = delete;
    ProgramTree& operator=(const ProgramTree&) = delete;
    ProgramTree(ProgramTree&&) = default;
    ProgramTree& operator=(ProgramTree&&) = default;

    const GroundProgram& program() const { return g_; }
    const SchemeTable& schemes() const { return table_; }
    std::size_t atom_count() const { return g_.atom_count(); }

    /// Codes of atom i's minimal schemes that are least among those with the
    /// same support, ascending.
    const std::vector<Natural>& least_codes(AtomId i) const { return least_.at(i); }

    NodeVerdict check(std::span<const Natural> sigma) const;
    bool member(std::span<const Natural> sigma) const { return check(sigma).member; }

    /// Labels x with sigma^x in the tree, ascending.
    std::vector<Natural> children(std::span<const Natural> sigma) const;

private:
    const CodedScheme* least_scheme(AtomId i, const Natural& code) const;

    GroundProgram g_;
    ProgramTreeOptions options_;
    SchemeTable table_;
    std::vector<std::vector<Natural>> least_;
    std::vector<std::map<Natural, const CodedScheme*>> least_index_;
};

/// f_M truncated after position 2n - 1; all later entries are 0. Throws
/// NotStable.
std::vector<Natural> encode_path(const ProgramTree& t, const AtomSet& m);

/// {i : beta(2i) = 1} for the path stem followed by zeros. Every prefix up to
/// length max(check_depth, |stem|) must be a node; throws NotANode otherwise.
AtomSet decode_path(const ProgramTree& t, std::span<const Natural> stem, std::size_t check_depth);

/// Decoded models of all infinite paths: nodes of length 2n are extended by
/// zeros and every prefix up to 2n + 2 + 2 * slack is checked. Throws
/// TooLarge past atom_limit atoms.
std::vector<AtomSet> enumerate_paths_exact(const ProgramTree& t, std::size_t slack = 1,
                                           std::size_t atom_limit = kDefaultAtomLimit);

struct BranchingLevel {
    std::size_t nodes = 0;        // nodes of this length
    std::size_t max_children = 0; // widest node at this length
};

struct BranchingCensus {
    bool overflow = false;
    std::vector<BranchingLevel> levels; // levels[d] for lengths 0..depth
};

BranchingCensus branching_census(const ProgramTree& t, std::size_t depth, std::size_t cap);

} // namespace stabtree
