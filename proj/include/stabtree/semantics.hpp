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

// Least models, Gelfond-Lifschitz reducts and stable models of ground
// programs.

#pragma once

#include "stabtree/program.hpp"

#include <boost/dynamic_bitset.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace stabtree {

/// An interpretation: a set of atom codes of one ground program.
using AtomSet = boost::dynamic_bitset<>;

AtomSet make_set(std::size_t universe, std::initializer_list<AtomId> members);
AtomSet make_set(std::size_t universe, const std::vector<AtomId>& members);
std::vector<AtomId> members(const AtomSet& s);
/// "{p, q}" using the program's atom names.
std::string format_set(const GroundProgram& g, const AtomSet& s);

inline constexpr std::size_t kDefaultAtomLimit = 22;

/// One application of the immediate consequence operator. Throws NotHorn.
AtomSet tp_step(const GroundProgram& g, const AtomSet& s);

/// Least fixpoint of tp_step from the empty set. Throws NotHorn.
AtomSet least_model(const GroundProgram& g);

/// Drops clauses whose constraints meet m, then strips constraints.
GroundProgram gl_reduct(const GroundProgram& g, const AtomSet& m);

/// Least model of the reduct without materialising it.
AtomSet reduct_least_model(const GroundProgram& g, const AtomSet& m);

bool is_stable(const GroundProgram& g, const AtomSet& m);

/// Brute force over all subsets of the Herbrand base, in increasing
/// bitmask order. Throws TooLarge when the base exceeds atom_limit.
std::vector<AtomSet> enumerate_stable(const GroundProgram& g,
                                      std::size_t atom_limit = kDefaultAtomLimit);

/// True when m satisfies every clause read classically.
bool is_model(const GroundProgram& g, const AtomSet& m);

} // namespace stabtree
