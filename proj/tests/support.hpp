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


#pragma once

#include "stabtree/program.hpp"
#include "stabtree/semantics.hpp"

#include <initializer_list>
#include <string>
#include <string_view>

namespace stabtree::testing {

inline constexpr std::string_view kEx11 = "p. q :- p, not r. r :- not q. s :- not t.";
inline constexpr std::string_view kEx16 = "a :- not a, not b. b.";

inline GroundProgram gp(std::string_view text) { return GroundProgram::from_program(parse_program(text)); }

inline AtomSet named(const GroundProgram& g, std::initializer_list<const char*> names) {
    AtomSet s(g.atom_count());
    for (const char* n : names) s.set(*g.find(std::string_view(n)));
    return s;
}

inline AtomId id(const GroundProgram& g, const char* name) { return *g.find(std::string_view(name)); }

} // namespace stabtree::testing
