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

// Random ground programs, the switch gadget, and the invariant suite run on
// each generated program. Reports are JSON with sorted contents and no
// timing, so equal inputs give byte-identical output.

#pragma once

#include "stabtree/program.hpp"
#include "stabtree/semantics.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace stabtree {

struct SwitchNames {
    std::string on;  // added as a premise of every original clause
    std::string off; // the other half of the switch
};

/// Picks two propositional names not used as predicates in p.
SwitchNames fresh_switch_names(const Program& p);

/// Adds premise `on` to every clause and appends on <- not off and
/// off <- not on. Stable models become {off} plus {on} with each stable
/// model of p.
Program add_switch(const Program& p, SwitchNames* names = nullptr);

struct FuzzBounds {
    std::size_t max_atoms = 8;
    std::size_t max_clauses = 10;
    std::size_t max_body = 3; // premises and constraints, each
};

/// Ground normal programs over atoms p0, p1, ... Clauses are drawn with
/// independent premise and constraint counts; most clauses get at least one
/// constraint.
class ProgramFuzzer {
public:
    ProgramFuzzer(std::uint64_t seed, FuzzBounds bounds);
    Program next();

private:
    std::mt19937_64 rng_;
    FuzzBounds bounds_;
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string witness; // empty on pass
};

struct InvariantOptions {
    std::size_t atom_limit = 12;
    std::size_t blocking_max_m = 12;
    bool run_tree = true;
    bool run_blocking = true;
    bool run_switch = true;
};

/// Runs every invariant check on one finite ground program.
std::vector<CheckResult> run_invariants(const Program& p, const InvariantOptions& options);

nlohmann::json check_json(const std::vector<CheckResult>& checks);
bool all_pass(const std::vector<CheckResult>& checks);

/// The fuzz campaign report.
nlohmann::json fuzz_report(std::uint64_t seed, std::size_t count, const FuzzBounds& bounds,
                           const InvariantOptions& options);

/// Sorted list of models, each a sorted list of atom names.
nlohmann::json models_json(const GroundProgram& g, const std::vector<AtomSet>& models);

} // namespace stabtree
