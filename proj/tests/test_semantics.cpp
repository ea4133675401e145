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


#include "stabtree/error.hpp"
#include "stabtree/harness.hpp"
#include "stabtree/semantics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

using namespace stabtree;
using namespace stabtree::testing;

namespace {

using NameSet = std::set<std::string>;

// Stability straight from the definition, on the parsed program: drop clauses
// blocked by m, then iterate the remaining Horn clauses to a fixpoint.
bool reference_stable(const Program& p, const NameSet& m) {
    NameSet lm;
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& c : p.clauses) {
            bool blocked = std::any_of(c.constraints.begin(), c.constraints.end(),
                                       [&](const Atom& a) { return m.count(to_string(a)) > 0; });
            bool ready = std::all_of(c.premises.begin(), c.premises.end(),
                                     [&](const Atom& a) { return lm.count(to_string(a)) > 0; });
            if (!blocked && ready && lm.insert(to_string(c.head)).second) grew = true;
        }
    }
    return lm == m;
}

std::set<NameSet> reference_models(const Program& p) {
    NameSet base;
    for (const auto& c : p.clauses) {
        base.insert(to_string(c.head));
        for (const auto& a : c.premises) base.insert(to_string(a));
        for (const auto& a : c.constraints) base.insert(to_string(a));
    }
    std::vector<std::string> atoms(base.begin(), base.end());
    std::set<NameSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
        NameSet m;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (mask >> i & 1u) m.insert(atoms[i]);
        }
        if (reference_stable(p, m)) out.insert(m);
    }
    return out;
}

std::set<NameSet> as_names(const GroundProgram& g, const std::vector<AtomSet>& models) {
    std::set<NameSet> out;
    for (const auto& m : models) {
        NameSet s;
        for (auto i : members(m)) s.insert(g.atom_name(i));
        out.insert(s);
    }
    return out;
}

} // namespace

TEST_SUITE("semantics") {

TEST_CASE("one step of T_P") {
    auto g = gp("p. q :- p.");
    CHECK(tp_step(g, AtomSet(2)) == named(g, {"p"}));
    CHECK(tp_step(g, named(g, {"p"})) == named(g, {"p", "q"}));
    auto empty = gp("");
    CHECK(tp_step(empty, AtomSet(0)).none());
}

TEST_CASE("least models of Horn programs") {
    auto g = gp("p. q :- p.");
    CHECK(least_model(g) == named(g, {"p", "q"}));
    auto h = gp("q :- p.");
    CHECK(least_model(h).none());
    CHECK_THROWS_AS(least_model(gp("a :- not b.")), Error);
}

TEST_CASE("Gelfond-Lifschitz reduct") {
    auto g = gp(kEx11);
    auto m = named(g, {"p", "q", "s"});
    auto r = gl_reduct(g, m);
    CHECK(r.is_horn());
    CHECK(r.clauses().size() == 3);
    CHECK(to_string(r.to_program()) == "p.\nq :- p.\ns.\n");
    CHECK(least_model(r) == m);

    auto ex16 = gp(kEx16);
    auto b = named(ex16, {"b"});
    CHECK(to_string(gl_reduct(ex16, b).to_program()) == "b.\n");

    auto horn = gp("p. q :- p.");
    CHECK(gl_reduct(horn, named(horn, {"q"})).clauses() == horn.clauses());
}

TEST_CASE("stability checks from the examples") {
    auto ex16 = gp(kEx16);
    CHECK(is_stable(ex16, named(ex16, {"b"})));
    auto sub = gp("a :- not a, not b.");
    CHECK_FALSE(is_stable(sub, named(sub, {})));
    CHECK_FALSE(is_stable(sub, named(sub, {"a"})));

    auto g = gp(kEx11);
    CHECK(is_stable(g, named(g, {"p", "q", "s"})));
    CHECK(is_stable(g, named(g, {"p", "r", "s"})));
    CHECK_FALSE(is_stable(g, named(g, {"p", "s"})));
}

TEST_CASE("enumerate stable models") {
    auto g = gp(kEx11);
    auto models = enumerate_stable(g);
    REQUIRE(models.size() == 2);
    CHECK(as_names(g, models) == std::set<NameSet>{{"p", "q", "s"}, {"p", "r", "s"}});

    auto ex16 = gp(kEx16);
    CHECK(as_names(ex16, enumerate_stable(ex16)) == std::set<NameSet>{{"b"}});
    auto sub = gp("a :- not a, not b.");
    CHECK(enumerate_stable(sub).empty());

    auto ab = gp("a :- not b. b :- not a.");
    CHECK(as_names(ab, enumerate_stable(ab)) == std::set<NameSet>{{"a"}, {"b"}});
    CHECK(enumerate_stable(gp("a :- not a.")).empty());
    CHECK(enumerate_stable(gp("")).size() == 1);
}

TEST_CASE("atom limit is enforced") {
    auto g = gp("a0. a1. a2. a3. a4.");
    CHECK_THROWS_AS(enumerate_stable(g, 4), Error);
    CHECK(enumerate_stable(g, 5).size() == 1);
}

TEST_CASE("stable models agree with a reference evaluator on random programs") {
    ProgramFuzzer fuzz(7, FuzzBounds{6, 8, 3});
    for (int i = 0; i < 150; ++i) {
        auto p = fuzz.next();
        auto g = GroundProgram::from_program(p);
        auto got = enumerate_stable(g);
        CHECK_MESSAGE(as_names(g, got) == reference_models(p), to_string(p));
        for (const auto& m : got) {
            CHECK(is_model(g, m));
            CHECK(reduct_least_model(g, m) == m);
        }
    }
}

} // TEST_SUITE
