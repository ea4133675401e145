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
#include "stabtree/tree_program.hpp"

#include <doctest.h>

#include <algorithm>

using namespace stabtree;

namespace {

TreeSpec binary() { return TreeSpec::regular(1, 0, {{0, Guard::range(0, 1), 0}}); }
TreeSpec only_zero() { return TreeSpec::regular(1, 0, {{0, Guard::exact(0), 0}}); }
TreeSpec wide_root() { return TreeSpec::regular(2, 0, {{0, Guard::at_least(0), 1}, {1, Guard::exact(0), 1}}); }

Natural code_of(Node n) { return seq_code(std::span<const std::uint64_t>(n)); }
Natural ip(Node n) { return atom_code({PtPredicate::IPath, code_of(n)}); }
Natural np(Node n) { return atom_code({PtPredicate::NotPath, code_of(n)}); }
Natural ctl(unsigned n) { return atom_code({PtPredicate::Control, n}); }

const PathDesc kZeros{{}, {0}};

} // namespace

TEST_SUITE("tree_to_prog") {

TEST_CASE("the seven clauses") {
    auto tp = TreeProgram::compile(only_zero());
    const auto& p = tp.program();
    REQUIRE(p.clauses.size() == 7);
    CHECK(to_string(p.clauses[2]) == "ipath(0).");
    CHECK(to_string(p.clauses[0]) == "ipath(X) :- tree(X), not notpath(X).");
    CHECK(to_string(p.clauses[6]) == "control(X) :- num(X), not control(X).");
    for (const auto& c : p.clauses) {
        const auto& h = c.head.predicate;
        CHECK((h == "ipath" || h == "notpath" || h == "control"));
        CHECK_FALSE(tp.oracle().is_builtin(h, 1));
    }
    auto text = tp.text();
    CHECK(text.find("ipath(0).\n") != std::string::npos);
    CHECK(text.find("% builtin notincluded/2") != std::string::npos);
    CHECK(parse_program(text) == p);
}

TEST_CASE("atom coding") {
    CHECK(atom_code({PtPredicate::IPath, 5}) == 15);
    CHECK(atom_code({PtPredicate::NotPath, 5}) == 16);
    CHECK(atom_code({PtPredicate::Control, 0}) == 2);
    for (unsigned c = 0; c < 60; ++c) CHECK(atom_code(decode_atom(c)) == c);
    CHECK(to_string(decode_atom(16)) == "notpath(5)");
}

TEST_CASE("auxiliary predicates") {
    auto spec = std::make_shared<const TreeSpec>(binary());
    TreeOracle o(spec);
    auto holds = [&](const char* text) { return o.holds(parse_program(std::string(text) + ".").clauses[0].head); };
    CHECK(o.tree(0));
    CHECK(o.tree(code_of({0, 1})));
    CHECK_FALSE(o.tree(code_of({2})));
    CHECK_FALSE(o.tree(1)); // not a sequence code
    CHECK(holds("seq(5)"));
    CHECK_FALSE(holds("seq(1)"));
    CHECK(holds("num(17)"));
    CHECK(holds("samelength(2, 4)"));
    CHECK_FALSE(holds("samelength(2, 5)"));
    CHECK(holds("diff(2, 4)"));
    CHECK_FALSE(holds("diff(4, 4)"));
    CHECK(holds("shorter(2, 5)"));
    CHECK_FALSE(holds("shorter(5, 2)"));
    CHECK(holds("length(5, 2)"));
    CHECK_FALSE(holds("length(5, 1)"));
    // (1) is not an initial segment of (0, 0).
    CHECK(holds("notincluded(4, 5)"));
    CHECK_FALSE(holds("notincluded(2, 5)"));
    CHECK_FALSE(o.is_builtin("ipath", 1));
}

TEST_CASE("regions") {
    auto tp = TreeProgram::compile(only_zero());
    auto r = region_for_bound(tp, 16);
    CHECK(r.depth == 2);
    CHECK(r.contains({PtPredicate::NotPath, 5}));
    CHECK_FALSE(r.contains({PtPredicate::IPath, 4}));
    CHECK(r.atom_count() == 3 * 2 + 3);
    CHECK(region_for_bound(tp, 15).depth == 1);
    CHECK_THROWS_AS(region_for_bound(tp, 1), Error);

    auto wide = TreeProgram::compile(wide_root());
    CHECK_THROWS_AS(region_for_bound(wide, 30), Error);
}

TEST_CASE("M_beta on the only-0 tree") {
    auto tp = TreeProgram::compile(only_zero());
    auto m = m_beta(tp, kZeros, 16);
    for (const auto& a : {ip({}), ip({0}), ip({0, 0}), ctl(0), ctl(1), ctl(2)}) CHECK(m.count(a) == 1);
    for (const auto& a : m) CHECK(decode_atom(a).pred != PtPredicate::NotPath);
    CHECK_THROWS_AS(m_beta(tp, PathDesc{{}, {1}}, 16), Error);
}

TEST_CASE("M_beta on the binary tree") {
    auto tp = TreeProgram::compile(binary());
    auto m = m_beta(tp, kZeros, 25);
    CHECK(m.count(np({1})) == 1);
    CHECK(m.count(np({0, 1})) == 1);
    CHECK(m.count(ip({0, 0})) == 1);
    CHECK(m.count(ip({1})) == 0);
}

TEST_CASE("fragment checks on the only-0 tree") {
    auto tp = TreeProgram::compile(only_zero());
    const Natural bound = 40;
    auto m = m_beta(tp, kZeros, bound);
    auto v = check_stable_fragment(tp, m, bound, 1000);
    CHECK(v.pass);
    CHECK(v.depth >= 2);

    auto broken = m;
    broken.erase(ip({0}));
    auto bad = check_stable_fragment(tp, broken, bound, 1000);
    CHECK_FALSE(bad.pass);
    CHECK(bad.witness.has_value());

    for (const auto& f : single_flips(tp, m, bound, 5)) CHECK_FALSE(check_stable_fragment(tp, f, bound, 1000).pass);
}

TEST_CASE("a finite tree has no fragment with control beyond its height") {
    auto tp = TreeProgram::compile(TreeSpec::explicit_tree({{0}}));
    const Natural bound = 20;
    Fragment m{ip({}), ip({0}), ctl(0), ctl(1), ctl(2)};
    auto v = check_stable_fragment(tp, m, bound, 1000);
    CHECK_FALSE(v.pass);
    Fragment without{ip({}), ip({0}), ctl(0), ctl(1)};
    CHECK_FALSE(check_stable_fragment(tp, without, bound, 1000).pass);
}

TEST_CASE("scheme census") {
    auto bin = TreeProgram::compile(binary());
    auto c2 = scheme_census(bin, {PtPredicate::Control, 2}, 100);
    CHECK(c2.saturated);
    CHECK(c2.by_route["(6)"] == 4);
    CHECK(c2.count == 5);
    auto root = scheme_census(bin, {PtPredicate::IPath, 0}, 100);
    CHECK(root.count == 1);
    CHECK(root.saturated);

    auto wide = TreeProgram::compile(wide_root());
    auto c1 = scheme_census(wide, {PtPredicate::Control, 1}, 50);
    CHECK_FALSE(c1.saturated);
    CHECK(c1.count == 50);
}

TEST_CASE("region programs agree with the fragment check") {
    // Binary tree, depth 2: one stable model per node of length 2.
    auto tp = TreeProgram::compile(binary());
    auto region = region_for_bound(tp, 70);
    REQUIRE(region.depth == 2);
    auto g = region_program(tp, region);
    auto models = enumerate_stable(g);
    CHECK(models.size() == 4);
    for (const auto& beta : {kZeros, PathDesc{{}, {0, 1}}, PathDesc{{1}, {0}}}) {
        auto m = m_beta(tp, beta, 70);
        CHECK(check_stable_fragment(tp, m, 70, 1000).pass);
        auto s = fragment_to_set(g, m);
        CHECK(std::find(models.begin(), models.end(), s) != models.end());
    }
}

} // TEST_SUITE
