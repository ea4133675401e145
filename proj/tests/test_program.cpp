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
#include "stabtree/program.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace stabtree;
using namespace stabtree::testing;

TEST_SUITE("program") {

TEST_CASE("parse the four clauses of the running example") {
    auto p = parse_program(kEx11);
    REQUIRE(p.clauses.size() == 4);
    CHECK(to_string(p.clauses[0]) == "p.");
    CHECK(to_string(p.clauses[1]) == "q :- p, not r.");
    CHECK(to_string(p.clauses[2]) == "r :- not q.");
    CHECK(to_string(p.clauses[3]) == "s :- not t.");
    CHECK(p.is_ground());
    CHECK(parse_program(to_string(p)) == p);
}

TEST_CASE("empty input and comments") {
    CHECK(parse_program("").clauses.empty());
    CHECK(parse_program("% nothing here\n").clauses.empty());
    CHECK(parse_program("a. % trailing\nb :- a.").clauses.size() == 2);
}

TEST_CASE("predicate clause with a variable") {
    auto p = parse_program("e(X) :- n(X), not e(X).");
    REQUIRE(p.clauses.size() == 1);
    CHECK_FALSE(p.is_ground());
    CHECK(p.clauses[0].head.args[0].kind == Term::Kind::Variable);
    CHECK(to_string(p.clauses[0]) == "e(X) :- n(X), not e(X).");
}

TEST_CASE("numerals and successor terms") {
    auto p = parse_program("q(s(s(0))). q(2).");
    CHECK(p.clauses[0].head == p.clauses[1].head);
    CHECK(to_string(p.clauses[0].head) == "q(2)");
    CHECK(Term::function("s", {Term::numeral(4)}) == Term::numeral(5));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_program("p :- ."), ParseError);
    CHECK_THROWS_AS(parse_program("p"), ParseError);
    CHECK_THROWS_AS(parse_program("P."), ParseError);
    try {
        parse_program("a.\nb :- c d.");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.code() == ErrorCode::Parse);
    }
}

TEST_CASE("arity mismatch is rejected") {
    CHECK_THROWS_AS(parse_program("p(1). q :- p."), Error);
    try {
        parse_program("p(1). q :- p.");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Arity);
    }
}

TEST_CASE("Herbrand base in first-occurrence order") {
    auto g = gp(kEx11);
    REQUIRE(g.atom_count() == 5);
    const char* names[] = {"p", "q", "r", "s", "t"};
    for (AtomId i = 0; i < 5; ++i) CHECK(g.atom_name(i) == names[i]);
    CHECK(g.clauses().size() == 4);
    CHECK(gp("").atom_count() == 0);
    CHECK(gp("a :- b, b, not a.").atom_count() == 2);
}

TEST_CASE("duplicate ground clauses collapse") {
    auto g = gp("a :- b. a :- b. b.");
    CHECK(g.clauses().size() == 2);
}

TEST_CASE("grounding a variable-free program is the identity") {
    auto p = parse_program(kEx11);
    for (std::size_t d : {0u, 1u, 3u}) {
        auto g = ground(p, d);
        CHECK(g.exact());
        CHECK(g.to_program() == p);
    }
}

TEST_CASE("grounding over numerals up to a depth") {
    auto g = ground(parse_program("e(X) :- n(X), not e(X)."), 2);
    CHECK(g.clauses().size() == 3);
    CHECK(g.find("e(0)").has_value());
    CHECK(g.find("e(2)").has_value());
    CHECK_FALSE(g.find("e(3)").has_value());
    CHECK_FALSE(g.exact());

    auto two = ground(parse_program("r(X, Y) :- a(X), b(Y)."), 1);
    CHECK(two.clauses().size() == 4);
}

TEST_CASE("from_program rejects variables") {
    CHECK_THROWS_AS(GroundProgram::from_program(parse_program("e(X) :- n(X).")), Error);
}

TEST_CASE("num is evaluated at grounding unless defined") {
    NumeralOracle num;
    auto g = ground(parse_program("p :- num(X), not r(X)."), 3, &num);
    // One clause per numeral 0..3, with num(i) removed from the body.
    CHECK(g.clauses().size() == 4);
    for (const auto& c : g.clauses()) CHECK(c.premises.empty());
    CHECK_FALSE(g.find("num(0)").has_value());

    auto defined = ground(parse_program("num(0). p :- num(X)."), 1, &num);
    CHECK(defined.find("num(0)").has_value());
}

} // TEST_SUITE
