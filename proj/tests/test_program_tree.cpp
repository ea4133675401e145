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
#include "stabtree/program_tree.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace stabtree;
using namespace stabtree::testing;

namespace {

std::vector<Natural> seq(std::initializer_list<unsigned long> xs) {
    std::vector<Natural> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

} // namespace

TEST_SUITE("prog_to_tree") {

TEST_CASE("nodes of the two-atom even loop") {
    ProgramTree t(gp("a :- not b. b :- not a."));
    REQUIRE(t.least_codes(0).size() == 1);
    const Natural qa = t.least_codes(0)[0];
    const Natural qb = t.least_codes(1)[0];
    CHECK(qa == 1767);
    CHECK(t.member(seq({})));
    CHECK(t.member(std::vector<Natural>{1, qa, 0, 0}));
    CHECK(t.member(std::vector<Natural>{0, 0, 1, qb}));

    std::vector<Natural> both{1, qa, 1, qb};
    CHECK(t.member(both));
    both.emplace_back(0);
    auto v = t.check(both);
    CHECK_FALSE(v.member);
    CHECK(v.condition == 'b');

    auto zero_five = t.check(seq({0, 5}));
    CHECK_FALSE(zero_five.member);
    CHECK(zero_five.condition == 'a');
    CHECK(t.check(seq({2})).condition == 'v');
    CHECK(t.check(seq({1, 5})).condition == 'e');
}

TEST_CASE("children") {
    ProgramTree t(gp("a :- not b. b :- not a."));
    CHECK(t.children(seq({})) == seq({0, 1}));
    CHECK(t.children(seq({0})) == seq({0}));
    CHECK(t.children(seq({1})) == std::vector<Natural>{1767});
    CHECK(t.children(seq({0, 5})).empty());
}

TEST_CASE("encoding stable models") {
    ProgramTree fact(gp("a."));
    CHECK(encode_path(fact, make_set(1, {0})) == seq({1, 5}));
    CHECK_THROWS_AS(encode_path(fact, make_set(1, {})), Error);

    ProgramTree t(gp("a :- not b. b :- not a."));
    auto f = encode_path(t, make_set(2, {1}));
    CHECK(f == std::vector<Natural>{0, 0, 1, t.least_codes(1)[0]});
    CHECK(decode_path(t, f, 8) == make_set(2, {1}));
}

TEST_CASE("decoding rejects prefixes off the tree") {
    ProgramTree t(gp("a :- not b. b :- not a."));
    CHECK_THROWS_AS(decode_path(t, seq({0, 0, 0, 0}), 8), Error);
    try {
        decode_path(t, seq({0, 0, 0, 0}), 8);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotANode);
        CHECK(std::string(e.what()).find("(d)") != std::string::npos);
    }
}

TEST_CASE("paths of small programs") {
    auto ex11 = gp(kEx11);
    ProgramTree t(ex11);
    auto paths = enumerate_paths_exact(t);
    CHECK(paths.size() == 2);
    CHECK(paths == enumerate_stable(ex11));

    CHECK(enumerate_paths_exact(ProgramTree(gp("a :- not a."))).empty());
    auto horn = gp("p. q :- p.");
    auto hp = enumerate_paths_exact(ProgramTree(horn));
    REQUIRE(hp.size() == 1);
    CHECK(hp[0] == named(horn, {"p", "q"}));

    auto ab = gp("a :- not b. b :- not a.");
    CHECK(enumerate_paths_exact(ProgramTree(ab)).size() == 2);
    CHECK_THROWS_AS(enumerate_paths_exact(ProgramTree(ab), 1, 1), Error);
}

TEST_CASE("branching census is finite on finite programs") {
    ProgramTree t(gp(kEx11));
    auto c = branching_census(t, 8, 1000);
    CHECK_FALSE(c.overflow);
    REQUIRE(c.levels.size() == 9);
    CHECK(c.levels[0].nodes == 1);
    CHECK(c.levels[0].max_children == 2);
    CHECK(branching_census(t, 8, 1).overflow);
}

TEST_CASE("round trip and path equality on random programs") {
    ProgramFuzzer fuzz(3, FuzzBounds{6, 8, 3});
    for (int i = 0; i < 150; ++i) {
        auto p = fuzz.next();
        auto g = GroundProgram::from_program(p);
        auto stable = enumerate_stable(g);
        ProgramTree t(g);
        ProgramTree full(g, ProgramTreeOptions{true});
        CHECK_MESSAGE(enumerate_paths_exact(t) == stable, to_string(p));
        CHECK_MESSAGE(enumerate_paths_exact(full) == stable, to_string(p));
        for (const auto& m : stable) {
            auto f = encode_path(t, m);
            for (std::size_t l = 0; l <= f.size(); ++l) {
                CHECK(t.member(std::span<const Natural>(f.data(), l)));
            }
            CHECK(decode_path(t, f, f.size() + 6) == m);
        }
    }
}

} // TEST_SUITE
