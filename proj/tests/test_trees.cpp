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
#include "stabtree/trees.hpp"

#include <doctest.h>

#include <set>

using namespace stabtree;

namespace {

TreeSpec binary() { return TreeSpec::regular(1, 0, {{0, Guard::range(0, 1), 0}}); }
TreeSpec only_zero() { return TreeSpec::regular(1, 0, {{0, Guard::exact(0), 0}}); }
TreeSpec wide_root() { return TreeSpec::regular(2, 0, {{0, Guard::at_least(0), 1}, {1, Guard::exact(0), 1}}); }
TreeSpec single_leaf() { return TreeSpec::explicit_tree({{0}}); }

// 0^w and 1^w, split at the root.
TreeSpec two_paths() {
    return TreeSpec::regular(3, 0, {{0, Guard::exact(0), 1}, {0, Guard::exact(1), 2}, {1, Guard::exact(0), 1},
                                    {2, Guard::exact(1), 2}});
}

bool member(const TreeSpec& t, Node n) { return t.member(n); }

} // namespace

TEST_SUITE("trees") {

TEST_CASE("membership") {
    CHECK(member(binary(), {}));
    CHECK(member(binary(), {0, 1, 1, 0}));
    CHECK_FALSE(member(binary(), {0, 2}));
    CHECK(member(single_leaf(), {}));
    CHECK(member(single_leaf(), {0}));
    CHECK_FALSE(member(single_leaf(), {0, 0}));
    CHECK(member(wide_root(), {1000000, 0, 0}));
    CHECK_FALSE(member(wide_root(), {3, 1}));
}

TEST_CASE("children bounds") {
    auto b = binary().children_bound(Node{1, 0});
    CHECK_FALSE(b.infinite);
    CHECK(b.labels == std::vector<Label>{0, 1});
    auto w = wide_root().children_bound(Node{});
    CHECK(w.infinite);
    CHECK(w.lo == 0);
    auto leaf = single_leaf().children_bound(Node{0});
    CHECK_FALSE(leaf.infinite);
    CHECK(leaf.labels.empty());
    CHECK_THROWS_AS(binary().children_bound(Node{2}), Error);
}

TEST_CASE("children bounds agree with membership") {
    for (const auto& t : {binary(), only_zero(), two_paths(), single_leaf()}) {
        for (std::size_t d = 0; d <= 3; ++d) {
            for (const auto& n : t.nodes_at_depth(d, 1000).nodes) {
                auto cb = t.children_bound(n);
                REQUIRE_FALSE(cb.infinite);
                std::set<Label> listed(cb.labels.begin(), cb.labels.end());
                for (Label x = 0; x < 6; ++x) {
                    Node child = n;
                    child.push_back(x);
                    CHECK(t.member(child) == (listed.count(x) > 0));
                }
            }
        }
    }
}

TEST_CASE("levels") {
    auto l = binary().nodes_at_depth(3, 100);
    CHECK_FALSE(l.overflow);
    CHECK(l.nodes.size() == 8);
    CHECK(l.nodes.front() == Node{0, 0, 0});
    CHECK(l.nodes.back() == Node{1, 1, 1});
    CHECK(single_leaf().nodes_at_depth(2, 100).nodes.empty());
    CHECK(wide_root().nodes_at_depth(1, 100).overflow);
    CHECK(binary().nodes_at_depth(4, 10).overflow);

    auto capped = wide_root().nodes_at_depth_capped(1, 3);
    CHECK(capped.overflow);
    CHECK(capped.nodes.size() == 4);
}

TEST_CASE("extendibility") {
    CHECK(binary().ext_at_depth(Node{1, 0, 1}, 5));
    CHECK_FALSE(single_leaf().ext_at_depth(Node{0}, 5));
    CHECK_FALSE(single_leaf().ext_at_depth(Node{}, 5));
    CHECK(only_zero().ext_at_depth(Node{0, 0}, 5));
    // State 1 of this automaton has no way out.
    auto dead = TreeSpec::regular(2, 0, {{0, Guard::exact(0), 0}, {0, Guard::exact(1), 1}});
    CHECK(dead.member(Node{0, 1}));
    CHECK_FALSE(dead.ext_at_depth(Node{0, 1}, 5));
    CHECK(dead.ext_at_depth(Node{0, 0}, 5));
}

TEST_CASE("path sets") {
    auto z = only_zero().paths();
    REQUIRE(z.kind == PathSet::Kind::Finite);
    REQUIRE(z.paths.size() == 1);
    CHECK(z.paths[0] == PathDesc{{}, {0}});
    CHECK(binary().paths().kind == PathSet::Kind::InfinitelyMany);
    auto leaf = single_leaf().paths();
    CHECK(leaf.kind == PathSet::Kind::Finite);
    CHECK(leaf.paths.empty());
    auto two = two_paths().paths();
    REQUIRE(two.kind == PathSet::Kind::Finite);
    CHECK(two.paths.size() == 2);
    CHECK(wide_root().paths().kind == PathSet::Kind::InfinitelyMany);
    auto loop = TreeSpec::regular(1, 0, {{0, Guard::at_least(0), 0}});
    CHECK(loop.paths().kind == PathSet::Kind::Unbounded);
}

TEST_CASE("periodic paths are normalized") {
    // 0 1 0 1 ... through two states.
    auto alt = TreeSpec::regular(2, 0, {{0, Guard::exact(0), 1}, {1, Guard::exact(1), 0}});
    auto ps = alt.paths();
    REQUIRE(ps.paths.size() == 1);
    CHECK(ps.paths[0] == PathDesc{{}, {0, 1}});
    // 5 then zeros.
    auto stem = TreeSpec::regular(2, 0, {{0, Guard::exact(5), 1}, {1, Guard::exact(0), 1}});
    CHECK(stem.paths().paths[0] == PathDesc{{5}, {0}});
    CHECK(stem.on_tree(PathDesc{{5, 0, 0}, {0, 0}}));
    CHECK_FALSE(stem.on_tree(PathDesc{{}, {5}}));
}

TEST_CASE("reported paths lie on the tree and their nodes extend") {
    for (const auto& t : {only_zero(), two_paths()}) {
        auto ps = t.paths();
        REQUIRE(ps.kind == PathSet::Kind::Finite);
        for (const auto& p : ps.paths) {
            CHECK(t.on_tree(p));
            for (std::size_t n = 0; n < 8; ++n) CHECK(t.ext_at_depth(p.prefix(n), 8));
        }
        // Far enough down, the extendible nodes are exactly the path prefixes.
        std::size_t ext = 0;
        for (const auto& n : t.nodes_at_depth(6, 1000).nodes) ext += t.ext_at_depth(n, 6) ? 1 : 0;
        CHECK(ext == ps.paths.size());
    }
}

TEST_CASE("recursive boundedness and height") {
    CHECK(binary().is_rb());
    CHECK_FALSE(wide_root().is_rb());
    CHECK(single_leaf().height() == std::optional<std::size_t>{1});
    CHECK_FALSE(binary().height().has_value());
}

TEST_CASE("malformed specs") {
    CHECK_THROWS_AS(TreeSpec::regular(1, 0, {{0, Guard::range(0, 2), 0}, {0, Guard::exact(1), 0}}), Error);
    CHECK_THROWS_AS(TreeSpec::regular(1, 0, {{0, Guard::range(3, 2), 0}}), Error);
    CHECK_THROWS_AS(TreeSpec::regular(1, 0, {{0, Guard::exact(0), 4}}), Error);
    CHECK_THROWS_AS(TreeSpec::explicit_tree({{0, 1}}), Error);
}

TEST_CASE("JSON round trip") {
    auto t = TreeSpec::from_json(
        R"({"variant":"regular","states":["a","b"],"start":"a",)"
        R"("edges":[{"from":"a","guard":{"range":[0,1]},"to":"b"},{"from":"b","guard":{"atLeast":2},"to":"b"}]})");
    CHECK(t.member(Node{1, 7, 2}));
    CHECK_FALSE(t.member(Node{1, 1}));
    auto back = TreeSpec::from_json(t.to_json());
    CHECK(back.to_json() == t.to_json());
    CHECK(back.member(Node{0, 9}));

    auto e = TreeSpec::from_json(R"({"variant":"explicit","nodes":[[0],[1],[1,3]]})");
    CHECK(e.member(Node{1, 3}));
    CHECK(e.height() == std::optional<std::size_t>{2});
    CHECK_THROWS_AS(TreeSpec::from_json("{"), Error);
    CHECK_THROWS_AS(TreeSpec::from_json(R"({"variant":"forest"})"), Error);
}

} // TEST_SUITE
