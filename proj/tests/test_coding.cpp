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


#include "stabtree/coding.hpp"
#include "stabtree/error.hpp"

#include <doctest.h>

#include <set>
#include <vector>

using namespace stabtree;

namespace {

// The closed form 1/2 (x^2 + 2xy + y^2 + 3x + y), evaluated directly.
unsigned long long closed_form(unsigned long long x, unsigned long long y) {
    return (x * x + 2 * x * y + y * y + 3 * x + y) / 2;
}

} // namespace

TEST_SUITE("coding") {

TEST_CASE("pair matches the closed form") {
    CHECK(pair(0, 0) == 0);
    CHECK(pair(0, 1) == 1);
    CHECK(pair(1, 0) == 2);
    CHECK(pair(1, 1) == 4);
    for (unsigned long long x = 0; x < 50; ++x) {
        for (unsigned long long y = 0; y < 50; ++y) {
            CHECK(pair(nat(x), nat(y)) == nat(closed_form(x, y)));
        }
    }
}

TEST_CASE("unpair inverts pair") {
    CHECK(unpair(0) == std::pair<Natural, Natural>{0, 0});
    CHECK(unpair(2) == std::pair<Natural, Natural>{1, 0});
    CHECK(unpair(4) == std::pair<Natural, Natural>{1, 1});
    Natural big("123456789012345678901234567890");
    auto [x, y] = unpair(pair(big, big + 7));
    CHECK(x == big);
    CHECK(y == big + 7);
}

TEST_CASE("pair is a bijection on a square") {
    std::set<Natural> seen;
    for (unsigned long x = 0; x <= 60; ++x) {
        for (unsigned long y = 0; y <= 60; ++y) {
            Natural c = pair(x, y);
            CHECK(seen.insert(c).second);
        }
    }
    // Codes below the diagonal bound are all hit.
    for (unsigned long z = 0; z < 61 * 62 / 2; ++z) CHECK(seen.count(Natural(z)) == 1);
}

TEST_CASE("sequence codes") {
    std::vector<std::uint64_t> empty;
    CHECK(seq_code(std::span<const std::uint64_t>(empty)) == 0);
    std::vector<std::uint64_t> one{0};
    CHECK(seq_code(std::span<const std::uint64_t>(one)) == 2);
    std::vector<std::uint64_t> two{0, 0};
    CHECK(seq_code(std::span<const std::uint64_t>(two)) == 5);
    // (3, 1, 4) nests to the left: pair(3, pair(pair(3, 1), 4)).
    std::vector<std::uint64_t> three{3, 1, 4};
    CHECK(seq_code(std::span<const std::uint64_t>(three)) == nat(closed_form(3, closed_form(closed_form(3, 1), 4))));
}

TEST_CASE("sequence decoding") {
    CHECK(seq_decode(0)->empty());
    CHECK(*seq_decode(2) == std::vector<Natural>{0});
    CHECK(*seq_decode(5) == std::vector<Natural>{0, 0});
    // 1 = pair(0, 1): length 0 with a nonzero body.
    CHECK_FALSE(seq_decode(1).has_value());
    CHECK_FALSE(seq_decode(3).has_value());
    CHECK_THROWS_AS(seq_decode(pair(1000, 0), 100), Error);
}

TEST_CASE("sequence round trip, exhaustive for short sequences") {
    std::vector<std::uint64_t> s;
    std::size_t checked = 0;
    // Length <= 3 with entries < 12 here; the acceptance binary covers the full range.
    for (std::size_t len = 0; len <= 3; ++len) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < len; ++i) total *= 12;
        for (std::size_t idx = 0; idx < total; ++idx) {
            s.assign(len, 0);
            std::size_t r = idx;
            for (std::size_t i = 0; i < len; ++i) {
                s[i] = r % 12;
                r /= 12;
            }
            auto back = seq_decode(seq_code(std::span<const std::uint64_t>(s)));
            REQUIRE(back.has_value());
            REQUIRE(back->size() == len);
            for (std::size_t i = 0; i < len; ++i) CHECK((*back)[i] == nat(s[i]));
            ++checked;
        }
    }
    CHECK(checked == 1 + 12 + 144 + 1728);
}

TEST_CASE("canonical index") {
    CHECK(can_index({}) == 0);
    std::vector<std::uint64_t> zero{0};
    CHECK(can_index(zero) == 1);
    std::vector<std::uint64_t> both{0, 1};
    CHECK(can_index(both) == 3);
    std::vector<std::uint64_t> dup{5, 5, 1};
    CHECK(can_index(dup) == 34);
    CHECK(can_decode(34) == std::vector<std::uint64_t>{1, 5});
    std::set<Natural> seen;
    for (unsigned mask = 0; mask < (1u << 10); ++mask) {
        std::vector<std::uint64_t> members;
        for (unsigned b = 0; b < 10; ++b) {
            if (mask >> b & 1u) members.push_back(b);
        }
        CHECK(seen.insert(can_index(members)).second);
        CHECK(can_decode(can_index(members)) == members);
    }
}

TEST_CASE("clause and scheme codes") {
    // a <- with code(a) = 0.
    CHECK(clause_code(0, {}, {}) == pair(pair(0, 0), 0));
    std::vector<std::uint64_t> b{1};
    CHECK(clause_code(0, b, {}) == pair(pair(0, 2), 0));
    CHECK(clause_code(0, {}, b) == 3);

    std::vector<CodedStep> fact{{clause_code(0, {}, {}), 0}};
    std::vector<Natural> item{pair(clause_code(0, {}, {}), 0)};
    CHECK(scheme_code(fact, {}) == pair(seq_code(item), 0));
    CHECK(scheme_code(fact, {}) == 5);

    // a <- not b as a one-step scheme with support {b}.
    std::vector<CodedStep> neg{{3, 0}};
    CHECK(scheme_code(neg, b) == 1767);
    CHECK(scheme_code(neg, b) != scheme_code(neg, {}));
}

} // TEST_SUITE
