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

#include <algorithm>
#include <cmath>

namespace stabtree {

std::optional<std::uint64_t> to_u64(const Natural& n) {
    if (sgn(n) < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    std::size_t count = 0;
    mpz_export(&v, &count, 1, sizeof(v), 0, 0, n.get_mpz_t());
    return count == 0 ? 0 : v;
}

std::string to_string(const Natural& n) { return n.get_str(10); }

namespace {

// Diagonal index of a code below 2^60.
std::uint64_t diagonal(std::uint64_t z) {
    const std::uint64_t d = 8 * z + 1;
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(d)));
    while (root * root > d) --root;
    while ((root + 1) * (root + 1) <= d) ++root;
    return (root - 1) / 2;
}

// r = pair(x, y); r may alias neither argument.
void pair_into(mpz_t r, const mpz_t x, const mpz_t y) {
    if (mpz_sizeinbase(x, 2) < 30 && mpz_sizeinbase(y, 2) < 30) {
        const std::uint64_t a = mpz_get_ui(x), s = a + mpz_get_ui(y);
        mpz_set_ui(r, s * (s + 1) / 2 + a);
        return;
    }
    thread_local Natural next;
    mpz_add(r, x, y);
    mpz_add_ui(next.get_mpz_t(), r, 1);
    mpz_mul(r, r, next.get_mpz_t());
    mpz_tdiv_q_2exp(r, r, 1);
    mpz_add(r, r, x);
}

// (x, y) = unpair(z); x and y must be distinct from z.
void unpair_into(mpz_t x, mpz_t y, const mpz_t z) {
    if (mpz_sizeinbase(z, 2) <= 60) {
        const std::uint64_t v = mpz_get_ui(z);
        const std::uint64_t d = diagonal(v);
        const std::uint64_t a = v - d * (d + 1) / 2;
        mpz_set_ui(x, a);
        mpz_set_ui(y, d - a);
        return;
    }
    // w = floor((sqrt(8z + 1) - 1) / 2) is the diagonal index, kept in y.
    mpz_mul_2exp(y, z, 3);
    mpz_add_ui(y, y, 1);
    mpz_sqrt(y, y);
    mpz_sub_ui(y, y, 1);
    mpz_tdiv_q_2exp(y, y, 1);
    // x = z - w(w+1)/2, y = w - x.
    mpz_add_ui(x, y, 1);
    mpz_mul(x, x, y);
    mpz_tdiv_q_2exp(x, x, 1);
    mpz_sub(x, z, x);
    mpz_sub(y, y, x);
}

} // namespace

Natural pair(const Natural& x, const Natural& y) {
    Natural r;
    pair_into(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

std::pair<Natural, Natural> unpair(const Natural& code) {
    Natural x, y;
    unpair_into(x.get_mpz_t(), y.get_mpz_t(), code.get_mpz_t());
    return {std::move(x), std::move(y)};
}

Natural tuple_code(std::span<const Natural> xs) {
    Natural acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        acc = pair(acc, xs[i]);
    }
    return acc;
}

Natural seq_code(std::span<const Natural> seq) {
    if (seq.empty()) {
        return 0;
    }
    return pair(nat(seq.size()), tuple_code(seq));
}

Natural seq_code(std::span<const std::uint64_t> seq) {
    if (seq.empty()) {
        return 0;
    }
    // Stay in machine words while the running code is small.
    std::uint64_t small = seq[0];
    std::size_t i = 1;
    for (; i < seq.size() && small < (1u << 29) && seq[i] < (1u << 29); ++i) {
        const std::uint64_t s = small + seq[i];
        small = s * (s + 1) / 2 + small;
    }
    Natural acc = nat(small), item, next;
    for (; i < seq.size(); ++i) {
        item = nat(seq[i]);
        pair_into(next.get_mpz_t(), acc.get_mpz_t(), item.get_mpz_t());
        mpz_swap(acc.get_mpz_t(), next.get_mpz_t());
    }
    return pair(nat(seq.size()), acc);
}

std::optional<Natural> seq_length(const Natural& code) {
    if (code == 0) {
        return Natural(0);
    }
    auto [len, body] = unpair(code);
    if (len == 0) {
        return std::nullopt;
    }
    return len;
}

std::optional<std::vector<Natural>> seq_decode(const Natural& code, std::uint64_t max_length) {
    if (code == 0) {
        return std::vector<Natural>{};
    }
    auto [len, body] = unpair(code);
    if (len == 0) {
        // [0, y] with y > 0 has no length-consistent reading.
        return std::nullopt;
    }
    auto n = to_u64(len);
    if (!n || *n > max_length) {
        fail(ErrorCode::TooLarge, "sequence length " + to_string(len) + " exceeds decode limit");
    }
    std::vector<Natural> out(*n);
    Natural rest = std::move(body);
    std::uint64_t i = *n;
    Natural head;
    for (; i > 1 && mpz_sizeinbase(rest.get_mpz_t(), 2) > 60; --i) {
        unpair_into(head.get_mpz_t(), out[i - 1].get_mpz_t(), rest.get_mpz_t());
        mpz_swap(head.get_mpz_t(), rest.get_mpz_t());
    }
    if (i > 1) {
        std::uint64_t z = mpz_get_ui(rest.get_mpz_t());
        for (; i > 1; --i) {
            const std::uint64_t d = diagonal(z);
            const std::uint64_t head = z - d * (d + 1) / 2;
            mpz_set_ui(out[i - 1].get_mpz_t(), d - head);
            z = head;
        }
        mpz_set_ui(rest.get_mpz_t(), z);
    }
    out[0] = std::move(rest);
    return out;
}

Natural can_index(std::span<const std::uint64_t> members) {
    std::vector<std::uint64_t> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Natural r = 0;
    for (auto m : sorted) {
        if (m > (1u << 26)) {
            fail(ErrorCode::TooLarge, "canonical index member too large: " + std::to_string(m));
        }
        mpz_setbit(r.get_mpz_t(), m);
    }
    return r;
}

std::vector<std::uint64_t> can_decode(const Natural& index) {
    std::vector<std::uint64_t> out;
    if (sgn(index) <= 0) {
        return out;
    }
    for (mp_bitcnt_t b = mpz_scan1(index.get_mpz_t(), 0); b != ~mp_bitcnt_t(0);
         b = mpz_scan1(index.get_mpz_t(), b + 1)) {
        out.push_back(b);
    }
    return out;
}

Natural clause_code(std::uint64_t head, std::span<const std::uint64_t> premises,
                    std::span<const std::uint64_t> constraints) {
    return pair(pair(nat(head), can_index(premises)), can_index(constraints));
}

Natural scheme_code(std::span<const CodedStep> steps, std::span<const std::uint64_t> support) {
    std::vector<Natural> items;
    items.reserve(steps.size());
    for (const auto& s : steps) {
        items.push_back(pair(s.clause, nat(s.atom)));
    }
    return pair(seq_code(items), can_index(support));
}

} // namespace stabtree
