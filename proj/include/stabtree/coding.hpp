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

// Goedel numbering of naturals, finite sequences, finite sets, clauses and
// proof schemes. All coders are closed-form (no search loops); codes are
// unbounded naturals backed by GMP.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stabtree {

using Natural = mpz_class;

inline Natural nat(std::uint64_t v) {
    Natural r;
    if constexpr (sizeof(unsigned long) >= sizeof(std::uint64_t)) {
        mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(v));
    } else {
        mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    }
    return r;
}

/// Returns the value when it fits in 64 bits.
std::optional<std::uint64_t> to_u64(const Natural& n);
std::string to_string(const Natural& n);

/// Cantor pairing: (x^2 + 2xy + y^2 + 3x + y) / 2.
Natural pair(const Natural& x, const Natural& y);
std::pair<Natural, Natural> unpair(const Natural& code);

/// Left-nested tuple code [x0,...,xn] = [[x0,...,x(n-1)], xn]; [x0] = x0.
/// Precondition: xs is non-empty.
Natural tuple_code(std::span<const Natural> xs);

/// c(empty) = 0, c(s) = [len, [s0,...,s(len-1)]].
Natural seq_code(std::span<const Natural> seq);
Natural seq_code(std::span<const std::uint64_t> seq);

/// Left inverse of seq_code; nullopt when the code is not a sequence code.
/// max_length guards against decoding absurdly long sequences.
std::optional<std::vector<Natural>> seq_decode(const Natural& code,
                                               std::uint64_t max_length = 1u << 20);
/// Length field of a sequence code without decoding the body.
std::optional<Natural> seq_length(const Natural& code);

/// Canonical index: sum of 2^x over members. Duplicates are ignored.
Natural can_index(std::span<const std::uint64_t> members);
std::vector<std::uint64_t> can_decode(const Natural& index);

/// Clause code: [head, can(premises), can(constraints)] over atom codes.
Natural clause_code(std::uint64_t head, std::span<const std::uint64_t> premises,
                    std::span<const std::uint64_t> constraints);

/// One step of a proof scheme, already coded.
struct CodedStep {
    Natural clause;
    std::uint64_t atom;
};

/// Scheme code: [s, t] with s the sequence code of [clause, atom] step
/// codes and t the canonical index of the support.
Natural scheme_code(std::span<const CodedStep> steps, std::span<const std::uint64_t> support);

} // namespace stabtree
