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

#include "stabtree/semantics.hpp"

#include "stabtree/error.hpp"

#include <cstdint>

namespace stabtree {

AtomSet make_set(std::size_t universe, std::initializer_list<AtomId> ids) {
    AtomSet s(universe);
    for (auto id : ids) s.set(id);
    return s;
}

AtomSet make_set(std::size_t universe, const std::vector<AtomId>& ids) {
    AtomSet s(universe);
    for (auto id : ids) s.set(id);
    return s;
}

std::vector<AtomId> members(const AtomSet& s) {
    std::vector<AtomId> out;
    for (auto i = s.find_first(); i != AtomSet::npos; i = s.find_next(i)) {
        out.push_back(static_cast<AtomId>(i));
    }
    return out;
}

std::string format_set(const GroundProgram& g, const AtomSet& s) {
    std::string out = "{";
    bool first = true;
    for (auto id : members(s)) {
        if (!first) out += ", ";
        out += g.atom_name(id);
        first = false;
    }
    return out + "}";
}

namespace {

void require_horn(const GroundProgram& g) {
    if (!g.is_horn()) {
        fail(ErrorCode::NotHorn, "program has clauses with negated atoms");
    }
}

bool subset_of(const std::vector<AtomId>& ids, const AtomSet& s) {
    for (auto id : ids) {
        if (!s.test(id)) return false;
    }
    return true;
}

bool meets(const std::vector<AtomId>& ids, const AtomSet& s) {
    for (auto id : ids) {
        if (s.test(id)) return true;
    }
    return false;
}

// Counter-based propagation over the clauses that survive `blocked`.
AtomSet propagate(const GroundProgram& g, const AtomSet* blocked) {
    const auto& clauses = g.clauses();
    std::vector<std::size_t> missing(clauses.size());
    std::vector<std::vector<std::size_t>> watchers(g.atom_count());
    AtomSet derived(g.atom_count());
    std::vector<AtomId> queue;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        const auto& c = clauses[i];
        if (blocked != nullptr && meets(c.constraints, *blocked)) {
            missing[i] = SIZE_MAX;
            continue;
        }
        missing[i] = c.premises.size();
        for (auto p : c.premises) watchers[p].push_back(i);
        if (missing[i] == 0 && !derived.test(c.head)) {
            derived.set(c.head);
            queue.push_back(c.head);
        }
    }
    while (!queue.empty()) {
        AtomId a = queue.back();
        queue.pop_back();
        for (auto ci : watchers[a]) {
            if (--missing[ci] == 0) {
                AtomId h = clauses[ci].head;
                if (!derived.test(h)) {
                    derived.set(h);
                    queue.push_back(h);
                }
            }
        }
    }
    return derived;
}

} // namespace

AtomSet tp_step(const GroundProgram& g, const AtomSet& s) {
    require_horn(g);
    AtomSet out(g.atom_count());
    for (const auto& c : g.clauses()) {
        if (subset_of(c.premises, s)) out.set(c.head);
    }
    return out;
}

AtomSet least_model(const GroundProgram& g) {
    require_horn(g);
    return propagate(g, nullptr);
}

GroundProgram gl_reduct(const GroundProgram& g, const AtomSet& m) {
    GroundProgram out;
    for (const auto& a : g.atoms()) out.intern(a);
    out.set_exact(g.exact());
    for (const auto& c : g.clauses()) {
        if (meets(c.constraints, m)) continue;
        out.add_clause(GroundClause{c.head, c.premises, {}});
    }
    return out;
}

AtomSet reduct_least_model(const GroundProgram& g, const AtomSet& m) { return propagate(g, &m); }

bool is_stable(const GroundProgram& g, const AtomSet& m) { return reduct_least_model(g, m) == m; }

bool is_model(const GroundProgram& g, const AtomSet& m) {
    for (const auto& c : g.clauses()) {
        if (subset_of(c.premises, m) && !meets(c.constraints, m) && !m.test(c.head)) return false;
    }
    return true;
}

std::vector<AtomSet> enumerate_stable(const GroundProgram& g, std::size_t atom_limit) {
    const std::size_t n = g.atom_count();
    if (n > atom_limit || n > 40) {
        fail(ErrorCode::TooLarge, "Herbrand base has " + std::to_string(n) +
                                      " atoms; limit is " + std::to_string(atom_limit));
    }
    // Bitmask form of the clauses for the subset sweep.
    struct Mask {
        std::uint64_t head, premises, constraints;
    };
    std::vector<Mask> masks;
    for (const auto& c : g.clauses()) {
        Mask mk{std::uint64_t{1} << c.head, 0, 0};
        for (auto p : c.premises) mk.premises |= std::uint64_t{1} << p;
        for (auto b : c.constraints) mk.constraints |= std::uint64_t{1} << b;
        masks.push_back(mk);
    }
    std::vector<AtomSet> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t m = 0; m < total; ++m) {
        std::uint64_t lm = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& mk : masks) {
                if ((mk.constraints & m) == 0 && (mk.premises & lm) == mk.premises &&
                    (lm & mk.head) == 0) {
                    lm |= mk.head;
                    changed = true;
                }
            }
        }
        if (lm == m) {
            AtomSet s(n);
            for (std::size_t i = 0; i < n; ++i) {
                if ((m >> i) & 1u) s.set(i);
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace stabtree
