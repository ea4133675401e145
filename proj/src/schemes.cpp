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

#include "stabtree/schemes.hpp"

#include "stabtree/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace stabtree {

std::vector<std::size_t> ProofScheme::clause_set() const {
    std::vector<std::size_t> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.clause);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

[[noreturn]] void malformed(const std::string& msg) { fail(ErrorCode::MalformedScheme, msg); }

Support union_constraints(const GroundProgram& g, const std::vector<SchemeStep>& steps) {
    Support out;
    for (const auto& s : steps) {
        const auto& c = g.clauses()[s.clause];
        out.insert(out.end(), c.constraints.begin(), c.constraints.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_steps(const GroundProgram& g, const std::vector<SchemeStep>& steps) {
    if (steps.empty()) malformed("proof scheme has no steps");
    std::set<AtomId> derived;
    for (std::size_t j = 0; j < steps.size(); ++j) {
        const auto& s = steps[j];
        if (s.clause >= g.clauses().size()) {
            malformed("step " + std::to_string(j + 1) + " refers to unknown clause");
        }
        const auto& c = g.clauses()[s.clause];
        if (c.head != s.atom) {
            malformed("step " + std::to_string(j + 1) + " derives an atom other than its clause head");
        }
        for (auto p : c.premises) {
            if (!derived.count(p)) {
                malformed("step " + std::to_string(j + 1) + " uses premise " + g.atom_name(p) +
                          " before it is derived");
            }
        }
        derived.insert(s.atom);
    }
}

// Horn closure of a clause subset, constraints ignored.
bool derivable(const GroundProgram& g, const std::vector<std::size_t>& clauses, AtomId target) {
    AtomSet have(g.atom_count());
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto ci : clauses) {
            const auto& c = g.clauses()[ci];
            if (have.test(c.head)) continue;
            bool ok = std::all_of(c.premises.begin(), c.premises.end(),
                                  [&](AtomId p) { return have.test(p); });
            if (ok) {
                have.set(c.head);
                changed = true;
            }
        }
    }
    return have.test(target);
}

AtomId max_atom_of(const GroundProgram& g, const ProofScheme& ps) {
    AtomId m = 0;
    for (const auto& s : ps.steps) {
        const auto& c = g.clauses()[s.clause];
        m = std::max(m, c.head);
        for (auto p : c.premises) m = std::max(m, p);
        for (auto b : c.constraints) m = std::max(m, b);
    }
    return m;
}

} // namespace

void validate(const GroundProgram& g, const ProofScheme& ps) {
    check_steps(g, ps.steps);
    if (ps.support != union_constraints(g, ps.steps)) {
        malformed("support differs from the union of constraint sets");
    }
}

ProofScheme make_scheme(const GroundProgram& g, std::vector<SchemeStep> steps) {
    check_steps(g, steps);
    ProofScheme ps;
    ps.support = union_constraints(g, steps);
    ps.steps = std::move(steps);
    return ps;
}

ProofScheme canonical_scheme(const GroundProgram& g, const std::vector<std::size_t>& clauses) {
    std::vector<std::size_t> remaining(clauses.begin(), clauses.end());
    std::sort(remaining.begin(), remaining.end());
    remaining.erase(std::unique(remaining.begin(), remaining.end()), remaining.end());
    std::set<AtomId> derived;
    std::vector<SchemeStep> steps;
    while (!remaining.empty()) {
        // Lowest head among the clauses whose premises are all derived.
        auto best = remaining.end();
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            const auto& c = g.clauses().at(*it);
            bool ready = std::all_of(c.premises.begin(), c.premises.end(),
                                     [&](AtomId p) { return derived.count(p) != 0; });
            if (ready && (best == remaining.end() || c.head < g.clauses()[*best].head)) best = it;
        }
        if (best == remaining.end()) malformed("clause set is not a derivation");
        const auto& c = g.clauses()[*best];
        steps.push_back(SchemeStep{*best, c.head});
        derived.insert(c.head);
        remaining.erase(best);
    }
    return make_scheme(g, std::move(steps));
}

Natural clause_code(const GroundProgram& g, std::size_t clause) {
    const auto& c = g.clauses().at(clause);
    std::vector<std::uint64_t> prem(c.premises.begin(), c.premises.end());
    std::vector<std::uint64_t> cons(c.constraints.begin(), c.constraints.end());
    return clause_code(c.head, prem, cons);
}

Natural scheme_code(const GroundProgram& g, const ProofScheme& ps) {
    std::vector<CodedStep> steps;
    steps.reserve(ps.steps.size());
    for (const auto& s : ps.steps) steps.push_back(CodedStep{clause_code(g, s.clause), s.atom});
    std::vector<std::uint64_t> supp(ps.support.begin(), ps.support.end());
    return scheme_code(steps, supp);
}

std::string to_string(const GroundProgram& g, const ProofScheme& ps) {
    std::string s = "<";
    for (const auto& st : ps.steps) {
        s += "<" + g.clause_text(g.clauses()[st.clause]) + ", " + g.atom_name(st.atom) + ">, ";
    }
    s += "{";
    for (std::size_t i = 0; i < ps.support.size(); ++i) {
        if (i) s += ", ";
        s += g.atom_name(ps.support[i]);
    }
    return s + "}>";
}

bool is_minimal(const GroundProgram& g, const ProofScheme& ps) {
    validate(g, ps);
    auto clauses = ps.clause_set();
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        std::vector<std::size_t> rest;
        rest.reserve(clauses.size() - 1);
        for (std::size_t j = 0; j < clauses.size(); ++j) {
            if (j != i) rest.push_back(clauses[j]);
        }
        // Derivability is monotone in the clause set, so single removals suffice.
        if (derivable(g, rest, ps.conclusion())) return false;
    }
    return true;
}

std::vector<CodedScheme> enumerate_min_schemes(const GroundProgram& g, AtomId atom,
                                               std::size_t clause_budget) {
    const std::size_t n = g.atom_count();
    std::vector<std::vector<std::size_t>> by_head(n);
    for (std::size_t i = 0; i < g.clauses().size(); ++i) by_head[g.clauses()[i].head].push_back(i);

    std::vector<long> chosen(n, -1); // atom -> clause index
    std::set<AtomId> pending{atom};
    std::vector<CodedScheme> out;

    // Is `target` reachable from `from` along chosen premise edges?
    std::function<bool(AtomId, AtomId)> reaches = [&](AtomId from, AtomId target) {
        std::vector<AtomId> stack{from};
        std::vector<char> seen(n, 0);
        while (!stack.empty()) {
            AtomId a = stack.back();
            stack.pop_back();
            if (a == target) return true;
            if (seen[a] || chosen[a] < 0) continue;
            seen[a] = 1;
            for (auto p : g.clauses()[chosen[a]].premises) stack.push_back(p);
        }
        return false;
    };

    std::function<void(std::size_t)> search = [&](std::size_t used) {
        if (pending.empty()) {
            std::vector<std::size_t> clauses;
            for (std::size_t a = 0; a < n; ++a) {
                if (chosen[a] >= 0) clauses.push_back(static_cast<std::size_t>(chosen[a]));
            }
            CodedScheme cs;
            cs.scheme = canonical_scheme(g, clauses);
            cs.code = scheme_code(g, cs.scheme);
            cs.max_atom = max_atom_of(g, cs.scheme);
            out.push_back(std::move(cs));
            return;
        }
        if (used == clause_budget) return;
        AtomId x = *pending.begin();
        pending.erase(pending.begin());
        for (auto ci : by_head[x]) {
            const auto& c = g.clauses()[ci];
            bool cyclic = false;
            for (auto p : c.premises) {
                if (p == x || (chosen[p] >= 0 && reaches(p, x))) {
                    cyclic = true;
                    break;
                }
            }
            if (cyclic) continue;
            chosen[x] = static_cast<long>(ci);
            std::vector<AtomId> added;
            for (auto p : c.premises) {
                if (chosen[p] < 0 && pending.insert(p).second) added.push_back(p);
            }
            search(used + 1);
            for (auto p : added) pending.erase(p);
            chosen[x] = -1;
        }
        pending.insert(x);
    };
    search(0);

    std::sort(out.begin(), out.end(), [](const CodedScheme& a, const CodedScheme& b) { return a.code < b.code; });
    return out;
}

std::vector<CodedScheme> enumerate_min_schemes(const GroundProgram& g, AtomId atom) {
    return enumerate_min_schemes(g, atom, g.clauses().size());
}

SchemeTable::SchemeTable(const GroundProgram& g) : SchemeTable(g, g.clauses().size()) {}

SchemeTable::SchemeTable(const GroundProgram& g, std::size_t clause_budget)
    : saturated_(g.exact() && clause_budget >= g.clauses().size()) {
    table_.reserve(g.atom_count());
    for (AtomId a = 0; a < g.atom_count(); ++a) {
        table_.push_back(enumerate_min_schemes(g, a, clause_budget));
    }
}

bool stable_by_schemes(const SchemeTable& t, const AtomSet& m) {
    for (AtomId a = 0; a < t.atom_count(); ++a) {
        const auto& schemes = t.of(a);
        bool admitted = std::any_of(schemes.begin(), schemes.end(),
                                    [&](const CodedScheme& cs) { return admits(m, cs.scheme); });
        if (admitted != m.test(a)) return false;
    }
    return true;
}

bool stable_by_schemes(const GroundProgram& g, const AtomSet& m) {
    return stable_by_schemes(SchemeTable(g), m);
}

std::vector<Natural> n_k(const SchemeTable& t, std::uint64_t k) {
    std::vector<Natural> out;
    for (AtomId a = 0; a < t.atom_count(); ++a) {
        for (const auto& cs : t.of(a)) {
            if (cs.max_atom < k) out.push_back(cs.code);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Natural> n_k(const GroundProgram& g, std::uint64_t k) { return n_k(SchemeTable(g), k); }

Natural h_index(const GroundProgram& g, std::uint64_t k) {
    std::vector<std::uint64_t> members;
    for (const auto& c : n_k(g, k)) {
        auto v = to_u64(c);
        if (!v || *v > (1u << 26)) {
            fail(ErrorCode::TooLarge, "scheme code " + to_string(c) + " too large for a canonical index");
        }
        members.push_back(*v);
    }
    return can_index(members);
}

// ---------------------------------------------------------------------------
// Defining equations
// ---------------------------------------------------------------------------

bool support_less(const Support& u, const Support& v) {
    if (u.empty() || v.empty()) return u.empty() && !v.empty();
    if (u.back() != v.back()) return u.back() < v.back();
    if (u.size() != v.size()) return u.size() < v.size();
    return u < v;
}

namespace {

bool subset(const Support& a, const Support& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Support> distinct_supports(const std::vector<CodedScheme>& schemes) {
    std::vector<Support> out;
    for (const auto& cs : schemes) out.push_back(cs.scheme.support);
    std::sort(out.begin(), out.end(), support_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<Support> inclusion_minimal(const std::vector<Support>& supports) {
    std::vector<Support> out;
    for (std::size_t i = 0; i < supports.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < supports.size() && !dominated; ++j) {
            if (i == j) continue;
            const auto& u = supports[j];
            // A strictly smaller set, or an equal set listed earlier.
            if (subset(u, supports[i]) && (u.size() < supports[i].size() || j < i)) dominated = true;
        }
        if (!dominated) out.push_back(supports[i]);
    }
    return out;
}

DefiningEquation defining_equation(const SchemeTable& t, AtomId atom, bool reduced) {
    DefiningEquation eq;
    eq.atom = atom;
    eq.reduced = reduced;
    eq.saturated = t.saturated();
    eq.supports = distinct_supports(t.of(atom));
    if (reduced) eq.supports = inclusion_minimal(eq.supports);
    return eq;
}

DefiningEquation defining_equation(const GroundProgram& g, AtomId atom, bool reduced) {
    DefiningEquation eq;
    eq.atom = atom;
    eq.reduced = reduced;
    eq.saturated = g.exact();
    eq.supports = distinct_supports(enumerate_min_schemes(g, atom));
    if (reduced) eq.supports = inclusion_minimal(eq.supports);
    return eq;
}

std::string to_string(const GroundProgram& g, const DefiningEquation& eq) {
    std::string s = g.atom_name(eq.atom) + " <=> ";
    if (eq.supports.empty()) return s + "false";
    for (std::size_t i = 0; i < eq.supports.size(); ++i) {
        if (i) s += " | ";
        const auto& u = eq.supports[i];
        if (u.empty()) {
            s += "true";
            continue;
        }
        s += "(";
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (j) s += " & ";
            s += "~" + g.atom_name(u[j]);
        }
        s += ")";
    }
    return s;
}

std::vector<AtomSet> models_of_theory(const GroundProgram& g, bool reduced, std::size_t atom_limit) {
    const std::size_t n = g.atom_count();
    if (n > atom_limit || n > 40) {
        fail(ErrorCode::TooLarge, "Herbrand base has " + std::to_string(n) +
                                      " atoms; limit is " + std::to_string(atom_limit));
    }
    SchemeTable table(g);
    std::vector<std::vector<std::uint64_t>> rhs(n); // support masks per atom
    for (AtomId a = 0; a < n; ++a) {
        for (const auto& u : defining_equation(table, a, reduced).supports) {
            std::uint64_t mask = 0;
            for (auto b : u) mask |= std::uint64_t{1} << b;
            rhs[a].push_back(mask);
        }
    }
    std::vector<AtomSet> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        bool ok = true;
        for (AtomId a = 0; a < n && ok; ++a) {
            bool body = std::any_of(rhs[a].begin(), rhs[a].end(), [&](std::uint64_t u) { return (u & m) == 0; });
            ok = body == (((m >> a) & 1u) != 0);
        }
        if (ok) {
            AtomSet s(n);
            for (std::size_t i = 0; i < n; ++i) {
                if ((m >> i) & 1u) s.set(i);
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

FsProbe fs_probe(const GroundProgram& g, AtomId atom, std::size_t clause_budget) {
    FsProbe r;
    auto supports = inclusion_minimal(distinct_supports(enumerate_min_schemes(g, atom, clause_budget)));
    r.supports_found = supports.size();
    r.saturated = g.exact() && clause_budget >= g.clauses().size();
    return r;
}

// ---------------------------------------------------------------------------
// Blocking sets
// ---------------------------------------------------------------------------

BlockingResult explicit_blocking_set(const GroundProgram& g, std::uint64_t m, bool require_fs) {
    if (m > kMaxBlockingM) {
        fail(ErrorCode::TooLarge, "blocking-set check supports m <= " + std::to_string(kMaxBlockingM));
    }
    const std::uint64_t n = g.atom_count();
    BlockingResult r;

    // Condition (1): codes up to m are non-atoms or have finitely many
    // inclusion-minimal supports. Only a saturated search certifies that.
    r.fs_condition = true;
    if (require_fs) {
        for (std::uint64_t i = 0; i <= m && i < n; ++i) {
            if (!fs_probe(g, static_cast<AtomId>(i), g.clauses().size()).saturated) r.fs_condition = false;
        }
    }

    std::vector<std::vector<std::uint64_t>> supports(std::min(n, m + 1)); // masks over {0..m}
    std::vector<std::vector<bool>> in_range(supports.size());
    for (AtomId i = 0; i < supports.size(); ++i) {
        for (const auto& cs : enumerate_min_schemes(g, i)) {
            std::uint64_t mask = 0;
            bool inside = true;
            for (auto b : cs.scheme.support) {
                if (b > m) {
                    inside = false;
                } else {
                    mask |= std::uint64_t{1} << b;
                }
            }
            supports[i].push_back(mask);
            in_range[i].push_back(inside);
        }
    }

    const std::uint64_t full = (std::uint64_t{1} << (m + 1)) - 1;
    for (std::uint64_t s = 0; s <= full; ++s) {
        // (a) some member of S is not an atom code.
        if (n <= m && (s >> n) != 0) continue;
        std::uint64_t rest = full & ~s;
        bool escaped = false;
        // (b) an atom outside S has a scheme supported inside {0..m} - S.
        for (std::uint64_t i = 0; i < supports.size() && !escaped; ++i) {
            if ((s >> i) & 1u) continue;
            for (std::size_t j = 0; j < supports[i].size(); ++j) {
                if (in_range[i][j] && (supports[i][j] & ~rest) == 0) {
                    escaped = true;
                    break;
                }
            }
        }
        // (c) an atom in S all of whose schemes meet S.
        for (std::uint64_t i = 0; i < supports.size() && !escaped; ++i) {
            if (!((s >> i) & 1u)) continue;
            bool all_meet = true;
            for (std::size_t j = 0; j < supports[i].size(); ++j) {
                // A support reaching past m that avoids S inside {0..m} does not meet S.
                if ((supports[i][j] & s) == 0) {
                    all_meet = false;
                    break;
                }
            }
            if (all_meet) escaped = true;
        }
        if (!escaped) {
            r.counterexample = s;
            break;
        }
    }
    r.holds = r.fs_condition && !r.counterexample.has_value();
    return r;
}

std::optional<std::uint64_t> minimal_blocking_m(const GroundProgram& g, std::uint64_t max_m) {
    for (std::uint64_t m = 0; m <= std::min(max_m, kMaxBlockingM); ++m) {
        if (explicit_blocking_set(g, m).holds) return m;
    }
    return std::nullopt;
}

bool exists_constrained_stable(const GroundProgram& g, const std::vector<SchemePin>& pins,
                               std::size_t atom_limit) {
    std::vector<std::pair<AtomId, Natural>> wanted;
    AtomId max_pinned = 0;
    for (const auto& pin : pins) {
        validate(g, pin.scheme);
        if (pin.scheme.conclusion() != pin.atom) malformed("pinned scheme does not conclude its atom");
        if (!is_minimal(g, pin.scheme)) malformed("pinned scheme is not minimal");
        // Codes are compared in canonical step order.
        wanted.emplace_back(pin.atom, scheme_code(g, canonical_scheme(g, pin.scheme.clause_set())));
        max_pinned = std::max(max_pinned, pin.atom);
    }
    auto stable = enumerate_stable(g, atom_limit);
    if (pins.empty()) return !stable.empty();
    SchemeTable table(g);
    for (const auto& m : stable) {
        bool ok = true;
        for (const auto& [atom, code] : wanted) {
            if (!m.test(atom)) {
                ok = false;
                break;
            }
            const CodedScheme* least = nullptr;
            for (const auto& cs : table.of(atom)) {
                if (admits(m, cs.scheme)) {
                    least = &cs;
                    break;
                }
            }
            if (least == nullptr || least->code != code) {
                ok = false;
                break;
            }
        }
        for (AtomId b = 0; b < max_pinned && ok; ++b) {
            bool pinned = std::any_of(wanted.begin(), wanted.end(), [&](const auto& w) { return w.first == b; });
            if (!pinned && m.test(b)) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

} // namespace stabtree
