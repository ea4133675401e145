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

#include "stabtree/harness.hpp"

#include "stabtree/error.hpp"
#include "stabtree/program_tree.hpp"
#include "stabtree/schemes.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace stabtree {

namespace {

Atom prop(const std::string& name) { return Atom{name, {}}; }

void collect_predicates(const Program& p, std::set<std::string>& out) {
    for (const auto& c : p.clauses) {
        out.insert(c.head.predicate);
        for (const auto& a : c.premises) out.insert(a.predicate);
        for (const auto& a : c.constraints) out.insert(a.predicate);
    }
}

std::string models_text(const GroundProgram& g, const std::vector<AtomSet>& models) {
    std::string s = "[";
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (i) s += ", ";
        s += format_set(g, models[i]);
    }
    return s + "]";
}

std::vector<AtomSet> all_subsets_where(const GroundProgram& g, const std::function<bool(const AtomSet&)>& pred) {
    const std::size_t n = g.atom_count();
    std::vector<AtomSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        AtomSet m(n, mask);
        if (pred(m)) out.push_back(std::move(m));
    }
    return out;
}

CheckResult same_models(const std::string& name, const GroundProgram& g, const std::vector<AtomSet>& expected,
                        const std::vector<AtomSet>& got) {
    CheckResult r{name, true, {}};
    auto sorted = [](std::vector<AtomSet> v) {
        std::sort(v.begin(), v.end(), [](const AtomSet& a, const AtomSet& b) { return a.to_ulong() < b.to_ulong(); });
        return v;
    };
    if (sorted(expected) != sorted(got)) {
        r.pass = false;
        r.witness = "stable " + models_text(g, expected) + " vs " + models_text(g, got);
    }
    return r;
}

bool is_minimal_model(const GroundProgram& g, const AtomSet& m) {
    if (!is_model(g, m)) return false;
    // Every proper subset of m, as a sub-mask of m's bits.
    const auto bits = m.to_ulong();
    for (unsigned long sub = (bits - 1) & bits;; sub = (sub - 1) & bits) {
        if (sub != bits && is_model(g, AtomSet(m.size(), sub))) return false;
        if (sub == 0) break;
    }
    return true;
}

} // namespace

SwitchNames fresh_switch_names(const Program& p) {
    std::set<std::string> used;
    collect_predicates(p, used);
    SwitchNames names{"sw", "sw_bar"};
    for (std::size_t i = 1; used.count(names.on) || used.count(names.off); ++i) {
        names.on = "sw" + std::to_string(i);
        names.off = "sw" + std::to_string(i) + "_bar";
    }
    return names;
}

Program add_switch(const Program& p, SwitchNames* names) {
    auto n = fresh_switch_names(p);
    Program out;
    for (auto c : p.clauses) {
        c.premises.push_back(prop(n.on));
        out.clauses.push_back(std::move(c));
    }
    out.clauses.push_back(Clause{prop(n.on), {}, {prop(n.off)}});
    out.clauses.push_back(Clause{prop(n.off), {}, {prop(n.on)}});
    if (names != nullptr) *names = n;
    return out;
}

ProgramFuzzer::ProgramFuzzer(std::uint64_t seed, FuzzBounds bounds) : rng_(seed), bounds_(bounds) {
    if (bounds_.max_atoms == 0) fail(ErrorCode::InvalidArgument, "fuzzer needs at least one atom");
}

Program ProgramFuzzer::next() {
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    };
    const std::size_t atoms = uniform(1, bounds_.max_atoms);
    const std::size_t clauses = uniform(1, std::max<std::size_t>(1, bounds_.max_clauses));
    auto atom = [&] { return prop("p" + std::to_string(uniform(0, atoms - 1))); };
    Program p;
    for (std::size_t i = 0; i < clauses; ++i) {
        Clause c;
        c.head = atom();
        const std::size_t prem = uniform(0, bounds_.max_body);
        // Three clauses in four carry a negated atom.
        const std::size_t cons = uniform(0, 3) == 0 ? 0 : uniform(1, std::max<std::size_t>(1, bounds_.max_body));
        for (std::size_t j = 0; j < prem; ++j) c.premises.push_back(atom());
        for (std::size_t j = 0; j < cons; ++j) c.constraints.push_back(atom());
        p.clauses.push_back(std::move(c));
    }
    return p;
}

std::vector<CheckResult> run_invariants(const Program& p, const InvariantOptions& options) {
    const auto g = GroundProgram::from_program(p);
    const std::size_t n = g.atom_count();
    if (n > options.atom_limit) {
        fail(ErrorCode::TooLarge, "program has " + std::to_string(n) + " atoms; limit is " +
                                      std::to_string(options.atom_limit));
    }
    std::vector<CheckResult> out;
    const auto stable = enumerate_stable(g, options.atom_limit);
    const SchemeTable table(g);

    out.push_back(same_models("schemes_characterize_stable", g, stable,
                              all_subsets_where(g, [&](const AtomSet& m) { return stable_by_schemes(table, m); })));
    out.push_back(same_models("defining_equations", g, stable, models_of_theory(g, false, options.atom_limit)));
    out.push_back(
        same_models("reduced_defining_equations", g, stable, models_of_theory(g, true, options.atom_limit)));

    CheckResult minimal{"stable_models_are_minimal_models", true, {}};
    for (const auto& m : stable) {
        if (!is_minimal_model(g, m)) {
            minimal.pass = false;
            minimal.witness = format_set(g, m);
            break;
        }
    }
    out.push_back(minimal);

    CheckResult mono{"n_k_monotone", true, {}};
    for (std::uint64_t k = 0; k <= n && mono.pass; ++k) {
        auto small = n_k(table, k);
        auto big = n_k(table, k + 1);
        if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) {
            mono.pass = false;
            mono.witness = "k = " + std::to_string(k);
        }
    }
    out.push_back(mono);

    if (options.run_tree) {
        ProgramTree tree(g);
        out.push_back(same_models("tree_paths_equal_stable", g, stable, enumerate_paths_exact(tree, 1, options.atom_limit)));
        ProgramTree full(g, ProgramTreeOptions{true});
        out.push_back(
            same_models("tree_paths_full_n_k", g, stable, enumerate_paths_exact(full, 1, options.atom_limit)));
        CheckResult trip{"encode_decode_round_trip", true, {}};
        for (const auto& m : stable) {
            auto f = encode_path(tree, m);
            try {
                if (decode_path(tree, f, 2 * n + 4) != m) {
                    trip.pass = false;
                    trip.witness = format_set(g, m) + " decodes differently";
                }
            } catch (const Error& e) {
                trip.pass = false;
                trip.witness = format_set(g, m) + ": " + e.what();
            }
            if (!trip.pass) break;
        }
        out.push_back(trip);
    }

    if (options.run_blocking) {
        CheckResult block{"blocking_implies_no_stable", true, {}};
        const std::uint64_t top = std::min<std::uint64_t>(options.blocking_max_m, n);
        for (std::uint64_t m = 0; m <= top; ++m) {
            if (explicit_blocking_set(g, m).holds && !stable.empty()) {
                block.pass = false;
                block.witness = "m = " + std::to_string(m) + " blocks but stable models exist";
                break;
            }
        }
        out.push_back(block);
    }

    if (options.run_switch) {
        SwitchNames names;
        auto sp = add_switch(p, &names);
        auto sg = GroundProgram::from_program(sp);
        auto switched = enumerate_stable(sg, options.atom_limit + 2);
        CheckResult sw{"switch_adds_one_model", true, {}};
        if (switched.size() != stable.size() + 1) {
            sw.pass = false;
            sw.witness = std::to_string(stable.size()) + " stable models before, " +
                         std::to_string(switched.size()) + " after";
        }
        out.push_back(sw);
    }
    return out;
}

nlohmann::json check_json(const std::vector<CheckResult>& checks) {
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json j{{"name", c.name}, {"pass", c.pass}};
        if (!c.pass) j["witness"] = c.witness;
        arr.push_back(std::move(j));
    }
    return arr;
}

bool all_pass(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

nlohmann::json fuzz_report(std::uint64_t seed, std::size_t count, const FuzzBounds& bounds,
                           const InvariantOptions& options) {
    nlohmann::json report;
    report["seed"] = seed;
    report["count"] = count;
    report["bounds"] = {{"max_atoms", bounds.max_atoms},
                        {"max_clauses", bounds.max_clauses},
                        {"max_body", bounds.max_body},
                        {"atom_limit", options.atom_limit},
                        {"blocking_max_m", options.blocking_max_m}};
    report["subjects"] = nlohmann::json::array();
    ProgramFuzzer fuzzer(seed, bounds);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < count; ++i) {
        auto p = fuzzer.next();
        auto g = GroundProgram::from_program(p);
        auto checks = run_invariants(p, options);
        const bool ok = all_pass(checks);
        if (!ok) ++failures;
        report["subjects"].push_back({{"subject", "seed" + std::to_string(seed) + "-" + std::to_string(i)},
                                      {"program", to_string(p)},
                                      {"atoms", g.atom_count()},
                                      {"clauses", g.clauses().size()},
                                      {"stable_models", enumerate_stable(g, options.atom_limit).size()},
                                      {"checks", check_json(checks)},
                                      {"pass", ok}});
    }
    report["failures"] = failures;
    report["pass"] = failures == 0;
    return report;
}

nlohmann::json models_json(const GroundProgram& g, const std::vector<AtomSet>& models) {
    std::vector<std::vector<std::string>> all;
    for (const auto& m : models) {
        std::vector<std::string> names;
        for (auto id : members(m)) names.push_back(g.atom_name(id));
        std::sort(names.begin(), names.end());
        all.push_back(std::move(names));
    }
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace stabtree
