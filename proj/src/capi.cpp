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


#include "stabtree/stabtree.h"

#include "stabtree/error.hpp"
#include "stabtree/harness.hpp"
#include "stabtree/program_tree.hpp"
#include "stabtree/schemes.hpp"
#include "stabtree/tree_program.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

using nlohmann::json;
using namespace stabtree;

struct st_program {
    Program source;
    GroundProgram ground;
};

struct st_tree {
    TreeSpec spec;
};

namespace {

thread_local std::string last_error;

st_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::Parse: return ST_ERR_PARSE;
        case ErrorCode::Arity: return ST_ERR_ARITY;
        case ErrorCode::TooLarge: return ST_ERR_TOO_LARGE;
        case ErrorCode::NotHorn: return ST_ERR_NOT_HORN;
        case ErrorCode::MalformedScheme: return ST_ERR_MALFORMED_SCHEME;
        case ErrorCode::NotASequence: return ST_ERR_NOT_A_SEQUENCE;
        case ErrorCode::NotAPath: return ST_ERR_NOT_A_PATH;
        case ErrorCode::NotANode: return ST_ERR_NOT_A_NODE;
        case ErrorCode::NotStable: return ST_ERR_NOT_STABLE;
        case ErrorCode::Overflow: return ST_ERR_OVERFLOW;
        case ErrorCode::InvalidArgument: return ST_ERR_INVALID_ARGUMENT;
        case ErrorCode::TreeFormat: return ST_ERR_TREE_FORMAT;
    }
    return ST_ERR_INTERNAL;
}

template <typename F>
st_status guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return ST_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return ST_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
    if (!ok) fail(ErrorCode::InvalidArgument, what);
}

char* copy_out(const json& j) {
    const std::string s = j.dump();
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

st_options resolve(const st_options* options) {
    st_options o;
    st_options_init(&o);
    if (options != nullptr) o = *options;
    return o;
}

std::size_t scheme_budget(const GroundProgram& g, const st_options& o) {
    return o.budget == 0 ? g.clauses().size() : o.budget;
}

json program_json(const GroundProgram& g) {
    return {{"atoms", g.atom_count()}, {"clauses", g.clauses().size()}, {"exact", g.exact()}};
}

json names_of(const GroundProgram& g, const std::vector<AtomId>& ids) {
    auto arr = json::array();
    for (auto id : ids) arr.push_back(g.atom_name(id));
    return arr;
}

json naturals(const std::vector<Natural>& xs) {
    auto arr = json::array();
    for (const auto& x : xs) arr.push_back(to_string(x));
    return arr;
}

json labels_json(const Node& n) {
    auto arr = json::array();
    for (auto x : n) arr.push_back(x);
    return arr;
}

json path_json(const PathDesc& p) { return {{"stem", labels_json(p.stem)}, {"cycle", labels_json(p.cycle)}}; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Natural parse_natural(const std::string& s) {
    Natural n;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || n.set_str(s, 10) != 0) {
        fail(ErrorCode::InvalidArgument, "not a natural number: '" + s + "'");
    }
    return n;
}

Node parse_labels(const std::string& s) {
    Node out;
    if (s.find_first_not_of(' ') == std::string::npos) return out;
    for (const auto& part : split(s, ',')) {
        auto v = to_u64(parse_natural(part));
        if (!v) fail(ErrorCode::InvalidArgument, "label too large: " + part);
        out.push_back(*v);
    }
    return out;
}

PathDesc parse_path(const std::string& text) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open || close + 1 != text.size()) {
        fail(ErrorCode::InvalidArgument, "path must be written STEM(CYCLE), got '" + text + "'");
    }
    PathDesc p{parse_labels(text.substr(0, open)), parse_labels(text.substr(open + 1, close - open - 1))};
    if (p.cycle.empty()) fail(ErrorCode::InvalidArgument, "path cycle is empty in '" + text + "'");
    return p;
}

// Smallest atom bound covering every node of length <= depth.
Natural bound_covering(const TreeSpec& t, std::size_t depth) {
    Natural top = static_cast<unsigned long>(depth);
    for (std::size_t d = 0; d <= depth; ++d) {
        auto level = t.nodes_at_depth(d, std::size_t{1} << 16);
        if (level.overflow) {
            fail(ErrorCode::Overflow, "level " + std::to_string(d) + " of the tree is infinite or wider than 65536 nodes");
        }
        for (const auto& n : level.nodes) top = std::max(top, seq_code(std::span<const std::uint64_t>(n)));
    }
    return 3 * top + 2;
}

std::vector<AtomSet> models_by_schemes(const SchemeTable& table, std::size_t n) {
    std::vector<AtomSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        AtomSet m(n, mask);
        if (stable_by_schemes(table, m)) out.push_back(std::move(m));
    }
    return out;
}

} // namespace

extern "C" {

void st_options_init(st_options* options) {
    if (options == nullptr) return;
    options->atom_limit = kDefaultAtomLimit;
    options->depth = 3;
    options->budget = 0;
    options->max_m = 12;
    options->exact = 0;
    options->full_n_k = 0;
}

const char* st_version(void) { return "0.1.0"; }

const char* st_status_name(st_status status) {
    switch (status) {
        case ST_OK: return "ok";
        case ST_ERR_INTERNAL: return "InternalError";
        default: return to_string(static_cast<ErrorCode>(status));
    }
}

const char* st_last_error(void) { return last_error.c_str(); }

void st_string_free(char* s) { std::free(s); }

st_status st_program_parse(const char* text, const st_options* options, st_program** out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        auto p = std::make_unique<st_program>();
        p->source = parse_program(text);
        if (p->source.is_ground()) {
            p->ground = GroundProgram::from_program(p->source);
        } else {
            NumeralOracle num;
            p->ground = ground(p->source, o.depth, &num);
        }
        *out = p.release();
    });
}

void st_program_free(st_program* program) { delete program; }

st_status st_program_info(const st_program* program, char** out) {
    return guarded([&] {
        require(program != nullptr && out != nullptr, "null argument");
        auto j = program_json(program->ground);
        j["herbrand_base"] = json::array();
        for (AtomId i = 0; i < program->ground.atom_count(); ++i) j["herbrand_base"].push_back(program->ground.atom_name(i));
        *out = copy_out(j);
    });
}

st_status st_stable(const st_program* program, const st_options* options, char** out, int* passed) {
    return guarded([&] {
        require(program != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        const auto& g = program->ground;
        auto stable = enumerate_stable(g, o.atom_limit);
        const SchemeTable table(g, scheme_budget(g, o));
        auto by_schemes = models_by_schemes(table, g.atom_count());
        auto eq = models_of_theory(g, false, o.atom_limit);
        auto req = models_of_theory(g, true, o.atom_limit);
        const bool agree = by_schemes == stable && eq == stable && req == stable;
        json j{{"command", "stable"},
               {"program", program_json(g)},
               {"bounds", {{"atom_limit", o.atom_limit}, {"depth", o.depth}, {"budget", scheme_budget(g, o)}}},
               {"schemes_saturated", table.saturated()},
               {"characterizations",
                {{"reduct", models_json(g, stable)},
                 {"schemes", models_json(g, by_schemes)},
                 {"equations", models_json(g, eq)},
                 {"reduced_equations", models_json(g, req)}}},
               {"stable_models", models_json(g, stable)},
               {"agree", agree},
               {"pass", agree}};
        *out = copy_out(j);
        if (passed != nullptr) *passed = agree ? 1 : 0;
    });
}

st_status st_schemes(const st_program* program, const st_options* options, char** out) {
    return guarded([&] {
        require(program != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        const auto& g = program->ground;
        const SchemeTable table(g, scheme_budget(g, o));
        auto atoms = json::array();
        for (AtomId a = 0; a < g.atom_count(); ++a) {
            auto list = json::array();
            for (const auto& cs : table.of(a)) {
                list.push_back({{"code", to_string(cs.code)},
                                {"support", names_of(g, cs.scheme.support)},
                                {"length", cs.scheme.steps.size()},
                                {"scheme", to_string(g, cs.scheme)}});
            }
            atoms.push_back({{"atom", g.atom_name(a)}, {"code", a}, {"schemes", list}});
        }
        json j{{"command", "schemes"},
               {"program", program_json(g)},
               {"bounds", {{"budget", scheme_budget(g, o)}}},
               {"saturated", table.saturated()},
               {"atoms", atoms},
               {"pass", true}};
        *out = copy_out(j);
    });
}

st_status st_defeq(const st_program* program, const st_options* options, char** out) {
    return guarded([&] {
        require(program != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        const auto& g = program->ground;
        const SchemeTable table(g, scheme_budget(g, o));
        auto eqs = json::array();
        for (AtomId a = 0; a < g.atom_count(); ++a) {
            eqs.push_back({{"atom", g.atom_name(a)},
                           {"equation", to_string(g, defining_equation(table, a, false))},
                           {"reduced", to_string(g, defining_equation(table, a, true))}});
        }
        json j{{"command", "defeq"},
               {"program", program_json(g)},
               {"bounds", {{"budget", scheme_budget(g, o)}}},
               {"saturated", table.saturated()},
               {"equations", eqs},
               {"pass", true}};
        *out = copy_out(j);
    });
}

st_status st_prog2tree(const st_program* program, const st_options* options, char** out, int* passed) {
    return guarded([&] {
        require(program != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        const auto& g = program->ground;
        const std::size_t n = g.atom_count();
        ProgramTree t(g, ProgramTreeOptions{o.full_n_k != 0});
        bool ok = true;
        json j{{"command", "prog2tree"},
               {"program", program_json(g)},
               {"bounds", {{"atom_limit", o.atom_limit}, {"depth", o.depth}, {"full_n_k", o.full_n_k != 0}}}};

        auto least = json::array();
        for (AtomId i = 0; i < n; ++i) least.push_back({{"atom", g.atom_name(i)}, {"codes", naturals(t.least_codes(i))}});
        j["least_codes"] = least;

        std::optional<bool> has_stable;
        if (o.exact != 0) {
            auto paths = enumerate_paths_exact(t, 1, o.atom_limit);
            auto stable = enumerate_stable(g, o.atom_limit);
            has_stable = !stable.empty();
            const bool equal = paths == stable;
            ok = ok && equal;
            j["exact"] = {{"paths", models_json(g, paths)}, {"stable_models", models_json(g, stable)}, {"equal", equal}};
        }

        const std::size_t depth = std::min<std::size_t>(2 * n + 2, 16);
        auto census = branching_census(t, depth, std::size_t{1} << 16);
        auto levels = json::array();
        for (const auto& l : census.levels) levels.push_back({{"nodes", l.nodes}, {"max_children", l.max_children}});
        j["branching"] = {{"depth", depth}, {"overflow", census.overflow}, {"levels", levels}};

        const std::uint64_t top = std::min<std::uint64_t>({n, 16, kMaxBlockingM});
        std::optional<std::uint64_t> first;
        for (std::uint64_t m = 0; m <= top && !first; ++m) {
            if (explicit_blocking_set(g, m).holds) first = m;
        }
        j["blocking"] = {{"checked_up_to", top}, {"first_m", first ? json(*first) : json(nullptr)}};
        if (first && has_stable && *has_stable) {
            ok = false;
            j["blocking"]["contradiction"] = true;
        }
        j["pass"] = ok;
        *out = copy_out(j);
        if (passed != nullptr) *passed = ok ? 1 : 0;
    });
}

st_status st_tree_walk(const st_program* program, const char* node, const st_options* options, char** out) {
    return guarded([&] {
        require(program != nullptr && node != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        ProgramTree t(program->ground, ProgramTreeOptions{o.full_n_k != 0});
        std::vector<Natural> sigma;
        if (std::string(node).find_first_not_of(' ') != std::string::npos) {
            for (const auto& part : split(node, ',')) sigma.push_back(parse_natural(part));
        }
        auto prefixes = json::array();
        bool member = true;
        for (std::size_t l = 0; l <= sigma.size(); ++l) {
            auto v = t.check(std::span<const Natural>(sigma.data(), l));
            json e{{"length", l}, {"member", v.member}};
            if (!v.member) {
                e["condition"] = std::string(1, v.condition);
                e["atom"] = v.atom;
            }
            prefixes.push_back(e);
            member = member && v.member;
        }
        json j{{"command", "walk"}, {"node", naturals(sigma)}, {"prefixes", prefixes}, {"member", member}};
        if (member) j["children"] = naturals(t.children(sigma));
        j["pass"] = true;
        *out = copy_out(j);
    });
}

st_status st_blockingset(const st_program* program, const st_options* options, char** out, int* found) {
    return guarded([&] {
        require(program != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        const auto& g = program->ground;
        require(o.max_m <= kMaxBlockingM, "max_m is above the supported limit of 20");
        auto scan = json::array();
        std::optional<std::uint64_t> first;
        for (std::uint64_t m = 0; m <= o.max_m; ++m) {
            auto r = explicit_blocking_set(g, m);
            json e{{"m", m}, {"holds", r.holds}, {"fs_condition", r.fs_condition}};
            if (r.counterexample) {
                std::vector<std::uint64_t> members;
                for (std::uint64_t b = 0; b <= m; ++b) {
                    if (*r.counterexample >> b & 1u) members.push_back(b);
                }
                e["counterexample"] = members;
            }
            scan.push_back(e);
            if (r.holds && !first) first = m;
        }
        json j{{"command", "blockingset"},
               {"program", program_json(g)},
               {"bounds", {{"max_m", o.max_m}, {"atom_limit", o.atom_limit}}},
               {"scan", scan},
               {"first_m", first ? json(*first) : json(nullptr)}};
        bool ok = true;
        if (g.atom_count() <= o.atom_limit) {
            const bool has_stable = !enumerate_stable(g, o.atom_limit).empty();
            j["has_stable_model"] = has_stable;
            ok = !(first && has_stable);
        }
        j["pass"] = ok;
        *out = copy_out(j);
        if (found != nullptr) *found = first ? 1 : 0;
    });
}

st_status st_fsprobe(const st_program* program, const char* atom, const st_options* options, char** out) {
    return guarded([&] {
        require(program != nullptr && atom != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        const auto& g = program->ground;
        auto id = g.find(std::string_view(atom));
        if (!id) fail(ErrorCode::InvalidArgument, std::string("atom not in the Herbrand base: ") + atom);
        const std::size_t budget = scheme_budget(g, o);
        auto probe = fs_probe(g, *id, budget);
        std::vector<Support> supports;
        for (const auto& cs : enumerate_min_schemes(g, *id, budget)) supports.push_back(cs.scheme.support);
        std::sort(supports.begin(), supports.end());
        supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
        auto minimal = json::array();
        for (const auto& s : inclusion_minimal(supports)) minimal.push_back(names_of(g, s));
        json j{{"command", "fsprobe"},
               {"program", program_json(g)},
               {"bounds", {{"budget", budget}, {"depth", o.depth}}},
               {"atom", atom},
               {"supports_found", probe.supports_found},
               {"saturated", probe.saturated},
               {"supports", minimal},
               {"pass", true}};
        *out = copy_out(j);
    });
}

st_status st_switch(const st_program* program, const st_options* options, char** out, int* passed) {
    return guarded([&] {
        require(program != nullptr && out != nullptr, "null argument");
        const auto o = resolve(options);
        SwitchNames names;
        auto sp = add_switch(program->source, &names);
        GroundProgram sg;
        if (sp.is_ground()) {
            sg = GroundProgram::from_program(sp);
        } else {
            NumeralOracle num;
            sg = ground(sp, o.depth, &num);
        }
        auto before = enumerate_stable(program->ground, o.atom_limit);
        auto after = enumerate_stable(sg, o.atom_limit);
        const bool ok = after.size() == before.size() + 1;
        json j{{"command", "switch"},
               {"switch", {{"on", names.on}, {"off", names.off}}},
               {"program", to_string(sp)},
               {"stable_before", before.size()},
               {"stable_after", after.size()},
               {"stable_models", models_json(sg, after)},
               {"pass", ok}};
        *out = copy_out(j);
        if (passed != nullptr) *passed = ok ? 1 : 0;
    });
}

st_status st_tree_parse(const char* text, st_tree** out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = new st_tree{TreeSpec::from_json(text)};
    });
}

void st_tree_free(st_tree* tree) { delete tree; }

st_status st_tree2prog(const st_tree* tree, const char* const* paths, std::size_t path_count, const char* atom_bound,
                       const st_options* options, char** out, int* passed) {
    return guarded([&] {
        require(tree != nullptr && out != nullptr, "null argument");
        require(path_count == 0 || paths != nullptr, "null path list");
        const auto o = resolve(options);
        const auto& spec = tree->spec;
        auto tp = TreeProgram::compile(spec);
        const std::size_t budget = o.budget == 0 ? 256 : o.budget;
        const Natural bound = atom_bound != nullptr ? parse_natural(atom_bound) : bound_covering(spec, 4);

        json j{{"command", "tree2prog"},
               {"program", tp.text()},
               {"bounds", {{"atom_bound", to_string(bound)}, {"budget", budget}, {"atom_limit", o.atom_limit}}}};

        std::vector<PathDesc> betas;
        for (std::size_t i = 0; i < path_count; ++i) betas.push_back(parse_path(paths[i] == nullptr ? "" : paths[i]));
        auto ps = spec.paths();
        j["paths"] = ps.kind == PathSet::Kind::Finite      ? json(ps.paths.size())
                     : ps.kind == PathSet::Kind::Unbounded ? json("unbounded")
                                                           : json("infinitely many");
        if (path_count == 0 && ps.kind == PathSet::Kind::Finite) betas = ps.paths;

        bool ok = true;
        auto verified = json::array();
        for (const auto& beta : betas) {
            auto m = m_beta(tp, beta, bound);
            auto v = check_stable_fragment(tp, m, bound, budget);
            std::size_t rejected = 0;
            auto flips = single_flips(tp, m, bound, 12);
            for (const auto& f : flips) {
                if (!check_stable_fragment(tp, f, bound, budget).pass) ++rejected;
            }
            const bool pass = v.pass && rejected == flips.size();
            ok = ok && pass;
            json e{{"path", path_json(beta)},
                   {"pass", pass},
                   {"depth", v.depth},
                   {"region_atoms", v.region_atoms},
                   {"fragment_atoms", m.size()},
                   {"mutations", flips.size()},
                   {"mutations_rejected", rejected}};
            if (!v.pass) e["reason"] = v.reason;
            verified.push_back(e);
        }
        j["verified"] = verified;

        if (path_count == 0 && ps.kind == PathSet::Kind::Finite && ps.paths.empty()) {
            // No infinite path: the region program past the tree's height
            // should have no stable model.
            std::size_t height = 0;
            for (std::size_t d = 1; d <= spec.state_count() + spec.nodes().size() + 1; ++d) {
                if (!spec.nodes_at_depth(d, std::size_t{1} << 16).nodes.empty()) height = d;
            }
            const Natural b = std::max(Natural(bound - 1), Natural(3 * (height + 1) + 2));
            auto region = region_for_bound(tp, b);
            json e{{"height", height}, {"region_depth", region.depth}, {"region_atoms", region.atom_count()}};
            if (region.atom_count() <= o.atom_limit) {
                auto models = enumerate_stable(region_program(tp, region), o.atom_limit);
                e["stable_fragments"] = models.size();
                ok = ok && models.empty();
            } else {
                e["stable_fragments"] = nullptr;
            }
            j["empty_tree"] = e;
        }

        auto census = json::array();
        std::vector<PtAtom> probes{{PtPredicate::IPath, 0}};
        for (unsigned long d = 0; d <= 4; ++d) probes.push_back({PtPredicate::Control, d});
        for (const auto& a : probes) {
            auto c = scheme_census(tp, a, budget);
            census.push_back({{"atom", to_string(a)}, {"count", c.count}, {"saturated", c.saturated}, {"by_route", c.by_route}});
        }
        j["census"] = census;
        j["pass"] = ok;
        *out = copy_out(j);
        if (passed != nullptr) *passed = ok ? 1 : 0;
    });
}

st_status st_fuzz(uint64_t seed, std::size_t count, std::size_t max_atoms, std::size_t max_clauses,
                  const st_options* options, char** out, int* passed) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        const auto o = resolve(options);
        require(max_atoms >= 1 && max_atoms <= 16, "max_atoms must be between 1 and 16");
        require(max_clauses >= 1 && max_clauses <= 64, "max_clauses must be between 1 and 64");
        InvariantOptions inv;
        inv.atom_limit = std::min<std::size_t>(o.atom_limit, 16);
        inv.blocking_max_m = std::min<std::uint64_t>(o.max_m, kMaxBlockingM);
        auto j = fuzz_report(seed, count, FuzzBounds{max_atoms, max_clauses, 3}, inv);
        j["command"] = "fuzz";
        *out = copy_out(j);
        if (passed != nullptr) *passed = j["pass"].get<bool>() ? 1 : 0;
    });
}

} // extern "C"
