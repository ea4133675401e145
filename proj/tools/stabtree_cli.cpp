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


// Command-line front end. Everything goes through the C API.

#include "stabtree/stabtree.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Args {
    std::string file;
    bool json_out = false;
    std::size_t atom_limit = 0;
    std::size_t depth = 0;
    std::size_t budget = 0;
    std::uint64_t max_m = 0;
    bool exact = false;
    bool full_n_k = false;
    std::vector<std::string> paths;
    std::string atom_bound;
    std::string atom;
    std::string node;
    std::uint64_t seed = 1;
    std::size_t count = 100;
    std::size_t max_atoms = 8;
    std::size_t max_clauses = 10;
};

struct ApiError {
    st_status status;
    std::string message;
};

void check(st_status s) {
    if (s != ST_OK) throw ApiError{s, st_last_error()};
}

std::string read_input(const std::string& file) {
    if (file == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(file);
    if (!in) throw ApiError{ST_ERR_INVALID_ARGUMENT, "cannot read " + file};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json take(char* raw) {
    std::unique_ptr<char, decltype(&st_string_free)> owned(raw, &st_string_free);
    return json::parse(owned.get());
}

using ProgramPtr = std::unique_ptr<st_program, decltype(&st_program_free)>;

ProgramPtr load_program(const Args& a, const st_options& o) {
    st_program* p = nullptr;
    check(st_program_parse(read_input(a.file).c_str(), &o, &p));
    return ProgramPtr(p, &st_program_free);
}

std::string set_text(const json& model) {
    std::string s = "{";
    for (std::size_t i = 0; i < model.size(); ++i) s += (i ? ", " : "") + model[i].get<std::string>();
    return s + "}";
}

void print_models(const json& models) {
    for (const auto& m : models) std::cout << "  " << set_text(m) << "\n";
}

const char* verdict(const json& r) { return r.value("pass", false) ? "PASS" : "FAIL"; }

void summarize(const std::string& cmd, const json& r) {
    if (cmd == "stable") {
        std::cout << r["stable_models"].size() << " stable model(s)\n";
        print_models(r["stable_models"]);
        std::cout << "characterizations agree: " << (r["agree"].get<bool>() ? "yes" : "no") << "\n";
        if (!r["schemes_saturated"].get<bool>()) std::cout << "scheme search hit its budget\n";
    } else if (cmd == "schemes") {
        for (const auto& a : r["atoms"]) {
            std::cout << a["atom"].get<std::string>() << ": " << a["schemes"].size() << " minimal scheme(s)\n";
            for (const auto& s : a["schemes"]) {
                std::cout << "  code " << s["code"].get<std::string>() << "  support " << set_text(s["support"])
                          << "\n    " << s["scheme"].get<std::string>() << "\n";
            }
        }
        if (!r["saturated"].get<bool>()) std::cout << "scheme search hit its budget\n";
    } else if (cmd == "defeq") {
        for (const auto& e : r["equations"]) {
            std::cout << e["equation"].get<std::string>() << "\n  reduced: " << e["reduced"].get<std::string>() << "\n";
        }
    } else if (cmd == "prog2tree") {
        for (const auto& a : r["least_codes"]) {
            std::cout << a["atom"].get<std::string>() << " least codes:";
            for (const auto& c : a["codes"]) std::cout << " " << c.get<std::string>();
            std::cout << "\n";
        }
        if (r.contains("exact")) {
            std::cout << "paths decode to " << r["exact"]["paths"].size() << " model(s), stable models "
                      << r["exact"]["stable_models"].size() << ", equal: "
                      << (r["exact"]["equal"].get<bool>() ? "yes" : "no") << "\n";
        }
        std::cout << "nodes per level:";
        for (const auto& l : r["branching"]["levels"]) std::cout << " " << l["nodes"];
        if (r["branching"]["overflow"].get<bool>()) std::cout << " (cap reached)";
        std::cout << "\n";
        const auto& b = r["blocking"];
        if (b["first_m"].is_null()) {
            std::cout << "no explicit blocking set for m <= " << b["checked_up_to"] << "\n";
        } else {
            std::cout << "explicit blocking set at m = " << b["first_m"] << "\n";
        }
    } else if (cmd == "walk") {
        for (const auto& p : r["prefixes"]) {
            std::cout << "length " << p["length"] << ": ";
            if (p["member"].get<bool>()) {
                std::cout << "node\n";
            } else {
                std::cout << "fails (" << p["condition"].get<std::string>() << ") at atom " << p["atom"] << "\n";
            }
        }
        if (r.contains("children")) {
            std::cout << "children:";
            for (const auto& c : r["children"]) std::cout << " " << c.get<std::string>();
            std::cout << "\n";
        }
    } else if (cmd == "blockingset") {
        for (const auto& e : r["scan"]) {
            std::cout << "m = " << e["m"] << ": " << (e["holds"].get<bool>() ? "blocking" : "not blocking") << "\n";
        }
        if (r.contains("has_stable_model")) {
            std::cout << "stable model exists: " << (r["has_stable_model"].get<bool>() ? "yes" : "no") << "\n";
        }
    } else if (cmd == "fsprobe") {
        std::cout << r["atom"].get<std::string>() << ": " << r["supports_found"] << " inclusion-minimal support(s)"
                  << (r["saturated"].get<bool>() ? "" : ", search hit its budget") << "\n";
        for (const auto& s : r["supports"]) std::cout << "  " << set_text(s) << "\n";
    } else if (cmd == "switch") {
        std::cout << "switch atoms " << r["switch"]["on"].get<std::string>() << " / "
                  << r["switch"]["off"].get<std::string>() << "\n"
                  << "stable models: " << r["stable_before"] << " before, " << r["stable_after"] << " after\n";
    } else if (cmd == "tree2prog") {
        std::cout << r["program"].get<std::string>();
        std::cout << "paths: " << r["paths"].dump() << "\n";
        for (const auto& v : r["verified"]) {
            std::cout << "path " << v["path"]["stem"].dump() << v["path"]["cycle"].dump() << ": "
                      << verdict(v) << ", " << v["fragment_atoms"] << " atoms, region depth " << v["depth"] << ", "
                      << v["mutations_rejected"] << "/" << v["mutations"] << " mutations rejected";
            if (v.contains("reason")) std::cout << " (" << v["reason"].get<std::string>() << ")";
            std::cout << "\n";
        }
        if (r.contains("empty_tree")) {
            const auto& e = r["empty_tree"];
            std::cout << "no infinite path; region program stable fragments: "
                      << (e["stable_fragments"].is_null() ? std::string("not checked")
                                                          : e["stable_fragments"].dump())
                      << "\n";
        }
        for (const auto& c : r["census"]) {
            std::cout << "schemes of " << c["atom"].get<std::string>() << ": " << c["count"]
                      << (c["saturated"].get<bool>() ? "" : " (budget reached)") << "\n";
        }
    } else if (cmd == "fuzz") {
        std::cout << r["subjects"].size() << " program(s), " << r["failures"] << " failure(s)\n";
        for (const auto& s : r["subjects"]) {
            if (s["pass"].get<bool>()) continue;
            std::cout << s["subject"].get<std::string>() << ":\n" << s["program"].get<std::string>();
            for (const auto& c : s["checks"]) {
                if (!c["pass"].get<bool>()) {
                    std::cout << "  " << c["name"].get<std::string>() << ": " << c["witness"].get<std::string>() << "\n";
                }
            }
        }
    }
    std::cout << verdict(r) << "\n";
}

json run(const std::string& cmd, const Args& a, const st_options& o) {
    char* out = nullptr;
    int flag = 0;
    if (cmd == "tree2prog") {
        st_tree* t = nullptr;
        check(st_tree_parse(read_input(a.file).c_str(), &t));
        std::unique_ptr<st_tree, decltype(&st_tree_free)> tree(t, &st_tree_free);
        std::vector<const char*> ps;
        for (const auto& p : a.paths) ps.push_back(p.c_str());
        check(st_tree2prog(tree.get(), ps.data(), ps.size(), a.atom_bound.empty() ? nullptr : a.atom_bound.c_str(),
                           &o, &out, &flag));
        return take(out);
    }
    if (cmd == "fuzz") {
        check(st_fuzz(a.seed, a.count, a.max_atoms, a.max_clauses, &o, &out, &flag));
        return take(out);
    }
    auto p = load_program(a, o);
    if (cmd == "stable") check(st_stable(p.get(), &o, &out, &flag));
    else if (cmd == "schemes") check(st_schemes(p.get(), &o, &out));
    else if (cmd == "defeq") check(st_defeq(p.get(), &o, &out));
    else if (cmd == "prog2tree") check(st_prog2tree(p.get(), &o, &out, &flag));
    else if (cmd == "walk") check(st_tree_walk(p.get(), a.node.c_str(), &o, &out));
    else if (cmd == "blockingset") check(st_blockingset(p.get(), &o, &out, &flag));
    else if (cmd == "fsprobe") check(st_fsprobe(p.get(), a.atom.c_str(), &o, &out));
    else if (cmd == "switch") check(st_switch(p.get(), &o, &out, &flag));
    return take(out);
}

} // namespace

int main(int argc, char** argv) {
    st_options defaults;
    st_options_init(&defaults);
    Args a;
    a.atom_limit = defaults.atom_limit;
    a.depth = defaults.depth;
    a.budget = defaults.budget;
    a.max_m = defaults.max_m;

    CLI::App app{"Stable models of logic programs and recursive trees"};
    app.set_version_flag("--version", st_version());
    app.require_subcommand(1);

    auto common = [&](CLI::App* c) {
        c->add_flag("--json", a.json_out, "Print the full JSON report");
        c->add_option("--atom-limit", a.atom_limit, "Largest Herbrand base enumerated by brute force")
            ->capture_default_str();
        c->add_option("--budget", a.budget, "Scheme search budget, 0 for exhaustive")->capture_default_str();
    };
    auto program_cmd = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("file", a.file, "Program file, - for stdin")->required();
        c->add_option("--depth", a.depth, "Grounding depth for programs with variables")->capture_default_str();
        common(c);
        return c;
    };

    program_cmd("stable", "Stable models by four characterizations");
    program_cmd("schemes", "Minimal proof schemes with their codes");
    program_cmd("defeq", "Defining equations of each atom");
    auto* p2t = program_cmd("prog2tree", "The tree of a finite program");
    p2t->add_flag("--exact", a.exact, "Compare tree paths with stable models");
    p2t->add_flag("--full-n-k", a.full_n_k, "Use N_k in conditions (c) and (d)");
    auto* walk = program_cmd("walk", "Check a node of the program tree");
    walk->add_option("--node", a.node, "Comma-separated labels")->required();
    walk->add_flag("--full-n-k", a.full_n_k, "Use N_k in conditions (c) and (d)");
    auto* block = program_cmd("blockingset", "Scan for explicit initial blocking sets");
    block->add_option("--max-m", a.max_m, "Largest m scanned (at most 20)")->capture_default_str();
    auto* fs = program_cmd("fsprobe", "Count inclusion-minimal supports of an atom");
    fs->add_option("--atom", a.atom, "Ground atom")->required();
    program_cmd("switch", "Add the switch gadget and count stable models");

    auto* t2p = app.add_subcommand("tree2prog", "Program of a tree, with bounded verification");
    t2p->add_option("file", a.file, "Tree JSON file, - for stdin")->required();
    t2p->add_option("--verify", a.paths, "Path STEM(CYCLE) to verify, e.g. 1,2(0,1)");
    t2p->add_option("--atom-bound", a.atom_bound, "Largest atom code checked");
    common(t2p);

    auto* fz = app.add_subcommand("fuzz", "Invariant suite on random programs");
    fz->add_option("--seed", a.seed)->capture_default_str();
    fz->add_option("--count", a.count)->capture_default_str();
    fz->add_option("--max-atoms", a.max_atoms)->capture_default_str();
    fz->add_option("--max-clauses", a.max_clauses)->capture_default_str();
    common(fz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }

    st_options o = defaults;
    o.atom_limit = a.atom_limit;
    o.depth = a.depth;
    o.budget = a.budget;
    o.max_m = a.max_m;
    o.exact = a.exact ? 1 : 0;
    o.full_n_k = a.full_n_k ? 1 : 0;

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        const json r = run(cmd, a, o);
        if (a.json_out) {
            std::cout << r.dump(2) << "\n";
        } else {
            summarize(cmd, r);
        }
        return r.value("pass", false) ? kExitPass : kExitFail;
    } catch (const ApiError& e) {
        std::cerr << "error: " << st_status_name(e.status) << ": " << e.message << "\n";
        return kExitError;
    }
}
