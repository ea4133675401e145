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

#include "stabtree/tree_program.hpp"

#include "stabtree/error.hpp"

#include <algorithm>

namespace stabtree {

namespace {

constexpr std::size_t kMaxLevelWidth = std::size_t{1} << 16;
constexpr std::size_t kMaxRegionDepth = std::size_t{1} << 16;

const char* const kClauses = R"(ipath(X) :- tree(X), not notpath(X).
notpath(X) :- tree(X), not ipath(X).
ipath(0).
notpath(X) :- tree(X), ipath(Y), tree(Y), samelength(X, Y), diff(X, Y).
notpath(X) :- tree(X), tree(Y), ipath(Y), shorter(Y, X), notincluded(Y, X).
control(X) :- ipath(Y), length(Y, X).
control(X) :- not control(X), num(X).
)";

const char* const kBuiltins = R"(% builtin tree/1: X codes a node of the tree
% builtin seq/1: X codes a sequence
% builtin samelength/2: X and Y code sequences of equal length
% builtin diff/2: X and Y code different sequences
% builtin shorter/2: X and Y code sequences and X is the shorter one
% builtin length/2: X codes a sequence of length Y
% builtin notincluded/2: X and Y code sequences and X is not an initial segment of Y
% builtin num/1: X is a numeral
)";

std::optional<std::vector<Natural>> as_sequence(const Natural& n) {
    try {
        return seq_decode(n);
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<Node> as_node(const TreeSpec& t, const Natural& n) {
    auto seq = as_sequence(n);
    if (!seq) return std::nullopt;
    Node node;
    node.reserve(seq->size());
    for (const auto& x : *seq) {
        auto v = to_u64(x);
        if (!v) return std::nullopt;
        node.push_back(*v);
    }
    if (!t.member(node)) return std::nullopt;
    return node;
}

Natural code_of(const Node& n) { return seq_code(std::span<const std::uint64_t>(n)); }

bool is_prefix(const Node& a, const Node& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::string support_text(const PtSupport& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& c : s) {
        if (!first) out += ", ";
        out += to_string(decode_atom(c));
        first = false;
    }
    return out + "}";
}

// Nodes of length n, at most `limit` of them. Clears `complete` when the
// level had to be cut.
std::vector<CodedNode> level_nodes(const TreeSpec& t, std::size_t n, std::size_t limit, bool& complete) {
    Label cap = 1;
    while (true) {
        auto lvl = t.nodes_at_depth_capped(n, cap);
        if (!lvl.overflow || lvl.nodes.size() >= limit || cap > (Label{1} << 20)) {
            std::vector<CodedNode> out;
            for (auto& node : lvl.nodes) {
                Natural c = code_of(node);
                out.push_back(CodedNode{std::move(node), std::move(c)});
            }
            std::sort(out.begin(), out.end(), [](const CodedNode& a, const CodedNode& b) { return a.code < b.code; });
            if (lvl.overflow) complete = false;
            if (out.size() > limit) {
                out.resize(limit);
                complete = false;
            }
            return out;
        }
        cap = cap * 2 + 1;
    }
}

} // namespace

Natural atom_code(const PtAtom& a) { return a.arg * 3 + static_cast<unsigned long>(a.pred); }

PtAtom decode_atom(const Natural& code) {
    PtAtom a;
    Natural r;
    mpz_fdiv_qr_ui(a.arg.get_mpz_t(), r.get_mpz_t(), code.get_mpz_t(), 3);
    a.pred = static_cast<PtPredicate>(r.get_ui());
    return a;
}

std::string to_string(const PtAtom& a) {
    const char* name = a.pred == PtPredicate::IPath ? "ipath" : a.pred == PtPredicate::NotPath ? "notpath" : "control";
    return std::string(name) + "(" + a.arg.get_str() + ")";
}

// ---------------------------------------------------------------------------
// Oracle and compilation
// ---------------------------------------------------------------------------

bool TreeOracle::is_builtin(std::string_view p, std::size_t arity) const {
    if (arity == 1) return p == "tree" || p == "seq" || p == "num";
    if (arity == 2) {
        return p == "samelength" || p == "diff" || p == "shorter" || p == "length" || p == "notincluded";
    }
    return false;
}

bool TreeOracle::tree(const Natural& n) const { return as_node(*spec_, n).has_value(); }

bool TreeOracle::holds(const Atom& a) const {
    for (const auto& t : a.args) {
        if (t.kind != Term::Kind::Numeral) return false;
    }
    const auto& p = a.predicate;
    if (p == "num") return true;
    const Natural& x = a.args.at(0).value;
    if (p == "tree") return tree(x);
    auto sx = as_sequence(x);
    if (p == "seq") return sx.has_value();
    if (!sx) return false;
    const Natural& y = a.args.at(1).value;
    if (p == "length") return Natural(static_cast<unsigned long>(sx->size())) == y;
    auto sy = as_sequence(y);
    if (!sy) return false;
    if (p == "samelength") return sx->size() == sy->size();
    if (p == "diff") return *sx != *sy;
    if (p == "shorter") return sx->size() < sy->size();
    if (p == "notincluded") {
        return !(sx->size() <= sy->size() && std::equal(sx->begin(), sx->end(), sy->begin()));
    }
    return false;
}

TreeProgram TreeProgram::compile(TreeSpec spec) {
    TreeProgram tp;
    tp.spec_ = std::make_shared<const TreeSpec>(std::move(spec));
    tp.oracle_ = std::make_shared<const TreeOracle>(tp.spec_);
    tp.program_ = parse_program(kClauses);
    return tp;
}

std::string TreeProgram::text() const {
    return std::string(kBuiltins) + "% tree " + spec_->to_json() + "\n" + kClauses;
}

// ---------------------------------------------------------------------------
// Regions and fragments
// ---------------------------------------------------------------------------

std::size_t Region::atom_count() const { return 2 * node_codes.size() + depth + 1; }

bool Region::contains(const PtAtom& a) const {
    if (a.pred == PtPredicate::Control) return a.arg <= Natural(static_cast<unsigned long>(depth));
    return node_codes.count(a.arg) != 0;
}

std::vector<PtAtom> Region::atoms() const {
    std::vector<Natural> codes;
    for (const auto& c : node_codes) {
        codes.push_back(atom_code({PtPredicate::IPath, c}));
        codes.push_back(atom_code({PtPredicate::NotPath, c}));
    }
    for (std::size_t n = 0; n <= depth; ++n) {
        codes.push_back(atom_code({PtPredicate::Control, Natural(static_cast<unsigned long>(n))}));
    }
    std::sort(codes.begin(), codes.end());
    std::vector<PtAtom> out;
    for (const auto& c : codes) out.push_back(decode_atom(c));
    return out;
}

std::vector<CodedNode> nodes_up_to_code(const TreeSpec& t, const Natural& bound) {
    std::vector<CodedNode> out;
    std::vector<Node> stack{Node{}};
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        Natural c = code_of(n);
        if (c > bound) continue;
        auto cb = t.children_bound(n);
        auto try_child = [&](Label x) {
            Node child = n;
            child.push_back(x);
            if (code_of(child) > bound) return false;
            stack.push_back(std::move(child));
            return true;
        };
        // Codes grow with the label, so each scan stops at the first miss.
        for (auto x : cb.labels) {
            if (!try_child(x)) break;
        }
        if (cb.infinite) {
            for (Label x = cb.lo; try_child(x); ++x) {
            }
        }
        out.push_back(CodedNode{std::move(n), std::move(c)});
    }
    std::sort(out.begin(), out.end(), [](const CodedNode& a, const CodedNode& b) { return a.code < b.code; });
    return out;
}

Region region_for_bound(const TreeProgram& tp, const Natural& atom_bound) {
    if (atom_bound < 2) fail(ErrorCode::InvalidArgument, "atom bound must cover control(0), code 2");
    const auto& t = tp.spec();
    // Nodes whose ipath and notpath atoms both fit.
    Natural node_bound;
    mpz_fdiv_q_ui(node_bound.get_mpz_t(), Natural(atom_bound - 1).get_mpz_t(), 3);
    auto fitting = nodes_up_to_code(t, node_bound);

    Region r;
    r.levels.push_back({CodedNode{{}, 0}});
    r.node_codes.insert(0);
    for (std::size_t d = 1;; ++d) {
        if (atom_bound < Natural(static_cast<unsigned long>(3 * d + 2))) break;
        if (d > kMaxRegionDepth) fail(ErrorCode::TooLarge, "region deeper than " + std::to_string(kMaxRegionDepth));
        auto lvl = t.nodes_at_depth(d, kMaxLevelWidth);
        if (lvl.overflow) {
            bool reached = std::any_of(fitting.begin(), fitting.end(),
                                       [&](const CodedNode& n) { return n.node.size() == d; });
            if (reached) {
                fail(ErrorCode::Overflow, "level " + std::to_string(d) +
                                              " of the tree is infinite or too wide but has nodes within the atom bound");
            }
            break;
        }
        std::vector<CodedNode> level;
        bool fits = true;
        for (auto& n : lvl.nodes) {
            Natural c = code_of(n);
            if (c > node_bound) {
                fits = false;
                break;
            }
            level.push_back(CodedNode{std::move(n), std::move(c)});
        }
        if (!fits) break;
        std::sort(level.begin(), level.end(), [](const CodedNode& a, const CodedNode& b) { return a.code < b.code; });
        for (const auto& n : level) r.node_codes.insert(n.code);
        r.levels.push_back(std::move(level));
        r.depth = d;
    }
    return r;
}

Fragment m_beta(const TreeProgram& tp, const PathDesc& beta, const Natural& atom_bound) {
    const auto& t = tp.spec();
    if (!t.on_tree(beta)) fail(ErrorCode::NotAPath, "the path is not an infinite path through the tree");
    Fragment m;
    Natural node_bound;
    mpz_fdiv_q_ui(node_bound.get_mpz_t(), atom_bound.get_mpz_t(), 3);
    for (const auto& n : nodes_up_to_code(t, node_bound)) {
        bool on_beta = n.node == beta.prefix(n.node.size());
        PtAtom a{on_beta ? PtPredicate::IPath : PtPredicate::NotPath, n.code};
        Natural c = atom_code(a);
        if (c <= atom_bound) m.insert(c);
    }
    for (unsigned long n = 0; Natural(3 * n + 2) <= atom_bound; ++n) {
        m.insert(atom_code({PtPredicate::Control, Natural(n)}));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Supports by case analysis
// ---------------------------------------------------------------------------

SupportCensus atom_supports(const TreeProgram& tp, const PtAtom& a, std::size_t budget) {
    const auto& t = tp.spec();
    SupportCensus out;
    std::set<PtSupport> seen;
    std::map<std::string, std::set<PtSupport>> per_route;
    auto add = [&](const std::string& route, PtSupport s) {
        if (seen.count(s) == 0) {
            if (seen.size() >= budget) {
                out.saturated = false;
                return false;
            }
            seen.insert(s);
            out.supports.push_back(s);
        }
        per_route[route].insert(std::move(s));
        return true;
    };
    auto notpath = [](const Natural& c) { return atom_code({PtPredicate::NotPath, c}); };
    auto ipath = [](const Natural& c) { return atom_code({PtPredicate::IPath, c}); };

    switch (a.pred) {
        case PtPredicate::IPath: {
            if (a.arg == 0) add("(3)", {});
            if (auto node = as_node(t, a.arg)) add("(1)", {notpath(a.arg)});
            break;
        }
        case PtPredicate::NotPath: {
            auto node = as_node(t, a.arg);
            if (!node) break;
            add("(2)", {ipath(a.arg)});
            // (4): another node of the same length lies on the path.
            if (!node->empty()) {
                for (const auto& tau : level_nodes(t, node->size(), budget + 1, out.saturated)) {
                    if (tau.node != *node && !add("(4)", {notpath(tau.code)})) break;
                }
            }
            // (5): a shorter node off the initial segments of sigma lies on the path.
            for (std::size_t len = 1; len < node->size(); ++len) {
                for (const auto& tau : level_nodes(t, len, budget + 1, out.saturated)) {
                    if (!is_prefix(tau.node, *node) && !add("(5)", {notpath(tau.code)})) break;
                }
            }
            break;
        }
        case PtPredicate::Control: {
            add("(7)", {atom_code(a)});
            auto n = to_u64(a.arg);
            if (!n || *n > kMaxRegionDepth) {
                out.saturated = false;
                break;
            }
            for (const auto& tau : level_nodes(t, *n, budget + 1, out.saturated)) {
                if (tau.node.empty()) {
                    add("(6)", {});
                    add("(6)", {notpath(0)});
                } else if (!add("(6)", {notpath(tau.code)})) {
                    break;
                }
            }
            break;
        }
    }
    for (const auto& [route, supports] : per_route) out.by_route[route] = supports.size();
    return out;
}

Census scheme_census(const TreeProgram& tp, const PtAtom& a, std::size_t budget) {
    auto sc = atom_supports(tp, a, budget);
    Census c;
    c.saturated = sc.saturated;
    c.by_route = sc.by_route;
    for (const auto& u : sc.supports) {
        bool dominated = std::any_of(sc.supports.begin(), sc.supports.end(), [&](const PtSupport& v) {
            return v.size() < u.size() && std::includes(u.begin(), u.end(), v.begin(), v.end());
        });
        if (!dominated) ++c.count;
    }
    return c;
}

FragmentVerdict check_stable_fragment(const TreeProgram& tp, const Fragment& m, const Natural& atom_bound,
                                      std::size_t scheme_budget) {
    FragmentVerdict v;
    const auto region = region_for_bound(tp, atom_bound);
    v.depth = region.depth;
    v.region_atoms = region.atom_count();

    for (const auto& code : m) {
        auto a = decode_atom(code);
        if (code > atom_bound) {
            v.unverified.push_back(code);
            continue;
        }
        if (a.pred != PtPredicate::Control && !as_node(tp.spec(), a.arg)) {
            v.witness = a;
            v.reason = to_string(a) + " has no proof scheme: its argument is not a node";
            return v;
        }
        if (!region.contains(a)) v.unverified.push_back(code);
    }

    for (const auto& a : region.atoms()) {
        auto sc = atom_supports(tp, a, scheme_budget);
        if (!sc.saturated) {
            fail(ErrorCode::Overflow, "scheme budget exhausted at " + to_string(a));
        }
        const PtSupport* admitted = nullptr;
        for (const auto& s : sc.supports) {
            if (std::none_of(s.begin(), s.end(), [&](const Natural& b) { return m.count(b) != 0; })) {
                admitted = &s;
                break;
            }
        }
        const bool in = m.count(atom_code(a)) != 0;
        if (in && admitted == nullptr) {
            v.witness = a;
            v.reason = to_string(a) + " is in the fragment but every proof scheme is blocked";
            return v;
        }
        if (!in && admitted != nullptr) {
            v.witness = a;
            v.reason = to_string(a) + " is outside the fragment but the scheme with support " +
                       support_text(*admitted) + " is admitted";
            return v;
        }
    }
    v.pass = true;
    return v;
}

GroundProgram region_program(const TreeProgram& tp, const Region& region) {
    std::set<Natural> values(region.node_codes.begin(), region.node_codes.end());
    for (std::size_t n = 0; n <= region.depth; ++n) values.insert(Natural(static_cast<unsigned long>(n)));
    std::vector<Term> universe;
    for (const auto& v : values) universe.push_back(Term::numeral(v));
    auto keep = [&](const Atom& head) {
        if (head.args.size() != 1 || head.args[0].kind != Term::Kind::Numeral) return false;
        PtAtom a;
        if (head.predicate == "ipath") {
            a.pred = PtPredicate::IPath;
        } else if (head.predicate == "notpath") {
            a.pred = PtPredicate::NotPath;
        } else if (head.predicate == "control") {
            a.pred = PtPredicate::Control;
        } else {
            return false;
        }
        a.arg = head.args[0].value;
        return region.contains(a);
    };
    return ground_over(tp.program(), universe, &tp.oracle(), keep);
}

AtomSet fragment_to_set(const GroundProgram& g, const Fragment& m) {
    AtomSet s(g.atom_count());
    for (const auto& code : m) {
        if (auto id = g.find(to_string(decode_atom(code)))) s.set(*id);
    }
    return s;
}

std::vector<Fragment> single_flips(const TreeProgram& tp, const Fragment& m, const Natural& atom_bound,
                                   std::size_t extra) {
    std::vector<Fragment> out;
    const auto region = region_for_bound(tp, atom_bound);
    for (const auto& a : region.atoms()) {
        Fragment f = m;
        Natural c = atom_code(a);
        if (!f.erase(c)) f.insert(c);
        out.push_back(std::move(f));
    }
    std::size_t added = 0;
    for (Natural c = 0; c <= atom_bound && added < extra; ++c) {
        auto a = decode_atom(c);
        if (a.pred == PtPredicate::Control || m.count(c) || as_node(tp.spec(), a.arg)) continue;
        Fragment f = m;
        f.insert(c);
        out.push_back(std::move(f));
        ++added;
    }
    return out;
}

} // namespace stabtree
