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

#include "stabtree/trees.hpp"

#include "stabtree/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace stabtree {

namespace {

constexpr Label kMaxLabel = std::numeric_limits<Label>::max();
constexpr std::size_t kMaxExplicitChildren = std::size_t{1} << 20;
constexpr std::size_t kMaxPaths = std::size_t{1} << 16;

Label guard_hi(const Guard& g) { return g.kind == Guard::Kind::AtLeast ? kMaxLabel : g.hi; }

[[noreturn]] void bad_tree(const std::string& msg) { fail(ErrorCode::TreeFormat, msg); }

// Shortest cycle, then shortest stem.
PathDesc normalize(PathDesc p) {
    const std::size_t n = p.cycle.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = p.cycle[i] == p.cycle[i - d];
        if (periodic) {
            p.cycle.resize(d);
            break;
        }
    }
    while (!p.stem.empty() && p.stem.back() == p.cycle.back()) {
        std::rotate(p.cycle.rbegin(), p.cycle.rbegin() + 1, p.cycle.rend());
        p.stem.pop_back();
    }
    return p;
}

} // namespace

Node PathDesc::prefix(std::size_t n) const {
    Node out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

std::string to_string(const Node& sigma) {
    std::string s = "(";
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(sigma[i]);
    }
    return s + ")";
}

TreeSpec TreeSpec::regular(std::size_t states, std::size_t start, std::vector<Edge> edges) {
    if (states == 0 || start >= states) bad_tree("start state out of range");
    for (const auto& e : edges) {
        if (e.from >= states || e.to >= states) bad_tree("edge names an unknown state");
        if (e.guard.kind != Guard::Kind::AtLeast && e.guard.lo > e.guard.hi) bad_tree("empty range guard");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (edges[i].from != edges[j].from) continue;
            const auto& a = edges[i].guard;
            const auto& b = edges[j].guard;
            if (a.lo <= guard_hi(b) && b.lo <= guard_hi(a)) {
                bad_tree("overlapping guards at state " + std::to_string(edges[i].from));
            }
        }
    }
    TreeSpec t;
    t.variant_ = Variant::Regular;
    t.states_ = states;
    t.start_ = start;
    t.edges_ = std::move(edges);
    return t;
}

TreeSpec TreeSpec::explicit_tree(std::vector<Node> nodes) {
    nodes.emplace_back();
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (const auto& n : nodes) {
        if (n.empty()) continue;
        Node parent(n.begin(), n.end() - 1);
        if (!std::binary_search(nodes.begin(), nodes.end(), parent)) {
            bad_tree("node " + to_string(n) + " has no parent in the tree");
        }
    }
    TreeSpec t;
    t.variant_ = Variant::Explicit;
    t.nodes_ = std::move(nodes);
    return t;
}

TreeSpec TreeSpec::from_json(std::string_view text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad_tree(std::string("invalid JSON: ") + e.what());
    }
    try {
        const auto variant = j.at("variant").get<std::string>();
        if (variant == "explicit") {
            return explicit_tree(j.at("nodes").get<std::vector<Node>>());
        }
        if (variant != "regular") bad_tree("unknown variant '" + variant + "'");
        std::map<std::string, std::size_t> ids;
        for (const auto& s : j.at("states")) {
            if (!ids.emplace(s.dump(), ids.size()).second) bad_tree("duplicate state " + s.dump());
        }
        auto state = [&](const json& s) {
            auto it = ids.find(s.dump());
            if (it == ids.end()) bad_tree("unknown state " + s.dump());
            return it->second;
        };
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            Edge edge;
            edge.from = state(e.at("from"));
            edge.to = state(e.at("to"));
            const auto& g = e.at("guard");
            if (g.size() != 1) bad_tree("a guard needs exactly one of exact, range, atLeast");
            if (g.contains("exact")) {
                edge.guard = Guard::exact(g["exact"].get<Label>());
            } else if (g.contains("range")) {
                auto r = g["range"].get<std::vector<Label>>();
                if (r.size() != 2) bad_tree("range guard needs [lo, hi]");
                edge.guard = Guard::range(r[0], r[1]);
            } else if (g.contains("atLeast")) {
                edge.guard = Guard::at_least(g["atLeast"].get<Label>());
            } else {
                bad_tree("unknown guard " + g.dump());
            }
            edges.push_back(edge);
        }
        return regular(ids.size(), state(j.at("start")), std::move(edges));
    } catch (const json::exception& e) {
        bad_tree(std::string("malformed tree description: ") + e.what());
    }
}

std::string TreeSpec::to_json() const {
    using nlohmann::json;
    json j;
    if (variant_ == Variant::Explicit) {
        j["variant"] = "explicit";
        j["nodes"] = nodes_;
        return j.dump();
    }
    j["variant"] = "regular";
    std::vector<std::size_t> states(states_);
    for (std::size_t i = 0; i < states_; ++i) states[i] = i;
    j["states"] = states;
    j["start"] = start_;
    j["edges"] = json::array();
    for (const auto& e : edges_) {
        json g;
        switch (e.guard.kind) {
            case Guard::Kind::Exact: g["exact"] = e.guard.lo; break;
            case Guard::Kind::Range: g["range"] = {e.guard.lo, e.guard.hi}; break;
            case Guard::Kind::AtLeast: g["atLeast"] = e.guard.lo; break;
        }
        j["edges"].push_back({{"from", e.from}, {"guard", g}, {"to", e.to}});
    }
    return j.dump();
}

std::optional<std::size_t> TreeSpec::run(std::span<const Label> sigma) const {
    std::size_t s = start_;
    for (auto x : sigma) {
        bool moved = false;
        for (const auto& e : edges_) {
            if (e.from == s && e.guard.accepts(x)) {
                s = e.to;
                moved = true;
                break;
            }
        }
        if (!moved) return std::nullopt;
    }
    return s;
}

bool TreeSpec::member(std::span<const Label> sigma) const {
    if (variant_ == Variant::Explicit) {
        Node n(sigma.begin(), sigma.end());
        return std::binary_search(nodes_.begin(), nodes_.end(), n);
    }
    return run(sigma).has_value();
}

ChildBound TreeSpec::children_bound(std::span<const Label> sigma) const {
    if (!member(sigma)) fail(ErrorCode::NotANode, to_string(Node(sigma.begin(), sigma.end())) + " is not a node");
    ChildBound cb;
    if (variant_ == Variant::Explicit) {
        for (const auto& n : nodes_) {
            if (n.size() == sigma.size() + 1 && std::equal(sigma.begin(), sigma.end(), n.begin())) {
                cb.labels.push_back(n.back());
            }
        }
        return cb;
    }
    const std::size_t s = *run(sigma);
    for (const auto& e : edges_) {
        if (e.from != s) continue;
        if (!e.guard.bounded()) {
            cb.infinite = true;
            cb.lo = e.guard.lo;
            continue;
        }
        if (e.guard.hi - e.guard.lo >= kMaxExplicitChildren || cb.labels.size() > kMaxExplicitChildren) {
            fail(ErrorCode::TooLarge, "range guard too wide to list");
        }
        for (Label x = e.guard.lo;; ++x) {
            cb.labels.push_back(x);
            if (x == e.guard.hi) break;
        }
    }
    std::sort(cb.labels.begin(), cb.labels.end());
    return cb;
}

Level TreeSpec::nodes_at_depth(std::size_t d, std::size_t width_cap) const {
    Level level;
    level.nodes.emplace_back();
    for (std::size_t depth = 0; depth < d; ++depth) {
        std::vector<Node> next;
        for (const auto& n : level.nodes) {
            auto cb = children_bound(n);
            if (cb.infinite) return Level{true, {}};
            for (auto x : cb.labels) {
                Node c = n;
                c.push_back(x);
                next.push_back(std::move(c));
                if (next.size() > width_cap) return Level{true, {}};
            }
        }
        level.nodes = std::move(next);
    }
    std::sort(level.nodes.begin(), level.nodes.end());
    return level;
}

Level TreeSpec::nodes_at_depth_capped(std::size_t d, Label label_cap) const {
    Level level;
    level.nodes.emplace_back();
    for (std::size_t depth = 0; depth < d; ++depth) {
        std::vector<Node> next;
        for (const auto& n : level.nodes) {
            auto cb = children_bound(n);
            if (cb.infinite) {
                if (label_cap >= cb.lo) {
                    for (Label x = cb.lo;; ++x) {
                        cb.labels.push_back(x);
                        if (x == label_cap) break;
                    }
                }
                level.overflow = true;
            }
            std::sort(cb.labels.begin(), cb.labels.end());
            for (auto x : cb.labels) {
                if (x > label_cap) {
                    level.overflow = true;
                    continue;
                }
                Node c = n;
                c.push_back(x);
                next.push_back(std::move(c));
            }
        }
        level.nodes = std::move(next);
    }
    std::sort(level.nodes.begin(), level.nodes.end());
    return level;
}

std::vector<bool> TreeSpec::reachable_states() const {
    std::vector<bool> seen(states_, false);
    std::vector<std::size_t> stack{start_};
    seen[start_] = true;
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (const auto& e : edges_) {
            if (e.from == s && !seen[e.to]) {
                seen[e.to] = true;
                stack.push_back(e.to);
            }
        }
    }
    return seen;
}

std::vector<bool> TreeSpec::live_states() const {
    // Repeatedly drop states with no edge into the surviving set; what is
    // left has an infinite run.
    std::vector<bool> live(states_, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < states_; ++s) {
            if (!live[s]) continue;
            bool out = std::any_of(edges_.begin(), edges_.end(),
                                   [&](const Edge& e) { return e.from == s && live[e.to]; });
            if (!out) {
                live[s] = false;
                changed = true;
            }
        }
    }
    return live;
}

bool TreeSpec::ext_at_depth(std::span<const Label> sigma, std::size_t /*horizon*/) const {
    if (!member(sigma)) fail(ErrorCode::NotANode, to_string(Node(sigma.begin(), sigma.end())) + " is not a node");
    if (variant_ == Variant::Explicit) return false;
    return live_states()[*run(sigma)];
}

PathSet TreeSpec::paths() const {
    PathSet out;
    if (variant_ == Variant::Explicit) return out;
    const auto live = live_states();
    const auto reach = reachable_states();
    if (!live[start_]) return out;

    // reaches[a][b]: b reachable from a in one or more steps.
    std::vector<std::vector<bool>> reaches(states_, std::vector<bool>(states_, false));
    for (std::size_t a = 0; a < states_; ++a) {
        std::vector<std::size_t> stack;
        for (const auto& e : edges_) {
            if (e.from == a && !reaches[a][e.to]) {
                reaches[a][e.to] = true;
                stack.push_back(e.to);
            }
        }
        while (!stack.empty()) {
            auto s = stack.back();
            stack.pop_back();
            for (const auto& e : edges_) {
                if (e.from == s && !reaches[a][e.to]) {
                    reaches[a][e.to] = true;
                    stack.push_back(e.to);
                }
            }
        }
    }
    for (const auto& e : edges_) {
        if (reach[e.from] && !e.guard.bounded() && reaches[e.to][e.from]) {
            out.kind = PathSet::Kind::Unbounded;
            return out;
        }
    }
    for (std::size_t s = 0; s < states_; ++s) {
        if (!reach[s] || !live[s]) continue;
        Label choices = 0;
        for (const auto& e : edges_) {
            if (e.from != s || !live[e.to]) continue;
            if (!e.guard.bounded()) {
                out.kind = PathSet::Kind::InfinitelyMany;
                return out;
            }
            choices += e.guard.hi - e.guard.lo + 1;
        }
        if (reaches[s][s] && choices > 1) {
            out.kind = PathSet::Kind::InfinitelyMany;
            return out;
        }
    }

    // Every cyclic live state now has a single live continuation; branch
    // only at the acyclic part.
    auto live_step = [&](std::size_t s) {
        for (const auto& e : edges_) {
            if (e.from == s && live[e.to]) return std::pair<Label, std::size_t>{e.guard.lo, e.to};
        }
        return std::pair<Label, std::size_t>{0, s};
    };
    std::vector<std::pair<std::size_t, Node>> stack{{start_, {}}};
    while (!stack.empty()) {
        auto [s, stem] = std::move(stack.back());
        stack.pop_back();
        if (reaches[s][s]) {
            std::vector<std::size_t> seen_states;
            Node labels;
            std::size_t cur = s;
            while (std::find(seen_states.begin(), seen_states.end(), cur) == seen_states.end()) {
                seen_states.push_back(cur);
                auto [x, next] = live_step(cur);
                labels.push_back(x);
                cur = next;
            }
            auto j = static_cast<std::size_t>(std::find(seen_states.begin(), seen_states.end(), cur) -
                                              seen_states.begin());
            PathDesc p;
            p.stem = stem;
            p.stem.insert(p.stem.end(), labels.begin(), labels.begin() + static_cast<long>(j));
            p.cycle.assign(labels.begin() + static_cast<long>(j), labels.end());
            out.paths.push_back(normalize(std::move(p)));
            if (out.paths.size() > kMaxPaths) fail(ErrorCode::TooLarge, "too many infinite paths to list");
            continue;
        }
        for (const auto& e : edges_) {
            if (e.from != s || !live[e.to]) continue;
            for (Label x = e.guard.lo;; ++x) {
                Node next = stem;
                next.push_back(x);
                stack.emplace_back(e.to, std::move(next));
                if (stack.size() > kMaxPaths) fail(ErrorCode::TooLarge, "too many infinite paths to list");
                if (x == e.guard.hi) break;
            }
        }
    }
    std::sort(out.paths.begin(), out.paths.end(), [](const PathDesc& a, const PathDesc& b) {
        return a.prefix(a.stem.size() + a.cycle.size() + b.stem.size() + b.cycle.size()) <
               b.prefix(a.stem.size() + a.cycle.size() + b.stem.size() + b.cycle.size());
    });
    return out;
}

bool TreeSpec::on_tree(const PathDesc& path) const {
    if (variant_ == Variant::Explicit || path.cycle.empty()) return false;
    auto s = run(path.stem);
    std::set<std::size_t> seen;
    while (s && seen.insert(*s).second) {
        std::size_t cur = *s;
        for (auto x : path.cycle) {
            bool moved = false;
            for (const auto& e : edges_) {
                if (e.from == cur && e.guard.accepts(x)) {
                    cur = e.to;
                    moved = true;
                    break;
                }
            }
            if (!moved) return false;
        }
        s = cur;
    }
    return s.has_value();
}

bool TreeSpec::is_rb() const {
    if (variant_ == Variant::Explicit) return true;
    const auto reach = reachable_states();
    return std::none_of(edges_.begin(), edges_.end(),
                        [&](const Edge& e) { return reach[e.from] && !e.guard.bounded(); });
}

std::optional<std::size_t> TreeSpec::height() const {
    if (variant_ == Variant::Regular) return std::nullopt;
    std::size_t h = 0;
    for (const auto& n : nodes_) h = std::max(h, n.size());
    return h;
}

} // namespace stabtree
