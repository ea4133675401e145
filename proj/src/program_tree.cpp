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

#include "stabtree/program_tree.hpp"

#include "stabtree/error.hpp"

#include <algorithm>

namespace stabtree {

ProgramTree::ProgramTree(GroundProgram g, ProgramTreeOptions options)
    : g_(std::move(g)), options_(options), table_(g_) {
    least_.resize(g_.atom_count());
    least_index_.resize(g_.atom_count());
    for (AtomId i = 0; i < g_.atom_count(); ++i) {
        std::map<Support, const CodedScheme*> best;
        for (const auto& cs : table_.of(i)) {
            auto [it, fresh] = best.emplace(cs.scheme.support, &cs);
            if (!fresh && cs.code < it->second->code) it->second = &cs;
        }
        for (const auto& [support, cs] : best) {
            least_[i].push_back(cs->code);
            least_index_[i].emplace(cs->code, cs);
        }
        std::sort(least_[i].begin(), least_[i].end());
    }
}

const CodedScheme* ProgramTree::least_scheme(AtomId i, const Natural& code) const {
    if (i >= least_index_.size()) return nullptr;
    auto it = least_index_[i].find(code);
    return it == least_index_[i].end() ? nullptr : it->second;
}

NodeVerdict ProgramTree::check(std::span<const Natural> sigma) const {
    NodeVerdict v;
    auto reject = [&](char condition, std::size_t atom) {
        v.member = false;
        v.condition = condition;
        v.atom = atom;
        return v;
    };
    if (sigma.empty()) return v;
    const std::size_t k = sigma.size() - 1;

    for (std::size_t p = 0; p <= k; p += 2) {
        if (sigma[p] != 0 && sigma[p] != 1) return reject('v', p / 2);
    }
    for (std::size_t i = 0; 2 * i + 1 <= k; ++i) {
        if (sigma[2 * i] == 0) {
            if (sigma[2 * i + 1] != 0) return reject('a', i);
        } else if (least_scheme(static_cast<AtomId>(i), sigma[2 * i + 1]) == nullptr) {
            return reject('e', i);
        }
    }
    if (k < 2) return v;

    const std::size_t kbar = k % 2 == 0 ? k - 1 : k - 2;
    const std::size_t marked = kbar / 2 + 1; // even positions of sbar
    std::vector<char> in_i(marked, 0), in_o(marked, 0);
    for (std::size_t j = 0; 2 * j <= kbar; ++j) {
        (sigma[2 * j] == 1 ? in_i : in_o)[j] = 1;
    }
    auto inside_o = [&](const Support& s) {
        return std::all_of(s.begin(), s.end(), [&](AtomId a) { return a < marked && in_o[a]; });
    };
    const std::uint64_t bound = options_.full_n_k ? k : k / 2;

    for (std::size_t i = 0; 2 * i + 1 <= kbar && i < g_.atom_count(); ++i) {
        const auto atom = static_cast<AtomId>(i);
        const Natural& entry = sigma[2 * i + 1];
        if (sigma[2 * i] == 1) {
            const auto* cs = least_scheme(atom, entry);
            const auto& supp = cs->scheme.support;
            if (std::any_of(supp.begin(), supp.end(), [&](AtomId a) { return a < marked && in_i[a]; })) {
                return reject('b', i);
            }
            for (const auto& other : table_.of(atom)) {
                if (other.code >= entry) break;
                if (other.max_atom < bound && inside_o(other.scheme.support)) return reject('c', i);
            }
        } else {
            for (const auto& other : table_.of(atom)) {
                if (other.max_atom < bound && inside_o(other.scheme.support)) return reject('d', i);
            }
        }
    }
    return v;
}

std::vector<Natural> ProgramTree::children(std::span<const Natural> sigma) const {
    std::vector<Natural> out;
    if (!member(sigma)) return out;
    std::vector<Natural> candidates;
    const std::size_t len = sigma.size();
    if (len % 2 == 0) {
        candidates = {Natural(0), Natural(1)};
    } else if (sigma[len - 1] == 0) {
        candidates = {Natural(0)};
    } else if (len / 2 < g_.atom_count()) {
        candidates = least_[len / 2];
    }
    std::vector<Natural> node(sigma.begin(), sigma.end());
    node.emplace_back();
    for (const auto& x : candidates) {
        node.back() = x;
        if (member(node)) out.push_back(x);
    }
    return out;
}

std::vector<Natural> encode_path(const ProgramTree& t, const AtomSet& m) {
    const auto& g = t.program();
    if (m.size() != g.atom_count() || !is_stable(g, m)) {
        fail(ErrorCode::NotStable, "interpretation is not a stable model");
    }
    std::vector<Natural> f(2 * g.atom_count(), 0);
    for (AtomId i = 0; i < g.atom_count(); ++i) {
        if (!m.test(i)) continue;
        f[2 * i] = 1;
        for (const auto& cs : t.schemes().of(i)) {
            if (admits(m, cs.scheme)) {
                f[2 * i + 1] = cs.code;
                break;
            }
        }
    }
    return f;
}

AtomSet decode_path(const ProgramTree& t, std::span<const Natural> stem, std::size_t check_depth) {
    const std::size_t len = std::max(check_depth, stem.size());
    std::vector<Natural> beta(stem.begin(), stem.end());
    beta.resize(len, 0);
    for (std::size_t l = 1; l <= len; ++l) {
        auto v = t.check(std::span<const Natural>(beta.data(), l));
        if (!v.member) {
            fail(ErrorCode::NotANode, "prefix of length " + std::to_string(l) + " fails condition (" +
                                          std::string(1, v.condition) + ") at atom " + std::to_string(v.atom));
        }
    }
    AtomSet m(t.atom_count());
    for (std::size_t i = 0; i < t.atom_count() && 2 * i < beta.size(); ++i) {
        if (beta[2 * i] == 1) m.set(i);
    }
    return m;
}

std::vector<AtomSet> enumerate_paths_exact(const ProgramTree& t, std::size_t slack, std::size_t atom_limit) {
    const std::size_t n = t.atom_count();
    if (n > atom_limit) {
        fail(ErrorCode::TooLarge, "Herbrand base has " + std::to_string(n) + " atoms; limit is " +
                                      std::to_string(atom_limit));
    }
    const std::size_t full = 2 * n + 2 + 2 * slack;
    std::vector<AtomSet> out;
    std::vector<Natural> node;
    // Depth-first over nodes up to length 2n; each survivor is then pushed
    // along its all-zero tail.
    auto dfs = [&](auto&& self) -> void {
        if (node.size() == 2 * n) {
            std::vector<Natural> tail = node;
            for (std::size_t l = node.size() + 1; l <= full; ++l) {
                tail.emplace_back(0);
                if (!t.member(tail)) return;
            }
            AtomSet m(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (node[2 * i] == 1) m.set(i);
            }
            out.push_back(std::move(m));
            return;
        }
        for (const auto& x : t.children(node)) {
            node.push_back(x);
            self(self);
            node.pop_back();
        }
    };
    dfs(dfs);
    std::sort(out.begin(), out.end(), [](const AtomSet& a, const AtomSet& b) { return a.to_ulong() < b.to_ulong(); });
    return out;
}

BranchingCensus branching_census(const ProgramTree& t, std::size_t depth, std::size_t cap) {
    BranchingCensus c;
    std::vector<std::vector<Natural>> level{{}};
    for (std::size_t d = 0; d <= depth; ++d) {
        BranchingLevel info;
        info.nodes = level.size();
        std::vector<std::vector<Natural>> next;
        if (d < depth) {
            for (const auto& node : level) {
                auto kids = t.children(node);
                info.max_children = std::max(info.max_children, kids.size());
                for (auto& x : kids) {
                    auto child = node;
                    child.push_back(std::move(x));
                    next.push_back(std::move(child));
                }
                if (next.size() > cap) {
                    c.overflow = true;
                    c.levels.push_back(info);
                    return c;
                }
            }
        }
        c.levels.push_back(info);
        level = std::move(next);
    }
    return c;
}

} // namespace stabtree
