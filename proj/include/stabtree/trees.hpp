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

// Finitely presented trees over sequences of naturals.
//
// A regular tree is the set of label sequences accepted by a deterministic
// guarded automaton in which every state accepts. An explicit tree is a
// finite prefix-closed node list.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stabtree {

using Label = std::uint64_t;
using Node = std::vector<Label>;

struct Guard {
    enum class Kind { Exact, Range, AtLeast };
    Kind kind = Kind::Exact;
    Label lo = 0;
    Label hi = 0; // unused for AtLeast

    static Guard exact(Label n) { return {Kind::Exact, n, n}; }
    static Guard range(Label lo, Label hi) { return {Kind::Range, lo, hi}; }
    static Guard at_least(Label lo) { return {Kind::AtLeast, lo, 0}; }

    bool accepts(Label x) const { return x >= lo && (kind == Kind::AtLeast || x <= hi); }
    bool bounded() const { return kind != Kind::AtLeast; }
};

struct Edge {
    std::size_t from = 0;
    Guard guard;
    std::size_t to = 0;
};

/// Child labels of a node: an explicit list, or every label from `lo` on
/// along some unbounded guard.
struct ChildBound {
    bool infinite = false;
    std::vector<Label> labels; // sorted; valid when !infinite
    Label lo = 0;              // valid when infinite
};

struct Level {
    bool overflow = false;
    std::vector<Node> nodes; // lexicographic order
};

/// An eventually periodic infinite sequence: stem followed by cycle forever.
struct PathDesc {
    Node stem;
    Node cycle; // nonempty

    Label at(std::size_t i) const {
        return i < stem.size() ? stem[i] : cycle[(i - stem.size()) % cycle.size()];
    }
    Node prefix(std::size_t n) const;
    friend bool operator==(const PathDesc&, const PathDesc&) = default;
};

struct PathSet {
    enum class Kind { Finite, InfinitelyMany, Unbounded };
    Kind kind = Kind::Finite;
    std::vector<PathDesc> paths; // valid when Finite
};

class TreeSpec {
public:
    enum class Variant { Explicit, Regular };

    /// Throws TreeFormat when guards at a state overlap, a range is empty or
    /// an edge names an unknown state.
    static TreeSpec regular(std::size_t states, std::size_t start, std::vector<Edge> edges);
    /// The root is added when missing. Throws TreeFormat unless prefix-closed.
    static TreeSpec explicit_tree(std::vector<Node> nodes);
    /// Parses the tree JSON format. Throws TreeFormat.
    static TreeSpec from_json(std::string_view text);
    std::string to_json() const;

    Variant variant() const { return variant_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t state_count() const { return states_; }
    std::size_t start() const { return start_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    bool member(std::span<const Label> sigma) const;
    /// Throws NotANode.
    ChildBound children_bound(std::span<const Label> sigma) const;
    /// Nodes of length d; overflow when the level is infinite or larger than
    /// width_cap.
    Level nodes_at_depth(std::size_t d, std::size_t width_cap) const;
    /// Nodes of length d whose labels are all <= label_cap, and whether some
    /// node was cut off by the cap.
    Level nodes_at_depth_capped(std::size_t d, Label label_cap) const;
    /// Whether sigma lies on an infinite path. Exact for both variants; the
    /// horizon is accepted for interface symmetry. Throws NotANode.
    bool ext_at_depth(std::span<const Label> sigma, std::size_t horizon) const;
    PathSet paths() const;
    /// Whether path is an infinite path through the tree.
    bool on_tree(const PathDesc& path) const;
    /// No reachable unbounded guard.
    bool is_rb() const;
    /// Height of an explicit tree; nullopt for regular trees.
    std::optional<std::size_t> height() const;

private:
    std::optional<std::size_t> run(std::span<const Label> sigma) const;
    std::vector<bool> live_states() const;
    std::vector<bool> reachable_states() const;

    Variant variant_ = Variant::Explicit;
    std::size_t states_ = 0;
    std::size_t start_ = 0;
    std::vector<Edge> edges_;
    std::vector<Node> nodes_; // sorted
};

std::string to_string(const Node& sigma);

} // namespace stabtree
