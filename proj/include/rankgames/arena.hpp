/*
 * Copyright 2026 The rankgames Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rankgames {

enum class player : std::uint8_t { zero = 0, one = 1 };

constexpr player opponent(player p) noexcept { return p == player::zero ? player::one : player::zero; }
constexpr int index_of(player p) noexcept { return static_cast<int>(p); }

using vertex = std::uint32_t;
using edge_id = std::uint32_t;

/// Subset of an arena's vertices with O(1) membership.
class vertex_set {
  public:
    vertex_set() = default;
    explicit vertex_set(std::size_t universe) : bits_(universe, 0) {}
    vertex_set(std::size_t universe, std::initializer_list<vertex> members);

    static vertex_set full(std::size_t universe);

    std::size_t universe() const noexcept { return bits_.size(); }
    std::size_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains(vertex v) const noexcept { return v < bits_.size() && bits_[v] != 0; }
    void insert(vertex v);
    void erase(vertex v);

    /// Members in increasing vertex order.
    std::vector<vertex> elements() const;

    vertex_set complement() const;
    bool subset_of(const vertex_set& other) const;

    vertex_set& operator|=(const vertex_set& o);
    vertex_set& operator&=(const vertex_set& o);
    vertex_set& operator-=(const vertex_set& o);
    friend vertex_set operator|(vertex_set a, const vertex_set& b) { return a |= b; }
    friend vertex_set operator&(vertex_set a, const vertex_set& b) { return a &= b; }
    friend vertex_set operator-(vertex_set a, const vertex_set& b) { return a -= b; }

    friend bool operator==(const vertex_set& a, const vertex_set& b) { return a.bits_ == b.bits_; }

  private:
    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

/// Finite game graph: vertices partitioned between the two players, every
/// vertex non-terminal, plus an initial vertex. Vertices are dense indices in
/// declaration order; that order is the stable iteration order everywhere.
class arena {
  public:
    using name_function = std::function<std::string(vertex)>;

    arena() = default;

    /// Validating constructor. Duplicate edges are merged.
    arena(std::vector<std::string> names, std::vector<player> owners,
          std::vector<std::pair<vertex, vertex>> edges, vertex initial);

    /// Same as above, with names produced on demand (used for product arenas).
    static arena with_name_function(std::size_t size, name_function names, std::vector<player> owners,
                                    std::vector<std::pair<vertex, vertex>> edges, vertex initial);

    std::size_t size() const noexcept { return owners_.size(); }
    std::size_t num_edges() const noexcept { return targets_.size(); }
    vertex initial() const noexcept { return initial_; }
    player owner(vertex v) const { return owners_[v]; }

    std::string name(vertex v) const;
    std::optional<vertex> find(const std::string& name) const;

    std::span<const vertex> successors(vertex v) const
    {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::span<const vertex> predecessors(vertex v) const
    {
        return {pred_.data() + pred_offsets_[v], pred_.data() + pred_offsets_[v + 1]};
    }

    /// Edge ids of v's outgoing edges are the contiguous range
    /// [first_edge(v), first_edge(v) + successors(v).size()).
    edge_id first_edge(vertex v) const { return offsets_[v]; }
    std::optional<edge_id> edge_index(vertex from, vertex to) const;
    std::pair<vertex, vertex> edge(edge_id e) const { return {sources_[e], targets_[e]}; }
    bool has_edge(vertex from, vertex to) const { return edge_index(from, to).has_value(); }

    vertex_set owned_by(player p) const;
    vertex_set all() const { return vertex_set::full(size()); }

    arena with_initial(vertex v) const;

    friend bool operator==(const arena& a, const arena& b);

  private:
    void build(std::vector<std::pair<vertex, vertex>> edges);

    std::shared_ptr<const std::vector<std::string>> names_;
    std::shared_ptr<const std::unordered_map<std::string, vertex>> index_;
    std::shared_ptr<const name_function> name_fn_;
    std::vector<player> owners_;
    std::vector<edge_id> offsets_;
    std::vector<vertex> targets_;
    std::vector<vertex> sources_;
    std::vector<std::uint32_t> pred_offsets_;
    std::vector<vertex> pred_;
    vertex initial_ = 0;
};

/// Ultimately periodic play prefix . loop^omega.
struct lasso {
    std::vector<vertex> prefix;
    std::vector<vertex> loop;

    std::size_t length() const noexcept { return prefix.size() + loop.size(); }
    /// Vertex at position i of the infinite play.
    vertex at(std::size_t i) const
    {
        return i < prefix.size() ? prefix[i] : loop[(i - prefix.size()) % loop.size()];
    }

    friend bool operator==(const lasso&, const lasso&) = default;
};

/// Throws input_error unless the lasso is a play of the arena from its initial vertex.
void validate_lasso(const arena& a, const lasso& l);
/// Same check, anchored at an arbitrary start vertex.
void validate_lasso_from(const arena& a, const lasso& l, vertex start);

using positional_moves = std::vector<std::optional<vertex>>;

struct attractor_result {
    vertex_set region;
    /// Defined on the player's vertices in region \ target; each move lowers the level by one.
    positional_moves strategy;
    /// Fixpoint iteration at which a vertex entered (0 for target), absent outside the region.
    std::vector<std::optional<std::uint32_t>> level;
};

/// Attr_p(target). With a domain, the computation runs in the sub-arena induced
/// by the domain (edges leaving it are ignored).
attractor_result attractor(const arena& a, player p, const vertex_set& target,
                           const vertex_set* domain = nullptr);

/// Sub-arena induced by keep. Throws input_error if the initial vertex is dropped
/// or a kept vertex loses all successors.
arena restrict_arena(const arena& a, const vertex_set& keep);

/// Componentwise containment of vertices, ownership and edges, matched by name.
bool is_subarena(const arena& candidate, const arena& whole);

/// Same graph with the ownership partition flipped.
arena swap_players(const arena& a);

/// Every vertex of the domain keeps a successor inside it.
bool is_closed_domain(const arena& a, const vertex_set& domain);

}  // namespace rankgames
