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
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rankgames/arena.hpp"

namespace rankgames {

using state = std::uint64_t;

/// Deterministic memory over an arena's edges: (state, edge) -> state.
///
/// Updates read the edge that was taken rather than only the target vertex,
/// so edge-labelled conditions (costs) can be tracked; a vertex-driven memory
/// is the special case that ignores the edge source. A single-vertex prefix is
/// mapped to the initial state.
///
/// Values are cheap to copy and immutable; the transition function is either
/// an explicit table or computed on demand, which keeps very large memories
/// (counter products) from being materialized.
class memory_structure {
  public:
    class impl {
      public:
        virtual ~impl() = default;
        virtual std::uint64_t size() const = 0;
        virtual state initial() const = 0;
        /// May throw input_error if the transition is undefined.
        virtual state update(state m, edge_id e) const = 0;
        virtual std::string state_name(state m) const = 0;
    };

    memory_structure() = default;
    memory_structure(std::size_t edge_count, std::shared_ptr<const impl> impl)
        : edge_count_(edge_count), impl_(std::move(impl))
    {
    }

    /// One-state memory.
    static memory_structure trivial(const arena& a);

    /// Explicit table indexed by state * |E| + edge; nullopt marks an undefined entry.
    static memory_structure from_table(const arena& a, std::vector<std::string> names, state initial,
                                       std::vector<std::optional<state>> table);

    std::uint64_t size() const { return impl_->size(); }
    state initial() const { return impl_->initial(); }
    state update(state m, edge_id e) const { return impl_->update(m, e); }
    std::string state_name(state m) const { return impl_->state_name(m); }
    /// Size of the edge alphabet the memory was built for.
    std::size_t edge_count() const noexcept { return edge_count_; }

    /// Index of the state with the given name, by linear search.
    std::optional<state> find_state(const std::string& name) const;

  private:
    std::size_t edge_count_ = 0;
    std::shared_ptr<const impl> impl_;
};

/// Upd+ : folds the update along the prefix's edges.
state update_plus(const arena& a, const memory_structure& mem, const std::vector<vertex>& prefix);

/// Strategy implemented by a memory structure and a partial next-move map.
class finite_state_strategy {
  public:
    finite_state_strategy() = default;
    finite_state_strategy(player owner, memory_structure memory) : owner_(owner), memory_(std::move(memory)) {}

    /// Positional strategy over the one-state memory.
    static finite_state_strategy positional(const arena& a, player owner, const positional_moves& moves);

    player owner() const noexcept { return owner_; }
    const memory_structure& memory() const noexcept { return memory_; }
    /// |sigma|, the number of memory states.
    std::uint64_t size() const { return memory_.size(); }

    std::optional<vertex> next_move(vertex v, state m) const;
    void set_move(vertex v, state m, vertex target) { moves_[key{v, m}] = target; }
    /// Move used at v whatever the memory state; takes precedence over set_move entries.
    void set_uniform_move(vertex v, vertex target);
    std::size_t num_moves() const noexcept { return moves_.size(); }

    /// State-dependent (vertex, state, target) triples sorted by vertex then state.
    std::vector<std::tuple<vertex, state, vertex>> moves() const;
    const positional_moves& uniform_moves() const noexcept { return uniform_; }

  private:
    struct key {
        vertex v;
        state m;
        bool operator==(const key&) const = default;
    };
    struct key_hash {
        std::size_t operator()(const key& k) const noexcept
        {
            return std::hash<std::uint64_t>{}(k.m * 0x9E3779B97F4A7C15ULL ^ k.v);
        }
    };

    player owner_ = player::zero;
    memory_structure memory_;
    std::unordered_map<key, vertex, key_hash> moves_;
    positional_moves uniform_;
};

/// Product arena A x M together with the correspondence to (vertex, state) pairs.
struct expansion {
    arena product;
    std::shared_ptr<const std::vector<std::pair<vertex, state>>> origin;
    /// Product vertices whose successors were cut off (they carry a self-loop only).
    std::vector<bool> truncated;

    std::optional<vertex> find(vertex v, state m) const;
    std::pair<vertex, state> origin_of(vertex p) const { return (*origin)[p]; }
    /// All product vertices whose arena component lies in s.
    vertex_set lift(const vertex_set& s) const;

    struct pair_hash {
        std::size_t operator()(const std::pair<vertex, state>& k) const noexcept
        {
            return std::hash<std::uint64_t>{}(k.second * 0x9E3779B97F4A7C15ULL ^ k.first);
        }
    };
    std::shared_ptr<const std::unordered_map<std::pair<vertex, state>, vertex, pair_hash>> index;
};

struct expand_options {
    /// Restrict the expansion to the sub-arena induced by this domain.
    const vertex_set* domain = nullptr;
    /// Root the expansion at (v, m_I) for every vertex v (of the domain), not only the initial one.
    bool all_roots = false;
    /// Product vertices for which this returns true are not expanded further.
    std::function<bool(vertex, state)> stop;
};

/// Reachable part of A x M: vertices (v, m), ownership from v, edges
/// ((v,m),(v',m')) iff (v,v') in E and m' = Upd(m, (v,v')); initial (v_I, m_I).
expansion expand(const arena& a, const memory_structure& mem, const expand_options& opts = {});

/// A play of A x M given as (vertex, state) pairs.
struct product_lasso {
    std::vector<std::pair<vertex, state>> prefix;
    std::vector<std::pair<vertex, state>> loop;
    friend bool operator==(const product_lasso&, const product_lasso&) = default;
};

/// ext(rho): the unique extended play, with the loop unrolled until the
/// (loop position, state) pair repeats.
product_lasso extend_lasso(const arena& a, const memory_structure& mem, const lasso& l);

/// Maps an extended play onto product vertex ids; throws input_error if it leaves the expansion.
lasso to_product_lasso(const expansion& x, const product_lasso& l);

/// M1 x M2 over the base arena, where M2 is a memory for the expansion x = A x M1.
/// State (m1, m2) is encoded as m1 * |M2| + m2. Edges whose source pair lies
/// outside the expansion leave the M2 component unchanged.
memory_structure product_memory(const arena& a, const memory_structure& m1, const expansion& x,
                                const memory_structure& m2);

/// Finite-state strategy on A from one on A x M1, implemented by M1 x M2:
/// next_move(v, (m1, m2)) = first component of strat.next_move((v, m1), m2).
finite_state_strategy compose_strategy(const arena& a, const memory_structure& m1, const expansion& x,
                                       const finite_state_strategy& strat);

}  // namespace rankgames
