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

#include <array>
#include <cstdint>
#include <vector>

#include "rankgames/arena.hpp"
#include "rankgames/memory.hpp"
#include "rankgames/objectives.hpp"

namespace rankgames {

/// Winning regions of both players and a winning strategy for each from its region.
struct solve_result {
    std::array<vertex_set, 2> regions;
    std::array<finite_state_strategy, 2> strategies;

    const vertex_set& winning(player p) const { return regions[index_of(p)]; }
    const finite_state_strategy& strategy(player p) const { return strategies[index_of(p)]; }
    bool wins(player p, vertex v) const { return winning(p).contains(v); }
};

// Every solver accepts an optional domain and then solves the sub-arena it
// induces. The domain must keep a successor for each of its vertices; the
// regions then partition the domain.

solve_result solve_safety(const arena& a, const vertex_set& safe, const vertex_set* domain = nullptr);
solve_result solve_buchi(const arena& a, const vertex_set& accept, const vertex_set* domain = nullptr);
solve_result solve_cobuchi(const arena& a, const vertex_set& avoid, const vertex_set* domain = nullptr);
solve_result solve_request_response(const arena& a, const std::vector<rr_pair>& pairs,
                                    const vertex_set* domain = nullptr);
solve_result solve_safety_cobuchi(const arena& a, const vertex_set& safe, const vertex_set& avoid,
                                  const vertex_set* domain = nullptr);

solve_result solve_qualitative(const arena& a, const objective& obj, const vertex_set* domain = nullptr);

/// Memory tracking open requests and a round-robin pointer over the pairs.
/// State (open, r) is encoded as open * d + r. Leaving u adds the pairs u
/// requests and then drops the pairs u answers; the pointer moves on when
/// the pair it points at is not open.
memory_structure rr_memory(const arena& a, const std::vector<rr_pair>& pairs);
/// The pointer's pair is not open: the state the Buechi condition counts.
constexpr bool rr_accepting(state m, std::size_t d) noexcept
{
    return ((m / d) >> (m % d) & 1U) == 0;
}
constexpr std::uint64_t rr_open_set(state m, std::size_t d) noexcept { return m / d; }

/// Positional moves covering all memory states: for each v with a move, every
/// (v, m) is sent to that move. Entries already present are overwritten.
void set_moves_all_states(finite_state_strategy& s, const positional_moves& moves);

}  // namespace rankgames
