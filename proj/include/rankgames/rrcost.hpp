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
#include <optional>

#include "rankgames/arena.hpp"
#include "rankgames/extnat.hpp"
#include "rankgames/objectives.hpp"
#include "rankgames/quantred.hpp"

namespace rankgames {

struct cost_rr_game {
    arena game;
    cost_rr_spec spec;
};

/// d * 2^d * n * W: if Player 0 can keep the cost finite she can keep it
/// at most this. Throws std::overflow_error if the product does not fit.
std::uint64_t cap_bound(const cost_rr_game& g);

/// Per pair the status of the oldest open request: idle, active(k) while it
/// waits, answered(k) for one step after its response, with k the cost
/// accumulated so far saturating at cap. Updates read the source vertex of
/// the edge. Digit per pair in base 2 * (cap + 1) + 1.
memory_structure counter_memory(const arena& a, const cost_rr_spec& spec, std::uint64_t cap);

/// Largest active or answered value in a counter state (0 if all idle).
std::uint64_t counter_rank(state m, std::size_t pairs, std::uint64_t cap);

/// Reduction to a vertex-ranked sup request-response game over counters
/// capped at b + 1, with correction Cap(b + 1) and parameter b + 1. With
/// explore_limit set, product vertices whose rank exceeds it are not
/// expanded (they keep a self-loop), which is exact for bounds up to the limit.
quant_reduction build_reduction(const cost_rr_game& g, std::uint64_t b,
                                std::optional<std::uint64_t> explore_limit = std::nullopt);

struct cost_rr_solution {
    /// Winner from the initial vertex at the requested bound.
    player winner = player::zero;
    /// The bound the target game was solved at: min(b, cap_bound).
    std::uint64_t target_bound = 0;
    quant_reduction reduction;
    /// Winner's strategy on the target arena and its lift to the source arena.
    /// Player 0's lift keeps the cost at most b; Player 1's keeps it above
    /// target_bound.
    finite_state_strategy target_strategy;
    finite_state_strategy strategy;
};

/// Can Player 0 keep the cost at most b?
cost_rr_solution solve_with_bound(const cost_rr_game& g, std::uint64_t b);

struct cost_rr_optimum {
    /// Least achievable cost from the initial vertex; inf if Player 1 wins.
    extnat cost;
    /// Solution at the optimal bound when the cost is finite.
    std::optional<cost_rr_solution> solution;
    std::size_t probes = 0;
};

/// Qualitative pre-check, then galloping and binary search over 0..cap_bound.
cost_rr_optimum optimize(const cost_rr_game& g);

}  // namespace rankgames
