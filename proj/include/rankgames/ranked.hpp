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
#include "rankgames/memory.hpp"
#include "rankgames/objectives.hpp"
#include "rankgames/qualsolve.hpp"

namespace rankgames {

/// Cost of a play: inf if it loses the objective, otherwise the largest rank
/// visited (sup) or visited infinitely often (lim).
struct ranked_game {
    arena game;
    objective obj;
    rank_function rk;
    rank_mode mode = rank_mode::sup;
};

/// Throws input_error for malformed games and capability_error for lim
/// mode with a request-response objective.
void validate_ranked_game(const ranked_game& g);

/// Player 0 wins from v iff she can keep the cost at most b. Ignores the
/// game's mode. The optional domain restricts the game as in qualsolve.
solve_result solve_sup_with_bound(const ranked_game& g, std::uint64_t b, const vertex_set* domain = nullptr);

/// Same question for the lim cost.
solve_result solve_lim_with_bound(const ranked_game& g, std::uint64_t b);

/// Dispatches on the game's mode.
solve_result solve_with_bound(const ranked_game& g, std::uint64_t b);

struct ranked_optimum {
    /// Least bound Player 0 can guarantee from the initial vertex; inf if Player 1 wins.
    extnat cost;
    std::optional<finite_state_strategy> strategy;
    std::size_t probes = 0;
};

/// Binary search over the distinct rank values.
ranked_optimum optimize(const ranked_game& g);

}  // namespace rankgames
