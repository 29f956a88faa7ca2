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
#include <utility>
#include <vector>

#include "rankgames/arena.hpp"
#include "rankgames/extnat.hpp"
#include "rankgames/memory.hpp"
#include "rankgames/objectives.hpp"

namespace rankgames {

/// Arena with faults: pairs (v, v') letting Player 1 override a move of
/// Player 0 at v and continue at v'. Faults need not be edges.
struct fault_arena {
    arena game;
    std::vector<std::pair<vertex, vertex>> faults;
    vertex_set safe;
};

/// Throws input_error unless every fault starts at a Player 0 vertex and the safe set fits the arena.
void validate_fault_arena(const fault_arena& fa);

/// Least number of faults Player 1 needs to force a visit outside the safe
/// set from each vertex (inf where no number suffices).
std::vector<extnat> compute_val(const fault_arena& fa);

/// |V| - val(v) where val is finite, 0 elsewhere.
rank_function resilience_rank(const fault_arena& fa);

struct resilience_result {
    /// The number of faults tolerated; 0 if Player 1 wins the plain safety game.
    extnat resilience;
    /// Optimal bound of the ranked game, inf if Player 1 wins it.
    extnat bound;
    /// Player 0 strategy on the fault-free arena when the bound is finite.
    std::optional<finite_state_strategy> strategy;
};

/// Optimal (eventual, in lim mode) resilience from the initial vertex.
resilience_result max_resilience(const fault_arena& fa, rank_mode mode);

/// Whether Player 1, allowed at most k faults, can force a visit outside the safe set from v.
bool budget_oracle(const fault_arena& fa, vertex v, std::size_t k);

}  // namespace rankgames
