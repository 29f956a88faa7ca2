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
#include <variant>
#include <vector>

#include "rankgames/arena.hpp"
#include "rankgames/extnat.hpp"
#include "rankgames/memory.hpp"
#include "rankgames/objectives.hpp"
#include "rankgames/qualsolve.hpp"
#include "rankgames/resilience.hpp"

namespace rankgames {

struct ranked_condition {
    objective obj;
    rank_function rk;
    rank_mode mode = rank_mode::sup;
    friend bool operator==(const ranked_condition&, const ranked_condition&) = default;
};

/// Anything a play can be judged by: a qualitative objective, a vertex-ranked
/// cost, or request-response with costs.
using condition = std::variant<objective, ranked_condition, cost_rr_spec>;

/// Throws input_error if the condition does not range over the arena.
void validate_condition(const arena& a, const condition& cond);

/// Cost of one play: 0 or inf for objectives, otherwise the condition's cost.
extnat play_cost(const arena& a, const condition& cond, const lasso& l);

struct verdict {
    bool certified = false;
    /// Player 0, certified: the exact worst cost over consistent plays
    /// (0 for qualitative conditions). Player 1, certified: a lower bound on
    /// the cost of every consistent play (inf means every play is lost).
    extnat cost;
    /// Refuted: a consistent play from `start` that breaks the claim.
    std::optional<lasso> witness;
    vertex start = 0;
};

/// Decides on the product arena x strategy memory x condition tracker whether
/// every play consistent with the strategy from the start vertices (default:
/// the initial vertex) is won by its owner. With a bound, Player 0 must also
/// keep the cost at most the bound and Player 1 must push it above.
/// Throws input_error if the strategy does not fit the arena or has no move
/// at a reachable vertex of its owner.
verdict verify_strategy(const arena& a, const condition& cond, const finite_state_strategy& strategy,
                        std::optional<std::uint64_t> bound = std::nullopt, const vertex_set* starts = nullptr);

/// Brute-force regions: a vertex is won by a player iff some positional
/// strategy of that player over expand(a, memory_template) is certified from
/// it (Player 0 at cost <= bound for quantitative conditions). Searches both
/// players with growing budgets; the template has to be sufficient for the
/// condition. The returned strategies are the witnesses for the initial
/// vertex (only the winner's entry is meaningful).
/// Throws capacity_error once a vertex needs more than max_candidates search nodes.
solve_result enumerate_solve(const arena& a, const condition& cond, const memory_structure& memory_template,
                             std::optional<std::uint64_t> bound = std::nullopt,
                             std::uint64_t max_candidates = 1'000'000);

/// Memory counting, per pair, the cost accumulated by the oldest open request,
/// saturating at cap; a state is encoded in base cap + 2 per pair (0 = nothing
/// open). With cap 0 it only tracks which pairs are open.
memory_structure pending_cost_memory(const arena& a, const cost_rr_spec& spec, std::uint64_t cap);

struct fault_verdict {
    bool safe = true;
    /// Unsafe: the vertices of the offending play and, per step, whether it was a fault.
    std::vector<vertex> witness;
    std::vector<bool> faulted;
};

/// Explores every play of at most `depth` steps consistent with the strategy
/// in which Player 1 may replace up to `budget` moves of Player 0 by faults.
/// Starts at (initial vertex, initial memory state) unless given.
fault_verdict simulate_faults(const fault_arena& fa, const finite_state_strategy& strategy, std::size_t budget,
                              std::size_t depth, std::optional<std::pair<vertex, state>> start = std::nullopt);

/// Pairs (vertex, memory state) on cycles of the fault-free play graph of the
/// strategy from the initial vertex: the places a play can return to forever.
std::vector<std::pair<vertex, state>> recurrent_states(const arena& a, const finite_state_strategy& strategy);

}  // namespace rankgames
