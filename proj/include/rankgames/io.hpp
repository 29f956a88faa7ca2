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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankgames/arena.hpp"
#include "rankgames/memory.hpp"
#include "rankgames/objectives.hpp"
#include "rankgames/ranked.hpp"
#include "rankgames/resilience.hpp"
#include "rankgames/rrcost.hpp"
#include "rankgames/verify.hpp"

namespace rankgames::io {

enum class game_kind { qualitative, ranked, cost_rr, faults };

/// Contents of a game file: an arena, an objective and at most one of
/// ranks, edge costs or faults.
struct game_file {
    arena game;
    objective obj;
    std::optional<rank_function> ranks;
    rank_mode mode = rank_mode::sup;
    /// Pairs mirror the request-response objective.
    std::optional<cost_rr_spec> costs;
    std::optional<std::vector<std::pair<vertex, vertex>>> faults;

    game_kind kind() const;
    ranked_game as_ranked() const;
    cost_rr_game as_cost_rr() const;
    fault_arena as_faults() const;
    /// How plays are judged: ranks, costs, or the plain objective.
    condition as_condition() const;

    friend bool operator==(const game_file&, const game_file&) = default;
};

/// Throws input_error prefixed with "<source>:<line>:" on malformed input.
game_file parse_game(std::string_view text, const std::string& source = "<input>");
game_file read_game(const std::filesystem::path& path);
std::string write_game(const game_file& g);

/// Writes the part of the strategy reachable from the arena's initial vertex:
/// the memory states met there, their updates and the moves.
std::string write_strategy(const arena& a, const finite_state_strategy& s);
finite_state_strategy parse_strategy(std::string_view text, const arena& a, const std::string& source = "<input>");
finite_state_strategy read_strategy(const std::filesystem::path& path, const arena& a);

/// Comma-separated vertex names.
std::vector<vertex> parse_vertex_list(const arena& a, std::string_view list);
std::string format_vertex_list(const arena& a, const std::vector<vertex>& vs);

}  // namespace rankgames::io
