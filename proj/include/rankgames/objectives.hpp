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
#include <string>
#include <variant>
#include <vector>

#include "rankgames/arena.hpp"
#include "rankgames/extnat.hpp"

namespace rankgames {

struct safety {
    vertex_set safe;
    friend bool operator==(const safety&, const safety&) = default;
};
struct buchi {
    vertex_set accept;
    friend bool operator==(const buchi&, const buchi&) = default;
};
struct cobuchi {
    vertex_set avoid;
    friend bool operator==(const cobuchi&, const cobuchi&) = default;
};
/// Visits to requests open the pair, later (or same-position) visits to responses answer it.
struct rr_pair {
    vertex_set requests;
    vertex_set responses;
    friend bool operator==(const rr_pair&, const rr_pair&) = default;
};
struct request_response {
    std::vector<rr_pair> pairs;
    friend bool operator==(const request_response&, const request_response&) = default;
};
struct safety_cobuchi {
    vertex_set safe;
    vertex_set avoid;
    friend bool operator==(const safety_cobuchi&, const safety_cobuchi&) = default;
};

using objective = std::variant<safety, buchi, cobuchi, request_response, safety_cobuchi>;

/// Throws input_error if a set is over the wrong universe or a request-response objective has no pairs.
void validate_objective(const arena& a, const objective& obj);
std::string objective_kind(const objective& obj);

using rank_function = std::vector<std::uint64_t>;
enum class rank_mode { sup, lim };

/// Request-response pairs plus per-pair edge costs, indexed costs[pair][edge id].
struct cost_rr_spec {
    std::vector<rr_pair> pairs;
    std::vector<std::vector<std::uint64_t>> costs;

    std::size_t dimension() const noexcept { return pairs.size(); }
    /// W, the largest cost on any edge (0 if all costs are zero).
    std::uint64_t max_cost() const;
    std::uint64_t cost(std::size_t pair, edge_id e) const { return costs[pair][e]; }
    friend bool operator==(const cost_rr_spec&, const cost_rr_spec&) = default;
};

/// Checks universes and that costs are total on pairs x edges.
void validate_cost_spec(const arena& a, const cost_rr_spec& spec);

/// Membership of prefix . loop^omega in the objective.
bool eval_qualitative(const objective& obj, const lasso& l);

/// Cost of the request at position j for the given pair: 0 if no request is
/// made there, otherwise the summed edge cost up to the earliest answer, inf
/// if none comes. Positions past one loop period are folded back.
extnat cost_of_response(const arena& a, const cost_rr_spec& spec, const lasso& l, std::size_t position,
                        std::size_t pair);

/// Largest cost of response over all positions and pairs.
extnat cost_rr_lasso(const arena& a, const cost_rr_spec& spec, const lasso& l);

/// inf if the play loses the objective, otherwise the highest rank seen
/// (sup) or seen infinitely often (lim).
extnat rank_cost_lasso(const rank_function& rk, const objective& obj, rank_mode mode, const lasso& l);

}  // namespace rankgames
