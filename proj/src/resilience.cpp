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

#include "rankgames/resilience.hpp"

#include "rankgames/errors.hpp"
#include "rankgames/ranked.hpp"

namespace rankgames {

void validate_fault_arena(const fault_arena& fa)
{
    const arena& a = fa.game;
    if (fa.safe.universe() != a.size())
        throw input_error("safe set does not belong to the arena");
    for (const auto& [from, to] : fa.faults) {
        if (from >= a.size() || to >= a.size())
            throw input_error("fault endpoint is not a vertex");
        if (a.owner(from) != player::zero)
            throw input_error("fault source must be owned by Player 0");
    }
}

std::vector<extnat> compute_val(const fault_arena& fa)
{
    validate_fault_arena(fa);
    const arena& a = fa.game;
    std::vector<extnat> val(a.size(), extnat::infinity());

    vertex_set reached = attractor(a, player::one, fa.safe.complement()).region;
    for (std::uint64_t k = 0;; ++k) {
        for (vertex v : reached.elements())
            if (val[v].is_infinite())
                val[v] = k;
        // One more fault: Player 0 vertices with a fault into the current set.
        vertex_set grown = reached;
        for (const auto& [from, to] : fa.faults)
            if (reached.contains(to))
                grown.insert(from);
        grown = attractor(a, player::one, grown).region;
        if (grown == reached)
            break;
        reached = std::move(grown);
    }
    return val;
}

rank_function resilience_rank(const fault_arena& fa)
{
    const auto val = compute_val(fa);
    const std::uint64_t n = fa.game.size();
    rank_function rk(val.size(), 0);
    for (std::size_t v = 0; v < val.size(); ++v)
        if (val[v].is_finite())
            rk[v] = n - val[v].value();
    return rk;
}

resilience_result max_resilience(const fault_arena& fa, rank_mode mode)
{
    const ranked_game g{fa.game, safety{fa.safe}, resilience_rank(fa), mode};
    ranked_optimum opt = optimize(g);
    resilience_result r;
    r.bound = opt.cost;
    if (opt.cost.is_infinite()) {
        r.resilience = 0;
        return r;
    }
    const std::uint64_t b = opt.cost.value();
    r.resilience = b == 0 ? extnat::infinity() : extnat(fa.game.size() - b);
    r.strategy = std::move(opt.strategy);
    return r;
}

bool budget_oracle(const fault_arena& fa, vertex v, std::size_t k)
{
    validate_fault_arena(fa);
    const arena& a = fa.game;
    if (v >= a.size())
        throw input_error("budget oracle: unknown vertex");
    const std::size_t n = a.size(), layers = k + 1;
    std::vector<std::vector<vertex>> fault_targets(n);
    for (const auto& [from, to] : fa.faults)
        fault_targets[from].push_back(to);

    // States (u, r) at index r * n + u, and for Player 0 vertices with faults
    // left a Player 0 decision node at offset n * layers that Player 1 may skip.
    const std::size_t decisions = n * layers;
    std::vector<std::vector<std::size_t>> succ(2 * decisions);
    std::vector<bool> player_one(2 * decisions, false), unsafe(2 * decisions, false);
    for (std::size_t r = 0; r < layers; ++r)
        for (vertex u = 0; u < n; ++u) {
            const std::size_t s = r * n + u;
            unsafe[s] = !fa.safe.contains(u);
            std::vector<std::size_t> moves;
            for (vertex w : a.successors(u))
                moves.push_back(r * n + w);
            if (a.owner(u) == player::one) {
                player_one[s] = true;
                succ[s] = moves;
            } else if (r > 0 && !fault_targets[u].empty()) {
                player_one[s] = true;
                succ[s].push_back(decisions + s);
                for (vertex w : fault_targets[u])
                    succ[s].push_back((r - 1) * n + w);
                succ[decisions + s] = moves;
                unsafe[decisions + s] = unsafe[s];
            } else {
                succ[s] = moves;
            }
        }

    // Plain fixpoint: add states that Player 1 forces into the set, until stable.
    std::vector<bool> lost = unsafe;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < succ.size(); ++s) {
            if (lost[s] || succ[s].empty())
                continue;
            bool any = false, all = true;
            for (std::size_t t : succ[s]) {
                any = any || lost[t];
                all = all && lost[t];
            }
            if (player_one[s] ? any : all) {
                lost[s] = true;
                changed = true;
            }
        }
    }
    return lost[k * n + v];
}

}  // namespace rankgames
