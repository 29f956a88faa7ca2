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

#include "rankgames/ranked.hpp"

#include <algorithm>

#include "rankgames/errors.hpp"

namespace rankgames {

namespace {

vertex_set above(const ranked_game& g, std::uint64_t b)
{
    vertex_set x(g.game.size());
    for (vertex v = 0; v < g.game.size(); ++v)
        if (g.rk[v] > b)
            x.insert(v);
    return x;
}

std::optional<vertex> successor_in(const arena& a, vertex v, const vertex_set& s)
{
    for (vertex w : a.successors(v))
        if (s.contains(w))
            return w;
    return std::nullopt;
}

}  // namespace

void validate_ranked_game(const ranked_game& g)
{
    validate_objective(g.game, g.obj);
    if (g.rk.size() != g.game.size())
        throw input_error("rank function is not total on the arena");
    if (g.mode == rank_mode::lim && std::holds_alternative<request_response>(g.obj))
        throw capability_error("lim mode is not supported for request-response objectives");
}

solve_result solve_sup_with_bound(const ranked_game& g, std::uint64_t b, const vertex_set* domain)
{
    validate_objective(g.game, g.obj);
    if (g.rk.size() != g.game.size())
        throw input_error("rank function is not total on the arena");
    const arena& a = g.game;
    const vertex_set dom = domain ? *domain : a.all();

    auto forced = attractor(a, player::one, above(g, b) & dom, &dom);
    const vertex_set rest = dom - forced.region;
    solve_result r = solve_qualitative(a, g.obj, &rest);
    r.regions[1] |= forced.region;

    for (vertex v : forced.region.elements()) {
        if (a.owner(v) != player::one)
            continue;
        auto move = forced.strategy[v] ? forced.strategy[v] : successor_in(a, v, dom);
        if (move)
            r.strategies[1].set_uniform_move(v, *move);
    }
    return r;
}

solve_result solve_lim_with_bound(const ranked_game& g, std::uint64_t b)
{
    validate_ranked_game(g);
    const arena& a = g.game;
    if (const auto* s = std::get_if<safety>(&g.obj))
        return solve_safety_cobuchi(a, s->safe, above(g, b));
    if (const auto* s = std::get_if<safety_cobuchi>(&g.obj))
        return solve_safety_cobuchi(a, s->safe, s->avoid | above(g, b));
    if (std::holds_alternative<request_response>(g.obj))
        throw capability_error("lim mode is not supported for request-response objectives");

    // Prefix-independent objectives: peel off regions where the sup game is
    // won, together with Player 0's attractor to them.
    const std::size_t n = a.size();
    vertex_set current = a.all();
    vertex_set won(n);
    positional_moves moves(n);
    solve_result last;
    while (true) {
        last = solve_sup_with_bound(g, b, &current);
        const vertex_set& sup_region = last.winning(player::zero);
        if (sup_region.empty())
            break;
        auto reach = attractor(a, player::zero, sup_region, &current);
        for (vertex v : reach.region.elements()) {
            if (a.owner(v) != player::zero)
                continue;
            moves[v] = sup_region.contains(v) ? last.strategy(player::zero).next_move(v, 0) : reach.strategy[v];
        }
        won |= reach.region;
        current -= reach.region;
        if (current.empty())
            break;
    }

    solve_result r;
    r.regions = {won, current};
    r.strategies[0] = finite_state_strategy::positional(a, player::zero, moves);
    if (current.empty())
        r.strategies[1] = finite_state_strategy::positional(a, player::one, positional_moves(n));
    else
        r.strategies[1] = last.strategy(player::one);
    return r;
}

solve_result solve_with_bound(const ranked_game& g, std::uint64_t b)
{
    validate_ranked_game(g);
    return g.mode == rank_mode::sup ? solve_sup_with_bound(g, b) : solve_lim_with_bound(g, b);
}

ranked_optimum optimize(const ranked_game& g)
{
    validate_ranked_game(g);
    std::vector<std::uint64_t> values(g.rk.begin(), g.rk.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    ranked_optimum out;
    auto probe = [&](std::uint64_t b) {
        ++out.probes;
        return solve_with_bound(g, b);
    };

    solve_result best = probe(values.back());
    if (!best.wins(player::zero, g.game.initial())) {
        out.cost = extnat::infinity();
        return out;
    }
    // Invariant: values[hi] wins, everything below lo loses.
    std::size_t lo = 0, hi = values.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        solve_result r = probe(values[mid]);
        if (r.wins(player::zero, g.game.initial())) {
            hi = mid;
            best = std::move(r);
        } else {
            lo = mid + 1;
        }
    }
    out.cost = values[hi];
    out.strategy = best.strategy(player::zero);
    return out;
}

}  // namespace rankgames
