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

#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "rankgames/errors.hpp"
#include "rankgames/qualsolve.hpp"
#include "rankgames/rrcost.hpp"
#include "rankgames/verify.hpp"
#include "support.hpp"

using namespace rankgames;
using namespace rankgames::testing;

namespace {

cost_rr_game game_a2()
{
    arena a = arena_a2();
    cost_rr_spec spec = a2_costs(a);
    return {std::move(a), std::move(spec)};
}

cost_rr_game game_a3()
{
    arena a = arena_a3();
    cost_rr_spec spec = a3_costs(a);
    return {std::move(a), std::move(spec)};
}

}  // namespace

TEST_CASE("cap bound")
{
    CHECK(cap_bound(game_a2()) == 12);
    cost_rr_game zero = game_a2();
    zero.spec.costs[0].assign(zero.game.num_edges(), 0);
    CHECK(cap_bound(zero) == 0);

    const arena a = make_arena({{"x", 0}, {"y", 0}, {"z", 1}}, {{"x", "y"}, {"y", "z"}, {"z", "x"}}, "x");
    cost_rr_spec two{{{set_of(a, {"x"}), set_of(a, {"y"})}, {set_of(a, {"y"}), set_of(a, {"z"})}},
                     {{1, 0, 0}, {0, 1, 1}}};
    CHECK(cap_bound({a, two}) == 24);

    cost_rr_game huge = game_a2();
    huge.spec.costs[0][0] = std::uint64_t{1} << 62;
    CHECK_THROWS_AS(cap_bound(huge), std::overflow_error);
}

TEST_CASE("counter memory on the alternating play")
{
    const cost_rr_game g = game_a2();
    const auto mem = counter_memory(g.game, g.spec, 13);
    CHECK(mem.size() == 2 * (13 + 1) + 1);
    const lasso alternating{{}, {id(g.game, "q"), id(g.game, "p")}};
    const product_lasso ext = extend_lasso(g.game, mem, alternating);
    std::vector<std::string> names;
    for (const auto& [v, m] : ext.prefix)
        names.push_back(g.game.name(v) + mem.state_name(m));
    for (const auto& [v, m] : ext.loop)
        names.push_back(g.game.name(v) + mem.state_name(m));
    CHECK(names == std::vector<std::string>{"q[-]", "p[a3]", "q[j3]", "p[a3]"});

    const quant_reduction r = build_reduction(g, 12);
    const reduction_check c = check_reduction_on_lasso(r, alternating);
    CHECK(c.consistent);
    CHECK(c.source_cost == extnat(3));
    CHECK(c.target_cost == extnat(3));
    CHECK(r.memory.size() == 2 * (12 + 2) + 1);
    CHECK(r.parameter == extnat(13));
}

TEST_CASE("counters saturate and requests answered on arrival cost nothing")
{
    const arena a = make_arena({{"x", 0}, {"y", 0}}, {{"x", "y"}, {"y", "x"}, {"y", "y"}}, "x");
    const cost_rr_spec spec = single_pair_costs(a, {"x", "y"}, {"y"}, {{"x", "y", 5}});
    const auto mem = counter_memory(a, spec, 3);
    const state after_x = update_plus(a, mem, {id(a, "x"), id(a, "y")});
    CHECK(mem.state_name(after_x) == "[a3]");
    CHECK(counter_rank(after_x, 1, 3) == 3);
    const state after_y = update_plus(a, mem, {id(a, "x"), id(a, "y"), id(a, "y")});
    CHECK(mem.state_name(after_y) == "[j3]");
    CHECK(mem.state_name(update_plus(a, mem, {id(a, "x"), id(a, "y"), id(a, "y"), id(a, "y")})) == "[j0]");
}

TEST_CASE("zero costs give a rank-free target")
{
    cost_rr_game g = game_a3();
    for (auto& row : g.spec.costs)
        row.assign(row.size(), 0);
    const quant_reduction r = build_reduction(g, 0);
    const auto& rk = std::get<ranked_condition>(r.target.cond).rk;
    CHECK(std::all_of(rk.begin(), rk.end(), [](std::uint64_t x) { return x == 0; }));
    const auto opt = optimize(g);
    CHECK(opt.cost == extnat(0));
}

TEST_CASE("bounded solving on the small examples")
{
    const cost_rr_game g = game_a2();
    const auto win = solve_with_bound(g, 3);
    REQUIRE(win.winner == player::zero);
    const verdict v = verify_strategy(g.game, g.spec, win.strategy, 3);
    CHECK(v.certified);
    CHECK(v.cost == extnat(3));

    const auto lose = solve_with_bound(g, 2);
    REQUIRE(lose.winner == player::one);
    CHECK(verify_strategy(g.game, g.spec, lose.strategy, 2).certified);

    CHECK(solve_with_bound(g, 1000).winner == player::zero);
}

TEST_CASE("optimal costs of the small examples")
{
    const cost_rr_game a2 = game_a2();
    const auto o2 = optimize(a2);
    CHECK(o2.cost == extnat(3));
    CHECK(cost_rr_minimax(a2) == extnat(3));

    const cost_rr_game a3 = game_a3();
    const auto o3 = optimize(a3);
    CHECK(o3.cost == extnat(5));
    CHECK(cost_rr_minimax(a3) == extnat(5));
    REQUIRE(o3.solution);
    CHECK(verify_strategy(a3.game, a3.spec, o3.solution->strategy, 5).certified);
    CHECK_FALSE(verify_strategy(a3.game, a3.spec, o3.solution->strategy, 4).certified);

    // Player 1 can avoid the only response.
    const arena a = make_arena({{"q", 1}, {"p", 0}}, {{"q", "q"}, {"q", "p"}, {"p", "q"}}, "q");
    const cost_rr_game lost{a, single_pair_costs(a, {"q"}, {"p"}, {})};
    const auto o = optimize(lost);
    CHECK(o.cost.is_infinite());
    CHECK_FALSE(o.solution);
}

TEST_CASE("reduction agrees with the source cost on random plays")
{
    auto rng = make_rng(50);
    for (int round = 0; round < 12; ++round) {
        const cost_rr_game g = random_cost_game(rng, 2, 5, uniform(rng, 1, 2), 2);
        const std::uint64_t b = cap_bound(g);
        quant_reduction r = build_reduction(g, b);
        CAPTURE(round);
        for (int k = 0; k < 200; ++k) {
            const lasso l = random_lasso(rng, g.game);
            const reduction_check c = check_reduction_on_lasso(r, l);
            CHECK_MESSAGE(c.consistent, c.detail);
            // Lowering the parameter keeps the check valid.
            quant_reduction lower = r;
            lower.parameter = uniform(rng, 0, b);
            CHECK(check_reduction_on_lasso(lower, l).consistent);
        }
    }
}

TEST_CASE("optimize matches the enumeration oracle")
{
    auto rng = make_rng(51);
    for (int round = 0; round < 30; ++round) {
        const cost_rr_game g = random_cost_game(rng, 2, 4, 1, 2);
        const auto opt = optimize(g);
        CAPTURE(round);
        CHECK(opt.cost == cost_rr_minimax(g));
        const bool rr_won = solve_request_response(g.game, g.spec.pairs).wins(player::zero, g.game.initial());
        CHECK(opt.cost.is_finite() == rr_won);
        if (!opt.solution)
            continue;
        CHECK(opt.cost <= extnat(cap_bound(g)));
        const auto& s = opt.solution->strategy;
        CHECK(s.size() == opt.solution->reduction.memory.size() * opt.solution->target_strategy.size());
        CHECK(s.size() <= opt.solution->reduction.memory.size() * g.spec.dimension() << g.spec.dimension());
        const verdict v = verify_strategy(g.game, g.spec, s);
        CHECK(v.certified);
        CHECK(v.cost == opt.cost);
        CHECK(verify_strategy(g.game, objective{request_response{g.spec.pairs}}, s).certified);
    }
}
