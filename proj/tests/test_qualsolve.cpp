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

#include "doctest.h"
#include "rankgames/qualsolve.hpp"
#include "rankgames/verify.hpp"
#include "support.hpp"

using namespace rankgames;
using namespace rankgames::testing;

namespace {

void check_partition(const arena& a, const solve_result& r)
{
    CHECK((r.winning(player::zero) | r.winning(player::one)) == a.all());
    CHECK((r.winning(player::zero) & r.winning(player::one)).empty());
}

void check_strategies(const arena& a, const objective& obj, const solve_result& r)
{
    for (player p : {player::zero, player::one}) {
        if (r.winning(p).empty())
            continue;
        const verdict v = verify_strategy(a, obj, r.strategy(p), std::nullopt, &r.winning(p));
        CHECK_MESSAGE(v.certified, "player ", index_of(p), " strategy refuted");
    }
}

}  // namespace

TEST_CASE("safety examples")
{
    const arena a = arena_a1();
    CHECK(solve_safety(a, a.all()).winning(player::zero) == a.all());
    CHECK(solve_safety(a, vertex_set(2)).winning(player::one) == a.all());
    CHECK(solve_safety(a, set_of(a, {"a"})).winning(player::one) == a.all());
}

TEST_CASE("buchi and cobuchi examples")
{
    const arena a = arena_a1();
    CHECK(solve_buchi(a, a.all()).winning(player::zero) == a.all());
    CHECK(solve_buchi(a, set_of(a, {"b"})).winning(player::zero) == a.all());
    CHECK(solve_buchi(a, set_of(a, {"a"})).winning(player::one) == a.all());
    CHECK(solve_cobuchi(a, vertex_set(2)).winning(player::zero) == a.all());
    CHECK(solve_cobuchi(a, a.all()).winning(player::one) == a.all());
    CHECK(solve_cobuchi(a, set_of(a, {"b"})).winning(player::one) == a.all());
}

TEST_CASE("request-response examples")
{
    const arena a2 = arena_a2();
    const auto r = solve_request_response(a2, {{vertex_set(2), set_of(a2, {"p"})}});
    CHECK(r.winning(player::zero) == a2.all());

    const auto alt = solve_request_response(a2, {{set_of(a2, {"q"}), set_of(a2, {"p"})}});
    CHECK(alt.wins(player::zero, id(a2, "q")));
    CHECK(alt.strategy(player::zero).size() <= 2);

    // Player 1 keeps the request open by looping at q.
    const arena loop = make_arena({{"q", 1}, {"p", 0}}, {{"q", "q"}, {"q", "p"}, {"p", "q"}}, "q");
    const std::vector<rr_pair> pairs{{set_of(loop, {"q"}), set_of(loop, {"p"})}};
    const auto lost = solve_request_response(loop, pairs);
    CHECK(lost.winning(player::one) == loop.all());
    check_strategies(loop, request_response{pairs}, lost);
}

TEST_CASE("rr memory tracks open requests")
{
    const arena a = arena_a2();
    const std::vector<rr_pair> pairs{{set_of(a, {"q"}), set_of(a, {"p"})}, {set_of(a, {"p"}), set_of(a, {"q"})}};
    const auto mem = rr_memory(a, pairs);
    CHECK(mem.size() == 8);
    const state after_q = update_plus(a, mem, {0, 1});
    CHECK(rr_open_set(after_q, 2) == 1);
    CHECK(after_q % 2 == 1);
    CHECK(rr_accepting(mem.initial(), 2));
    CHECK(rr_accepting(after_q, 2));
    CHECK_FALSE(rr_accepting(1 * 2 + 0, 2));
}

TEST_CASE("safety and cobuchi examples")
{
    const arena a = arena_a1();
    CHECK(solve_safety_cobuchi(a, a.all(), vertex_set(2)).winning(player::zero) == a.all());
    const arena chain = make_arena({{"x", 0}, {"y", 0}, {"z", 0}},
                                   {{"x", "y"}, {"x", "z"}, {"y", "y"}, {"y", "x"}, {"z", "z"}}, "x");
    const vertex_set safe = set_of(chain, {"x", "y"});
    const vertex_set avoid = set_of(chain, {"x"});
    const auto r = solve_safety_cobuchi(chain, safe, avoid);
    const auto oracle = enumerate_solve(chain, safety_cobuchi{safe, avoid}, memory_structure::trivial(chain));
    CHECK(r.regions == oracle.regions);
    CHECK(r.winning(player::zero) == safe);

    const vertex_set keep = set_of(chain, {"x", "y"});
    const auto sub = solve_safety_cobuchi(chain, chain.all(), safe, &keep);
    CHECK(sub.winning(player::zero) == solve_cobuchi(chain, safe, &keep).winning(player::zero));
}

TEST_CASE("solvers agree with the enumeration oracle and certify their strategies")
{
    auto rng = make_rng(10);
    for (int round = 0; round < 150; ++round) {
        const arena a = random_arena(rng, uniform(rng, 1, 5));
        const std::size_t n = a.size();
        const vertex_set s1 = random_set(rng, n, 0.6), s2 = random_set(rng, n);
        const memory_structure trivial = memory_structure::trivial(a);
        CAPTURE(round);

        const std::vector<std::pair<objective, solve_result>> cases{
            {safety{s1}, solve_safety(a, s1)},
            {buchi{s2}, solve_buchi(a, s2)},
            {cobuchi{s2}, solve_cobuchi(a, s2)},
            {safety_cobuchi{s1, s2}, solve_safety_cobuchi(a, s1, s2)},
        };
        for (const auto& [obj, r] : cases) {
            check_partition(a, r);
            CHECK(r.regions == enumerate_solve(a, obj, trivial).regions);
            check_strategies(a, obj, r);
        }
        CHECK(solve_cobuchi(a, s2).winning(player::zero) == solve_buchi(swap_players(a), s2).winning(player::one));
    }
}

TEST_CASE("request-response solver agrees with the oracle")
{
    auto rng = make_rng(11);
    for (int round = 0; round < 40; ++round) {
        const arena a = random_arena(rng, uniform(rng, 1, 4));
        const std::size_t d = uniform(rng, 1, 2);
        const auto pairs = random_pairs(rng, a.size(), d);
        CAPTURE(round);
        const auto r = solve_request_response(a, pairs);
        check_partition(a, r);
        CHECK(r.strategy(player::zero).size() <= d << d);
        CHECK(r.regions == enumerate_solve(a, request_response{pairs}, rr_memory(a, pairs)).regions);
        check_strategies(a, request_response{pairs}, r);
    }
}
