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
#include "rankgames/errors.hpp"
#include "rankgames/qualsolve.hpp"
#include "rankgames/verify.hpp"
#include "support.hpp"

using namespace rankgames;
using namespace rankgames::testing;

namespace {

extnat cost_of(const arena& a, const condition& cond, const lasso& l)
{
    if (auto* o = std::get_if<objective>(&cond))
        return eval_qualitative(*o, l) ? extnat(0) : extnat::infinity();
    if (auto* r = std::get_if<ranked_condition>(&cond))
        return rank_cost_lasso(r->rk, r->obj, r->mode, l);
    return cost_rr_lasso(a, std::get<cost_rr_spec>(cond), l);
}

condition random_condition(std::mt19937_64& rng, const arena& a)
{
    const std::size_t n = a.size();
    switch (uniform(rng, 0, 6)) {
    case 0: return objective{safety{random_set(rng, n, 0.7)}};
    case 1: return objective{buchi{random_set(rng, n)}};
    case 2: return objective{cobuchi{random_set(rng, n)}};
    case 3: return objective{request_response{random_pairs(rng, n, uniform(rng, 1, 2))}};
    case 4: return objective{safety_cobuchi{random_set(rng, n, 0.8), random_set(rng, n)}};
    case 5:
        return ranked_condition{objective{buchi{random_set(rng, n, 0.6)}}, random_ranks(rng, n, 3),
                                coin(rng, 0.5) ? rank_mode::sup : rank_mode::lim};
    default: return random_cost_spec(rng, a, uniform(rng, 1, 2), 2);
    }
}

}  // namespace

TEST_CASE("safety strategies are certified or refuted with a witness")
{
    const arena a = make_arena({{"x", 0}, {"y", 0}, {"z", 0}}, {{"x", "y"}, {"x", "z"}, {"y", "x"}, {"z", "z"}}, "x");
    const vertex_set safe = set_of(a, {"x", "y"});
    const auto solved = solve_safety(a, safe);
    const verdict good = verify_strategy(a, objective{safety{safe}}, solved.strategy(player::zero));
    CHECK(good.certified);
    CHECK(good.cost == extnat(0));

    const auto bad = finite_state_strategy::positional(a, player::zero, {id(a, "z"), id(a, "x"), id(a, "z")});
    const verdict v = verify_strategy(a, objective{safety{safe}}, bad);
    REQUIRE_FALSE(v.certified);
    REQUIRE(v.witness);
    CHECK_FALSE(eval_qualitative(safety{safe}, *v.witness));
    CHECK(v.witness->prefix == std::vector<vertex>{id(a, "x")});
    CHECK(v.witness->loop == std::vector<vertex>{id(a, "z")});
}

TEST_CASE("strategy and arena mismatches are input errors")
{
    const arena a = arena_a1();
    const arena other = arena_a2();
    const auto s = finite_state_strategy::positional(other, player::zero, {1, 0});
    CHECK_THROWS_AS(verify_strategy(a, objective{safety{a.all()}}, s), input_error);
    const auto partial = finite_state_strategy(player::zero, memory_structure::trivial(a));
    CHECK_THROWS_AS(verify_strategy(a, objective{safety{a.all()}}, partial), input_error);
    const auto offgraph = finite_state_strategy::positional(a, player::zero, {id(a, "a"), std::nullopt});
    CHECK_THROWS_AS(verify_strategy(a, objective{safety{a.all()}}, offgraph), input_error);
}

TEST_CASE("cost-RR strategies report exact costs")
{
    const arena a = arena_a2();
    const cost_rr_spec spec = a2_costs(a);
    const auto s = finite_state_strategy::positional(a, player::zero, {id(a, "p"), id(a, "q")});
    const verdict exact = verify_strategy(a, spec, s);
    CHECK(exact.certified);
    CHECK(exact.cost == extnat(3));
    CHECK(verify_strategy(a, spec, s, 3).certified);
    const verdict two = verify_strategy(a, spec, s, 2);
    REQUIRE_FALSE(two.certified);
    CHECK(two.witness->loop.size() == 2);
    CHECK(two.cost == extnat(3));
}

TEST_CASE("pending-cost memory saturates at its cap")
{
    const arena a = arena_a2();
    const cost_rr_spec spec = a2_costs(a);
    const auto mem = pending_cost_memory(a, spec, 2);
    CHECK(mem.size() == 4);
    const state after_q = update_plus(a, mem, {0, 1});
    CHECK(mem.state_name(after_q) == "<2>");
    CHECK(mem.state_name(update_plus(a, mem, {0, 1, 0})) == "<->");
    CHECK(pending_cost_memory(a, spec, 0).size() == 2);
}

TEST_CASE("verdicts are sound on random strategies")
{
    auto rng = make_rng(20);
    for (int round = 0; round < 400; ++round) {
        const arena a = random_arena(rng, uniform(rng, 1, 5));
        const condition cond = random_condition(rng, a);
        const player owner = coin(rng, 0.7) ? player::zero : player::one;
        const auto s = random_positional(rng, a, owner);
        const bool quantitative = !std::holds_alternative<objective>(cond);
        const std::optional<std::uint64_t> bound =
            quantitative && coin(rng, 0.7) ? std::optional<std::uint64_t>(uniform(rng, 0, 4)) : std::nullopt;
        CAPTURE(round);

        const verdict v = verify_strategy(a, cond, s, bound);
        auto fine = [&](const lasso& l) {
            const extnat c = cost_of(a, cond, l);
            if (owner == player::zero)
                return bound ? c <= extnat(*bound) : c.is_finite();
            return bound ? c > extnat(*bound) : c.is_infinite();
        };
        if (v.certified) {
            for (int k = 0; k < 30; ++k) {
                const lasso l = random_consistent_lasso(rng, a, s, a.initial(), uniform(rng, 0, 8));
                CHECK(fine(l));
                if (owner == player::zero)
                    CHECK(cost_of(a, cond, l) <= v.cost);
            }
        } else {
            REQUIRE(v.witness);
            CHECK_NOTHROW(validate_lasso(a, *v.witness));
            CHECK(consistent_with(a, s, *v.witness));
            CHECK_FALSE(fine(*v.witness));
        }
    }
}

TEST_CASE("exact cost is attained by some consistent play")
{
    auto rng = make_rng(21);
    for (int round = 0; round < 200; ++round) {
        const arena a = random_arena(rng, uniform(rng, 1, 4));
        const condition cond = random_condition(rng, a);
        if (std::holds_alternative<objective>(cond))
            continue;
        const auto s = random_positional(rng, a, player::zero);
        const verdict v = verify_strategy(a, cond, s);
        if (!v.certified)
            continue;
        CAPTURE(round);
        // The bound one below the exact cost is refuted, the cost itself is certified.
        CHECK(verify_strategy(a, cond, s, v.cost.value()).certified);
        if (v.cost.value() > 0)
            CHECK_FALSE(verify_strategy(a, cond, s, v.cost.value() - 1).certified);
    }
}

TEST_CASE("enumeration oracle examples")
{
    const arena a = arena_a1();
    const auto trivial = memory_structure::trivial(a);
    CHECK(enumerate_solve(a, objective{safety{a.all()}}, trivial).winning(player::zero) == a.all());
    CHECK(enumerate_solve(a, objective{buchi{set_of(a, {"a"})}}, trivial).winning(player::one) == a.all());
    const auto r = enumerate_solve(a, objective{buchi{set_of(a, {"b"})}}, trivial);
    CHECK(r.winning(player::zero) == a.all());
    CHECK(verify_strategy(a, objective{buchi{set_of(a, {"b"})}}, r.strategy(player::zero)).certified);

    auto rng = make_rng(22);
    const arena big = random_arena(rng, 6, 0.9);
    const std::vector<rr_pair> pairs = random_pairs(rng, 6, 2);
    CHECK_THROWS_AS(enumerate_solve(big, objective{request_response{pairs}}, rr_memory(big, pairs), std::nullopt, 3),
                    capacity_error);
}

TEST_CASE("fault simulation examples")
{
    const fault_arena fs = fault_arena_fs();
    const auto stay = finite_state_strategy::positional(fs.game, player::zero, {id(fs.game, "s"), id(fs.game, "u")});
    CHECK(simulate_faults(fs, stay, 0, 4).safe);
    const fault_verdict hit = simulate_faults(fs, stay, 1, 4);
    REQUIRE_FALSE(hit.safe);
    CHECK(hit.witness == std::vector<vertex>{id(fs.game, "s"), id(fs.game, "u")});
    CHECK(hit.faulted == std::vector<bool>{false, true});

    // From u one fault already reaches x; from s the first fault only reaches u.
    const fault_arena fe = fault_arena_fe();
    const auto recover = finite_state_strategy::positional(fe.game, player::zero,
                                                           {id(fe.game, "s"), id(fe.game, "s"), std::nullopt});
    CHECK_FALSE(simulate_faults(fe, recover, 1, 6).safe);
    CHECK(simulate_faults(fe, recover, 1, 6, std::pair<vertex, state>{id(fe.game, "s"), 0}).safe);
    CHECK_FALSE(simulate_faults(fe, recover, 2, 6, std::pair<vertex, state>{id(fe.game, "s"), 0}).safe);
    CHECK(recurrent_states(fe.game, recover) == std::vector<std::pair<vertex, state>>{{id(fe.game, "s"), 0}});
}

TEST_CASE("budget zero simulation matches the safety check up to the depth")
{
    auto rng = make_rng(23);
    for (int round = 0; round < 200; ++round) {
        const arena a = random_arena(rng, uniform(rng, 1, 5));
        const vertex_set safe = random_set(rng, a.size(), 0.7);
        const auto s = random_positional(rng, a, player::zero);
        const fault_arena fa{a, {}, safe};
        CHECK(simulate_faults(fa, s, 0, 2 * a.size()).safe ==
              verify_strategy(a, objective{safety{safe}}, s).certified);
    }
}
