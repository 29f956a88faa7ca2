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
#include "oracles.hpp"
#include "rankgames/errors.hpp"
#include "rankgames/quantred.hpp"
#include "rankgames/ranked.hpp"
#include "rankgames/rrcost.hpp"
#include "support.hpp"

using namespace rankgames;
using namespace rankgames::testing;

namespace {

const extnat inf = extnat::infinity();

/// The case split for composed parameters, straight from its definition.
extnat expected_parameter(const correction_function& f1, extnat b1, extnat b2, std::uint64_t search)
{
    if (b2 >= f1(b1))
        return b1;
    std::optional<extnat> best;
    for (std::uint64_t x = 0; x <= search && extnat(x) <= b1; ++x)
        if (f1(x) <= b2)
            best = x;
    return *best;
}

correction_function random_table(std::mt19937_64& rng)
{
    std::vector<extnat> head;
    std::uint64_t next = uniform(rng, 0, 2);
    for (std::size_t k = uniform(rng, 0, 5); k > 0; --k) {
        head.emplace_back(next);
        next += uniform(rng, 0, 2);
    }
    std::optional<extnat> tail;
    if (coin(rng, 0.5))
        tail = extnat(next);
    return correction_function::table(std::move(head), coin(rng, 0.8) ? inf : extnat(next + 3), tail);
}

quant_game ranked_quant(const ranked_game& g) { return {g.game, ranked_condition{g.obj, g.rk, g.mode}}; }

}  // namespace

TEST_CASE("correction function checks")
{
    for (std::uint64_t b = 0; b <= 6; ++b)
        CHECK(is_correction(correction_function::cap(b), b, b + 2));
    CHECK(is_correction(correction_function::cap(inf), inf, 10));
    CHECK(is_correction(correction_function::table({}, inf), inf, 10));
    CHECK_FALSE(is_correction(correction_function::table({0, 0}, inf), 2, 4));
    CHECK_FALSE(is_correction(correction_function::cap(3), 5, 7));

    // The exact answer for caps matches probing the same function written as a table.
    for (std::uint64_t c = 0; c <= 6; ++c)
        for (std::uint64_t b = 0; b <= 8; ++b) {
            std::vector<extnat> head;
            for (std::uint64_t x = 0; x < c; ++x)
                head.emplace_back(x);
            const auto written = correction_function::table(head, inf, extnat(c));
            CHECK(is_correction(correction_function::cap(c), b, 12) == is_correction(written, b, 12));
        }
}

TEST_CASE("composed correction functions evaluate pointwise")
{
    const auto f = correction_function::cap(5);
    const auto g = correction_function::cap(7);
    CHECK(compose(f, g)(3) == extnat(3));
    CHECK(compose(f, g)(9) == extnat(5));
    CHECK(compose_parameter(f, 5, 7) == extnat(5));
    CHECK(compose_parameter(f, 5, 4) == extnat(4));

    auto rng = make_rng(60);
    for (int round = 0; round < 300; ++round) {
        const auto f1 = coin(rng, 0.3) ? correction_function::cap(uniform(rng, 0, 8)) : random_table(rng);
        const auto f2 = coin(rng, 0.3) ? correction_function::cap(uniform(rng, 0, 8)) : random_table(rng);
        const auto h = compose(f1, f2);
        for (std::uint64_t x = 0; x <= 30; ++x)
            CHECK(h(x) == f2(f1(x)));
        CHECK(h(inf) == f2(f1(inf)));
    }
}

TEST_CASE("composed parameters for cap pairs")
{
    for (std::uint64_t b1 = 0; b1 <= 6; ++b1)
        for (std::uint64_t b2 = 0; b2 <= 6; ++b2) {
            const auto f1 = correction_function::cap(b1);
            CHECK(compose_parameter(f1, b1, b2) == expected_parameter(f1, b1, b2, 20));
        }
    const auto shifted = correction_function::table({1, 2, 3}, inf);
    CHECK_THROWS_AS(compose_parameter(shifted, 3, 0), input_error);
}

TEST_CASE("identity reductions")
{
    const arena a = arena_a1();
    const quant_game g{a, ranked_condition{safety{a.all()}, {0, 2}, rank_mode::sup}};
    const quant_reduction r = identity_reduction(g);
    CHECK(r.memory.size() == 1);
    auto rng = make_rng(61);
    for (int k = 0; k < 50; ++k) {
        const reduction_check c = check_reduction_on_lasso(r, random_lasso(rng, a));
        CHECK(c.consistent);
        CHECK(c.source_cost == c.target_cost);
    }

    // A corrupted target rank is caught.
    quant_reduction broken = r;
    std::get<ranked_condition>(broken.target.cond).rk.assign(r.target.game.size(), 1);
    const reduction_check c = check_reduction_on_lasso(broken, lasso{{}, {id(a, "a"), id(a, "b")}});
    CHECK_FALSE(c.consistent);
    CHECK(c.detail.find("Cost' = 1") != std::string::npos);
}

TEST_CASE("lifting through an identity reduction keeps the strategy")
{
    const arena a = arena_a1();
    const ranked_game rg{a, safety{a.all()}, {0, 2}, rank_mode::sup};
    const quant_reduction r = identity_reduction(ranked_quant(rg));
    const ranked_game target{r.target.game, std::get<ranked_condition>(r.target.cond).obj,
                             std::get<ranked_condition>(r.target.cond).rk, rank_mode::sup};
    const auto opt = optimize(target);
    REQUIRE(opt.strategy);
    const auto lifted = lift_strategy(r, *opt.strategy);
    CHECK(lifted.size() == r.memory.size() * opt.strategy->size());
    const verdict v = verify_strategy(a, r.source.cond, lifted);
    CHECK(v.certified);
    CHECK(v.cost == opt.cost);
}

TEST_CASE("composition rejects mismatched games")
{
    const arena a = arena_a1();
    const quant_game g{a, objective{safety{a.all()}}};
    CHECK_THROWS_AS(compose(identity_reduction(g), identity_reduction(g)), input_error);
}

TEST_CASE("composition with the counter reduction is coherent")
{
    auto rng = make_rng(62);
    for (int round = 0; round < 6; ++round) {
        const cost_rr_game game = random_cost_game(rng, 2, 4, uniform(rng, 1, 2), 2);
        const std::uint64_t big = cap_bound(game);
        const quant_reduction first = build_reduction(game, big);
        const std::uint64_t c = uniform(rng, 0, big + 3);
        for (const quant_reduction& second : {identity_reduction(first.target), cap_tightening_reduction(first.target, c)}) {
            const quant_reduction both = compose(first, second);
            CHECK(both.parameter == expected_parameter(first.correction, first.parameter, second.parameter, big + 10));
            CHECK(both.memory.size() == first.memory.size() * second.memory.size());
            for (int k = 0; k < 60; ++k) {
                const lasso l = random_lasso(rng, game.game);
                const bool parts = check_reduction_on_lasso(first, l).consistent &&
                                   check_reduction_on_lasso(second, to_product_lasso(*first.expanded,
                                                                                     extend_lasso(game.game, first.memory, l)))
                                       .consistent;
                CHECK(parts);
                CHECK(check_reduction_on_lasso(both, l).consistent);
            }
        }
    }
}

TEST_CASE("lifted cost-RR strategies keep the target cost")
{
    auto rng = make_rng(63);
    for (int round = 0; round < 20; ++round) {
        const cost_rr_game game = random_cost_game(rng, 2, 4, uniform(rng, 1, 2), 2);
        const auto opt = optimize(game);
        if (!opt.solution)
            continue;
        const cost_rr_solution& s = *opt.solution;
        const verdict target = verify_strategy(s.reduction.target.game, s.reduction.target.cond, s.target_strategy);
        REQUIRE(target.certified);
        const verdict source = verify_strategy(game.game, game.spec, lift_strategy(s.reduction, s.target_strategy));
        CHECK(source.certified);
        CHECK(s.reduction.correction(source.cost) == target.cost);
    }
}
