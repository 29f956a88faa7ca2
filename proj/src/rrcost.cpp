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

#include "rankgames/rrcost.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "rankgames/errors.hpp"
#include "rankgames/qualsolve.hpp"
#include "rankgames/ranked.hpp"

namespace rankgames {

namespace {

std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y)
{
    if (x != 0 && y > std::numeric_limits<std::uint64_t>::max() / x)
        throw std::overflow_error("cap bound does not fit in 64 bits");
    return x * y;
}

/// One digit per pair: 0 idle, 1 + k active(k), cap + 2 + k answered(k).
struct counter_digits {
    std::uint64_t cap;
    std::uint64_t radix() const { return 2 * (cap + 1) + 1; }
    bool active(std::uint64_t d) const { return d >= 1 && d <= cap + 1; }
    bool answered(std::uint64_t d) const { return d >= cap + 2; }
    std::uint64_t value(std::uint64_t d) const { return active(d) ? d - 1 : answered(d) ? d - cap - 2 : 0; }
    std::uint64_t make_active(std::uint64_t k) const { return 1 + k; }
    std::uint64_t make_answered(std::uint64_t k) const { return cap + 2 + k; }
};

class counter_impl final : public memory_structure::impl {
  public:
    counter_impl(const arena& a, const cost_rr_spec& spec, std::uint64_t cap) : base_(a), spec_(spec), digits_{cap}
    {
        if (cap > (std::numeric_limits<std::uint64_t>::max() - 3) / 2)
            throw capacity_error("counter memory: cap too large");
        for (std::size_t c = 0; c < spec.dimension(); ++c) {
            if (size_ > std::numeric_limits<std::uint64_t>::max() / digits_.radix())
                throw capacity_error("counter memory: state count overflows");
            size_ *= digits_.radix();
        }
    }

    std::uint64_t size() const override { return size_; }
    state initial() const override { return 0; }

    state update(state m, edge_id e) const override
    {
        const vertex u = base_.edge(e).first;
        const std::uint64_t radix = digits_.radix();
        state next = 0, weight = 1;
        for (std::size_t c = 0; c < spec_.dimension(); ++c, weight *= radix) {
            std::uint64_t d = m / weight % radix;
            const rr_pair& pair = spec_.pairs[c];
            if (digits_.answered(d))
                d = 0;
            if (pair.responses.contains(u)) {
                if (digits_.active(d))
                    d = digits_.make_answered(digits_.value(d));
                else if (pair.requests.contains(u))
                    d = digits_.make_answered(0);
            } else if (d == 0 && pair.requests.contains(u)) {
                d = digits_.make_active(0);
            }
            if (digits_.active(d)) {
                const std::uint64_t k = digits_.value(d);
                const std::uint64_t add = spec_.cost(c, e);
                d = digits_.make_active(add >= digits_.cap - k ? digits_.cap : k + add);
            }
            next += d * weight;
        }
        return next;
    }

    std::string state_name(state m) const override
    {
        std::string s = "[";
        for (std::size_t c = 0; c < spec_.dimension(); ++c, m /= digits_.radix()) {
            const std::uint64_t d = m % digits_.radix();
            s += c ? "," : "";
            if (d == 0)
                s += "-";
            else
                s += (digits_.active(d) ? "a" : "j") + std::to_string(digits_.value(d));
        }
        return s + "]";
    }

  private:
    arena base_;
    cost_rr_spec spec_;
    counter_digits digits_;
    std::uint64_t size_ = 1;
};

ranked_game target_game(const quant_reduction& r)
{
    const auto& rc = std::get<ranked_condition>(r.target.cond);
    return ranked_game{r.target.game, rc.obj, rc.rk, rank_mode::sup};
}

}  // namespace

std::uint64_t cap_bound(const cost_rr_game& g)
{
    const std::size_t d = g.spec.dimension();
    if (d >= 64)
        throw std::overflow_error("cap bound does not fit in 64 bits");
    std::uint64_t b = checked_mul(d, std::uint64_t{1} << d);
    b = checked_mul(b, g.game.size());
    return checked_mul(b, g.spec.max_cost());
}

memory_structure counter_memory(const arena& a, const cost_rr_spec& spec, std::uint64_t cap)
{
    validate_cost_spec(a, spec);
    return memory_structure(a.num_edges(), std::make_shared<counter_impl>(a, spec, cap));
}

std::uint64_t counter_rank(state m, std::size_t pairs, std::uint64_t cap)
{
    const counter_digits digits{cap};
    std::uint64_t best = 0;
    for (std::size_t c = 0; c < pairs; ++c, m /= digits.radix())
        best = std::max(best, digits.value(m % digits.radix()));
    return best;
}

quant_reduction build_reduction(const cost_rr_game& g, std::uint64_t b, std::optional<std::uint64_t> explore_limit)
{
    validate_cost_spec(g.game, g.spec);
    if (b == std::numeric_limits<std::uint64_t>::max())
        throw capacity_error("reduction bound too large");
    const std::uint64_t cap = b + 1;
    const std::size_t d = g.spec.dimension();
    memory_structure mem = counter_memory(g.game, g.spec, cap);

    expand_options opts;
    opts.all_roots = true;
    if (explore_limit)
        opts.stop = [limit = *explore_limit, d, cap](vertex, state m) { return counter_rank(m, d, cap) > limit; };
    auto x = std::make_shared<const expansion>(expand(g.game, mem, opts));

    rank_function rk(x->product.size());
    for (vertex p = 0; p < x->product.size(); ++p)
        rk[p] = counter_rank(x->origin_of(p).second, d, cap);
    std::vector<rr_pair> lifted;
    for (const rr_pair& pair : g.spec.pairs)
        lifted.push_back({x->lift(pair.requests), x->lift(pair.responses)});

    quant_game target{x->product, ranked_condition{request_response{std::move(lifted)}, std::move(rk), rank_mode::sup}};
    return quant_reduction{quant_game{g.game, g.spec},
                           std::move(target),
                           std::move(mem),
                           std::move(x),
                           correction_function::cap(cap),
                           extnat(cap)};
}

cost_rr_solution solve_with_bound(const cost_rr_game& g, std::uint64_t b)
{
    const std::uint64_t bound = std::min(b, cap_bound(g));
    quant_reduction r = build_reduction(g, cap_bound(g), bound);
    const solve_result solved = solve_sup_with_bound(target_game(r), bound);
    const vertex root = r.target.game.initial();
    const player winner = solved.wins(player::zero, root) ? player::zero : player::one;

    finite_state_strategy target = solved.strategy(winner);
    finite_state_strategy lifted = lift_strategy(r, target);
    if (winner == player::one) {
        // Plays reaching a cut-off vertex already cost more than the bound;
        // any move will do there.
        const expansion& x = *r.expanded;
        const std::uint64_t stride = target.size();
        for (vertex p = 0; p < x.product.size(); ++p) {
            const auto [v, m] = x.origin_of(p);
            if (!x.truncated[p] || g.game.owner(v) != player::one)
                continue;
            for (state s = 0; s < stride; ++s)
                lifted.set_move(v, m * stride + s, g.game.successors(v).front());
        }
    }
    return cost_rr_solution{winner, bound, std::move(r), std::move(target), std::move(lifted)};
}

cost_rr_optimum optimize(const cost_rr_game& g)
{
    validate_cost_spec(g.game, g.spec);
    cost_rr_optimum out;
    const solve_result plain = solve_request_response(g.game, g.spec.pairs);
    if (!plain.wins(player::zero, g.game.initial())) {
        out.cost = extnat::infinity();
        return out;
    }
    const std::uint64_t cap = cap_bound(g);
    std::optional<cost_rr_solution> best;
    auto probe = [&](std::uint64_t b) {
        ++out.probes;
        cost_rr_solution s = solve_with_bound(g, b);
        if (s.winner != player::zero)
            return false;
        best = std::move(s);
        return true;
    };

    // Galloping keeps the explored product small when the optimum is low.
    std::uint64_t lo = 0, hi = 0;
    for (std::uint64_t step = 1;; step *= 2) {
        if (probe(hi))
            break;
        lo = hi + 1;
        if (hi >= cap)
            throw std::logic_error("request-response is winnable but no bound up to the cap is");
        hi = std::min(cap, hi + step);
    }
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (probe(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (!best || best->target_bound != lo)
        probe(lo);
    out.cost = lo;
    out.solution = std::move(best);
    return out;
}

}  // namespace rankgames
