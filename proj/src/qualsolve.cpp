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

#include "rankgames/qualsolve.hpp"

#include <limits>

#include "rankgames/errors.hpp"

namespace rankgames {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

vertex_set domain_or_all(const arena& a, const vertex_set* domain)
{
    if (domain == nullptr)
        return a.all();
    if (domain->universe() != a.size())
        throw input_error("domain does not belong to the arena");
    return *domain;
}

std::optional<vertex> successor_in(const arena& a, vertex v, const vertex_set& s)
{
    for (vertex w : a.successors(v))
        if (s.contains(w))
            return w;
    return std::nullopt;
}

/// Gives every vertex of p in the domain that has no move yet some successor in the domain.
void complete_moves(const arena& a, player p, const vertex_set& domain, positional_moves& moves)
{
    for (vertex v : domain.elements())
        if (a.owner(v) == p && !moves[v])
            moves[v] = successor_in(a, v, domain);
}

struct positional_solution {
    std::array<vertex_set, 2> regions;
    std::array<positional_moves, 2> moves;
};

solve_result to_result(const arena& a, positional_solution s)
{
    solve_result r;
    r.regions = std::move(s.regions);
    for (player p : {player::zero, player::one})
        r.strategies[index_of(p)] = finite_state_strategy::positional(a, p, s.moves[index_of(p)]);
    return r;
}

/// Player p wants to visit accept infinitely often inside the domain.
positional_solution buchi_core(const arena& a, player p, const vertex_set& accept, const vertex_set& domain)
{
    const std::size_t n = a.size();
    const player q = opponent(p);
    positional_solution s{{vertex_set(n), vertex_set(n)}, {positional_moves(n), positional_moves(n)}};
    auto& moves_p = s.moves[index_of(p)];
    auto& moves_q = s.moves[index_of(q)];
    vertex_set current = domain;

    while (true) {
        auto reach = attractor(a, p, accept & current, &current);
        vertex_set lost = current - reach.region;
        if (lost.empty()) {
            for (vertex v : current.elements())
                if (a.owner(v) == p)
                    moves_p[v] = reach.strategy[v] ? reach.strategy[v] : successor_in(a, v, current);
            break;
        }
        // lost is a trap for p inside current: q can stay in it and it misses accept.
        auto trap = attractor(a, q, lost, &current);
        for (vertex v : trap.region.elements())
            if (a.owner(v) == q)
                moves_q[v] = trap.strategy[v] ? trap.strategy[v] : successor_in(a, v, lost);
        s.regions[index_of(q)] |= trap.region;
        current -= trap.region;
    }
    s.regions[index_of(p)] = current;
    complete_moves(a, p, domain, moves_p);
    complete_moves(a, q, domain, moves_q);
    return s;
}

}  // namespace

void set_moves_all_states(finite_state_strategy& s, const positional_moves& moves)
{
    for (vertex v = 0; v < moves.size(); ++v)
        if (moves[v])
            s.set_uniform_move(v, *moves[v]);
}

solve_result solve_safety(const arena& a, const vertex_set& safe, const vertex_set* domain)
{
    const vertex_set dom = domain_or_all(a, domain);
    const std::size_t n = a.size();
    auto unsafe = attractor(a, player::one, dom - safe, &dom);
    positional_solution s{{dom - unsafe.region, unsafe.region}, {positional_moves(n), unsafe.strategy}};
    for (vertex v : s.regions[0].elements())
        if (a.owner(v) == player::zero)
            s.moves[0][v] = successor_in(a, v, s.regions[0]);
    complete_moves(a, player::zero, dom, s.moves[0]);
    complete_moves(a, player::one, dom, s.moves[1]);
    return to_result(a, std::move(s));
}

solve_result solve_buchi(const arena& a, const vertex_set& accept, const vertex_set* domain)
{
    return to_result(a, buchi_core(a, player::zero, accept, domain_or_all(a, domain)));
}

solve_result solve_cobuchi(const arena& a, const vertex_set& avoid, const vertex_set* domain)
{
    return to_result(a, buchi_core(a, player::one, avoid, domain_or_all(a, domain)));
}

solve_result solve_safety_cobuchi(const arena& a, const vertex_set& safe, const vertex_set& avoid,
                                  const vertex_set* domain)
{
    const vertex_set dom = domain_or_all(a, domain);
    auto unsafe = attractor(a, player::one, dom - safe, &dom);
    const vertex_set rest = dom - unsafe.region;
    positional_solution s = buchi_core(a, player::one, avoid, rest);
    s.regions[1] |= unsafe.region;
    for (vertex v : unsafe.region.elements())
        if (unsafe.strategy[v])
            s.moves[1][v] = unsafe.strategy[v];
    complete_moves(a, player::zero, dom, s.moves[0]);
    complete_moves(a, player::one, dom, s.moves[1]);
    return to_result(a, std::move(s));
}

memory_structure rr_memory(const arena& a, const std::vector<rr_pair>& pairs)
{
    const std::size_t d = pairs.size();
    if (d == 0)
        throw input_error("request-response needs at least one pair");
    if (d > 24)
        throw capacity_error("request-response memory supports at most 24 pairs");

    class impl final : public memory_structure::impl {
      public:
        impl(const arena& a, const std::vector<rr_pair>& pairs) : d_(pairs.size()), base_(a)
        {
            requested_.assign(a.size(), 0);
            answered_.assign(a.size(), 0);
            for (std::size_t c = 0; c < d_; ++c)
                for (vertex v = 0; v < a.size(); ++v) {
                    if (pairs[c].requests.contains(v))
                        requested_[v] |= std::uint64_t{1} << c;
                    if (pairs[c].responses.contains(v))
                        answered_[v] |= std::uint64_t{1} << c;
                }
        }
        std::uint64_t size() const override { return d_ << d_; }
        state initial() const override { return 0; }
        state update(state m, edge_id e) const override
        {
            const vertex u = base_.edge(e).first;
            const std::uint64_t open = m / d_, r = m % d_;
            const std::uint64_t next_open = (open | requested_[u]) & ~answered_[u];
            const std::uint64_t next_r = (open >> r & 1U) ? r : (r + 1) % d_;
            return next_open * d_ + next_r;
        }
        std::string state_name(state m) const override
        {
            std::string s = "{";
            const std::uint64_t open = m / d_;
            bool first = true;
            for (std::size_t c = 0; c < d_; ++c)
                if (open >> c & 1U) {
                    s += (first ? "" : ",") + std::to_string(c);
                    first = false;
                }
            return s + "}/" + std::to_string(m % d_);
        }

      private:
        std::size_t d_;
        arena base_;
        std::vector<std::uint64_t> requested_;
        std::vector<std::uint64_t> answered_;
    };
    return memory_structure(a.num_edges(), std::make_shared<impl>(a, pairs));
}

solve_result solve_request_response(const arena& a, const std::vector<rr_pair>& pairs, const vertex_set* domain)
{
    const vertex_set dom = domain_or_all(a, domain);
    const std::size_t d = pairs.size();
    const memory_structure mem = rr_memory(a, pairs);
    if (dom.empty()) {
        solve_result r;
        r.regions = {dom, dom};
        r.strategies = {finite_state_strategy(player::zero, mem), finite_state_strategy(player::one, mem)};
        return r;
    }
    const expansion x = expand(a, mem, expand_options{&dom, true, {}});

    vertex_set accept(x.product.size());
    for (vertex p = 0; p < x.product.size(); ++p)
        if (rr_accepting(x.origin_of(p).second, d))
            accept.insert(p);
    const solve_result product = solve_buchi(x.product, accept);

    solve_result r;
    r.regions = {vertex_set(a.size()), vertex_set(a.size())};
    for (vertex v : dom.elements()) {
        const vertex p = *x.find(v, mem.initial());
        r.regions[product.wins(player::zero, p) ? 0 : 1].insert(v);
    }
    for (player p : {player::zero, player::one})
        r.strategies[index_of(p)] = compose_strategy(a, mem, x, product.strategy(p));
    return r;
}

solve_result solve_qualitative(const arena& a, const objective& obj, const vertex_set* domain)
{
    validate_objective(a, obj);
    return std::visit(overloaded{
                          [&](const safety& o) { return solve_safety(a, o.safe, domain); },
                          [&](const buchi& o) { return solve_buchi(a, o.accept, domain); },
                          [&](const cobuchi& o) { return solve_cobuchi(a, o.avoid, domain); },
                          [&](const request_response& o) { return solve_request_response(a, o.pairs, domain); },
                          [&](const safety_cobuchi& o) { return solve_safety_cobuchi(a, o.safe, o.avoid, domain); },
                      },
                      obj);
}

}  // namespace rankgames
