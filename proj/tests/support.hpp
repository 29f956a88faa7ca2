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

// Shared fixtures and hand-rolled generators for the test executables.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rankgames/arena.hpp"
#include "rankgames/memory.hpp"
#include "rankgames/objectives.hpp"
#include "rankgames/resilience.hpp"

namespace rankgames::testing {

/// Seed for every generator; RANKGAMES_SEED overrides it.
inline std::uint64_t test_seed()
{
    if (const char* env = std::getenv("RANKGAMES_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 20261016;
}

inline std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(test_seed() * 1000003ULL + salt); }

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct vertex_decl {
    std::string name;
    int owner;
};

inline arena make_arena(const std::vector<vertex_decl>& vs, const std::vector<std::pair<std::string, std::string>>& es,
                        const std::string& initial)
{
    std::vector<std::string> names;
    std::vector<player> owners;
    for (const auto& v : vs) {
        names.push_back(v.name);
        owners.push_back(v.owner == 0 ? player::zero : player::one);
    }
    auto id = [&](const std::string& s) {
        return static_cast<vertex>(std::find(names.begin(), names.end(), s) - names.begin());
    };
    std::vector<std::pair<vertex, vertex>> edges;
    for (const auto& [f, t] : es)
        edges.emplace_back(id(f), id(t));
    const vertex init = id(initial);
    return arena(std::move(names), std::move(owners), std::move(edges), init);
}

inline vertex_set set_of(const arena& a, std::initializer_list<const char*> names)
{
    vertex_set s(a.size());
    for (const char* n : names)
        s.insert(*a.find(n));
    return s;
}

inline vertex id(const arena& a, const char* name) { return *a.find(name); }

/// a -> b, b -> a, b -> b with a owned by Player 0 and b by Player 1.
inline arena arena_a1(const char* initial = "a")
{
    return make_arena({{"a", 0}, {"b", 1}}, {{"a", "b"}, {"b", "a"}, {"b", "b"}}, initial);
}

/// q <-> p, both Player 0.
inline arena arena_a2() { return make_arena({{"q", 0}, {"p", 0}}, {{"q", "p"}, {"p", "q"}}, "q"); }

inline arena arena_a3()
{
    return make_arena({{"q", 0}, {"s", 1}, {"p", 0}, {"r", 0}},
                      {{"q", "s"}, {"s", "p"}, {"s", "r"}, {"p", "q"}, {"r", "q"}}, "q");
}

/// Cost spec with one pair and per-edge costs given by name.
inline cost_rr_spec single_pair_costs(const arena& a, std::initializer_list<const char*> requests,
                                      std::initializer_list<const char*> responses,
                                      const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& costs)
{
    cost_rr_spec spec;
    spec.pairs.push_back({set_of(a, requests), set_of(a, responses)});
    spec.costs.assign(1, std::vector<std::uint64_t>(a.num_edges(), 0));
    for (const auto& [f, t, c] : costs)
        spec.costs[0][*a.edge_index(*a.find(f), *a.find(t))] = c;
    return spec;
}

inline cost_rr_spec a2_costs(const arena& a) { return single_pair_costs(a, {"q"}, {"p"}, {{"q", "p", 3}}); }

inline cost_rr_spec a3_costs(const arena& a)
{
    return single_pair_costs(a, {"q"}, {"p", "r"}, {{"q", "s", 1}, {"s", "p", 4}, {"s", "r", 2}});
}

/// Two Player 0 vertices with self-loops; a fault sends s to the unsafe u.
inline fault_arena fault_arena_fs(const char* initial = "s")
{
    arena a = make_arena({{"s", 0}, {"u", 0}}, {{"s", "s"}, {"u", "u"}}, initial);
    vertex_set safe = set_of(a, {"s"});
    return fault_arena{a, {{id(a, "s"), id(a, "u")}}, safe};
}

/// u recovers to s; faults lead s to u and u to the unsafe x.
inline fault_arena fault_arena_fe(const char* initial = "u")
{
    arena a = make_arena({{"s", 0}, {"u", 0}, {"x", 1}}, {{"s", "s"}, {"u", "s"}, {"x", "x"}}, initial);
    vertex_set safe = set_of(a, {"s", "u"});
    return fault_arena{a, {{id(a, "s"), id(a, "u")}, {id(a, "u"), id(a, "x")}}, safe};
}

/// Random arena with every vertex non-terminal.
inline arena random_arena(std::mt19937_64& rng, std::size_t n, double edge_prob = 0.35)
{
    std::vector<std::string> names;
    std::vector<player> owners;
    std::vector<std::pair<vertex, vertex>> edges;
    for (std::size_t v = 0; v < n; ++v) {
        names.push_back("v" + std::to_string(v));
        owners.push_back(coin(rng, 0.5) ? player::zero : player::one);
        bool any = false;
        for (std::size_t w = 0; w < n; ++w)
            if (coin(rng, edge_prob)) {
                edges.emplace_back(static_cast<vertex>(v), static_cast<vertex>(w));
                any = true;
            }
        if (!any)
            edges.emplace_back(static_cast<vertex>(v), static_cast<vertex>(uniform(rng, 0, n - 1)));
    }
    return arena(std::move(names), std::move(owners), std::move(edges), 0);
}

inline vertex_set random_set(std::mt19937_64& rng, std::size_t n, double p = 0.4)
{
    vertex_set s(n);
    for (vertex v = 0; v < n; ++v)
        if (coin(rng, p))
            s.insert(v);
    return s;
}

inline std::vector<rr_pair> random_pairs(std::mt19937_64& rng, std::size_t n, std::size_t d)
{
    std::vector<rr_pair> pairs;
    for (std::size_t c = 0; c < d; ++c)
        pairs.push_back({random_set(rng, n, 0.3), random_set(rng, n, 0.3)});
    return pairs;
}

inline cost_rr_spec random_cost_spec(std::mt19937_64& rng, const arena& a, std::size_t d, std::uint64_t w)
{
    cost_rr_spec spec;
    spec.pairs = random_pairs(rng, a.size(), d);
    spec.costs.assign(d, std::vector<std::uint64_t>(a.num_edges(), 0));
    for (auto& row : spec.costs)
        for (auto& c : row)
            c = uniform(rng, 0, w);
    return spec;
}

inline rank_function random_ranks(std::mt19937_64& rng, std::size_t n, std::uint64_t max_rank)
{
    rank_function rk(n);
    for (auto& r : rk)
        r = uniform(rng, 0, max_rank);
    return rk;
}

/// Random play from start: walk at least min_steps, then close the loop at the first revisit.
inline lasso random_lasso(std::mt19937_64& rng, const arena& a, vertex start, std::size_t min_steps)
{
    std::vector<vertex> path{start};
    while (true) {
        auto succ = a.successors(path.back());
        const vertex next = succ[uniform(rng, 0, succ.size() - 1)];
        if (path.size() > min_steps) {
            auto it = std::find(path.begin(), path.end(), next);
            if (it != path.end()) {
                lasso l;
                l.prefix.assign(path.begin(), it);
                l.loop.assign(it, path.end());
                return l;
            }
        }
        path.push_back(next);
    }
}

inline lasso random_lasso(std::mt19937_64& rng, const arena& a)
{
    return random_lasso(rng, a, a.initial(), uniform(rng, 0, 2 * a.size()));
}

/// Random play consistent with the strategy from start, closed when a
/// (vertex, memory state) pair repeats after at least min_steps steps.
inline lasso random_consistent_lasso(std::mt19937_64& rng, const arena& a, const finite_state_strategy& s, vertex start,
                                     std::size_t min_steps)
{
    std::vector<std::pair<vertex, state>> path{{start, s.memory().initial()}};
    while (true) {
        const auto [v, m] = path.back();
        vertex next;
        if (a.owner(v) == s.owner()) {
            next = *s.next_move(v, m);
        } else {
            auto succ = a.successors(v);
            next = succ[uniform(rng, 0, succ.size() - 1)];
        }
        const std::pair<vertex, state> step{next, s.memory().update(m, *a.edge_index(v, next))};
        if (path.size() > min_steps) {
            auto it = std::find(path.begin(), path.end(), step);
            if (it != path.end()) {
                lasso l;
                for (auto p = path.begin(); p != path.end(); ++p)
                    (p < it ? l.prefix : l.loop).push_back(p->first);
                return l;
            }
        }
        path.push_back(step);
    }
}

/// Whether the play from its first vertex follows the strategy at the owner's vertices.
inline bool consistent_with(const arena& a, const finite_state_strategy& s, const lasso& l)
{
    state m = s.memory().initial();
    const std::size_t horizon = l.prefix.size() + l.loop.size() * (s.size() < 64 ? s.size() + 1 : 64);
    for (std::size_t i = 0; i < horizon; ++i) {
        const vertex v = l.at(i), w = l.at(i + 1);
        if (a.owner(v) == s.owner() && s.next_move(v, m) != w)
            return false;
        m = s.memory().update(m, *a.edge_index(v, w));
    }
    return true;
}

/// Random positional strategy for p.
inline finite_state_strategy random_positional(std::mt19937_64& rng, const arena& a, player p)
{
    positional_moves moves(a.size());
    for (vertex v = 0; v < a.size(); ++v)
        if (a.owner(v) == p) {
            auto succ = a.successors(v);
            moves[v] = succ[uniform(rng, 0, succ.size() - 1)];
        }
    return finite_state_strategy::positional(a, p, moves);
}

/// All arenas with 1..max_n vertices up to isomorphism (ownership and edges),
/// in increasing size, stopping after cap instances. Vertex 0 of the
/// canonical form is the initial vertex.
inline std::vector<arena> small_arenas(std::size_t max_n, std::size_t cap)
{
    std::vector<arena> out;
    for (std::size_t n = 1; n <= max_n && out.size() < cap; ++n) {
        std::vector<std::vector<std::size_t>> perms;
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do
            perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));

        auto encode = [n](std::uint32_t owners, std::uint32_t adj, const std::vector<std::size_t>& p) {
            std::uint32_t o = 0, e = 0;
            for (std::size_t v = 0; v < n; ++v) {
                if (owners >> v & 1U)
                    o |= 1U << p[v];
                for (std::size_t w = 0; w < n; ++w)
                    if (adj >> (v * n + w) & 1U)
                        e |= 1U << (p[v] * n + p[w]);
            }
            return (std::uint64_t{o} << 32) | e;
        };

        std::set<std::uint64_t> seen;
        const std::uint32_t owner_limit = 1U << n, adj_limit = 1U << (n * n);
        for (std::uint32_t owners = 0; owners < owner_limit && out.size() < cap; ++owners)
            for (std::uint32_t adj = 0; adj < adj_limit && out.size() < cap; ++adj) {
                bool nonterminal = true;
                for (std::size_t v = 0; v < n; ++v)
                    nonterminal = nonterminal && ((adj >> (v * n)) & ((1U << n) - 1)) != 0;
                if (!nonterminal)
                    continue;
                std::uint64_t best = ~std::uint64_t{0};
                for (const auto& p : perms)
                    best = std::min(best, encode(owners, adj, p));
                if (!seen.insert(best).second)
                    continue;
                std::vector<std::string> names;
                std::vector<player> own;
                std::vector<std::pair<vertex, vertex>> edges;
                const auto o = static_cast<std::uint32_t>(best >> 32), e = static_cast<std::uint32_t>(best);
                for (std::size_t v = 0; v < n; ++v) {
                    names.push_back("v" + std::to_string(v));
                    own.push_back((o >> v & 1U) ? player::one : player::zero);
                    for (std::size_t w = 0; w < n; ++w)
                        if (e >> (v * n + w) & 1U)
                            edges.emplace_back(static_cast<vertex>(v), static_cast<vertex>(w));
                }
                out.emplace_back(std::move(names), std::move(own), std::move(edges), 0);
            }
    }
    return out;
}

}  // namespace rankgames::testing
