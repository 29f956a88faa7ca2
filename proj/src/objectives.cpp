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

#include "rankgames/objectives.hpp"

#include <algorithm>

#include "rankgames/errors.hpp"

namespace rankgames {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool any_of_loop(const lasso& l, const vertex_set& s)
{
    return std::any_of(l.loop.begin(), l.loop.end(), [&](vertex v) { return s.contains(v); });
}

bool all_in(const lasso& l, const vertex_set& s)
{
    auto in = [&](vertex v) { return s.contains(v); };
    return std::all_of(l.prefix.begin(), l.prefix.end(), in) && std::all_of(l.loop.begin(), l.loop.end(), in);
}

bool pair_satisfied(const rr_pair& pair, const lasso& l)
{
    // A request in the loop recurs forever, so the loop itself must answer.
    if (any_of_loop(l, pair.requests))
        return any_of_loop(l, pair.responses);
    if (any_of_loop(l, pair.responses))
        return true;
    // Only prefix requests remain and the loop never answers: the last
    // request in the prefix needs a later response in the prefix.
    bool open = false;
    for (vertex v : l.prefix) {
        if (pair.requests.contains(v))
            open = true;
        if (pair.responses.contains(v))
            open = false;
    }
    return !open;
}

void check_universe(const arena& a, const vertex_set& s, const char* what)
{
    if (s.universe() != a.size())
        throw input_error(std::string("objective: ") + what + " set does not belong to the arena");
}

}  // namespace

void validate_objective(const arena& a, const objective& obj)
{
    std::visit(overloaded{
                   [&](const safety& o) { check_universe(a, o.safe, "safe"); },
                   [&](const buchi& o) { check_universe(a, o.accept, "accepting"); },
                   [&](const cobuchi& o) { check_universe(a, o.avoid, "avoid"); },
                   [&](const request_response& o) {
                       if (o.pairs.empty())
                           throw input_error("objective: request-response needs at least one pair");
                       for (const auto& p : o.pairs) {
                           check_universe(a, p.requests, "request");
                           check_universe(a, p.responses, "response");
                       }
                   },
                   [&](const safety_cobuchi& o) {
                       check_universe(a, o.safe, "safe");
                       check_universe(a, o.avoid, "avoid");
                   },
               },
               obj);
}

std::string objective_kind(const objective& obj)
{
    return std::visit(overloaded{
                          [](const safety&) { return std::string("safety"); },
                          [](const buchi&) { return std::string("buchi"); },
                          [](const cobuchi&) { return std::string("cobuchi"); },
                          [](const request_response&) { return std::string("request_response"); },
                          [](const safety_cobuchi&) { return std::string("safety_cobuchi"); },
                      },
                      obj);
}

std::uint64_t cost_rr_spec::max_cost() const
{
    std::uint64_t w = 0;
    for (const auto& row : costs)
        for (auto c : row)
            w = std::max(w, c);
    return w;
}

void validate_cost_spec(const arena& a, const cost_rr_spec& spec)
{
    if (spec.pairs.empty())
        throw input_error("costs: request-response needs at least one pair");
    if (spec.costs.size() != spec.pairs.size())
        throw input_error("costs: one cost row per pair expected");
    for (std::size_t c = 0; c < spec.pairs.size(); ++c) {
        check_universe(a, spec.pairs[c].requests, "request");
        check_universe(a, spec.pairs[c].responses, "response");
        if (spec.costs[c].size() != a.num_edges())
            throw input_error("costs: pair " + std::to_string(c) + " does not cost every edge");
    }
}

bool eval_qualitative(const objective& obj, const lasso& l)
{
    if (l.loop.empty())
        throw input_error("lasso: loop must be nonempty");
    return std::visit(overloaded{
                          [&](const safety& o) { return all_in(l, o.safe); },
                          [&](const buchi& o) { return any_of_loop(l, o.accept); },
                          [&](const cobuchi& o) { return !any_of_loop(l, o.avoid); },
                          [&](const request_response& o) {
                              return std::all_of(o.pairs.begin(), o.pairs.end(),
                                                 [&](const rr_pair& p) { return pair_satisfied(p, l); });
                          },
                          [&](const safety_cobuchi& o) { return all_in(l, o.safe) && !any_of_loop(l, o.avoid); },
                      },
                      obj);
}

extnat cost_of_response(const arena& a, const cost_rr_spec& spec, const lasso& l, std::size_t position,
                        std::size_t pair)
{
    if (l.loop.empty())
        throw input_error("lasso: loop must be nonempty");
    if (pair >= spec.pairs.size())
        throw input_error("cost_of_response: no pair " + std::to_string(pair));
    const std::size_t u = l.prefix.size(), w = l.loop.size();
    if (position >= u + w)
        position = u + (position - u) % w;
    const rr_pair& rr = spec.pairs[pair];
    if (!rr.requests.contains(l.at(position)))
        return 0;
    // Costs are nonnegative, so the earliest answer is the cheapest. One full
    // loop period after the request position covers every vertex that will
    // ever follow it.
    extnat sum = 0;
    for (std::size_t j = position; j < u + 2 * w; ++j) {
        if (rr.responses.contains(l.at(j)))
            return sum;
        auto e = a.edge_index(l.at(j), l.at(j + 1));
        if (!e)
            throw input_error("lasso: no edge " + a.name(l.at(j)) + " -> " + a.name(l.at(j + 1)));
        sum = sum + spec.cost(pair, *e);
    }
    return extnat::infinity();
}

extnat cost_rr_lasso(const arena& a, const cost_rr_spec& spec, const lasso& l)
{
    extnat worst = 0;
    for (std::size_t j = 0; j < l.length(); ++j)
        for (std::size_t c = 0; c < spec.pairs.size(); ++c) {
            worst = max(worst, cost_of_response(a, spec, l, j, c));
            if (worst.is_infinite())
                return worst;
        }
    return worst;
}

extnat rank_cost_lasso(const rank_function& rk, const objective& obj, rank_mode mode, const lasso& l)
{
    if (!eval_qualitative(obj, l))
        return extnat::infinity();
    std::uint64_t best = 0;
    for (vertex v : l.loop)
        best = std::max(best, rk.at(v));
    if (mode == rank_mode::sup)
        for (vertex v : l.prefix)
            best = std::max(best, rk.at(v));
    return best;
}

}  // namespace rankgames
