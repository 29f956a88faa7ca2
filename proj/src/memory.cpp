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

#include "rankgames/memory.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "rankgames/errors.hpp"

namespace rankgames {

namespace {

class trivial_memory final : public memory_structure::impl {
  public:
    std::uint64_t size() const override { return 1; }
    state initial() const override { return 0; }
    state update(state, edge_id) const override { return 0; }
    std::string state_name(state) const override { return "m0"; }
};

class table_memory final : public memory_structure::impl {
  public:
    table_memory(std::size_t edges, std::vector<std::string> names, state initial,
                 std::vector<std::optional<state>> table)
        : edges_(edges), names_(std::move(names)), initial_(initial), table_(std::move(table))
    {
    }
    std::uint64_t size() const override { return names_.size(); }
    state initial() const override { return initial_; }
    state update(state m, edge_id e) const override
    {
        if (m >= names_.size() || e >= edges_)
            throw input_error("memory: update queried outside its states or edges");
        const auto& next = table_[m * edges_ + e];
        if (!next)
            throw input_error("memory: no update for state " + names_[m] + " on edge " + std::to_string(e));
        return *next;
    }
    std::string state_name(state m) const override { return names_.at(m); }

  private:
    std::size_t edges_;
    std::vector<std::string> names_;
    state initial_;
    std::vector<std::optional<state>> table_;
};

class pair_memory final : public memory_structure::impl {
  public:
    pair_memory(arena base, memory_structure first, std::shared_ptr<const expansion> x, memory_structure second)
        : base_(std::move(base)), first_(std::move(first)), x_(std::move(x)), second_(std::move(second)),
          stride_(second_.size())
    {
    }
    std::uint64_t size() const override { return first_.size() * stride_; }
    state initial() const override { return first_.initial() * stride_ + second_.initial(); }
    state update(state m, edge_id e) const override
    {
        const state m1 = m / stride_, m2 = m % stride_;
        const auto [u, v] = base_.edge(e);
        const state n1 = first_.update(m1, e);
        auto pu = x_->find(u, m1);
        auto pv = x_->find(v, n1);
        if (!pu || !pv || x_->truncated[*pu])
            return n1 * stride_ + m2;
        auto pe = x_->product.edge_index(*pu, *pv);
        if (!pe)
            return n1 * stride_ + m2;
        return n1 * stride_ + second_.update(m2, *pe);
    }
    std::string state_name(state m) const override
    {
        return "(" + first_.state_name(m / stride_) + "," + second_.state_name(m % stride_) + ")";
    }

  private:
    arena base_;
    memory_structure first_;
    std::shared_ptr<const expansion> x_;
    memory_structure second_;
    std::uint64_t stride_;
};

}  // namespace

memory_structure memory_structure::trivial(const arena& a)
{
    return memory_structure(a.num_edges(), std::make_shared<trivial_memory>());
}

memory_structure memory_structure::from_table(const arena& a, std::vector<std::string> names, state initial,
                                              std::vector<std::optional<state>> table)
{
    if (names.empty())
        throw input_error("memory: no states");
    if (initial >= names.size())
        throw input_error("memory: initial state is not a state");
    if (table.size() != names.size() * a.num_edges())
        throw input_error("memory: update table has the wrong shape");
    for (const auto& next : table)
        if (next && *next >= names.size())
            throw input_error("memory: update leads to an unknown state");
    const std::size_t edges = a.num_edges();
    return memory_structure(edges, std::make_shared<table_memory>(edges, std::move(names), initial, std::move(table)));
}

std::optional<state> memory_structure::find_state(const std::string& name) const
{
    for (state m = 0; m < size(); ++m)
        if (state_name(m) == name)
            return m;
    return std::nullopt;
}

state update_plus(const arena& a, const memory_structure& mem, const std::vector<vertex>& prefix)
{
    if (prefix.empty())
        throw input_error("update_plus: empty prefix");
    state m = mem.initial();
    for (std::size_t i = 0; i + 1 < prefix.size(); ++i) {
        auto e = a.edge_index(prefix[i], prefix[i + 1]);
        if (!e)
            throw input_error("update_plus: no edge at position " + std::to_string(i));
        m = mem.update(m, *e);
    }
    return m;
}

finite_state_strategy finite_state_strategy::positional(const arena& a, player owner, const positional_moves& moves)
{
    finite_state_strategy s(owner, memory_structure::trivial(a));
    for (vertex v = 0; v < moves.size(); ++v)
        if (moves[v])
            s.set_uniform_move(v, *moves[v]);
    return s;
}

void finite_state_strategy::set_uniform_move(vertex v, vertex target)
{
    if (uniform_.size() <= v)
        uniform_.resize(v + 1);
    uniform_[v] = target;
}

std::optional<vertex> finite_state_strategy::next_move(vertex v, state m) const
{
    if (v < uniform_.size() && uniform_[v])
        return uniform_[v];
    auto it = moves_.find(key{v, m});
    if (it == moves_.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::tuple<vertex, state, vertex>> finite_state_strategy::moves() const
{
    std::vector<std::tuple<vertex, state, vertex>> out;
    out.reserve(moves_.size());
    for (const auto& [k, t] : moves_)
        out.emplace_back(k.v, k.m, t);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<vertex> expansion::find(vertex v, state m) const
{
    auto it = index->find({v, m});
    if (it == index->end())
        return std::nullopt;
    return it->second;
}

vertex_set expansion::lift(const vertex_set& s) const
{
    vertex_set out(product.size());
    for (vertex p = 0; p < product.size(); ++p)
        if (s.contains((*origin)[p].first))
            out.insert(p);
    return out;
}

expansion expand(const arena& a, const memory_structure& mem, const expand_options& opts)
{
    auto origin = std::make_shared<std::vector<std::pair<vertex, state>>>();
    auto index = std::make_shared<std::unordered_map<std::pair<vertex, state>, vertex, expansion::pair_hash>>();
    std::vector<bool> truncated;
    std::vector<player> owners;
    std::vector<std::pair<vertex, vertex>> edges;
    std::deque<vertex> queue;

    auto in_domain = [&](vertex v) { return opts.domain == nullptr || opts.domain->contains(v); };
    auto intern = [&](vertex v, state m) {
        auto [it, fresh] = index->try_emplace({v, m}, static_cast<vertex>(origin->size()));
        if (fresh) {
            if (origin->size() == std::numeric_limits<vertex>::max())
                throw capacity_error("expansion exceeds the vertex index range");
            origin->emplace_back(v, m);
            owners.push_back(a.owner(v));
            truncated.push_back(false);
            queue.push_back(it->second);
        }
        return it->second;
    };

    if (opts.all_roots) {
        for (vertex v = 0; v < a.size(); ++v)
            if (in_domain(v))
                intern(v, mem.initial());
        if (origin->empty())
            throw input_error("expand: empty domain");
    } else {
        if (!in_domain(a.initial()))
            throw input_error("expand: initial vertex outside the domain");
        intern(a.initial(), mem.initial());
    }

    while (!queue.empty()) {
        const vertex p = queue.front();
        queue.pop_front();
        const auto [v, m] = (*origin)[p];
        if (opts.stop && opts.stop(v, m)) {
            truncated[p] = true;
            edges.emplace_back(p, p);
            continue;
        }
        const auto succ = a.successors(v);
        for (std::size_t i = 0; i < succ.size(); ++i) {
            if (!in_domain(succ[i]))
                continue;
            const state next = mem.update(m, a.first_edge(v) + static_cast<edge_id>(i));
            edges.emplace_back(p, intern(succ[i], next));
        }
    }

    vertex init = 0;
    if (auto it = index->find({a.initial(), mem.initial()}); it != index->end())
        init = it->second;

    auto names = [base = a, mem, origin](vertex p) {
        const auto& [v, m] = (*origin)[p];
        return base.name(v) + "@" + mem.state_name(m);
    };
    const std::size_t count = origin->size();
    expansion x{arena::with_name_function(count, names, std::move(owners), std::move(edges), init), origin,
                std::move(truncated), index};
    return x;
}

product_lasso extend_lasso(const arena& a, const memory_structure& mem, const lasso& l)
{
    if (l.loop.empty())
        throw input_error("lasso: loop must be nonempty");
    auto step = [&](vertex u, vertex v, state m) {
        auto e = a.edge_index(u, v);
        if (!e)
            throw input_error("lasso: no edge " + a.name(u) + " -> " + a.name(v));
        return mem.update(m, *e);
    };

    product_lasso out;
    state m = mem.initial();
    std::size_t pos = 0;
    for (; pos < l.prefix.size(); ++pos) {
        out.prefix.emplace_back(l.at(pos), m);
        m = step(l.at(pos), l.at(pos + 1), m);
    }
    // Unroll whole loop traversals until the state at the loop head repeats.
    std::map<state, std::size_t> seen;
    std::vector<std::pair<vertex, state>> unrolled;
    while (!seen.contains(m)) {
        seen.emplace(m, unrolled.size());
        for (std::size_t i = 0; i < l.loop.size(); ++i, ++pos) {
            unrolled.emplace_back(l.at(pos), m);
            m = step(l.at(pos), l.at(pos + 1), m);
        }
    }
    const std::size_t start = seen.at(m);
    out.prefix.insert(out.prefix.end(), unrolled.begin(), unrolled.begin() + static_cast<std::ptrdiff_t>(start));
    out.loop.assign(unrolled.begin() + static_cast<std::ptrdiff_t>(start), unrolled.end());
    return out;
}

lasso to_product_lasso(const expansion& x, const product_lasso& l)
{
    auto map = [&](const std::vector<std::pair<vertex, state>>& seq) {
        std::vector<vertex> out;
        out.reserve(seq.size());
        for (const auto& [v, m] : seq) {
            auto p = x.find(v, m);
            if (!p)
                throw input_error("extended play leaves the expansion");
            out.push_back(*p);
        }
        return out;
    };
    return lasso{map(l.prefix), map(l.loop)};
}

memory_structure product_memory(const arena& a, const memory_structure& m1, const expansion& x,
                                const memory_structure& m2)
{
    if (m1.edge_count() != a.num_edges())
        throw input_error("product memory: first memory does not match the arena");
    if (m2.edge_count() != x.product.num_edges())
        throw input_error("product memory: second memory is not over the expanded arena's edges");
    if (m2.size() != 0 && m1.size() > std::numeric_limits<std::uint64_t>::max() / m2.size())
        throw capacity_error("product memory: state count overflows");
    return memory_structure(a.num_edges(),
                            std::make_shared<pair_memory>(a, m1, std::make_shared<const expansion>(x), m2));
}

finite_state_strategy compose_strategy(const arena& a, const memory_structure& m1, const expansion& x,
                                       const finite_state_strategy& strat)
{
    finite_state_strategy out(strat.owner(), product_memory(a, m1, x, strat.memory()));
    const std::uint64_t stride = strat.memory().size();
    for (const auto& [p, m2, target] : strat.moves()) {
        if (p >= x.product.size() || target >= x.product.size())
            throw input_error("strategy is not defined on the expanded arena");
        if (x.truncated[p])
            continue;
        const auto [v, s1] = x.origin_of(p);
        out.set_move(v, s1 * stride + m2, x.origin_of(target).first);
    }
    const auto& uniform = strat.uniform_moves();
    if (std::any_of(uniform.begin(), uniform.end(), [](const auto& t) { return t.has_value(); }) &&
        stride > (std::uint64_t{1} << 20))
        throw capacity_error("compose: too many memory states to spread a uniform move over");
    for (vertex p = 0; p < uniform.size(); ++p) {
        if (!uniform[p] || p >= x.product.size() || x.truncated[p])
            continue;
        const auto [v, s1] = x.origin_of(p);
        const vertex target = x.origin_of(*uniform[p]).first;
        for (state m2 = 0; m2 < stride; ++m2)
            out.set_move(v, s1 * stride + m2, target);
    }
    return out;
}

}  // namespace rankgames
