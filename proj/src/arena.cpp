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

#include "rankgames/arena.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "rankgames/errors.hpp"

namespace rankgames {

vertex_set::vertex_set(std::size_t universe, std::initializer_list<vertex> members) : bits_(universe, 0)
{
    for (vertex v : members)
        insert(v);
}

vertex_set vertex_set::full(std::size_t universe)
{
    vertex_set s;
    s.bits_.assign(universe, 1);
    s.count_ = universe;
    return s;
}

void vertex_set::insert(vertex v)
{
    if (v >= bits_.size())
        throw input_error("vertex " + std::to_string(v) + " outside the set's universe");
    if (!bits_[v]) {
        bits_[v] = 1;
        ++count_;
    }
}

void vertex_set::erase(vertex v)
{
    if (v < bits_.size() && bits_[v]) {
        bits_[v] = 0;
        --count_;
    }
}

std::vector<vertex> vertex_set::elements() const
{
    std::vector<vertex> out;
    out.reserve(count_);
    for (std::size_t v = 0; v < bits_.size(); ++v)
        if (bits_[v])
            out.push_back(static_cast<vertex>(v));
    return out;
}

vertex_set vertex_set::complement() const
{
    vertex_set r(bits_.size());
    for (std::size_t v = 0; v < bits_.size(); ++v)
        r.bits_[v] = bits_[v] ? 0 : 1;
    r.count_ = bits_.size() - count_;
    return r;
}

bool vertex_set::subset_of(const vertex_set& other) const
{
    for (std::size_t v = 0; v < bits_.size(); ++v)
        if (bits_[v] && !other.contains(static_cast<vertex>(v)))
            return false;
    return true;
}

vertex_set& vertex_set::operator|=(const vertex_set& o)
{
    if (o.bits_.size() > bits_.size())
        bits_.resize(o.bits_.size(), 0);
    count_ = 0;
    for (std::size_t v = 0; v < bits_.size(); ++v) {
        if (v < o.bits_.size())
            bits_[v] |= o.bits_[v];
        count_ += bits_[v];
    }
    return *this;
}

vertex_set& vertex_set::operator&=(const vertex_set& o)
{
    count_ = 0;
    for (std::size_t v = 0; v < bits_.size(); ++v) {
        bits_[v] &= (v < o.bits_.size() ? o.bits_[v] : 0);
        count_ += bits_[v];
    }
    return *this;
}

vertex_set& vertex_set::operator-=(const vertex_set& o)
{
    count_ = 0;
    for (std::size_t v = 0; v < bits_.size(); ++v) {
        if (v < o.bits_.size() && o.bits_[v])
            bits_[v] = 0;
        count_ += bits_[v];
    }
    return *this;
}

arena::arena(std::vector<std::string> names, std::vector<player> owners,
             std::vector<std::pair<vertex, vertex>> edges, vertex initial)
    : owners_(std::move(owners)), initial_(initial)
{
    if (names.size() != owners_.size())
        throw input_error("arena: " + std::to_string(names.size()) + " names for " +
                          std::to_string(owners_.size()) + " owners");
    auto index = std::make_shared<std::unordered_map<std::string, vertex>>();
    for (std::size_t v = 0; v < names.size(); ++v) {
        if (!index->emplace(names[v], static_cast<vertex>(v)).second)
            throw input_error("arena: duplicate vertex id '" + names[v] + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
    index_ = std::move(index);
    build(std::move(edges));
}

arena arena::with_name_function(std::size_t size, name_function names, std::vector<player> owners,
                                std::vector<std::pair<vertex, vertex>> edges, vertex initial)
{
    if (owners.size() != size)
        throw input_error("arena: owner map is not total");
    arena a;
    a.owners_ = std::move(owners);
    a.initial_ = initial;
    a.name_fn_ = std::make_shared<const name_function>(std::move(names));
    a.build(std::move(edges));
    return a;
}

void arena::build(std::vector<std::pair<vertex, vertex>> edges)
{
    const std::size_t n = owners_.size();
    if (n == 0)
        throw input_error("arena: no vertices");
    if (initial_ >= n)
        throw input_error("arena: initial vertex is not a vertex");
    for (const auto& [u, v] : edges)
        if (u >= n || v >= n)
            throw input_error("arena: edge endpoint is not a vertex");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    offsets_.assign(n + 1, 0);
    for (const auto& e : edges)
        ++offsets_[e.first + 1];
    for (std::size_t v = 0; v < n; ++v) {
        if (offsets_[v + 1] == 0)
            throw input_error("vertex " + name(static_cast<vertex>(v)) + " has no outgoing edge");
        offsets_[v + 1] += offsets_[v];
    }
    targets_.resize(edges.size());
    sources_.resize(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        sources_[i] = edges[i].first;
        targets_[i] = edges[i].second;
    }

    pred_offsets_.assign(n + 1, 0);
    for (const auto& e : edges)
        ++pred_offsets_[e.second + 1];
    for (std::size_t v = 0; v < n; ++v)
        pred_offsets_[v + 1] += pred_offsets_[v];
    pred_.resize(edges.size());
    std::vector<std::uint32_t> fill(pred_offsets_.begin(), pred_offsets_.end() - 1);
    for (const auto& e : edges)
        pred_[fill[e.second]++] = e.first;
}

std::string arena::name(vertex v) const
{
    if (names_)
        return (*names_)[v];
    if (name_fn_)
        return (*name_fn_)(v);
    return std::to_string(v);
}

std::optional<vertex> arena::find(const std::string& name) const
{
    if (index_) {
        auto it = index_->find(name);
        if (it == index_->end())
            return std::nullopt;
        return it->second;
    }
    for (vertex v = 0; v < size(); ++v)
        if (this->name(v) == name)
            return v;
    return std::nullopt;
}

std::optional<edge_id> arena::edge_index(vertex from, vertex to) const
{
    if (from >= size())
        return std::nullopt;
    auto succ = successors(from);
    auto it = std::lower_bound(succ.begin(), succ.end(), to);
    if (it == succ.end() || *it != to)
        return std::nullopt;
    return static_cast<edge_id>(offsets_[from] + (it - succ.begin()));
}

vertex_set arena::owned_by(player p) const
{
    vertex_set s(size());
    for (vertex v = 0; v < size(); ++v)
        if (owners_[v] == p)
            s.insert(v);
    return s;
}

arena arena::with_initial(vertex v) const
{
    if (v >= size())
        throw input_error("arena: initial vertex is not a vertex");
    arena a = *this;
    a.initial_ = v;
    return a;
}

bool operator==(const arena& a, const arena& b)
{
    if (a.size() != b.size() || a.initial_ != b.initial_ || a.owners_ != b.owners_ ||
        a.offsets_ != b.offsets_ || a.targets_ != b.targets_)
        return false;
    for (vertex v = 0; v < a.size(); ++v)
        if (a.name(v) != b.name(v))
            return false;
    return true;
}

void validate_lasso_from(const arena& a, const lasso& l, vertex start)
{
    if (l.loop.empty())
        throw input_error("lasso: loop must be nonempty");
    const std::size_t len = l.length();
    for (std::size_t i = 0; i < len; ++i)
        if (l.at(i) >= a.size())
            throw input_error("lasso: unknown vertex at position " + std::to_string(i));
    if (l.at(0) != start)
        throw input_error("lasso: play must start at " + a.name(start));
    for (std::size_t i = 0; i < len; ++i) {
        vertex u = l.at(i), v = l.at(i + 1);
        if (!a.has_edge(u, v))
            throw input_error("lasso: no edge " + a.name(u) + " -> " + a.name(v));
    }
}

void validate_lasso(const arena& a, const lasso& l) { validate_lasso_from(a, l, a.initial()); }

attractor_result attractor(const arena& a, player p, const vertex_set& target, const vertex_set* domain)
{
    const std::size_t n = a.size();
    if (target.universe() != n)
        throw input_error("attractor: target set does not belong to the arena");
    auto in_domain = [&](vertex v) { return domain == nullptr || domain->contains(v); };

    attractor_result r{vertex_set(n), positional_moves(n), std::vector<std::optional<std::uint32_t>>(n)};
    std::vector<std::uint32_t> remaining(n, 0);
    for (vertex v = 0; v < n; ++v) {
        if (!in_domain(v))
            continue;
        for (vertex w : a.successors(v))
            if (in_domain(w))
                ++remaining[v];
    }

    std::deque<vertex> queue;
    for (vertex v : target.elements()) {
        if (!in_domain(v))
            continue;
        r.region.insert(v);
        r.level[v] = 0;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        vertex w = queue.front();
        queue.pop_front();
        const std::uint32_t next_level = *r.level[w] + 1;
        for (vertex u : a.predecessors(w)) {
            if (!in_domain(u) || r.region.contains(u))
                continue;
            if (a.owner(u) == p) {
                r.strategy[u] = w;
            } else if (--remaining[u] != 0) {
                continue;
            }
            r.region.insert(u);
            r.level[u] = next_level;
            queue.push_back(u);
        }
    }
    return r;
}

arena restrict_arena(const arena& a, const vertex_set& keep)
{
    if (keep.universe() != a.size())
        throw input_error("restrict: keep set does not belong to the arena");
    if (!keep.contains(a.initial()))
        throw input_error("not a valid sub-arena: initial vertex " + a.name(a.initial()) + " is not kept");
    std::vector<vertex> renumber(a.size(), 0);
    std::vector<std::string> names;
    std::vector<player> owners;
    for (vertex v : keep.elements()) {
        renumber[v] = static_cast<vertex>(names.size());
        names.push_back(a.name(v));
        owners.push_back(a.owner(v));
    }
    std::vector<std::pair<vertex, vertex>> edges;
    for (vertex v : keep.elements()) {
        bool any = false;
        for (vertex w : a.successors(v)) {
            if (keep.contains(w)) {
                edges.emplace_back(renumber[v], renumber[w]);
                any = true;
            }
        }
        if (!any)
            throw input_error("not a valid sub-arena: vertex " + a.name(v) + " would have no outgoing edge");
    }
    return arena(std::move(names), std::move(owners), std::move(edges), renumber[a.initial()]);
}

bool is_subarena(const arena& candidate, const arena& whole)
{
    std::vector<vertex> map(candidate.size());
    for (vertex v = 0; v < candidate.size(); ++v) {
        auto w = whole.find(candidate.name(v));
        if (!w || whole.owner(*w) != candidate.owner(v))
            return false;
        map[v] = *w;
    }
    for (vertex v = 0; v < candidate.size(); ++v)
        for (vertex s : candidate.successors(v))
            if (!whole.has_edge(map[v], map[s]))
                return false;
    return true;
}

arena swap_players(const arena& a)
{
    std::vector<std::string> names;
    std::vector<player> owners;
    std::vector<std::pair<vertex, vertex>> edges;
    for (vertex v = 0; v < a.size(); ++v) {
        names.push_back(a.name(v));
        owners.push_back(opponent(a.owner(v)));
        for (vertex w : a.successors(v))
            edges.emplace_back(v, w);
    }
    return arena(std::move(names), std::move(owners), std::move(edges), a.initial());
}

bool is_closed_domain(const arena& a, const vertex_set& domain)
{
    for (vertex v : domain.elements()) {
        auto succ = a.successors(v);
        if (std::none_of(succ.begin(), succ.end(), [&](vertex w) { return domain.contains(w); }))
            return false;
    }
    return true;
}

}  // namespace rankgames
