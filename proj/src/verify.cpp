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

#include "rankgames/verify.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "rankgames/errors.hpp"

namespace rankgames {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

using node_id = std::uint32_t;
constexpr node_id no_node = std::numeric_limits<node_id>::max();

// ---------------------------------------------------------------------------
// Pending-cost tracker

class pending_cost_impl final : public memory_structure::impl {
  public:
    pending_cost_impl(const arena& a, const cost_rr_spec& spec, std::uint64_t cap)
        : base_(a), spec_(spec), cap_(cap), radix_(cap + 2)
    {
        std::uint64_t size = 1;
        for (std::size_t c = 0; c < spec.dimension(); ++c) {
            if (size > std::numeric_limits<std::uint64_t>::max() / radix_)
                throw capacity_error("pending-cost memory: state count overflows");
            size *= radix_;
        }
        size_ = size;
    }

    std::uint64_t size() const override { return size_; }
    state initial() const override { return 0; }

    state update(state m, edge_id e) const override
    {
        const vertex u = base_.edge(e).first;
        state next = 0, weight = 1;
        for (std::size_t c = 0; c < spec_.dimension(); ++c, weight *= radix_) {
            std::uint64_t digit = m / weight % radix_;
            const rr_pair& pair = spec_.pairs[c];
            if (pair.responses.contains(u))
                digit = 0;
            else if (digit == 0 && pair.requests.contains(u))
                digit = 1;
            if (digit != 0) {
                const std::uint64_t count = digit - 1;
                const std::uint64_t add = spec_.cost(c, e);
                digit = 1 + (add >= cap_ - count ? cap_ : count + add);
            }
            next += digit * weight;
        }
        return next;
    }

    std::string state_name(state m) const override
    {
        std::string s = "<";
        for (std::size_t c = 0; c < spec_.dimension(); ++c, m /= radix_) {
            const std::uint64_t digit = m % radix_;
            s += (c ? "," : "") + (digit == 0 ? std::string("-") : std::to_string(digit - 1));
        }
        return s + ">";
    }

  private:
    arena base_;
    cost_rr_spec spec_;
    std::uint64_t cap_;
    std::uint64_t radix_;
    std::uint64_t size_ = 1;
};

/// Reads the tracker digits of pending_cost_memory.
struct tracker_view {
    std::vector<rr_pair> pairs;
    std::uint64_t cap = 0;

    std::uint64_t digit(state t, std::size_t c) const
    {
        for (std::size_t i = 0; i < c; ++i)
            t /= cap + 2;
        return t % (cap + 2);
    }
    /// Pair c is open after the labels of v are applied.
    bool pending(vertex v, state t, std::size_t c) const
    {
        const rr_pair& p = pairs[c];
        return !p.responses.contains(v) && (digit(t, c) != 0 || p.requests.contains(v));
    }
    bool saturated(state t) const
    {
        for (std::size_t c = 0; c < pairs.size(); ++c)
            if (digit(t, c) == cap + 1)
                return true;
        return false;
    }
};

// ---------------------------------------------------------------------------
// Restricted product graphs

struct node {
    vertex v;
    state ms;
    state mt;
    bool operator==(const node&) const = default;
};

struct node_hash {
    std::size_t operator()(const node& n) const noexcept
    {
        std::uint64_t h = n.v;
        h = h * 0x9E3779B97F4A7C15ULL ^ n.ms;
        h = h * 0x9E3779B97F4A7C15ULL ^ n.mt;
        return std::hash<std::uint64_t>{}(h);
    }
};

struct product_graph {
    std::vector<node> nodes;
    std::vector<std::vector<node_id>> succ;
    std::vector<node_id> roots;
    /// Owner vertices whose move is not fixed yet (no successors recorded).
    std::vector<bool> frontier;
    std::optional<std::pair<vertex, state>> first_open;

    std::size_t size() const { return nodes.size(); }
};

using move_fn = std::function<std::optional<vertex>(vertex, state)>;

/// Product restricted to the moves of `owner` given by `move`. Where move has
/// no answer the node becomes frontier, or an error when strict.
product_graph build_product(const arena& a, player owner, const memory_structure& strategy_memory,
                            const move_fn& move, const memory_structure& tracker, const std::vector<vertex>& starts,
                            bool strict, std::size_t max_nodes = std::numeric_limits<std::size_t>::max())
{
    product_graph g;
    std::unordered_map<node, node_id, node_hash> index;
    std::deque<node_id> queue;
    auto intern = [&](const node& n) {
        auto [it, fresh] = index.try_emplace(n, static_cast<node_id>(g.nodes.size()));
        if (fresh) {
            if (g.nodes.size() >= max_nodes)
                throw capacity_error("restricted product exceeds " + std::to_string(max_nodes) + " states");
            g.nodes.push_back(n);
            g.succ.emplace_back();
            g.frontier.push_back(false);
            queue.push_back(it->second);
        }
        return it->second;
    };
    for (vertex s : starts)
        g.roots.push_back(intern(node{s, strategy_memory.initial(), tracker.initial()}));

    while (!queue.empty()) {
        const node_id id = queue.front();
        queue.pop_front();
        const node n = g.nodes[id];
        auto step = [&](vertex w) {
            const edge_id e = *a.edge_index(n.v, w);
            const node next{w, strategy_memory.update(n.ms, e), tracker.update(n.mt, e)};
            const node_id target = intern(next);
            g.succ[id].push_back(target);
        };
        if (a.owner(n.v) == owner) {
            const auto target = move(n.v, n.ms);
            if (!target) {
                if (strict)
                    throw input_error("strategy has no move at reachable vertex " + a.name(n.v) + " in memory state " +
                                      strategy_memory.state_name(n.ms));
                g.frontier[id] = true;
                if (!g.first_open)
                    g.first_open = {n.v, n.ms};
                continue;
            }
            if (!a.has_edge(n.v, *target))
                throw input_error("strategy moves along a non-edge " + a.name(n.v) + " -> " +
                                  (*target < a.size() ? a.name(*target) : std::to_string(*target)));
            step(*target);
        } else {
            for (vertex w : a.successors(n.v))
                step(w);
        }
    }
    return g;
}

using mask = std::vector<bool>;

/// Strongly connected components of the subgraph induced by `allowed`
/// (iterative Tarjan). comp[n] = -1 outside the subgraph.
struct scc_result {
    std::vector<int> comp;
    std::vector<bool> nontrivial;
    int count = 0;
};

scc_result strongly_connected(const product_graph& g, const mask& allowed)
{
    const std::size_t n = g.size();
    scc_result r;
    r.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<node_id> stack;
    std::vector<std::pair<node_id, std::size_t>> call;
    int counter = 0;

    for (node_id root = 0; root < n; ++root) {
        if (!allowed[root] || index[root] != -1)
            continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < g.succ[v].size()) {
                const node_id w = g.succ[v][i++];
                if (!allowed[w])
                    continue;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const node_id done = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] != index[done])
                continue;
            std::size_t members = 0;
            bool self_loop = false;
            node_id w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                r.comp[w] = r.count;
                ++members;
            } while (w != done);
            for (node_id s : g.succ[done])
                self_loop = self_loop || s == done;
            r.nontrivial.push_back(members > 1 || self_loop);
            ++r.count;
        }
    }
    return r;
}

/// Shortest path from any of `from` to a node satisfying `goal`, moving only through `allowed`.
std::vector<node_id> find_path(const product_graph& g, const std::vector<node_id>& from, const mask& allowed,
                               const std::function<bool(node_id)>& goal)
{
    std::vector<node_id> parent(g.size(), no_node);
    std::vector<bool> seen(g.size(), false);
    std::deque<node_id> queue;
    for (node_id s : from)
        if (allowed[s] && !seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        const node_id v = queue.front();
        queue.pop_front();
        if (goal(v)) {
            std::vector<node_id> path;
            for (node_id x = v; x != no_node; x = parent[x])
                path.push_back(x);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (node_id w : g.succ[v])
            if (allowed[w] && !seen[w]) {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
    }
    return {};
}

struct node_lasso {
    std::vector<node_id> prefix;
    std::vector<node_id> loop;
};

/// Loop through the listed nodes of one component, in order, returning to the first.
std::vector<node_id> cycle_through(const product_graph& g, const scc_result& scc, const std::vector<node_id>& stops)
{
    const int c = scc.comp[stops.front()];
    mask inside(g.size(), false);
    for (node_id v = 0; v < g.size(); ++v)
        inside[v] = scc.comp[v] == c;
    std::vector<node_id> loop;
    for (std::size_t i = 0; i < stops.size(); ++i) {
        const node_id from = stops[i], to = stops[(i + 1) % stops.size()];
        std::vector<node_id> starts;
        for (node_id s : g.succ[from])
            if (inside[s])
                starts.push_back(s);
        auto path = find_path(g, starts, inside, [&](node_id x) { return x == to; });
        loop.push_back(from);
        loop.insert(loop.end(), path.begin(), path.end() - 1);
    }
    return loop;
}

/// Extends a finite path into a lasso by following first successors until a node repeats.
node_lasso close_path(const product_graph& g, std::vector<node_id> path)
{
    std::unordered_map<node_id, std::size_t> first;
    for (std::size_t i = 0; i < path.size(); ++i)
        first.try_emplace(path[i], i);
    while (true) {
        const node_id next = g.succ[path.back()].front();
        if (auto it = first.find(next); it != first.end()) {
            const auto k = static_cast<std::ptrdiff_t>(it->second);
            return node_lasso{{path.begin(), path.begin() + k}, {path.begin() + k, path.end()}};
        }
        first.emplace(next, path.size());
        path.push_back(next);
    }
}

struct cycle_rule {
    mask within;
    mask required;
};

/// Some play of the graph reaches a bad node or cycles inside `within` through `required`.
std::optional<node_lasso> find_bad(const product_graph& g, const mask& bad, const std::vector<cycle_rule>& rules,
                                   bool want_witness)
{
    const mask all(g.size(), true);
    for (node_id v = 0; v < g.size(); ++v)
        if (bad[v]) {
            if (!want_witness)
                return node_lasso{};
            return close_path(g, find_path(g, g.roots, all, [&](node_id x) { return bad[x]; }));
        }
    for (const auto& rule : rules) {
        const scc_result scc = strongly_connected(g, rule.within);
        for (node_id v = 0; v < g.size(); ++v) {
            if (!rule.required[v] || scc.comp[v] < 0 || !scc.nontrivial[static_cast<std::size_t>(scc.comp[v])])
                continue;
            if (!want_witness)
                return node_lasso{};
            auto prefix = find_path(g, g.roots, all, [&](node_id x) { return x == v; });
            prefix.pop_back();
            return node_lasso{prefix, cycle_through(g, scc, {v})};
        }
    }
    return std::nullopt;
}

/// Some play moves only through prefix_ok and ends cycling inside
/// prefix_ok & cycle_ok through every required set.
std::optional<node_lasso> find_good(const product_graph& g, const mask& prefix_ok, const mask& cycle_ok,
                                    const std::vector<mask>& required, bool want_witness)
{
    const std::size_t n = g.size();
    mask reach(n, false);
    std::deque<node_id> queue;
    for (node_id r : g.roots)
        if (prefix_ok[r] && !reach[r]) {
            reach[r] = true;
            queue.push_back(r);
        }
    while (!queue.empty()) {
        const node_id v = queue.front();
        queue.pop_front();
        for (node_id w : g.succ[v])
            if (prefix_ok[w] && !reach[w]) {
                reach[w] = true;
                queue.push_back(w);
            }
    }
    mask allowed(n);
    for (node_id v = 0; v < n; ++v)
        allowed[v] = reach[v] && cycle_ok[v];
    const scc_result scc = strongly_connected(g, allowed);

    for (int c = 0; c < scc.count; ++c) {
        if (!scc.nontrivial[static_cast<std::size_t>(c)])
            continue;
        std::vector<node_id> stops;
        bool complete = true;
        for (const auto& req : required) {
            node_id hit = no_node;
            for (node_id v = 0; v < n && hit == no_node; ++v)
                if (scc.comp[v] == c && req[v])
                    hit = v;
            if (hit == no_node) {
                complete = false;
                break;
            }
            if (std::find(stops.begin(), stops.end(), hit) == stops.end())
                stops.push_back(hit);
        }
        if (!complete)
            continue;
        if (!want_witness)
            return node_lasso{};
        if (stops.empty())
            for (node_id v = 0; v < n && stops.empty(); ++v)
                if (scc.comp[v] == c)
                    stops.push_back(v);
        auto prefix = find_path(g, g.roots, prefix_ok, [&](node_id x) { return x == stops.front(); });
        prefix.pop_back();
        return node_lasso{prefix, cycle_through(g, scc, stops)};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Conditions as node predicates

/// Tracker memory and the pairs it follows for a condition.
struct tracking {
    memory_structure memory;
    tracker_view view;
};

tracking make_tracking(const arena& a, const condition& cond, std::optional<std::uint64_t> bound)
{
    const objective* obj = nullptr;
    if (auto* o = std::get_if<objective>(&cond))
        obj = o;
    if (auto* r = std::get_if<ranked_condition>(&cond))
        obj = &r->obj;
    tracking t;
    if (obj != nullptr) {
        if (auto* rr = std::get_if<request_response>(obj)) {
            t.view.pairs = rr->pairs;
            cost_rr_spec spec{rr->pairs, std::vector<std::vector<std::uint64_t>>(rr->pairs.size(),
                                                                                 std::vector<std::uint64_t>(a.num_edges()))};
            t.memory = pending_cost_memory(a, spec, 0);
        } else {
            t.memory = memory_structure::trivial(a);
        }
        return t;
    }
    const auto& spec = std::get<cost_rr_spec>(cond);
    if (bound && *bound >= std::numeric_limits<std::uint64_t>::max() - 2)
        throw capacity_error("bound too large to track");
    const std::uint64_t cap = bound ? *bound + 1 : 0;
    t.memory = pending_cost_memory(a, spec, cap);
    t.view = tracker_view{spec.pairs, cap};
    return t;
}

mask node_mask(const product_graph& g, const std::function<bool(const node&)>& pred)
{
    mask m(g.size());
    for (node_id v = 0; v < g.size(); ++v)
        m[v] = pred(g.nodes[v]);
    return m;
}

/// Violations of Player 0's claim as bad nodes plus cycle rules.
struct universal_spec {
    mask bad;
    std::vector<cycle_rule> rules;
};

void add_objective_violations(const product_graph& g, const objective& obj, const tracking& t, universal_spec& u)
{
    const mask all(g.size(), true);
    std::visit(overloaded{
                   [&](const safety& o) {
                       for (node_id v = 0; v < g.size(); ++v)
                           u.bad[v] = u.bad[v] || !o.safe.contains(g.nodes[v].v);
                   },
                   [&](const buchi& o) {
                       u.rules.push_back({node_mask(g, [&](const node& n) { return !o.accept.contains(n.v); }), all});
                   },
                   [&](const cobuchi& o) {
                       u.rules.push_back({all, node_mask(g, [&](const node& n) { return o.avoid.contains(n.v); })});
                   },
                   [&](const request_response& o) {
                       for (std::size_t c = 0; c < o.pairs.size(); ++c)
                           u.rules.push_back(
                               {node_mask(g, [&](const node& n) { return t.view.pending(n.v, n.mt, c); }), all});
                   },
                   [&](const safety_cobuchi& o) {
                       for (node_id v = 0; v < g.size(); ++v)
                           u.bad[v] = u.bad[v] || !o.safe.contains(g.nodes[v].v);
                       u.rules.push_back({all, node_mask(g, [&](const node& n) { return o.avoid.contains(n.v); })});
                   },
               },
               obj);
}

universal_spec violations(const product_graph& g, const condition& cond, const tracking& t,
                          std::optional<std::uint64_t> bound)
{
    universal_spec u{mask(g.size(), false), {}};
    std::visit(overloaded{
                   [&](const objective& o) { add_objective_violations(g, o, t, u); },
                   [&](const ranked_condition& r) {
                       add_objective_violations(g, r.obj, t, u);
                       if (!bound)
                           return;
                       const mask high = node_mask(g, [&](const node& n) { return r.rk[n.v] > *bound; });
                       if (r.mode == rank_mode::sup) {
                           for (node_id v = 0; v < g.size(); ++v)
                               u.bad[v] = u.bad[v] || high[v];
                       } else {
                           u.rules.push_back({mask(g.size(), true), high});
                       }
                   },
                   [&](const cost_rr_spec& spec) {
                       add_objective_violations(g, request_response{spec.pairs}, t, u);
                       if (bound)
                           for (node_id v = 0; v < g.size(); ++v)
                               u.bad[v] = u.bad[v] || t.view.saturated(g.nodes[v].mt);
                   },
               },
               cond);
    return u;
}

/// Plays Player 0 would be happy with: stay in prefix_ok, cycle in cycle_ok through each required set.
struct existential_spec {
    mask prefix_ok;
    mask cycle_ok;
    std::vector<mask> required;
};

void add_objective_goals(const product_graph& g, const objective& obj, const tracking& t, existential_spec& e)
{
    auto restrict = [&](mask& m, const std::function<bool(const node&)>& pred) {
        for (node_id v = 0; v < g.size(); ++v)
            m[v] = m[v] && pred(g.nodes[v]);
    };
    std::visit(overloaded{
                   [&](const safety& o) { restrict(e.prefix_ok, [&](const node& n) { return o.safe.contains(n.v); }); },
                   [&](const buchi& o) {
                       e.required.push_back(node_mask(g, [&](const node& n) { return o.accept.contains(n.v); }));
                   },
                   [&](const cobuchi& o) {
                       restrict(e.cycle_ok, [&](const node& n) { return !o.avoid.contains(n.v); });
                   },
                   [&](const request_response& o) {
                       for (std::size_t c = 0; c < o.pairs.size(); ++c)
                           e.required.push_back(
                               node_mask(g, [&](const node& n) { return !t.view.pending(n.v, n.mt, c); }));
                   },
                   [&](const safety_cobuchi& o) {
                       restrict(e.prefix_ok, [&](const node& n) { return o.safe.contains(n.v); });
                       restrict(e.cycle_ok, [&](const node& n) { return !o.avoid.contains(n.v); });
                   },
               },
               obj);
}

existential_spec goals(const product_graph& g, const condition& cond, const tracking& t,
                       std::optional<std::uint64_t> bound)
{
    existential_spec e{mask(g.size(), true), mask(g.size(), true), {}};
    std::visit(overloaded{
                   [&](const objective& o) { add_objective_goals(g, o, t, e); },
                   [&](const ranked_condition& r) {
                       add_objective_goals(g, r.obj, t, e);
                       if (!bound)
                           return;
                       mask& m = r.mode == rank_mode::sup ? e.prefix_ok : e.cycle_ok;
                       for (node_id v = 0; v < g.size(); ++v)
                           m[v] = m[v] && r.rk[g.nodes[v].v] <= *bound;
                   },
                   [&](const cost_rr_spec& spec) {
                       add_objective_goals(g, request_response{spec.pairs}, t, e);
                       if (bound)
                           for (node_id v = 0; v < g.size(); ++v)
                               e.prefix_ok[v] = e.prefix_ok[v] && !t.view.saturated(g.nodes[v].mt);
                   },
               },
               cond);
    return e;
}

/// Worst cost over all plays of a graph already known to satisfy the qualitative part.
extnat exact_cost(const arena& a, const product_graph& g, const condition& cond)
{
    return std::visit(
        overloaded{
            [&](const objective&) { return extnat(0); },
            [&](const ranked_condition& r) {
                std::uint64_t best = 0;
                if (r.mode == rank_mode::sup) {
                    for (const node& n : g.nodes)
                        best = std::max(best, r.rk[n.v]);
                } else {
                    const scc_result scc = strongly_connected(g, mask(g.size(), true));
                    for (node_id v = 0; v < g.size(); ++v)
                        if (scc.nontrivial[static_cast<std::size_t>(scc.comp[v])])
                            best = std::max(best, r.rk[g.nodes[v].v]);
                }
                return extnat(best);
            },
            [&](const cost_rr_spec& spec) {
                // Longest cost from each node to the next response of pair c.
                // Without open cycles the nodes before a response form a DAG.
                extnat worst = 0;
                for (std::size_t c = 0; c < spec.dimension(); ++c) {
                    const rr_pair& pair = spec.pairs[c];
                    std::vector<std::optional<extnat>> memo(g.size());
                    std::vector<extnat> acc(g.size(), 0);
                    auto longest = [&](node_id start) {
                        std::vector<std::pair<node_id, std::size_t>> stack{{start, 0}};
                        while (!stack.empty()) {
                            const node_id v = stack.back().first;
                            std::size_t& i = stack.back().second;
                            const node& nv = g.nodes[v];
                            const bool answered = pair.responses.contains(nv.v);
                            if (!answered && i < g.succ[v].size()) {
                                const node_id w = g.succ[v][i++];
                                if (!memo[w]) {
                                    stack.emplace_back(w, 0);
                                    continue;
                                }
                                const auto e = *a.edge_index(nv.v, g.nodes[w].v);
                                acc[v] = max(acc[v], *memo[w] + spec.cost(c, e));
                                continue;
                            }
                            memo[v] = answered ? extnat(0) : acc[v];
                            stack.pop_back();
                            if (!stack.empty()) {
                                const node_id parent = stack.back().first;
                                const auto e = *a.edge_index(g.nodes[parent].v, nv.v);
                                acc[parent] = max(acc[parent], *memo[v] + spec.cost(c, e));
                            }
                        }
                        return *memo[start];
                    };
                    for (node_id v = 0; v < g.size(); ++v)
                        if (pair.requests.contains(g.nodes[v].v) && !pair.responses.contains(g.nodes[v].v))
                            worst = max(worst, memo[v] ? *memo[v] : longest(v));
                }
                return worst;
            },
        },
        cond);
}

lasso project(const product_graph& g, const node_lasso& l)
{
    lasso out;
    for (node_id v : l.prefix)
        out.prefix.push_back(g.nodes[v].v);
    for (node_id v : l.loop)
        out.loop.push_back(g.nodes[v].v);
    // Fold the prefix into the loop where it repeats the loop's tail.
    while (!out.prefix.empty() && out.prefix.back() == out.loop.back()) {
        std::rotate(out.loop.rbegin(), out.loop.rbegin() + 1, out.loop.rend());
        out.prefix.pop_back();
    }
    return out;
}

}  // namespace

extnat play_cost(const arena& a, const condition& cond, const lasso& l)
{
    return std::visit(overloaded{
                          [&](const objective& o) { return eval_qualitative(o, l) ? extnat(0) : extnat::infinity(); },
                          [&](const ranked_condition& r) { return rank_cost_lasso(r.rk, r.obj, r.mode, l); },
                          [&](const cost_rr_spec& spec) { return cost_rr_lasso(a, spec, l); },
                      },
                      cond);
}

void validate_condition(const arena& a, const condition& cond)
{
    std::visit(overloaded{
                   [&](const objective& o) { validate_objective(a, o); },
                   [&](const ranked_condition& r) {
                       validate_objective(a, r.obj);
                       if (r.rk.size() != a.size())
                           throw input_error("rank function is not total on the arena");
                   },
                   [&](const cost_rr_spec& spec) { validate_cost_spec(a, spec); },
               },
               cond);
}

namespace {

/// Outcome of checking one (possibly partial) restricted product.
enum class check { violated, holds, open };

check judge(const arena& a, const product_graph& g, player owner, const condition& cond, const tracking& t,
            std::optional<std::uint64_t> bound, std::optional<node_lasso>* witness)
{
    const bool want = witness != nullptr;
    std::optional<node_lasso> found;
    if (owner == player::zero) {
        const universal_spec u = violations(g, cond, t, bound);
        found = find_bad(g, u.bad, u.rules, want);
    } else {
        const existential_spec e = goals(g, cond, t, bound);
        found = find_good(g, e.prefix_ok, e.cycle_ok, e.required, want);
    }
    (void)a;
    if (found) {
        if (want)
            *witness = std::move(found);
        return check::violated;
    }
    return g.first_open ? check::open : check::holds;
}

}  // namespace

memory_structure pending_cost_memory(const arena& a, const cost_rr_spec& spec, std::uint64_t cap)
{
    validate_cost_spec(a, spec);
    if (cap > std::numeric_limits<std::uint64_t>::max() - 2)
        throw capacity_error("pending-cost memory: cap too large");
    return memory_structure(a.num_edges(), std::make_shared<pending_cost_impl>(a, spec, cap));
}

verdict verify_strategy(const arena& a, const condition& cond, const finite_state_strategy& strategy,
                        std::optional<std::uint64_t> bound, const vertex_set* starts)
{
    validate_condition(a, cond);
    if (strategy.memory().edge_count() != a.num_edges())
        throw input_error("strategy memory is not over this arena's edges");
    std::vector<vertex> roots = starts ? starts->elements() : std::vector<vertex>{a.initial()};
    if (starts && starts->universe() != a.size())
        throw input_error("start set does not belong to the arena");

    const tracking t = make_tracking(a, cond, bound);
    const player owner = strategy.owner();
    const product_graph g = build_product(
        a, owner, strategy.memory(), [&](vertex v, state m) { return strategy.next_move(v, m); }, t.memory, roots,
        true);

    verdict out;
    std::optional<node_lasso> witness;
    if (judge(a, g, owner, cond, t, bound, &witness) == check::violated) {
        out.certified = false;
        out.witness = project(g, *witness);
        out.start = out.witness->at(0);
        out.cost = play_cost(a, cond, *out.witness);
        return out;
    }
    out.certified = true;
    if (owner == player::zero)
        out.cost = exact_cost(a, g, cond);
    else
        out.cost = bound ? extnat(*bound + 1) : extnat::infinity();
    return out;
}

namespace {

/// Depth-first search for a positional strategy over the template product,
/// fixing moves only where the current partial product needs them.
class strategy_search {
  public:
    strategy_search(const arena& a, const condition& cond, const memory_structure& mem, const tracking& t,
                    std::optional<std::uint64_t> bound, player owner, vertex root, std::uint64_t budget)
        : a_(a), cond_(cond), mem_(mem), t_(t), bound_(bound), owner_(owner), root_(root), budget_(budget)
    {
    }

    enum class outcome { found, exhausted, out_of_budget };

    outcome run()
    {
        try {
            return descend() ? outcome::found : outcome::exhausted;
        } catch (const budget_exceeded&) {
            return outcome::out_of_budget;
        }
    }

    finite_state_strategy strategy() const
    {
        finite_state_strategy s(owner_, mem_);
        for (const auto& [key, target] : choice_)
            s.set_move(key.first, key.second, target);
        return s;
    }

  private:
    struct budget_exceeded {};
    struct key_hash {
        std::size_t operator()(const std::pair<vertex, state>& k) const noexcept
        {
            return std::hash<std::uint64_t>{}(k.second * 0x9E3779B97F4A7C15ULL ^ k.first);
        }
    };

    bool descend()
    {
        if (++visited_ > budget_)
            throw budget_exceeded{};
        const product_graph g = build_product(
            a_, owner_, mem_,
            [&](vertex v, state m) -> std::optional<vertex> {
                auto it = choice_.find({v, m});
                if (it == choice_.end())
                    return std::nullopt;
                return it->second;
            },
            t_.memory, {root_}, false);
        const check c = judge(a_, g, owner_, cond_, t_, bound_, nullptr);
        if (c != check::open)
            return c == check::holds;
        const auto open = *g.first_open;
        for (vertex w : a_.successors(open.first)) {
            choice_[open] = w;
            if (descend())
                return true;
        }
        choice_.erase(open);
        return false;
    }

    const arena& a_;
    const condition& cond_;
    const memory_structure& mem_;
    const tracking& t_;
    std::optional<std::uint64_t> bound_;
    player owner_;
    vertex root_;
    std::uint64_t budget_;
    std::uint64_t visited_ = 0;
    std::unordered_map<std::pair<vertex, state>, vertex, key_hash> choice_;
};

}  // namespace

solve_result enumerate_solve(const arena& a, const condition& cond, const memory_structure& memory_template,
                             std::optional<std::uint64_t> bound, std::uint64_t max_candidates)
{
    validate_condition(a, cond);
    if (memory_template.edge_count() != a.num_edges())
        throw input_error("memory template is not over this arena's edges");
    const tracking t = make_tracking(a, cond, bound);

    solve_result r;
    r.regions = {vertex_set(a.size()), vertex_set(a.size())};
    r.strategies = {finite_state_strategy(player::zero, memory_template),
                    finite_state_strategy(player::one, memory_template)};
    for (vertex v = 0; v < a.size(); ++v) {
        std::optional<player> winner;
        for (std::uint64_t budget = 64; !winner; budget *= 4) {
            const std::uint64_t capped = std::min(budget, max_candidates);
            for (player p : {player::zero, player::one}) {
                strategy_search search(a, cond, memory_template, t, bound, p, v, capped);
                const auto result = search.run();
                if (result == strategy_search::outcome::found) {
                    winner = p;
                    if (v == a.initial())
                        r.strategies[index_of(p)] = search.strategy();
                } else if (result == strategy_search::outcome::exhausted) {
                    winner = opponent(p);
                }
                if (winner)
                    break;
            }
            if (!winner && capped == max_candidates)
                throw capacity_error("enumeration oracle: more than " + std::to_string(max_candidates) +
                                     " candidates at vertex " + a.name(v));
        }
        r.regions[index_of(*winner)].insert(v);
    }
    return r;
}

fault_verdict simulate_faults(const fault_arena& fa, const finite_state_strategy& strategy, std::size_t budget,
                              std::size_t depth, std::optional<std::pair<vertex, state>> start)
{
    validate_fault_arena(fa);
    const arena& a = fa.game;
    if (strategy.memory().edge_count() != a.num_edges())
        throw input_error("strategy memory is not over this arena's edges");
    struct sim_node {
        vertex v;
        state m;
        std::size_t left;
        bool operator==(const sim_node&) const = default;
    };
    struct sim_hash {
        std::size_t operator()(const sim_node& n) const noexcept
        {
            return std::hash<std::uint64_t>{}((n.m * 0x9E3779B97F4A7C15ULL ^ n.v) * 31 + n.left);
        }
    };
    struct entry {
        sim_node n;
        std::size_t steps;
        std::size_t parent;
        bool fault;
    };

    std::vector<std::vector<vertex>> fault_targets(a.size());
    for (const auto& [f, t] : fa.faults)
        fault_targets[f].push_back(t);

    std::vector<entry> entries;
    std::unordered_set<sim_node, sim_hash> seen;
    const auto [v0, m0] = start.value_or(std::pair<vertex, state>{a.initial(), strategy.memory().initial()});
    entries.push_back({{v0, m0, budget}, 0, std::numeric_limits<std::size_t>::max(), false});
    seen.insert(entries.front().n);

    for (std::size_t i = 0; i < entries.size(); ++i) {
        const entry cur = entries[i];
        if (!fa.safe.contains(cur.n.v)) {
            fault_verdict out{false, {}, {}};
            for (std::size_t k = i; k != std::numeric_limits<std::size_t>::max(); k = entries[k].parent) {
                out.witness.push_back(entries[k].n.v);
                out.faulted.push_back(entries[k].fault);
            }
            std::reverse(out.witness.begin(), out.witness.end());
            std::reverse(out.faulted.begin(), out.faulted.end());
            return out;
        }
        if (cur.steps == depth)
            continue;
        auto push = [&](vertex w, bool fault) {
            const auto e = a.edge_index(cur.n.v, w);
            const state m = e ? strategy.memory().update(cur.n.m, *e) : cur.n.m;
            const sim_node next{w, m, cur.n.left - (fault ? 1 : 0)};
            if (seen.insert(next).second)
                entries.push_back({next, cur.steps + 1, i, fault});
        };
        if (a.owner(cur.n.v) == player::zero) {
            const auto move = strategy.next_move(cur.n.v, cur.n.m);
            if (!move || !a.has_edge(cur.n.v, *move))
                throw input_error("strategy has no valid move at reachable vertex " + a.name(cur.n.v));
            push(*move, false);
            if (cur.n.left > 0)
                for (vertex w : fault_targets[cur.n.v])
                    push(w, true);
        } else {
            for (vertex w : a.successors(cur.n.v))
                push(w, false);
        }
    }
    return fault_verdict{};
}

std::vector<std::pair<vertex, state>> recurrent_states(const arena& a, const finite_state_strategy& strategy)
{
    const product_graph g = build_product(
        a, strategy.owner(), strategy.memory(), [&](vertex v, state m) { return strategy.next_move(v, m); },
        memory_structure::trivial(a), {a.initial()}, true);
    const scc_result scc = strongly_connected(g, mask(g.size(), true));
    std::vector<std::pair<vertex, state>> out;
    for (node_id v = 0; v < g.size(); ++v)
        if (scc.nontrivial[static_cast<std::size_t>(scc.comp[v])])
            out.emplace_back(g.nodes[v].v, g.nodes[v].ms);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rankgames
