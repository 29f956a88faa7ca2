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

#include "rankgames/io.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "rankgames/errors.hpp"

namespace rankgames::io {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Character iterator that records how far the parser has read.
class counting_iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    counting_iterator(const char* p, std::size_t* consumed, const char* base)
        : p_(p), consumed_(consumed), base_(base)
    {
    }
    reference operator*() const { return *p_; }
    counting_iterator& operator++()
    {
        ++p_;
        *consumed_ = std::max(*consumed_, static_cast<std::size_t>(p_ - base_));
        return *this;
    }
    counting_iterator operator++(int)
    {
        counting_iterator old = *this;
        ++*this;
        return old;
    }
    friend bool operator==(const counting_iterator& a, const counting_iterator& b) { return a.p_ == b.p_; }

  private:
    const char* p_;
    std::size_t* consumed_;
    const char* base_;
};

/// Parsed JSON with the source line of every value, keyed by JSON pointer.
class located_json {
  public:
    located_json(std::string_view text, std::string source) : text_(text), source_(std::move(source))
    {
        for (std::size_t i = 0; i < text.size(); ++i)
            if (text[i] == '\n')
                newlines_.push_back(i);
        builder b(*this);
        const counting_iterator first(text.data(), &consumed_, text.data());
        const counting_iterator last(text.data() + text.size(), &consumed_, text.data());
        json::sax_parse(first, last, &b);
    }

    const json& root() const { return root_; }

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const
    {
        std::string p = pointer;
        while (!lines_.contains(p) && !p.empty())
            p.erase(p.rfind('/'));
        const std::size_t line = lines_.contains(p) ? lines_.at(p) : 1;
        throw input_error(source_ + ":" + std::to_string(line) + ": " + message);
    }

  private:
    struct frame {
        json* container;
        std::string pointer;
        std::string key;
        std::size_t index = 0;
    };

    std::size_t line_at(std::size_t offset) const
    {
        return static_cast<std::size_t>(std::lower_bound(newlines_.begin(), newlines_.end(), offset) -
                                        newlines_.begin()) +
               1;
    }

    /// SAX handler building the document and the line map.
    struct builder {
        explicit builder(located_json& d) : doc(d) {}

        located_json& doc;
        std::vector<frame> stack;

        json* add(json value)
        {
            const std::size_t line = doc.line_at(doc.consumed_ == 0 ? 0 : doc.consumed_ - 1);
            std::string pointer;
            json* slot;
            if (stack.empty()) {
                doc.root_ = std::move(value);
                slot = &doc.root_;
            } else if (frame& top = stack.back(); top.container->is_array()) {
                pointer = top.pointer + "/" + std::to_string(top.index++);
                top.container->push_back(std::move(value));
                slot = &top.container->back();
            } else {
                pointer = top.pointer + "/" + escape(top.key);
                slot = &((*top.container)[top.key] = std::move(value));
            }
            doc.lines_.emplace(pointer, line);
            last_pointer = pointer;
            return slot;
        }

        static std::string escape(const std::string& key)
        {
            std::string out;
            for (char c : key)
                out += c == '~' ? "~0" : c == '/' ? "~1" : std::string(1, c);
            return out;
        }

        std::string last_pointer;

        bool null() { return add(nullptr), true; }
        bool boolean(bool v) { return add(v), true; }
        bool number_integer(json::number_integer_t v) { return add(v), true; }
        bool number_unsigned(json::number_unsigned_t v) { return add(v), true; }
        bool number_float(json::number_float_t v, const std::string&) { return add(v), true; }
        bool string(json::string_t& v) { return add(v), true; }
        bool binary(json::binary_t& v) { return add(json::binary(v)), true; }
        bool start_object(std::size_t)
        {
            json* slot = add(json::object());
            stack.push_back({slot, last_pointer, {}});
            return true;
        }
        bool key(json::string_t& k)
        {
            stack.back().key = k;
            return true;
        }
        bool end_object()
        {
            stack.pop_back();
            return true;
        }
        bool start_array(std::size_t)
        {
            json* slot = add(json::array());
            stack.push_back({slot, last_pointer, {}});
            return true;
        }
        bool end_array()
        {
            stack.pop_back();
            return true;
        }
        bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex)
        {
            std::string what = ex.what();
            // Drop the library's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
            if (auto colon = what.find(": "); colon != std::string::npos)
                what = what.substr(colon + 2);
            throw input_error(doc.source_ + ":" + std::to_string(doc.line_at(position == 0 ? 0 : position - 1)) +
                              ": " + what);
        }
    };

    std::string_view text_;
    std::string source_;
    std::vector<std::size_t> newlines_;
    std::size_t consumed_ = 0;
    json root_;
    std::unordered_map<std::string, std::size_t> lines_;
};

/// Typed access to a located document.
class reader {
  public:
    explicit reader(const located_json& doc) : doc_(doc) {}

    const json& at(const std::string& pointer) const { return doc_.root().at(json::json_pointer(pointer)); }
    bool has(const std::string& pointer) const { return doc_.root().contains(json::json_pointer(pointer)); }

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const
    {
        doc_.fail(pointer, message);
    }

    const json& object(const std::string& pointer, std::initializer_list<const char*> allowed) const
    {
        const json& j = require(pointer);
        if (!j.is_object())
            fail(pointer, describe(pointer) + " must be an object");
        for (const auto& [k, v] : j.items())
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
                fail(pointer, "unknown field '" + k + "'");
        return j;
    }

    std::size_t array(const std::string& pointer) const
    {
        const json& j = require(pointer);
        if (!j.is_array())
            fail(pointer, describe(pointer) + " must be an array");
        return j.size();
    }

    std::string string(const std::string& pointer) const
    {
        const json& j = require(pointer);
        if (!j.is_string())
            fail(pointer, describe(pointer) + " must be a string");
        return j.get<std::string>();
    }

    std::uint64_t natural(const std::string& pointer) const
    {
        const json& j = require(pointer);
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
            fail(pointer, describe(pointer) + " must be a natural number");
        return j.get<std::uint64_t>();
    }

    const json& require(const std::string& pointer) const
    {
        if (!has(pointer))
            fail(pointer, "missing field '" + pointer.substr(pointer.rfind('/') + 1) + "'");
        return at(pointer);
    }

    static std::string describe(const std::string& pointer)
    {
        return "'" + (pointer.empty() ? std::string("document") : pointer.substr(1)) + "'";
    }

  private:
    const located_json& doc_;
};

vertex lookup(const reader& r, const arena& a, const std::string& pointer)
{
    const std::string name = r.string(pointer);
    auto v = a.find(name);
    if (!v)
        r.fail(pointer, "unknown vertex id '" + name + "'");
    return *v;
}

vertex_set read_set(const reader& r, const arena& a, const std::string& pointer)
{
    vertex_set s(a.size());
    const std::size_t n = r.array(pointer);
    for (std::size_t i = 0; i < n; ++i)
        s.insert(lookup(r, a, pointer + "/" + std::to_string(i)));
    return s;
}

arena read_arena(const reader& r)
{
    r.object("/arena", {"vertices", "edges", "initial"});
    std::vector<std::string> names;
    std::vector<player> owners;
    std::map<std::string, std::size_t> seen;
    const std::size_t n = r.array("/arena/vertices");
    if (n == 0)
        r.fail("/arena/vertices", "the arena has no vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const std::string p = "/arena/vertices/" + std::to_string(i);
        r.object(p, {"id", "owner"});
        std::string name = r.string(p + "/id");
        if (!seen.emplace(name, i).second)
            r.fail(p + "/id", "duplicate vertex id '" + name + "'");
        if (!r.has(p + "/owner"))
            r.fail(p, "vertex " + name + " has no owner");
        const std::uint64_t owner = r.natural(p + "/owner");
        if (owner > 1)
            r.fail(p + "/owner", "owner must be 0 or 1");
        names.push_back(std::move(name));
        owners.push_back(owner == 0 ? player::zero : player::one);
    }
    auto index_of_name = [&](const std::string& pointer) {
        const std::string name = r.string(pointer);
        auto it = seen.find(name);
        if (it == seen.end())
            r.fail(pointer, "unknown vertex id '" + name + "'");
        return static_cast<vertex>(it->second);
    };
    std::vector<std::pair<vertex, vertex>> edges;
    std::vector<bool> has_successor(n, false);
    const std::size_t m = r.array("/arena/edges");
    for (std::size_t i = 0; i < m; ++i) {
        const std::string p = "/arena/edges/" + std::to_string(i);
        r.object(p, {"from", "to"});
        const vertex u = index_of_name(p + "/from");
        const vertex v = index_of_name(p + "/to");
        edges.emplace_back(u, v);
        has_successor[u] = true;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!has_successor[v])
            r.fail("/arena/vertices/" + std::to_string(v), "vertex " + names[v] + " has no outgoing edge");
    const vertex initial = index_of_name("/arena/initial");
    return arena(std::move(names), std::move(owners), std::move(edges), initial);
}

objective read_objective(const reader& r, const arena& a)
{
    const std::string type = r.string("/objective/type");
    if (type == "safety") {
        r.object("/objective", {"type", "safe"});
        return safety{read_set(r, a, "/objective/safe")};
    }
    if (type == "buchi") {
        r.object("/objective", {"type", "accept"});
        return buchi{read_set(r, a, "/objective/accept")};
    }
    if (type == "cobuchi") {
        r.object("/objective", {"type", "avoid"});
        return cobuchi{read_set(r, a, "/objective/avoid")};
    }
    if (type == "safety_cobuchi") {
        r.object("/objective", {"type", "safe", "avoid"});
        return safety_cobuchi{read_set(r, a, "/objective/safe"), read_set(r, a, "/objective/avoid")};
    }
    if (type == "request_response") {
        r.object("/objective", {"type", "pairs"});
        request_response rr;
        const std::size_t d = r.array("/objective/pairs");
        if (d == 0)
            r.fail("/objective/pairs", "request-response needs at least one pair");
        for (std::size_t c = 0; c < d; ++c) {
            const std::string p = "/objective/pairs/" + std::to_string(c);
            r.object(p, {"requests", "responses"});
            rr.pairs.push_back({read_set(r, a, p + "/requests"), read_set(r, a, p + "/responses")});
        }
        return rr;
    }
    r.fail("/objective/type", "unknown objective type '" + type + "'");
}

ordered_json set_json(const arena& a, const vertex_set& s)
{
    ordered_json out = ordered_json::array();
    for (vertex v : s.elements())
        out.push_back(a.name(v));
    return out;
}

ordered_json objective_json(const arena& a, const objective& obj)
{
    ordered_json out;
    out["type"] = objective_kind(obj);
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, safety>) {
                out["safe"] = set_json(a, o.safe);
            } else if constexpr (std::is_same_v<T, buchi>) {
                out["accept"] = set_json(a, o.accept);
            } else if constexpr (std::is_same_v<T, cobuchi>) {
                out["avoid"] = set_json(a, o.avoid);
            } else if constexpr (std::is_same_v<T, safety_cobuchi>) {
                out["safe"] = set_json(a, o.safe);
                out["avoid"] = set_json(a, o.avoid);
            } else {
                out["pairs"] = ordered_json::array();
                for (const rr_pair& p : o.pairs)
                    out["pairs"].push_back(
                        ordered_json{{"requests", set_json(a, p.requests)}, {"responses", set_json(a, p.responses)}});
            }
        },
        obj);
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error(path.string() + ": cannot open file");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

game_kind game_file::kind() const
{
    if (ranks)
        return game_kind::ranked;
    if (costs)
        return game_kind::cost_rr;
    if (faults)
        return game_kind::faults;
    return game_kind::qualitative;
}

ranked_game game_file::as_ranked() const
{
    if (!ranks)
        throw input_error("the game has no rank section");
    return ranked_game{game, obj, *ranks, mode};
}

cost_rr_game game_file::as_cost_rr() const
{
    if (!costs)
        throw input_error("the game has no costs section");
    return cost_rr_game{game, *costs};
}

fault_arena game_file::as_faults() const
{
    if (!faults)
        throw input_error("the game has no faults section");
    const auto* s = std::get_if<safety>(&obj);
    if (!s)
        throw input_error("faults need a safety objective");
    fault_arena fa{game, *faults, s->safe};
    validate_fault_arena(fa);
    return fa;
}

condition game_file::as_condition() const
{
    if (ranks)
        return ranked_condition{obj, *ranks, mode};
    if (costs)
        return *costs;
    return obj;
}

game_file parse_game(std::string_view text, const std::string& source)
{
    const located_json doc(text, source);
    const reader r(doc);
    r.object("", {"arena", "objective", "rank", "mode", "costs", "faults"});

    game_file g;
    g.game = read_arena(r);
    r.object("/objective", {"type", "safe", "accept", "avoid", "pairs"});
    g.obj = read_objective(r, g.game);

    const int sections = int(r.has("/rank")) + int(r.has("/costs")) + int(r.has("/faults"));
    if (sections > 1)
        r.fail("", "rank, costs and faults are mutually exclusive");
    if (r.has("/mode") && !r.has("/rank"))
        r.fail("/mode", "mode given without a rank section");

    if (r.has("/rank")) {
        if (!r.at("/rank").is_object())
            r.fail("/rank", "'rank' must be an object mapping vertex ids to naturals");
        rank_function rk(g.game.size());
        std::vector<bool> given(g.game.size(), false);
        for (const auto& [name, value] : r.at("/rank").items()) {
            const std::string p = "/rank/" + name;
            auto v = g.game.find(name);
            if (!v)
                r.fail(p, "unknown vertex id '" + name + "'");
            rk[*v] = r.natural(p);
            given[*v] = true;
        }
        for (vertex v = 0; v < g.game.size(); ++v)
            if (!given[v])
                r.fail("/rank", "vertex " + g.game.name(v) + " has no rank");
        g.ranks = std::move(rk);
        if (r.has("/mode")) {
            const std::string mode = r.string("/mode");
            if (mode != "sup" && mode != "lim")
                r.fail("/mode", "mode must be \"sup\" or \"lim\"");
            g.mode = mode == "sup" ? rank_mode::sup : rank_mode::lim;
        }
    }

    if (r.has("/costs")) {
        const auto* rr = std::get_if<request_response>(&g.obj);
        if (!rr)
            r.fail("/costs", "costs need a request_response objective");
        cost_rr_spec spec{rr->pairs, {}};
        spec.costs.assign(spec.dimension(), std::vector<std::uint64_t>(g.game.num_edges(), 0));
        std::set<std::pair<std::uint64_t, edge_id>> seen;
        const std::size_t n = r.array("/costs");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string p = "/costs/" + std::to_string(i);
            r.object(p, {"pair", "from", "to", "cost"});
            const std::uint64_t pair = r.natural(p + "/pair");
            if (pair >= spec.dimension())
                r.fail(p + "/pair", "no pair " + std::to_string(pair));
            const vertex u = lookup(r, g.game, p + "/from");
            const vertex v = lookup(r, g.game, p + "/to");
            const auto e = g.game.edge_index(u, v);
            if (!e)
                r.fail(p, "no edge " + g.game.name(u) + " -> " + g.game.name(v));
            if (!seen.emplace(pair, *e).second)
                r.fail(p, "duplicate cost for pair " + std::to_string(pair) + " on " + g.game.name(u) + " -> " +
                              g.game.name(v));
            spec.costs[pair][*e] = r.natural(p + "/cost");
        }
        g.costs = std::move(spec);
    }

    if (r.has("/faults")) {
        std::vector<std::pair<vertex, vertex>> faults;
        const std::size_t n = r.array("/faults");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string p = "/faults/" + std::to_string(i);
            r.object(p, {"from", "to"});
            faults.emplace_back(lookup(r, g.game, p + "/from"), lookup(r, g.game, p + "/to"));
        }
        g.faults = std::move(faults);
    }
    return g;
}

game_file read_game(const std::filesystem::path& path) { return parse_game(read_file(path), path.string()); }

std::string write_game(const game_file& g)
{
    const arena& a = g.game;
    ordered_json out;
    ordered_json vertices = ordered_json::array(), edges = ordered_json::array();
    for (vertex v = 0; v < a.size(); ++v) {
        vertices.push_back(ordered_json{{"id", a.name(v)}, {"owner", index_of(a.owner(v))}});
        for (vertex w : a.successors(v))
            edges.push_back(ordered_json{{"from", a.name(v)}, {"to", a.name(w)}});
    }
    out["arena"] = ordered_json{{"vertices", vertices}, {"edges", edges}, {"initial", a.name(a.initial())}};
    out["objective"] = objective_json(a, g.obj);
    if (g.ranks) {
        ordered_json rank = ordered_json::object();
        for (vertex v = 0; v < a.size(); ++v)
            rank[a.name(v)] = (*g.ranks)[v];
        out["rank"] = rank;
        out["mode"] = g.mode == rank_mode::sup ? "sup" : "lim";
    }
    if (g.costs) {
        ordered_json costs = ordered_json::array();
        for (std::size_t c = 0; c < g.costs->dimension(); ++c)
            for (edge_id e = 0; e < a.num_edges(); ++e)
                if (const std::uint64_t cost = g.costs->cost(c, e); cost != 0) {
                    const auto [u, v] = a.edge(e);
                    costs.push_back(
                        ordered_json{{"pair", c}, {"from", a.name(u)}, {"to", a.name(v)}, {"cost", cost}});
                }
        out["costs"] = costs;
    }
    if (g.faults) {
        ordered_json faults = ordered_json::array();
        for (const auto& [u, v] : *g.faults)
            faults.push_back(ordered_json{{"from", a.name(u)}, {"to", a.name(v)}});
        out["faults"] = faults;
    }
    return out.dump(2) + "\n";
}

std::string write_strategy(const arena& a, const finite_state_strategy& s)
{
    const memory_structure& mem = s.memory();
    if (mem.edge_count() != a.num_edges())
        throw input_error("strategy memory is not over this arena's edges");

    // Breadth-first over the reachable (vertex, state) pairs; states are
    // numbered in order of discovery.
    std::unordered_map<state, std::size_t> number;
    std::vector<state> states;
    auto intern = [&](state m) {
        auto [it, fresh] = number.try_emplace(m, states.size());
        if (fresh)
            states.push_back(m);
        return it->second;
    };
    std::set<std::pair<vertex, state>> seen;
    std::deque<std::pair<vertex, state>> queue{{a.initial(), mem.initial()}};
    seen.insert(queue.front());
    intern(mem.initial());
    std::set<std::tuple<std::size_t, edge_id, std::size_t>> updates;
    std::set<std::tuple<vertex, std::size_t, vertex>> moves;
    while (!queue.empty()) {
        const auto [v, m] = queue.front();
        queue.pop_front();
        std::vector<vertex> next;
        if (a.owner(v) == s.owner()) {
            auto target = s.next_move(v, m);
            if (!target)
                throw input_error("strategy has no move at reachable vertex " + a.name(v) + " in memory state " +
                                  mem.state_name(m));
            if (!a.has_edge(v, *target))
                throw input_error("strategy moves along a non-edge from " + a.name(v));
            moves.emplace(v, number.at(m), *target);
            next.push_back(*target);
        } else {
            next.assign(a.successors(v).begin(), a.successors(v).end());
        }
        for (vertex w : next) {
            const edge_id e = *a.edge_index(v, w);
            const state m2 = mem.update(m, e);
            const std::size_t from = number.at(m);
            updates.emplace(from, e, intern(m2));
            if (seen.emplace(w, m2).second)
                queue.emplace_back(w, m2);
        }
    }

    std::vector<std::string> names;
    std::set<std::string> used;
    for (state m : states) {
        std::string name = mem.state_name(m);
        for (int k = 2; used.contains(name); ++k)
            name = mem.state_name(m) + "#" + std::to_string(k);
        used.insert(name);
        names.push_back(std::move(name));
    }

    ordered_json out;
    out["owner"] = index_of(s.owner());
    ordered_json update = ordered_json::array();
    for (const auto& [from, e, to] : updates) {
        const auto [u, v] = a.edge(e);
        update.push_back(ordered_json{{"state", names[from]}, {"from", a.name(u)}, {"to", a.name(v)}, {"next", names[to]}});
    }
    out["memory"] = ordered_json{{"states", names}, {"initial", names[0]}, {"update", update}};
    ordered_json move_list = ordered_json::array();
    for (const auto& [v, m, t] : moves)
        move_list.push_back(ordered_json{{"vertex", a.name(v)}, {"state", names[m]}, {"target", a.name(t)}});
    out["moves"] = move_list;
    return out.dump(2) + "\n";
}

finite_state_strategy parse_strategy(std::string_view text, const arena& a, const std::string& source)
{
    const located_json doc(text, source);
    const reader r(doc);
    r.object("", {"owner", "memory", "moves"});
    const std::uint64_t owner = r.natural("/owner");
    if (owner > 1)
        r.fail("/owner", "owner must be 0 or 1");

    r.object("/memory", {"states", "initial", "update"});
    std::vector<std::string> names;
    std::unordered_map<std::string, state> index;
    const std::size_t k = r.array("/memory/states");
    if (k == 0)
        r.fail("/memory/states", "the memory has no states");
    for (std::size_t i = 0; i < k; ++i) {
        const std::string p = "/memory/states/" + std::to_string(i);
        std::string name = r.string(p);
        if (!index.emplace(name, i).second)
            r.fail(p, "duplicate memory state '" + name + "'");
        names.push_back(std::move(name));
    }
    auto state_at = [&](const std::string& p) {
        const std::string name = r.string(p);
        auto it = index.find(name);
        if (it == index.end())
            r.fail(p, "unknown memory state '" + name + "'");
        return it->second;
    };
    const state initial = state_at("/memory/initial");

    std::vector<std::optional<state>> table(k * a.num_edges());
    const std::size_t n = r.array("/memory/update");
    for (std::size_t i = 0; i < n; ++i) {
        const std::string p = "/memory/update/" + std::to_string(i);
        r.object(p, {"state", "from", "to", "next"});
        const state m = state_at(p + "/state");
        const vertex u = lookup(r, a, p + "/from");
        const vertex v = lookup(r, a, p + "/to");
        const auto e = a.edge_index(u, v);
        if (!e)
            r.fail(p, "no edge " + a.name(u) + " -> " + a.name(v));
        auto& slot = table[m * a.num_edges() + *e];
        if (slot)
            r.fail(p, "update for state " + names[m] + " on " + a.name(u) + " -> " + a.name(v) + " given twice");
        slot = state_at(p + "/next");
    }

    finite_state_strategy s(owner == 0 ? player::zero : player::one,
                            memory_structure::from_table(a, names, initial, std::move(table)));
    const std::size_t moves = r.array("/moves");
    for (std::size_t i = 0; i < moves; ++i) {
        const std::string p = "/moves/" + std::to_string(i);
        r.object(p, {"vertex", "state", "target"});
        const vertex v = lookup(r, a, p + "/vertex");
        const state m = state_at(p + "/state");
        const vertex t = lookup(r, a, p + "/target");
        if (a.owner(v) != s.owner())
            r.fail(p, "vertex " + a.name(v) + " is not owned by the strategy's player");
        if (!a.has_edge(v, t))
            r.fail(p, "no edge " + a.name(v) + " -> " + a.name(t));
        if (s.next_move(v, m))
            r.fail(p, "move for " + a.name(v) + " in state " + names[m] + " given twice");
        s.set_move(v, m, t);
    }
    return s;
}

finite_state_strategy read_strategy(const std::filesystem::path& path, const arena& a)
{
    return parse_strategy(read_file(path), a, path.string());
}

std::vector<vertex> parse_vertex_list(const arena& a, std::string_view list)
{
    std::vector<vertex> out;
    if (list.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = list.find(',', start);
        const std::string name(list.substr(start, comma == std::string_view::npos ? list.npos : comma - start));
        auto v = a.find(name);
        if (!v)
            throw input_error("unknown vertex id '" + name + "'");
        out.push_back(*v);
        if (comma == std::string_view::npos)
            return out;
        start = comma + 1;
    }
}

std::string format_vertex_list(const arena& a, const std::vector<vertex>& vs)
{
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i)
        out += (i ? "," : "") + a.name(vs[i]);
    return out;
}

}  // namespace rankgames::io
