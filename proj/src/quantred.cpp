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

#include "rankgames/quantred.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "rankgames/errors.hpp"

namespace rankgames {

namespace {

constexpr std::uint64_t max_table = std::uint64_t{1} << 22;

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};

}  // namespace

correction_function correction_function::cap(extnat c)
{
    correction_function f;
    f.tail_cap_ = c;
    return f;
}

correction_function correction_function::table(std::vector<extnat> head, extnat at_infinity,
                                               std::optional<extnat> tail_constant)
{
    correction_function f;
    f.head_ = std::move(head);
    f.at_infinity_ = at_infinity;
    f.tail_constant_ = tail_constant;
    f.pure_cap_ = false;
    return f;
}

extnat correction_function::operator()(extnat x) const
{
    if (x.is_infinite())
        return at_infinity_;
    if (x.value() < head_.size())
        return head_[x.value()];
    if (tail_constant_)
        return *tail_constant_;
    return min(x, tail_cap_);
}

std::optional<extnat> correction_function::cap_value() const
{
    if (pure_cap_)
        return tail_cap_;
    return std::nullopt;
}

correction_function compose(const correction_function& f, const correction_function& g)
{
    if (f.pure_cap_ && g.pure_cap_)
        return correction_function::cap(min(f.tail_cap_, g.tail_cap_));

    std::uint64_t length = f.head_.size();
    std::optional<extnat> constant;
    extnat tail_cap = extnat::infinity();
    if (f.tail_constant_) {
        constant = g(*f.tail_constant_);
    } else if (f.tail_cap_.is_finite()) {
        // Past max(N_f, c) f is constant c.
        length = std::max(length, f.tail_cap_.value());
        constant = g(f.tail_cap_);
    } else {
        // f is the identity past N_f, so g's own tail takes over.
        length = std::max<std::uint64_t>(length, g.head_.size());
        constant = g.tail_constant_;
        tail_cap = g.tail_cap_;
    }
    if (length > max_table)
        throw capacity_error("correction function table would exceed " + std::to_string(max_table) + " entries");

    std::vector<extnat> head(length);
    for (std::uint64_t x = 0; x < length; ++x)
        head[x] = g(f(x));
    correction_function out = correction_function::table(std::move(head), g(f(extnat::infinity())), constant);
    out.tail_cap_ = tail_cap;
    return out;
}

std::string correction_function::describe() const
{
    if (pure_cap_)
        return tail_cap_.is_infinite() ? "id" : "cap(" + tail_cap_.to_string() + ")";
    std::ostringstream os;
    os << "table[";
    for (std::size_t i = 0; i < head_.size(); ++i)
        os << (i ? "," : "") << head_[i];
    os << "; then ";
    if (tail_constant_)
        os << *tail_constant_;
    else
        os << "min(x," << tail_cap_ << ")";
    os << "; inf->" << at_infinity_ << "]";
    return os.str();
}

bool is_correction(const correction_function& f, extnat b, std::uint64_t probe_max)
{
    if (auto c = f.cap_value())
        return b <= *c;
    const extnat fb = f(b);
    for (std::uint64_t x = 0; x <= probe_max; ++x) {
        const extnat fx = f(x);
        if (extnat(x + 1) < b && x + 1 <= probe_max && !(fx < f(x + 1)))
            return false;
        if (extnat(x) < b ? !(fx < fb) : fx < fb)
            return false;
    }
    // inf is never below b, so only the last condition applies to it.
    return !(f(extnat::infinity()) < fb);
}

extnat compose_parameter(const correction_function& f1, extnat b1, extnat b2)
{
    if (f1(b1) <= b2)
        return b1;
    // Here b2 < f1(b1), so b2 is finite. Below b1, f1 is strictly increasing
    // from f1(0) >= 0, hence f1(x) >= x and no x > b2 qualifies.
    std::uint64_t limit = b2.value();
    if (b1.is_finite()) {
        if (b1.value() == 0)
            throw input_error("compose: no parameter b' with f1(b') <= " + b2.to_string());
        limit = std::min(limit, b1.value() - 1);
    }
    for (std::uint64_t x = limit + 1; x-- > 0;)
        if (f1(x) <= b2)
            return x;
    throw input_error("compose: no parameter b' with f1(b') <= " + b2.to_string());
}

condition lift_condition(const arena& a, const expansion& x, const condition& cond)
{
    auto lift_pairs = [&](const std::vector<rr_pair>& pairs) {
        std::vector<rr_pair> out;
        for (const rr_pair& p : pairs)
            out.push_back({x.lift(p.requests), x.lift(p.responses)});
        return out;
    };
    auto lift_objective = [&](const objective& obj) -> objective {
        return std::visit(overloaded{
                              [&](const safety& s) -> objective { return safety{x.lift(s.safe)}; },
                              [&](const buchi& s) -> objective { return buchi{x.lift(s.accept)}; },
                              [&](const cobuchi& s) -> objective { return cobuchi{x.lift(s.avoid)}; },
                              [&](const request_response& s) -> objective {
                                  return request_response{lift_pairs(s.pairs)};
                              },
                              [&](const safety_cobuchi& s) -> objective {
                                  return safety_cobuchi{x.lift(s.safe), x.lift(s.avoid)};
                              },
                          },
                          obj);
    };
    return std::visit(overloaded{
                          [&](const objective& o) -> condition { return lift_objective(o); },
                          [&](const ranked_condition& r) -> condition {
                              rank_function rk(x.product.size());
                              for (vertex p = 0; p < x.product.size(); ++p)
                                  rk[p] = r.rk.at(x.origin_of(p).first);
                              return ranked_condition{lift_objective(r.obj), std::move(rk), r.mode};
                          },
                          [&](const cost_rr_spec& spec) -> condition {
                              cost_rr_spec out{lift_pairs(spec.pairs), {}};
                              out.costs.assign(spec.dimension(), std::vector<std::uint64_t>(x.product.num_edges(), 0));
                              for (edge_id e = 0; e < x.product.num_edges(); ++e) {
                                  const auto [p, q] = x.product.edge(e);
                                  // Self-loops of truncated vertices have no counterpart.
                                  const auto base = a.edge_index(x.origin_of(p).first, x.origin_of(q).first);
                                  if (!base || x.truncated[p])
                                      continue;
                                  for (std::size_t c = 0; c < spec.dimension(); ++c)
                                      out.costs[c][e] = spec.cost(c, *base);
                              }
                              return out;
                          },
                      },
                      cond);
}

quant_reduction identity_reduction(const quant_game& g, correction_function f, extnat parameter)
{
    validate_condition(g.game, g.cond);
    memory_structure mem = memory_structure::trivial(g.game);
    expand_options opts;
    opts.all_roots = true;
    auto x = std::make_shared<const expansion>(expand(g.game, mem, opts));
    quant_game target{x->product, lift_condition(g.game, *x, g.cond)};
    return quant_reduction{g, std::move(target), std::move(mem), std::move(x), std::move(f), parameter};
}

quant_reduction cap_tightening_reduction(const quant_game& g, std::uint64_t c)
{
    if (c > max_table)
        throw capacity_error("cap tightening: table too long");
    std::vector<extnat> head;
    for (std::uint64_t x = 0; x < c; ++x)
        head.emplace_back(x);
    return identity_reduction(g, correction_function::table(std::move(head), extnat::infinity(), extnat(c)), c);
}

quant_reduction compose(const quant_reduction& r1, const quant_reduction& r2)
{
    if (!(r2.source == r1.target))
        throw input_error("compose: the second reduction does not start from the first one's target");
    const extnat parameter = compose_parameter(r1.correction, r1.parameter, r2.parameter);
    memory_structure mem = product_memory(r1.source.game, r1.memory, *r1.expanded, r2.memory);

    // Flatten the two expansions into one over the composed memory.
    const expansion& x1 = *r1.expanded;
    const expansion& x2 = *r2.expanded;
    const std::uint64_t stride = r2.memory.size();
    auto origin = std::make_shared<std::vector<std::pair<vertex, state>>>();
    auto index = std::make_shared<std::unordered_map<std::pair<vertex, state>, vertex, expansion::pair_hash>>();
    std::vector<bool> truncated(x2.product.size());
    origin->reserve(x2.product.size());
    for (vertex t = 0; t < x2.product.size(); ++t) {
        const auto [p, m2] = x2.origin_of(t);
        const auto [v, m1] = x1.origin_of(p);
        origin->emplace_back(v, m1 * stride + m2);
        index->emplace(origin->back(), t);
        truncated[t] = x2.truncated[t] || x1.truncated[p];
    }
    auto flat = std::make_shared<const expansion>(
        expansion{x2.product, std::move(origin), std::move(truncated), std::move(index)});

    return quant_reduction{r1.source,
                           r2.target,
                           std::move(mem),
                           std::move(flat),
                           compose(r1.correction, r2.correction),
                           parameter};
}

reduction_check check_reduction_on_lasso(const quant_reduction& r, const lasso& l)
{
    if (l.loop.empty())
        throw input_error("lasso: loop must be nonempty");
    validate_lasso_from(r.source.game, l, l.at(0));
    const product_lasso extended = extend_lasso(r.source.game, r.memory, l);
    const lasso image = to_product_lasso(*r.expanded, extended);

    reduction_check out;
    out.source_cost = play_cost(r.source.game, r.source.cond, l);
    out.target_cost = play_cost(r.target.game, r.target.cond, image);
    const extnat& b = r.parameter;
    if (out.source_cost < b) {
        const extnat expected = r.correction(out.source_cost);
        if (out.target_cost != expected) {
            out.consistent = false;
            out.detail = "Cost = " + out.source_cost.to_string() + " < b = " + b.to_string() + " but Cost' = " +
                         out.target_cost.to_string() + ", expected f(Cost) = " + expected.to_string();
        }
    } else {
        const extnat floor = r.correction(b);
        if (out.target_cost < floor) {
            out.consistent = false;
            out.detail = "Cost = " + out.source_cost.to_string() + " >= b = " + b.to_string() + " but Cost' = " +
                         out.target_cost.to_string() + " < f(b) = " + floor.to_string();
        }
    }
    return out;
}

finite_state_strategy lift_strategy(const quant_reduction& r, const finite_state_strategy& strat)
{
    return compose_strategy(r.source.game, r.memory, *r.expanded, strat);
}

}  // namespace rankgames
