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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rankgames/extnat.hpp"
#include "rankgames/memory.hpp"
#include "rankgames/verify.hpp"

namespace rankgames {

/// Monotone map on N u {inf} kept in an inspectable form: explicit values on
/// 0..N-1, then x -> min(x, tail_cap) or a constant, plus the value at inf.
class correction_function {
  public:
    /// x -> x.
    correction_function() = default;

    /// x -> min(c, x), inf -> inf.
    static correction_function cap(extnat c);
    /// Values for 0..head.size()-1; identity afterwards unless tail_constant is given.
    static correction_function table(std::vector<extnat> head, extnat at_infinity,
                                     std::optional<extnat> tail_constant = std::nullopt);

    extnat operator()(extnat x) const;

    /// The c of a pure cap function (identity is cap(inf)).
    std::optional<extnat> cap_value() const;

    /// g after f, that is x -> g(f(x)).
    friend correction_function compose(const correction_function& f, const correction_function& g);

    std::string describe() const;

  private:
    std::vector<extnat> head_;
    extnat tail_cap_ = extnat::infinity();
    std::optional<extnat> tail_constant_;
    extnat at_infinity_ = extnat::infinity();
    bool pure_cap_ = true;
};

/// Checks the three correction-function conditions for parameter b on
/// {0..probe_max, inf}; cap functions are decided exactly.
bool is_correction(const correction_function& f, extnat b, std::uint64_t probe_max);

/// Parameter of a composed reduction: b1 if f1(b1) <= b2, otherwise the
/// largest b' with f1(b') <= b2. Throws input_error if there is none.
extnat compose_parameter(const correction_function& f1, extnat b1, extnat b2);

/// An arena with a condition judging its plays.
struct quant_game {
    arena game;
    condition cond;
    friend bool operator==(const quant_game&, const quant_game&) = default;
};

/// Copies a condition onto an expansion: sets and ranks through the origin
/// map, edge costs from the underlying edges.
condition lift_condition(const arena& a, const expansion& x, const condition& cond);

/// Source game reduced to a target game on expand(source, memory) with a
/// correction function and parameter.
struct quant_reduction {
    quant_game source;
    quant_game target;
    memory_structure memory;
    /// target.game is expanded->product.
    std::shared_ptr<const expansion> expanded;
    correction_function correction;
    extnat parameter;
};

/// Same game over the one-state memory, with the given correction and parameter.
quant_reduction identity_reduction(const quant_game& g, correction_function f = {},
                                   extnat parameter = extnat::infinity());

/// identity_reduction with the cap at c written out as a table and parameter c.
quant_reduction cap_tightening_reduction(const quant_game& g, std::uint64_t c);

/// r1 then r2; r2.source must equal r1.target.
quant_reduction compose(const quant_reduction& r1, const quant_reduction& r2);

struct reduction_check {
    bool consistent = true;
    extnat source_cost;
    extnat target_cost;
    std::string detail;
};

/// Evaluates one play in the source and its extension in the target and
/// checks Cost < b => Cost' = f(Cost) and Cost >= b => Cost' >= f(b).
reduction_check check_reduction_on_lasso(const quant_reduction& r, const lasso& l);

/// Source strategy implemented by memory x strat.memory().
finite_state_strategy lift_strategy(const quant_reduction& r, const finite_state_strategy& strat);

}  // namespace rankgames
