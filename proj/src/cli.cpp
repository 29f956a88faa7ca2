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

#include "rankgames/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "rankgames/errors.hpp"
#include "rankgames/io.hpp"
#include "rankgames/qualsolve.hpp"
#include "rankgames/ranked.hpp"
#include "rankgames/resilience.hpp"
#include "rankgames/rrcost.hpp"
#include "rankgames/verify.hpp"

namespace rankgames {

namespace {

constexpr int exit_zero = 0;
constexpr int exit_one = 1;
constexpr int exit_error = 2;

int exit_for(player winner) { return winner == player::zero ? exit_zero : exit_one; }

std::string winner_line(player p) { return p == player::zero ? "Player 0 wins" : "Player 1 wins"; }

void save_strategy(const std::string& path, const arena& a, const finite_state_strategy& s, std::ostream& out)
{
    if (path.empty())
        return;
    const std::string text = io::write_strategy(a, s);
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text))
        throw input_error(path + ": cannot write file");
    out << "strategy: " << path << " (" << s.size() << " memory states)\n";
}

void print_regions(const arena& a, const solve_result& r, std::ostream& out)
{
    for (player p : {player::zero, player::one})
        out << "region " << index_of(p) << ": " << io::format_vertex_list(a, r.winning(p).elements()) << "\n";
}

struct options {
    std::string game;
    std::string out_path;
    std::string strategy;
    std::optional<std::uint64_t> bound;
    std::string prefix;
    std::string loop;
    bool regions = false;
    bool eventual = false;
};

int cmd_solve(const options& o, std::ostream& out)
{
    const io::game_file g = io::read_game(o.game);
    const arena& a = g.game;
    const io::game_kind kind = g.kind();
    if (kind == io::game_kind::faults)
        throw input_error("fault arenas are solved with the resilience command");
    if (kind == io::game_kind::qualitative && o.bound)
        throw input_error("--bound is only meaningful for ranked or cost games");
    if (kind != io::game_kind::qualitative && !o.bound)
        throw input_error("--bound is required for ranked and cost games");

    if (kind == io::game_kind::cost_rr) {
        const cost_rr_solution s = solve_with_bound(g.as_cost_rr(), *o.bound);
        out << winner_line(s.winner) << " with respect to bound " << *o.bound << "\n";
        save_strategy(o.out_path, a, s.strategy, out);
        return exit_for(s.winner);
    }
    const solve_result r = kind == io::game_kind::ranked ? solve_with_bound(g.as_ranked(), *o.bound)
                                                         : solve_qualitative(a, g.obj);
    const player winner = r.wins(player::zero, a.initial()) ? player::zero : player::one;
    out << winner_line(winner);
    if (o.bound)
        out << " with respect to bound " << *o.bound;
    out << "\n";
    if (o.regions)
        print_regions(a, r, out);
    save_strategy(o.out_path, a, r.strategy(winner), out);
    return exit_for(winner);
}

int cmd_optimize(const options& o, std::ostream& out)
{
    const io::game_file g = io::read_game(o.game);
    std::optional<finite_state_strategy> strategy;
    extnat cost;
    switch (g.kind()) {
    case io::game_kind::ranked: {
        ranked_optimum r = optimize(g.as_ranked());
        cost = r.cost;
        strategy = std::move(r.strategy);
        break;
    }
    case io::game_kind::cost_rr: {
        cost_rr_optimum r = optimize(g.as_cost_rr());
        cost = r.cost;
        if (r.solution)
            strategy = std::move(r.solution->strategy);
        break;
    }
    default:
        throw input_error("optimize needs a ranked or cost game");
    }
    if (!strategy) {
        out << "Player 1 wins\n";
        return exit_one;
    }
    out << cost << "\n";
    const verdict v = verify_strategy(g.game, g.as_condition(), *strategy);
    out << "certified cost: " << (v.certified ? v.cost.to_string() : std::string("none")) << "\n";
    save_strategy(o.out_path, g.game, *strategy, out);
    return exit_zero;
}

int cmd_eval(const options& o, std::ostream& out)
{
    const io::game_file g = io::read_game(o.game);
    lasso l{io::parse_vertex_list(g.game, o.prefix), io::parse_vertex_list(g.game, o.loop)};
    validate_lasso(g.game, l);
    const condition cond = g.as_condition();
    const extnat cost = play_cost(g.game, cond, l);
    if (std::holds_alternative<objective>(cond))
        out << (cost.is_finite() ? "Player 0 wins play" : "Player 1 wins play") << "\n";
    else
        out << cost << "\n";
    return exit_zero;
}

int cmd_verify(const options& o, std::ostream& out)
{
    const io::game_file g = io::read_game(o.game);
    const finite_state_strategy s = io::read_strategy(o.strategy, g.game);
    const condition cond = g.as_condition();
    if (std::holds_alternative<objective>(cond) && o.bound)
        throw input_error("--bound is only meaningful for ranked or cost games");
    const verdict v = verify_strategy(g.game, cond, s, o.bound);
    if (v.certified) {
        out << "certified\n";
        if (!std::holds_alternative<objective>(cond))
            out << (s.owner() == player::zero ? "cost: " : "cost at least: ") << v.cost << "\n";
        return exit_zero;
    }
    out << "refuted\n";
    out << "witness prefix: " << io::format_vertex_list(g.game, v.witness->prefix) << "\n";
    out << "witness loop: " << io::format_vertex_list(g.game, v.witness->loop) << "\n";
    if (!std::holds_alternative<objective>(cond))
        out << "witness cost: " << v.cost << "\n";
    return exit_one;
}

int cmd_resilience(const options& o, std::ostream& out)
{
    const io::game_file g = io::read_game(o.game);
    if (g.kind() != io::game_kind::faults)
        throw input_error("resilience needs a faults section");
    const fault_arena fa = g.as_faults();
    const std::vector<extnat> val = compute_val(fa);
    for (vertex v = 0; v < fa.game.size(); ++v)
        out << "val(" << fa.game.name(v) << ") = " << val[v] << "\n";
    const resilience_result r = max_resilience(fa, o.eventual ? rank_mode::lim : rank_mode::sup);
    out << "bound: " << r.bound << "\n";
    out << (o.eventual ? "eventual resilience: " : "resilience: ") << r.resilience << "\n";
    if (r.strategy)
        save_strategy(o.out_path, fa.game, *r.strategy, out);
    return r.strategy ? exit_zero : exit_one;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Solve, optimize and check games on graphs", "rankgames"};
    app.require_subcommand(1);
    options o;

    auto* solve = app.add_subcommand("solve", "Decide the winner from the initial vertex");
    solve->add_option("game", o.game, "Game file")->required();
    solve->add_option("--bound", o.bound, "Cost bound for ranked and cost games");
    solve->add_flag("--regions", o.regions, "Print both winning regions");
    solve->add_option("--out", o.out_path, "Write the winner's strategy here");

    auto* opt = app.add_subcommand("optimize", "Least cost Player 0 can guarantee");
    opt->add_option("game", o.game, "Game file")->required();
    opt->add_option("--out", o.out_path, "Write the optimal strategy here");

    auto* eval = app.add_subcommand("eval", "Cost of the play prefix.loop^omega");
    eval->add_option("game", o.game, "Game file")->required();
    eval->add_option("--prefix", o.prefix, "Comma-separated vertex ids");
    eval->add_option("--loop", o.loop, "Comma-separated vertex ids")->required();

    auto* verify = app.add_subcommand("verify", "Check a strategy file against the game");
    verify->add_option("game", o.game, "Game file")->required();
    verify->add_option("--strategy", o.strategy, "Strategy file")->required();
    verify->add_option("--bound", o.bound, "Cost bound to check");

    auto* res = app.add_subcommand("resilience", "Fault values and the most resilient strategy");
    res->add_option("game", o.game, "Game file with faults")->required();
    res->add_flag("--eventual", o.eventual, "Count only faults after the play settles");
    res->add_option("--out", o.out_path, "Write the strategy here");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_zero : exit_error;
    }

    try {
        if (*solve)
            return cmd_solve(o, out);
        if (*opt)
            return cmd_optimize(o, out);
        if (*eval)
            return cmd_eval(o, out);
        if (*verify)
            return cmd_verify(o, out);
        return cmd_resilience(o, out);
    } catch (const capability_error& e) {
        err << "unsupported: " << e.what() << "\n";
    } catch (const capacity_error& e) {
        err << "too large: " << e.what() << "\n";
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_error;
}

}  // namespace rankgames
