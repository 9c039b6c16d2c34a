// mbg: Maker-Breaker games on random uniform hypergraphs.
//
// Subcommands: gen, analyze, solve, play, arena, experiment, fit.
// Exit codes: 0 success, 1 usage error, 2 malformed input, 3 guard or
// applicability rejection. All randomness flows from explicit --seed flags.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mbg/flow.hpp"
#include "mbg/format.hpp"
#include "mbg/json_io.hpp"
#include "mbg/random_hypergraph.hpp"

namespace {

using namespace mbg;

std::uint64_t work_guard_from_env() {
  if (const char* raw = std::getenv("MB_WORK_GUARD")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || value == 0) {
      throw InputError("MB_WORK_GUARD must be a positive integer");
    }
    return value;
  }
  return kDefaultWorkCap;
}

void emit_json(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  int n = 0, s = 0;
  std::string p;
  std::uint64_t seed = 0, stream = 0;
  std::string out;
};

void run_gen(const GenArgs& args) {
  const double p = parse_probability(args.p);
  const Hypergraph board =
      sample_hypergraph(args.n, args.s, p, SeedSpec{args.seed, args.stream},
                        work_guard_from_env());
  write_hypergraph_file(board, args.out);
}

// ------------------------------------------------------------ analyze ----

struct AnalyzeArgs {
  std::string input;
  std::string out;
  std::string extract_path;
  int stars_d = 0;
};

void run_analyze(const AnalyzeArgs& args) {
  const std::uint64_t work_cap = work_guard_from_env();
  const Hypergraph board = read_hypergraph_file(args.input);
  const auto summary = components(board);

  Json report;
  report["n"] = board.vertex_count();
  if (const auto s = board.uniformity()) {
    report["s"] = *s;
  } else {
    report["s"] = nullptr;
  }
  report["edge_count"] = board.edge_count();
  report["max_degree"] = board.max_degree();
  report["is_tree_unicycle_collection"] =
      board.uniformity() || board.edge_count() == 0
          ? Json(is_tree_unicycle_collection(board))
          : Json(nullptr);
  report["isolated_vertices"] = summary.isolated_vertices;
  report["components"] = Json::array();
  for (const auto& comp : summary.components) {
    Json row;
    row["vertices"] = comp.vertices;
    row["edge_indices"] = comp.edge_indices;
    row["excess"] = comp.excess ? Json(*comp.excess) : Json(nullptr);
    row["class"] = comp.cls ? Json(to_string(*comp.cls)) : Json(nullptr);
    report["components"].push_back(row);
  }

  if (args.stars_d > 0) {
    Json stars;
    stars["d"] = args.stars_d;
    int best = 0;
    std::vector<Star> system;
    for (int k = 1; k <= board.vertex_count(); ++k) {
      auto found = find_disjoint_d_stars(board, args.stars_d, k, work_cap);
      if (!found) break;
      best = k;
      system = std::move(*found);
    }
    stars["max_disjoint"] = best;
    stars["stars"] = Json::array();
    for (const auto& star : system) {
      Json row;
      row["centre"] = star.centre;
      row["edge_indices"] = star.edge_indices;
      stars["stars"].push_back(row);
    }
    report["largest_star_system"] = stars;
  }

  if (!args.extract_path.empty()) {
    const auto shrunken = extract_shrunken_system(board);
    if (shrunken) {
      write_hypergraph_file(*shrunken, args.extract_path);
      report["shrunken_system"] = args.extract_path;
    } else {
      report["shrunken_system"] = nullptr;
    }
  }

  emit_json(report, args.out);
}

// -------------------------------------------------------------- solve ----

struct SolveArgs {
  std::string input;
  int m = 1, b = 1;
  std::string first = "maker";
  std::uint64_t max_nodes = SolverLimits{}.max_nodes;
  std::string out;
};

void run_solve(const SolveArgs& args) {
  const Hypergraph board = read_hypergraph_file(args.input);
  const GameConfig config{args.m, args.b, player_from_string(args.first)};
  const SolveResult result = solve(board, config, {args.max_nodes});

  Json j;
  j["winner"] = to_string(result.winner);
  j["principal_move"] =
      result.principal_move ? Json(*result.principal_move) : Json(nullptr);
  j["nodes_expanded"] = result.nodes_expanded;
  emit_json(j, args.out);
}

// --------------------------------------------------------------- play ----

void render_state(const GameState& state, std::ostream& out) {
  const auto mark = [&](int v) {
    switch (state.owner(v)) {
      case Owner::Maker: return 'M';
      case Owner::Breaker: return 'B';
      case Owner::Free: return '.';
    }
    return '?';
  };
  out << "to move: " << to_string(state.to_move())
      << " | status: " << to_string(state.status()) << "\n";
  const auto& edges = state.board().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    bool dead = false;
    bool complete = true;
    for (int v : edges[i]) {
      if (state.owner(v) == Owner::Breaker) dead = true;
      if (state.owner(v) != Owner::Maker) complete = false;
    }
    out << "  e" << i << " [";
    for (std::size_t k = 0; k < edges[i].size(); ++k) {
      if (k) out << ' ';
      out << edges[i][k] << ':' << mark(edges[i][k]);
    }
    out << "] " << (complete ? "maker" : dead ? "dead" : "live") << "\n";
  }
  out << "  free:";
  for (int v : state.free_vertices()) out << ' ' << v;
  out << "\n";
}

struct PlayArgs {
  std::string input;
  int m = 1, b = 1;
  std::string first = "maker";
  std::string opponent = "optimal";
  std::string human = "maker";
  std::uint64_t seed = 0;
  std::uint64_t max_nodes = SolverLimits{}.max_nodes;
  std::string transcript_path;
};

std::vector<int> prompt_human_move(const GameState& state,
                                   const GameConfig& config) {
  const int want = std::min(config.quota(state.to_move()), state.free_count());
  for (;;) {
    std::cout << "enter " << want << " free vertex id(s): " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) {
      throw InputError("input ended before the game finished");
    }
    std::istringstream words(line);
    std::vector<int> move;
    int v = 0;
    bool bad = false;
    while (words >> v) move.push_back(v);
    if (!words.eof()) bad = true;
    if (bad || !is_legal_move(state, move, config)) {
      std::cout << "illegal move; pick " << want
                << " distinct free vertices\n";
      continue;
    }
    return move;
  }
}

void run_play(const PlayArgs& args) {
  auto board =
      std::make_shared<const Hypergraph>(read_hypergraph_file(args.input));
  const GameConfig config{args.m, args.b, player_from_string(args.first)};
  config.validate();
  const Player human = player_from_string(args.human);
  const Player machine = opponent(human);
  const SolverLimits limits{args.max_nodes};

  std::unique_ptr<Solver> solver;
  std::unique_ptr<Strategy> strategy;
  std::optional<Xoshiro256StarStar> rng;
  if (args.opponent == "optimal") {
    solver = std::make_unique<Solver>(config, limits);
  } else if (args.opponent == "random") {
    rng.emplace(SeedSpec{args.seed, 0});
  } else {
    strategy = make_strategy(args.opponent, machine, board, config,
                             work_guard_from_env());
  }

  GameState state = GameState::initial(board, config);
  std::vector<TurnRecord> transcript;
  std::cout << "board: n=" << board->vertex_count()
            << " edges=" << board->edge_count() << " | m=" << args.m
            << " b=" << args.b << " | you play " << to_string(human) << "\n";
  render_state(state, std::cout);

  while (state.status() == GameStatus::Ongoing) {
    std::vector<int> move;
    if (state.to_move() == human) {
      move = prompt_human_move(state, config);
    } else if (solver) {
      move = solver->best_move(state);
    } else if (strategy) {
      move = strategy->choose_move(state);
    } else {
      std::vector<int> free = state.free_vertices();
      const int take = std::min(config.quota(state.to_move()),
                                static_cast<int>(free.size()));
      for (int i = 0; i < take; ++i) {
        const auto j = i + static_cast<int>(rng->next_below(free.size() - i));
        std::swap(free[i], free[j]);
      }
      free.resize(take);
      std::sort(free.begin(), free.end());
      move = std::move(free);
    }
    if (state.to_move() == machine) {
      std::cout << "opponent plays:";
      for (int v : move) std::cout << ' ' << v;
      std::cout << "\n";
    }
    transcript.push_back({state.to_move(), move});
    state = apply(state, move, config);
    render_state(state, std::cout);
  }

  const Player winner = state.status() == GameStatus::MakerWin
                            ? Player::Maker
                            : Player::Breaker;
  std::cout << "winner: " << to_string(winner) << "\n";
  if (!args.transcript_path.empty()) {
    const std::string maker_label =
        human == Player::Maker ? "human" : args.opponent;
    const std::string breaker_label =
        human == Player::Breaker ? "human" : args.opponent;
    write_text_file(args.transcript_path,
                    transcript_json(*board, config, maker_label, breaker_label,
                                    transcript, winner)
                            .dump(2) +
                        "\n");
  }
}

// -------------------------------------------------------------- arena ----

struct ArenaArgs {
  std::string board_path;
  int gen_n = 0, gen_s = 0;
  std::string gen_p;
  int games = 1;
  std::uint64_t seed = 0;
  std::string maker = "random";
  std::string breaker = "random";
  int m = 1, b = 1;
  std::string first = "maker";
  bool skip_inapplicable = false;
  std::uint64_t max_nodes = SolverLimits{}.max_nodes;
  std::string out;
};

ArenaSide side_from_name(const std::string& name) {
  if (name == "optimal") return ArenaSide::optimal();
  if (name == "random") return ArenaSide::random();
  return ArenaSide::named(name);
}

void run_arena(const ArenaArgs& args) {
  const bool generated = args.board_path.empty();
  if (generated && (args.gen_n <= 0 || args.gen_s <= 0 || args.gen_p.empty())) {
    throw InputError("arena needs --board or all of --gen-n --gen-s --gen-p");
  }
  const GameConfig config{args.m, args.b, player_from_string(args.first)};
  const SolverLimits limits{args.max_nodes};
  const ArenaSide maker = side_from_name(args.maker);
  const ArenaSide breaker = side_from_name(args.breaker);

  std::shared_ptr<const Hypergraph> fixed_board;
  double gen_p = 0.0;
  if (generated) {
    gen_p = parse_probability(args.gen_p);
  } else {
    fixed_board =
        std::make_shared<const Hypergraph>(read_hypergraph_file(args.board_path));
  }

  std::ostringstream csv;
  csv << "board_seed,maker,breaker,winner,turns\n";
  for (int game = 0; game < args.games; ++game) {
    // Generated mode: board on stream 2g, playout on stream 2g+1.
    const std::uint64_t board_stream = generated ? 2ULL * game : game;
    const std::uint64_t play_stream = generated ? 2ULL * game + 1 : game;
    std::shared_ptr<const Hypergraph> board = fixed_board;
    if (generated) {
      board = std::make_shared<const Hypergraph>(sample_hypergraph(
          args.gen_n, args.gen_s, gen_p, SeedSpec{args.seed, board_stream},
          work_guard_from_env()));
    }
    try {
      const ArenaResult result =
          arena(board, config, maker, breaker, SeedSpec{args.seed, play_stream},
                limits, work_guard_from_env());
      csv << board_stream << ',' << maker.label() << ',' << breaker.label()
          << ',' << to_string(result.winner) << ',' << result.turns << "\n";
    } catch (const ApplicabilityError&) {
      if (!args.skip_inapplicable) throw;
    }
  }
  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(args.out, csv.str());
  }
}

// --------------------------------------------------------- experiment ----

struct ExperimentArgs {
  std::string config_path;
  std::string out;
  std::string points_path;
  int workers = 0;
  int exact_cap = LabLimits{}.exact_solver_vertex_cap;
  std::uint64_t max_nodes = SolverLimits{}.max_nodes;
};

void run_experiment(const ExperimentArgs& args) {
  LabLimits limits;
  limits.work_cap = work_guard_from_env();
  limits.workers = args.workers;
  limits.exact_solver_vertex_cap = args.exact_cap;
  limits.solver.max_nodes = args.max_nodes;

  const ExperimentConfig config = experiment_config_from_json(
      parse_json_text(read_text_file(args.config_path)), limits);

  std::ostringstream csv;
  csv << experiment_csv_header() << "\n";
  std::vector<FitPoint> points;
  std::uint64_t stream_cursor = 0;

  for (int n : config.n_list) {
    if (config.bracket) {
      const auto result = find_p_half(
          n, config.s, config.predicate, config.samples,
          SeedSpec{config.base_seed, stream_cursor}, *config.bracket, limits);
      for (const auto& probe : result.probes) {
        csv << experiment_csv_row(probe) << "\n";
        stream_cursor = probe.stream_hi;
      }
      points.push_back({static_cast<double>(n), result.p_half,
                        result.half_width});
    } else {
      for (double p : config.p_list) {
        const auto record =
            estimate(n, config.s, p, config.predicate, config.samples,
                     SeedSpec{config.base_seed, stream_cursor}, limits);
        csv << experiment_csv_row(record) << "\n";
        stream_cursor = record.stream_hi;
      }
    }
  }

  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(args.out, csv.str());
  }
  if (!args.points_path.empty()) {
    if (!config.bracket) {
      throw InputError("--points requires a bracket-mode config");
    }
    Json j;
    j["points"] = fit_points_json(points);
    write_text_file(args.points_path, j.dump(2) + "\n");
  }
}

// ---------------------------------------------------------------- fit ----

struct FitArgs {
  std::string points_path;
  std::string out;
  std::string svg;
};

void run_fit(const FitArgs& args) {
  const auto points =
      fit_points_from_json(parse_json_text(read_text_file(args.points_path)));
  const ThresholdFit fit = fit_exponent(points);
  emit_json(fit_report_json(fit), args.out);
  if (!args.svg.empty()) write_loglog_svg(fit, args.svg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker games on random uniform hypergraphs"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "sample a random uniform board");
  gen_cmd->add_option("--n", gen.n, "vertex count")->required();
  gen_cmd->add_option("--s", gen.s, "edge size")->required();
  gen_cmd->add_option("--p", gen.p, "edge probability (decimal string)")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "base seed")->required();
  gen_cmd->add_option("--stream", gen.stream, "stream index (default 0)");
  gen_cmd->add_option("--out", gen.out, "output hypergraph JSON")->required();
  gen_cmd->callback([&] { run_gen(gen); });

  AnalyzeArgs analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "structural report for a board");
  analyze_cmd->add_option("input", analyze.input, "hypergraph JSON")
      ->required();
  analyze_cmd->add_option("--out", analyze.out, "report path (default stdout)");
  analyze_cmd->add_option("--stars", analyze.stars_d,
                          "probe the largest disjoint d-star system");
  analyze_cmd->add_option("--extract", analyze.extract_path,
                          "write the shrunken disjoint system here");
  analyze_cmd->callback([&] { run_analyze(analyze); });

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "exact winner of the game");
  solve_cmd->add_option("input", solve_args.input, "hypergraph JSON")
      ->required();
  solve_cmd->add_option("--m", solve_args.m, "Maker picks per turn")
      ->required();
  solve_cmd->add_option("--b", solve_args.b, "Breaker picks per turn")
      ->required();
  solve_cmd->add_option("--first", solve_args.first, "who moves first");
  solve_cmd->add_option("--max-nodes", solve_args.max_nodes,
                        "search node guard");
  solve_cmd->add_option("--out", solve_args.out, "result path (default stdout)");
  solve_cmd->callback([&] { run_solve(solve_args); });

  PlayArgs play;
  auto* play_cmd = app.add_subcommand("play", "interactive game");
  play_cmd->add_option("input", play.input, "hypergraph JSON")->required();
  play_cmd->add_option("--m", play.m, "Maker picks per turn")->required();
  play_cmd->add_option("--b", play.b, "Breaker picks per turn")->required();
  play_cmd->add_option("--first", play.first, "who moves first");
  play_cmd
      ->add_option("--opponent", play.opponent,
                   "optimal|kill|star|disjoint-edges|tree-unicycle|random")
      ->required();
  play_cmd->add_option("--human", play.human, "side you play (default maker)");
  play_cmd->add_option("--seed", play.seed, "seed for a random opponent");
  play_cmd->add_option("--max-nodes", play.max_nodes, "search node guard");
  play_cmd->add_option("--transcript", play.transcript_path,
                       "write the game transcript JSON here");
  play_cmd->callback([&] { run_play(play); });

  ArenaArgs arena_args;
  auto* arena_cmd = app.add_subcommand("arena", "batch strategy playouts");
  arena_cmd->add_option("--board", arena_args.board_path,
                        "fixed board (otherwise --gen-*)");
  arena_cmd->add_option("--gen-n", arena_args.gen_n, "generated board n");
  arena_cmd->add_option("--gen-s", arena_args.gen_s, "generated board s");
  arena_cmd->add_option("--gen-p", arena_args.gen_p, "generated board p");
  arena_cmd->add_option("--games", arena_args.games, "number of games")
      ->required();
  arena_cmd->add_option("--seed", arena_args.seed, "base seed")->required();
  arena_cmd->add_option("--maker", arena_args.maker, "optimal|random|star");
  arena_cmd->add_option("--breaker", arena_args.breaker,
                        "optimal|random|kill|disjoint-edges|tree-unicycle");
  arena_cmd->add_option("--m", arena_args.m, "Maker picks per turn");
  arena_cmd->add_option("--b", arena_args.b, "Breaker picks per turn");
  arena_cmd->add_option("--first", arena_args.first, "who moves first");
  arena_cmd->add_flag("--skip-inapplicable", arena_args.skip_inapplicable,
                      "drop games whose strategy hypotheses fail");
  arena_cmd->add_option("--max-nodes", arena_args.max_nodes,
                        "search node guard");
  arena_cmd->add_option("--out", arena_args.out, "CSV path (default stdout)");
  arena_cmd->callback([&] { run_arena(arena_args); });

  ExperimentArgs experiment;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Monte Carlo probability estimation");
  experiment_cmd->add_option("config", experiment.config_path,
                             "experiment config JSON")
      ->required();
  experiment_cmd->add_option("--out", experiment.out,
                             "results CSV (default stdout)");
  experiment_cmd->add_option("--points", experiment.points_path,
                             "write p-half points JSON here (bracket mode)");
  experiment_cmd->add_option("--workers", experiment.workers,
                             "sampling threads (0 = hardware)");
  experiment_cmd->add_option("--exact-cap", experiment.exact_cap,
                             "vertex cap for maker_win_exact");
  experiment_cmd->add_option("--max-nodes", experiment.max_nodes,
                             "solver node guard");
  experiment_cmd->callback([&] { run_experiment(experiment); });

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "log-log threshold exponent fit");
  fit_cmd->add_option("points", fit.points_path, "points JSON")->required();
  fit_cmd->add_option("--out", fit.out, "report path (default stdout)");
  fit_cmd->add_option("--svg", fit.svg, "also write a log-log plot SVG");
  fit_cmd->callback([&] { run_fit(fit); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << R"({"error":"input","reason":")" << e.what() << "\"}\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << R"({"error":"guard","reason":")" << e.what() << "\"}\n";
    return 3;
  } catch (const ApplicabilityError& e) {
    std::cerr << R"({"error":"applicability","reason":")" << e.what()
              << "\"}\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << R"({"error":"internal","reason":")" << e.what() << "\"}\n";
    return 1;
  }
  return 0;
}
