#include "mbg/strategies.hpp"

#include <algorithm>

#include "mbg/flow.hpp"

namespace mbg {
namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Fills `move` up to the full legal size with the smallest free vertices
// not picked yet this turn.
void pad_move(std::vector<int>& move, const GameState& state, int quota) {
  const int full = std::min(quota, state.free_count());
  if (static_cast<int>(move.size()) >= full) {
    std::sort(move.begin(), move.end());
    return;
  }
  for (int v = 0; v < state.board().vertex_count(); ++v) {
    if (static_cast<int>(move.size()) == full) break;
    if (state.owner(v) != Owner::Free) continue;
    if (std::find(move.begin(), move.end(), v) != move.end()) continue;
    move.push_back(v);
  }
  std::sort(move.begin(), move.end());
}

// Breaker answer rule shared by "kill", "disjoint-edges" and the transfer
// strategy: for every live target edge holding a Maker vertex, claim one of
// its free vertices. The target board may differ from the game board.
class AnswerTouchedStrategy final : public Strategy {
 public:
  AnswerTouchedStrategy(std::shared_ptr<const Hypergraph> targets,
                        GameConfig config, std::string name)
      : targets_(std::move(targets)), config_(config), name_(std::move(name)) {}

  std::string_view name() const override { return name_; }
  Player side() const override { return Player::Breaker; }

  std::vector<int> choose_move(const GameState& state) override {
    std::vector<int> picks;
    for (const auto& e : targets_->edges()) {
      bool dead = false;
      bool touched = false;
      bool answered = false;
      for (int v : e) {
        if (state.owner(v) == Owner::Breaker) dead = true;
        if (state.owner(v) == Owner::Maker) touched = true;
        if (std::find(picks.begin(), picks.end(), v) != picks.end()) {
          answered = true;
        }
      }
      if (dead || !touched || answered) continue;
      for (int v : e) {
        if (state.owner(v) == Owner::Free &&
            std::find(picks.begin(), picks.end(), v) == picks.end()) {
          picks.push_back(v);
          break;
        }
      }
    }
    pad_move(picks, state, config_.breaker_picks);
    return picks;
  }

 private:
  std::shared_ptr<const Hypergraph> targets_;
  GameConfig config_;
  std::string name_;
};

class MakerStarStrategy final : public Strategy {
 public:
  MakerStarStrategy(std::shared_ptr<const Hypergraph> board, GameConfig config,
                    std::vector<Star> stars)
      : board_(std::move(board)), config_(config) {
    for (const auto& star : stars) {
      centres_.push_back(star.centre);
      for (int ei : star.edge_indices) {
        star_edges_.push_back(board_->edges()[ei]);
      }
    }
    std::sort(centres_.begin(), centres_.end());
    std::sort(star_edges_.begin(), star_edges_.end());
  }

  std::string_view name() const override { return "star"; }
  Player side() const override { return Player::Maker; }

  std::vector<int> choose_move(const GameState& state) override {
    const bool opening =
        std::none_of(centres_.begin(), centres_.end(), [&](int c) {
          return state.owner(c) == Owner::Maker;
        });
    std::vector<int> move;
    if (opening) {
      move = centres_;
    } else {
      // Complete the smallest star edge Breaker has not touched.
      for (const auto& e : star_edges_) {
        bool dead = false;
        std::vector<int> remaining;
        for (int v : e) {
          if (state.owner(v) == Owner::Breaker) {
            dead = true;
            break;
          }
          if (state.owner(v) == Owner::Free) remaining.push_back(v);
        }
        if (dead || remaining.empty()) continue;
        move = std::move(remaining);
        break;
      }
    }
    pad_move(move, state, config_.maker_picks);
    return move;
  }

 private:
  std::shared_ptr<const Hypergraph> board_;
  GameConfig config_;
  std::vector<int> centres_;
  std::vector<Edge> star_edges_;
};

}  // namespace

Applicability breaker_kill_applicable(const Hypergraph& h,
                                      const GameConfig& config) {
  config.validate();
  const int threshold = ceil_div(config.breaker_picks + 1, config.maker_picks);
  const int degree = h.max_degree();
  if (degree >= threshold) {
    return Applicability::no("max degree " + std::to_string(degree) +
                             " is not below ceil((b+1)/m) = " +
                             std::to_string(threshold));
  }
  return Applicability::yes();
}

Applicability maker_star_applicable(const Hypergraph& h,
                                    const GameConfig& config,
                                    std::uint64_t work_cap) {
  config.validate();
  if (config.first != Player::Maker) {
    return Applicability::no("star strategy requires Maker to move first");
  }
  const auto s = h.uniformity();
  if (!s) return Applicability::no("star strategy requires a uniform board");
  if (config.maker_picks != *s - 1) {
    return Applicability::no("star strategy requires m = s-1; got m=" +
                             std::to_string(config.maker_picks) + ", s=" +
                             std::to_string(*s));
  }
  const int d = ceil_div(config.breaker_picks + 1, config.maker_picks);
  if (!find_disjoint_d_stars(h, d, config.maker_picks, work_cap)) {
    return Applicability::no("board has no " + std::to_string(config.maker_picks) +
                             " disjoint " + std::to_string(d) + "-stars");
  }
  return Applicability::yes();
}

Applicability breaker_disjoint_edges_applicable(const Hypergraph& h,
                                                const GameConfig& config) {
  config.validate();
  if (config.breaker_picks < config.maker_picks) {
    return Applicability::no("requires b >= m");
  }
  std::vector<bool> seen(h.vertex_count(), false);
  for (const auto& e : h.edges()) {
    if (static_cast<int>(e.size()) < config.maker_picks + 1) {
      return Applicability::no("an edge of size " + std::to_string(e.size()) +
                               " could be completed within one Maker turn");
    }
    for (int v : e) {
      if (seen[v]) return Applicability::no("edges are not pairwise disjoint");
      seen[v] = true;
    }
  }
  return Applicability::yes();
}

Applicability breaker_tree_unicycle_applicable(const Hypergraph& h,
                                               const GameConfig& config) {
  config.validate();
  const auto s = h.uniformity();
  if (h.edge_count() > 0 && !s) {
    return Applicability::no("requires a uniform board");
  }
  if (s && config.maker_picks > *s - 2) {
    return Applicability::no("requires m <= s-2");
  }
  if (config.breaker_picks < config.maker_picks) {
    return Applicability::no("requires b >= m");
  }
  if (!is_tree_unicycle_collection(h)) {
    return Applicability::no("board has a component of positive excess");
  }
  return Applicability::yes();
}

std::unique_ptr<Strategy> make_breaker_kill(
    std::shared_ptr<const Hypergraph> board, const GameConfig& config) {
  if (const auto check = breaker_kill_applicable(*board, config); !check.ok) {
    throw ApplicabilityError("kill: " + check.reason);
  }
  return std::make_unique<AnswerTouchedStrategy>(std::move(board), config,
                                                 "kill");
}

std::unique_ptr<Strategy> make_maker_star(
    std::shared_ptr<const Hypergraph> board, const GameConfig& config,
    std::uint64_t work_cap) {
  if (const auto check = maker_star_applicable(*board, config, work_cap);
      !check.ok) {
    throw ApplicabilityError("star: " + check.reason);
  }
  const int d = ceil_div(config.breaker_picks + 1, config.maker_picks);
  auto stars =
      find_disjoint_d_stars(*board, d, config.maker_picks, work_cap);
  return std::make_unique<MakerStarStrategy>(std::move(board), config,
                                             std::move(*stars));
}

std::unique_ptr<Strategy> make_breaker_disjoint_edges(
    std::shared_ptr<const Hypergraph> board, const GameConfig& config) {
  if (const auto check = breaker_disjoint_edges_applicable(*board, config);
      !check.ok) {
    throw ApplicabilityError("disjoint-edges: " + check.reason);
  }
  return std::make_unique<AnswerTouchedStrategy>(std::move(board), config,
                                                 "disjoint-edges");
}

std::unique_ptr<Strategy> make_breaker_tree_unicycle(
    std::shared_ptr<const Hypergraph> board, const GameConfig& config) {
  if (const auto check = breaker_tree_unicycle_applicable(*board, config);
      !check.ok) {
    throw ApplicabilityError("tree-unicycle: " + check.reason);
  }
  auto shrunken = extract_shrunken_system(*board);
  if (!shrunken) {
    throw Error(
        "internal error: extraction failed on a certified tree/unicycle "
        "collection");
  }
  // From here on only the extracted system is consulted.
  return std::make_unique<AnswerTouchedStrategy>(
      std::make_shared<const Hypergraph>(std::move(*shrunken)), config,
      "tree-unicycle");
}

std::unique_ptr<Strategy> make_strategy(const std::string& name, Player side,
                                        std::shared_ptr<const Hypergraph> board,
                                        const GameConfig& config,
                                        std::uint64_t work_cap) {
  const auto require_side = [&](Player wanted) {
    if (side != wanted) {
      throw ApplicabilityError("strategy '" + name + "' plays the " +
                               to_string(wanted) + " side");
    }
  };
  if (name == "kill") {
    require_side(Player::Breaker);
    return make_breaker_kill(std::move(board), config);
  }
  if (name == "star") {
    require_side(Player::Maker);
    return make_maker_star(std::move(board), config, work_cap);
  }
  if (name == "disjoint-edges") {
    require_side(Player::Breaker);
    return make_breaker_disjoint_edges(std::move(board), config);
  }
  if (name == "tree-unicycle") {
    require_side(Player::Breaker);
    return make_breaker_tree_unicycle(std::move(board), config);
  }
  throw InputError("unknown strategy '" + name + "'");
}

std::string ArenaSide::label() const {
  switch (kind) {
    case Kind::Optimal: return "optimal";
    case Kind::UniformRandom: return "random";
    case Kind::Named: return strategy_name;
  }
  return "?";
}

ArenaResult arena(std::shared_ptr<const Hypergraph> board,
                  const GameConfig& config, const ArenaSide& maker,
                  const ArenaSide& breaker, const SeedSpec& seed,
                  const SolverLimits& limits, std::uint64_t work_cap) {
  config.validate();
  std::unique_ptr<Strategy> maker_strategy;
  std::unique_ptr<Strategy> breaker_strategy;
  std::unique_ptr<Solver> solver;

  const auto prepare = [&](const ArenaSide& spec, Player side) {
    switch (spec.kind) {
      case ArenaSide::Kind::Optimal:
        if (!solver) solver = std::make_unique<Solver>(config, limits);
        break;
      case ArenaSide::Kind::Named: {
        auto strategy =
            make_strategy(spec.strategy_name, side, board, config, work_cap);
        (side == Player::Maker ? maker_strategy : breaker_strategy) =
            std::move(strategy);
        break;
      }
      case ArenaSide::Kind::UniformRandom:
        break;
    }
  };
  prepare(maker, Player::Maker);
  prepare(breaker, Player::Breaker);

  Xoshiro256StarStar rng(seed);
  const auto random_move = [&](const GameState& state) {
    std::vector<int> free = state.free_vertices();
    const int take =
        std::min(config.quota(state.to_move()), static_cast<int>(free.size()));
    for (int i = 0; i < take; ++i) {
      const auto j =
          i + static_cast<int>(rng.next_below(free.size() - static_cast<std::size_t>(i)));
      std::swap(free[i], free[j]);
    }
    free.resize(take);
    std::sort(free.begin(), free.end());
    return free;
  };

  ArenaResult result;
  GameState state = GameState::initial(board, config);
  while (state.status() == GameStatus::Ongoing) {
    const Player side = state.to_move();
    const ArenaSide& spec = side == Player::Maker ? maker : breaker;
    std::vector<int> move;
    switch (spec.kind) {
      case ArenaSide::Kind::Optimal:
        move = solver->best_move(state);
        break;
      case ArenaSide::Kind::UniformRandom:
        move = random_move(state);
        break;
      case ArenaSide::Kind::Named:
        move = (side == Player::Maker ? maker_strategy : breaker_strategy)
                   ->choose_move(state);
        break;
    }
    if (!is_legal_move(state, move, config)) {
      throw Error("strategy '" + spec.label() + "' returned an illegal move");
    }
    result.transcript.push_back({side, move});
    state = apply(state, move, config);
  }
  result.winner =
      state.status() == GameStatus::MakerWin ? Player::Maker : Player::Breaker;
  result.turns = static_cast<int>(result.transcript.size());
  return result;
}

}  // namespace mbg
