#include "mbg/game.hpp"

#include <algorithm>
#include <set>

namespace mbg {

Player opponent(Player side) {
  return side == Player::Maker ? Player::Breaker : Player::Maker;
}

std::string to_string(Player side) {
  return side == Player::Maker ? "maker" : "breaker";
}

std::string to_string(GameStatus status) {
  switch (status) {
    case GameStatus::Ongoing: return "ongoing";
    case GameStatus::MakerWin: return "maker";
    case GameStatus::BreakerWin: return "breaker";
  }
  return "?";
}

GameStatus compute_status(const Hypergraph& board,
                          const std::vector<Owner>& owners) {
  bool all_edges_broken = true;
  for (const auto& e : board.edges()) {
    bool has_breaker = false;
    bool all_maker = true;
    for (int v : e) {
      if (owners[v] == Owner::Breaker) has_breaker = true;
      if (owners[v] != Owner::Maker) all_maker = false;
    }
    if (all_maker) return GameStatus::MakerWin;
    if (!has_breaker) all_edges_broken = false;
  }
  if (all_edges_broken) return GameStatus::BreakerWin;
  const bool any_free =
      std::find(owners.begin(), owners.end(), Owner::Free) != owners.end();
  return any_free ? GameStatus::Ongoing : GameStatus::BreakerWin;
}

GameState::GameState(std::shared_ptr<const Hypergraph> board,
                     std::vector<Owner> owners, Player to_move)
    : board_(std::move(board)), owners_(std::move(owners)), to_move_(to_move) {
  if (static_cast<int>(owners_.size()) != board_->vertex_count()) {
    throw InputError("owner vector size does not match the board");
  }
  status_ = compute_status(*board_, owners_);
  free_count_ = static_cast<int>(
      std::count(owners_.begin(), owners_.end(), Owner::Free));
}

GameState GameState::initial(std::shared_ptr<const Hypergraph> board,
                             const GameConfig& config) {
  config.validate();
  const int n = board->vertex_count();
  return GameState(std::move(board), std::vector<Owner>(n, Owner::Free),
                   config.first);
}

GameState GameState::with_owners(std::shared_ptr<const Hypergraph> board,
                                 std::vector<Owner> owners, Player to_move) {
  return GameState(std::move(board), std::move(owners), to_move);
}

std::vector<int> GameState::free_vertices() const {
  std::vector<int> result;
  result.reserve(free_count_);
  for (int v = 0; v < static_cast<int>(owners_.size()); ++v) {
    if (owners_[v] == Owner::Free) result.push_back(v);
  }
  return result;
}

ResidualGame canonical_residual(ResidualGame game) {
  for (auto& e : game.live_edges) std::sort(e.begin(), e.end());
  if (game.maker_already_won) {
    game.live_edges.clear();
    return game;
  }
  std::sort(game.live_edges.begin(), game.live_edges.end());
  game.live_edges.erase(
      std::unique(game.live_edges.begin(), game.live_edges.end()),
      game.live_edges.end());

  // Drop edges that contain another live edge; the smaller target subsumes
  // the larger one for both players.
  std::vector<Edge> kept;
  std::vector<Edge> by_size = game.live_edges;
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](const Edge& a, const Edge& b) { return a.size() < b.size(); });
  for (const auto& e : by_size) {
    bool dominated = false;
    for (const auto& small : kept) {
      if (std::includes(e.begin(), e.end(), small.begin(), small.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  game.live_edges = std::move(kept);
  return game;
}

ResidualGame residual(const GameState& state) {
  ResidualGame result;
  result.free_vertices = state.free_vertices();
  for (const auto& e : state.board().edges()) {
    Edge live;
    bool broken = false;
    for (int v : e) {
      if (state.owner(v) == Owner::Breaker) {
        broken = true;
        break;
      }
      if (state.owner(v) == Owner::Free) live.push_back(v);
    }
    if (broken) continue;
    if (live.empty()) {
      result.maker_already_won = true;
      break;
    }
    result.live_edges.push_back(std::move(live));
  }
  return canonical_residual(std::move(result));
}

bool is_legal_move(const GameState& state, const std::vector<int>& move,
                   const GameConfig& config) {
  config.validate();
  if (state.status() != GameStatus::Ongoing) return false;
  const int quota = config.quota(state.to_move());
  const int want = std::min(quota, state.free_count());
  if (static_cast<int>(move.size()) != want) return false;
  std::set<int> distinct(move.begin(), move.end());
  if (static_cast<int>(distinct.size()) != want) return false;
  for (int v : move) {
    if (v < 0 || v >= state.board().vertex_count()) return false;
    if (state.owner(v) != Owner::Free) return false;
  }
  return true;
}

std::vector<std::vector<int>> legal_moves(const GameState& state,
                                          const GameConfig& config) {
  config.validate();
  if (state.status() != GameStatus::Ongoing) {
    throw InputError("legal_moves called on a terminal state");
  }
  const auto res = residual(state);
  std::vector<int> support;
  for (const auto& e : res.live_edges) {
    support.insert(support.end(), e.begin(), e.end());
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  const int quota = config.quota(state.to_move());
  const int full = std::min(quota, state.free_count());
  const int core = std::min(quota, static_cast<int>(support.size()));

  std::vector<int> padding;
  if (core < full) {
    for (int v : res.free_vertices) {
      if (static_cast<int>(padding.size()) == full - core) break;
      if (!std::binary_search(support.begin(), support.end(), v)) {
        padding.push_back(v);
      }
    }
  }

  std::vector<std::vector<int>> moves;
  std::vector<int> pick(core);
  for (int i = 0; i < core; ++i) pick[i] = i;
  for (;;) {
    std::vector<int> move;
    move.reserve(full);
    for (int i : pick) move.push_back(support[i]);
    move.insert(move.end(), padding.begin(), padding.end());
    std::sort(move.begin(), move.end());
    moves.push_back(std::move(move));

    int i = core - 1;
    while (i >= 0 && pick[i] == static_cast<int>(support.size()) - core + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < core; ++j) pick[j] = pick[j - 1] + 1;
  }
  return moves;
}

GameState apply(const GameState& state, const std::vector<int>& move,
                const GameConfig& config) {
  if (state.status() != GameStatus::Ongoing) {
    throw InputError("apply called on a terminal state");
  }
  if (!is_legal_move(state, move, config)) {
    throw InputError("illegal move");
  }
  std::vector<Owner> owners = state.owners();
  const Owner mark =
      state.to_move() == Player::Maker ? Owner::Maker : Owner::Breaker;
  for (int v : move) owners[v] = mark;
  return GameState::with_owners(state.board_ptr(), std::move(owners),
                                opponent(state.to_move()));
}

}  // namespace mbg
