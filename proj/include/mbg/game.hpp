#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mbg/hypergraph.hpp"

namespace mbg {

enum class Player { Maker, Breaker };

Player opponent(Player side);
std::string to_string(Player side);

enum class Owner : std::uint8_t { Free, Maker, Breaker };

enum class GameStatus { Ongoing, MakerWin, BreakerWin };

std::string to_string(GameStatus status);

/// Per-turn pick quotas. Maker claims `maker_picks` vertices per turn,
/// Breaker claims `breaker_picks`.
struct GameConfig {
  int maker_picks = 1;
  int breaker_picks = 1;
  Player first = Player::Maker;

  int quota(Player side) const {
    return side == Player::Maker ? maker_picks : breaker_picks;
  }
  void validate() const {
    if (maker_picks < 1 || breaker_picks < 1) {
      throw InputError("pick quotas must be >= 1");
    }
  }
};

/// Immutable snapshot of a game: the board, per-vertex ownership and whose
/// turn it is. Status is a function of ownership alone and is cached.
class GameState {
 public:
  static GameState initial(std::shared_ptr<const Hypergraph> board,
                           const GameConfig& config);

  /// A state with some vertices pre-owned; used by tests and analysis.
  static GameState with_owners(std::shared_ptr<const Hypergraph> board,
                               std::vector<Owner> owners, Player to_move);

  const Hypergraph& board() const { return *board_; }
  const std::shared_ptr<const Hypergraph>& board_ptr() const { return board_; }
  Owner owner(int v) const { return owners_[v]; }
  const std::vector<Owner>& owners() const { return owners_; }
  Player to_move() const { return to_move_; }
  GameStatus status() const { return status_; }
  int free_count() const { return free_count_; }
  std::vector<int> free_vertices() const;

 private:
  GameState(std::shared_ptr<const Hypergraph> board, std::vector<Owner> owners,
            Player to_move);

  std::shared_ptr<const Hypergraph> board_;
  std::vector<Owner> owners_;
  Player to_move_;
  GameStatus status_;
  int free_count_;
};

/// MakerWin iff some edge is fully Maker-owned; BreakerWin iff every edge
/// holds a Breaker vertex or no free vertices remain without a Maker win;
/// Ongoing otherwise. An edgeless board is an immediate BreakerWin.
GameStatus compute_status(const Hypergraph& board,
                          const std::vector<Owner>& owners);

/// The reduced game: live edges (edges free of Breaker vertices, with
/// Maker's vertices removed) over the free vertices, deduplicated and with
/// dominated supersets dropped. If some edge is already fully Maker-owned
/// the reduction short-circuits with maker_already_won set and no live
/// edges.
struct ResidualGame {
  std::vector<Edge> live_edges;
  std::vector<int> free_vertices;
  bool maker_already_won = false;
};

ResidualGame residual(const GameState& state);

/// Re-normalizes a residual (sorting, dedup, dominated-superset removal).
/// residual() output is a fixed point of this map.
ResidualGame canonical_residual(ResidualGame game);

/// Membership test: `move` is a set of exactly min(quota, #free) free
/// vertices for the side to move.
bool is_legal_move(const GameState& state, const std::vector<int>& move,
                   const GameConfig& config);

/// All moves the side to move needs to consider: subsets of the live-edge
/// support of size min(quota, |support|), each padded up to the full legal
/// move size with the smallest free vertices outside the support (picks
/// outside every live edge are interchangeable). Requires an Ongoing state.
std::vector<std::vector<int>> legal_moves(const GameState& state,
                                          const GameConfig& config);

/// Assigns the move's vertices to the side to move and flips the turn.
/// Throws InputError on an illegal move or a terminal state.
GameState apply(const GameState& state, const std::vector<int>& move,
                const GameConfig& config);

}  // namespace mbg
