#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mbg/game.hpp"

namespace mbg {

struct SolverLimits {
  std::uint64_t max_nodes = 10'000'000;
};

struct SolveResult {
  Player winner = Player::Breaker;
  std::optional<std::vector<int>> principal_move;  // present iff non-terminal
  std::uint64_t nodes_expanded = 0;
  std::uint64_t memo_hits = 0;
};

/// Sound Breaker-win test on a residual position with Maker to move:
/// true iff sum over live edges of (1+b)^(-|e|/m) falls below (1+b)^(-1)
/// by a relative margin of 1e-12. True proves a Breaker win; false says
/// nothing. The margin keeps floating-point evaluation on the sound side.
bool es_beck_criterion(const ResidualGame& game, int maker_picks,
                       int breaker_picks);

/// Exact winner search with memoization over canonicalized residual
/// positions, symmetry-reduced move generation, and the criterion above as
/// a pruning oracle at Maker-to-move nodes. One instance owns one memo
/// table, valid for any board under the same pick quotas.
class Solver {
 public:
  Solver(GameConfig config, SolverLimits limits = {});

  /// Exact winner from `state` under optimal play by both sides.
  Player value_of(const GameState& state);

  /// A move achieving the optimal value; lexicographically smallest among
  /// the optimal moves. Throws on terminal states.
  std::vector<int> best_move(const GameState& state);

  std::uint64_t nodes_expanded() const { return nodes_; }
  std::uint64_t memo_hits() const { return memo_hits_; }

 private:
  struct Position {
    std::vector<std::uint64_t> edges;  // reduced live-edge masks
  };

  struct VectorHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const;
  };

  Position position_from(const GameState& state, bool& maker_won) const;
  static Position reduce(std::vector<std::uint64_t> masks);
  std::vector<std::uint64_t> memo_key(const Position& pos, Player to_move) const;
  Player value(const Position& pos, Player to_move);
  bool beck_breaker_win(const Position& pos) const;
  std::vector<std::uint64_t> representative_moves(const Position& pos,
                                                  Player to_move) const;
  std::optional<Player> child_value_shortcut(const Position& pos,
                                             Player mover,
                                             std::uint64_t move,
                                             Position& child) const;

  GameConfig config_;
  SolverLimits limits_;
  std::uint64_t nodes_ = 0;
  std::uint64_t memo_hits_ = 0;
  std::unordered_map<std::vector<std::uint64_t>, Player, VectorHash> memo_;
};

/// Solves the full game on `board` from the empty position.
SolveResult solve(const Hypergraph& board, const GameConfig& config,
                  const SolverLimits& limits = {});

/// Solves from an arbitrary state.
SolveResult solve_state(const GameState& state, const GameConfig& config,
                        const SolverLimits& limits = {});

/// Convenience wrapper around Solver::best_move.
std::vector<int> best_move(const GameState& state, const GameConfig& config,
                           const SolverLimits& limits = {});

/// Smallest M <= max_edges such that Maker wins on M pairwise disjoint
/// s-uniform edges, in the regime b < m < s where such an M exists.
std::optional<int> minimal_disjoint_edges_for_maker(
    int m, int b, int s, int max_edges, const SolverLimits& limits = {});

}  // namespace mbg
