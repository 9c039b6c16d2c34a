#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mbg/game.hpp"
#include "mbg/rng.hpp"
#include "mbg/solver.hpp"

namespace mbg {

/// A decision procedure for one side of one game. Instances may precompute
/// private data at construction and are not shared between games.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string_view name() const = 0;
  virtual Player side() const = 0;
  virtual std::vector<int> choose_move(const GameState& state) = 0;
};

struct Applicability {
  bool ok = false;
  std::string reason;

  static Applicability yes() { return {true, ""}; }
  static Applicability no(std::string why) { return {false, std::move(why)}; }
};

/// Breaker wins outright when every vertex degree stays below
/// ceil((b+1)/m): each Maker turn touches at most b live edges and Breaker
/// answers inside every one of them.
Applicability breaker_kill_applicable(const Hypergraph& h,
                                      const GameConfig& config);

/// Maker takes the centres of m disjoint d-stars (d = ceil((b+1)/m)) on the
/// first turn and completes a surviving star edge on the second; requires
/// m = s-1 and Maker moving first.
Applicability maker_star_applicable(const Hypergraph& h,
                                    const GameConfig& config,
                                    std::uint64_t work_cap = kDefaultWorkCap);

/// On pairwise disjoint edges all larger than m, with b >= m, Breaker
/// answers inside every Maker-touched edge before Maker can complete it.
Applicability breaker_disjoint_edges_applicable(const Hypergraph& h,
                                                const GameConfig& config);

/// On a disjoint collection of trees and unicycles with m <= s-2 and
/// m <= b, Breaker plays the disjoint-edges strategy on the extracted
/// system of disjoint (s-1)-subsets; the win transfers verbatim because the
/// vertex sets coincide and every original edge contains an extracted one.
Applicability breaker_tree_unicycle_applicable(const Hypergraph& h,
                                               const GameConfig& config);

std::unique_ptr<Strategy> make_breaker_kill(
    std::shared_ptr<const Hypergraph> board, const GameConfig& config);
std::unique_ptr<Strategy> make_maker_star(
    std::shared_ptr<const Hypergraph> board, const GameConfig& config,
    std::uint64_t work_cap = kDefaultWorkCap);
std::unique_ptr<Strategy> make_breaker_disjoint_edges(
    std::shared_ptr<const Hypergraph> board, const GameConfig& config);
std::unique_ptr<Strategy> make_breaker_tree_unicycle(
    std::shared_ptr<const Hypergraph> board, const GameConfig& config);

/// Looks up a strategy by CLI name: "kill", "star", "disjoint-edges" or
/// "tree-unicycle". Throws ApplicabilityError when the named strategy plays
/// the other side or its hypotheses fail on this board.
std::unique_ptr<Strategy> make_strategy(const std::string& name, Player side,
                                        std::shared_ptr<const Hypergraph> board,
                                        const GameConfig& config,
                                        std::uint64_t work_cap = kDefaultWorkCap);

/// One side of an arena playout.
struct ArenaSide {
  enum class Kind { Optimal, UniformRandom, Named };

  Kind kind = Kind::UniformRandom;
  std::string strategy_name;

  static ArenaSide optimal() { return {Kind::Optimal, ""}; }
  static ArenaSide random() { return {Kind::UniformRandom, ""}; }
  static ArenaSide named(std::string name) {
    return {Kind::Named, std::move(name)};
  }
  std::string label() const;
};

struct TurnRecord {
  Player mover = Player::Maker;
  std::vector<int> picks;
};

struct ArenaResult {
  Player winner = Player::Breaker;
  std::vector<TurnRecord> transcript;
  int turns = 0;
};

/// Plays one full game. Deterministic given the seed; randomness is drawn
/// only by UniformRandom sides. Every move is validated against the legal
/// move contract and an illegal strategy move raises an Error rather than
/// being repaired.
ArenaResult arena(std::shared_ptr<const Hypergraph> board,
                  const GameConfig& config, const ArenaSide& maker,
                  const ArenaSide& breaker, const SeedSpec& seed,
                  const SolverLimits& limits = {},
                  std::uint64_t work_cap = kDefaultWorkCap);

}  // namespace mbg
