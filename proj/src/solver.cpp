#include "mbg/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mbg/rng.hpp"

namespace mbg {
namespace {

constexpr int kMaxSolverVertices = 64;

void check_board_size(const Hypergraph& board) {
  if (board.vertex_count() > kMaxSolverVertices) {
    throw GuardError("exact solver supports boards up to 64 vertices");
  }
}

std::uint64_t mix_into(std::uint64_t h, std::uint64_t x) {
  return splitmix64_mix(h ^ (x * 0x9E3779B97F4A7C15ULL));
}

std::vector<int> mask_to_vertices(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    const int v = std::countr_zero(mask);
    out.push_back(v);
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

bool es_beck_criterion(const ResidualGame& game, int maker_picks,
                       int breaker_picks) {
  if (maker_picks < 1 || breaker_picks < 1) {
    throw InputError("pick quotas must be >= 1");
  }
  if (game.maker_already_won) return false;
  const double base = 1.0 + breaker_picks;
  double sum = 0.0;
  for (const auto& e : game.live_edges) {
    sum += std::pow(base, -static_cast<double>(e.size()) / maker_picks);
  }
  return sum < (1.0 / base) * (1.0 - 1e-12);
}

Solver::Solver(GameConfig config, SolverLimits limits)
    : config_(config), limits_(limits) {
  config_.validate();
}

std::size_t Solver::VectorHash::operator()(
    const std::vector<std::uint64_t>& key) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t word : key) h = mix_into(h, word);
  return static_cast<std::size_t>(h);
}

Solver::Position Solver::position_from(const GameState& state,
                                       bool& maker_won) const {
  check_board_size(state.board());
  maker_won = false;
  std::vector<std::uint64_t> masks;
  for (const auto& e : state.board().edges()) {
    std::uint64_t mask = 0;
    bool broken = false;
    bool any_free = false;
    for (int v : e) {
      const Owner o = state.owner(v);
      if (o == Owner::Breaker) {
        broken = true;
        break;
      }
      if (o == Owner::Free) {
        mask |= 1ULL << v;
        any_free = true;
      }
    }
    if (broken) continue;
    if (!any_free) {
      maker_won = true;
      return Position{};
    }
    masks.push_back(mask);
  }
  return reduce(std::move(masks));
}

Solver::Position Solver::reduce(std::vector<std::uint64_t> masks) {
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<std::uint64_t> kept;
  for (std::uint64_t e : masks) {
    bool dominated = false;
    for (std::uint64_t f : kept) {
      if ((e & f) == f) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  return Position{std::move(kept)};
}

std::vector<std::uint64_t> Solver::memo_key(const Position& pos,
                                            Player to_move) const {
  const int edge_count = static_cast<int>(pos.edges.size());
  std::uint64_t support = 0;
  for (std::uint64_t e : pos.edges) support |= e;
  const std::vector<int> verts = mask_to_vertices(support);

  std::vector<std::vector<int>> incident(64);
  for (int j = 0; j < edge_count; ++j) {
    for (int v : mask_to_vertices(pos.edges[j])) incident[v].push_back(j);
  }

  // Iterated colour refinement; any deterministic relabeling is sound, the
  // refinement only improves how often symmetric positions share a key.
  std::vector<std::uint64_t> color(64, 0);
  for (int v : verts) {
    std::vector<std::uint64_t> sizes;
    for (int j : incident[v]) sizes.push_back(std::popcount(pos.edges[j]));
    std::sort(sizes.begin(), sizes.end());
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto sz : sizes) h = mix_into(h, sz);
    color[v] = h;
  }
  std::vector<std::uint64_t> edge_color(edge_count);
  for (int round = 0; round < 2; ++round) {
    for (int j = 0; j < edge_count; ++j) {
      std::vector<std::uint64_t> vc;
      for (int v : mask_to_vertices(pos.edges[j])) vc.push_back(color[v]);
      std::sort(vc.begin(), vc.end());
      std::uint64_t h = mix_into(0x2545F4914F6CDD1DULL,
                                 std::popcount(pos.edges[j]));
      for (auto c : vc) h = mix_into(h, c);
      edge_color[j] = h;
    }
    for (int v : verts) {
      std::vector<std::uint64_t> ec;
      for (int j : incident[v]) ec.push_back(edge_color[j]);
      std::sort(ec.begin(), ec.end());
      std::uint64_t h = color[v];
      for (auto c : ec) h = mix_into(h, c);
      color[v] = h;
    }
  }

  std::vector<int> order = verts;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return color[a] != color[b] ? color[a] < color[b] : a < b;
  });
  std::vector<int> new_label(64, -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_label[order[i]] = static_cast<int>(i);
  }

  std::vector<std::uint64_t> key;
  key.reserve(pos.edges.size() + 1);
  for (std::uint64_t e : pos.edges) {
    std::uint64_t relabeled = 0;
    for (int v : mask_to_vertices(e)) relabeled |= 1ULL << new_label[v];
    key.push_back(relabeled);
  }
  std::sort(key.begin(), key.end());
  key.push_back(to_move == Player::Maker ? 1 : 0);
  return key;
}

bool Solver::beck_breaker_win(const Position& pos) const {
  const double base = 1.0 + config_.breaker_picks;
  double sum = 0.0;
  for (std::uint64_t e : pos.edges) {
    sum += std::pow(base,
                    -static_cast<double>(std::popcount(e)) / config_.maker_picks);
  }
  return sum < (1.0 / base) * (1.0 - 1e-12);
}

std::vector<std::uint64_t> Solver::representative_moves(const Position& pos,
                                                        Player to_move) const {
  std::uint64_t support = 0;
  for (std::uint64_t e : pos.edges) support |= e;
  const std::vector<int> verts = mask_to_vertices(support);

  // Vertices lying in exactly the same live edges are interchangeable;
  // branch one representative subset per incidence-signature class.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> classes;
  for (int v : verts) {
    std::vector<int> sig;
    for (std::size_t j = 0; j < pos.edges.size(); ++j) {
      if (pos.edges[j] & (1ULL << v)) sig.push_back(static_cast<int>(j));
    }
    bool found = false;
    for (auto& [key, members] : classes) {
      if (key == sig) {
        members.push_back(v);
        found = true;
        break;
      }
    }
    if (!found) classes.push_back({std::move(sig), {v}});
  }

  const int quota = config_.quota(to_move);
  const int take = std::min<int>(quota, static_cast<int>(verts.size()));

  std::vector<std::uint64_t> moves;
  auto rec = [&](auto&& self, std::size_t cls, int remaining,
                 std::uint64_t mask) -> void {
    if (remaining == 0) {
      moves.push_back(mask);
      return;
    }
    if (cls == classes.size()) return;
    int capacity = 0;
    for (std::size_t i = cls; i < classes.size(); ++i) {
      capacity += static_cast<int>(classes[i].second.size());
    }
    if (capacity < remaining) return;
    const auto& members = classes[cls].second;
    const int top = std::min<int>(remaining, static_cast<int>(members.size()));
    for (int c = top; c >= 0; --c) {
      std::uint64_t extra = 0;
      for (int i = 0; i < c; ++i) extra |= 1ULL << members[i];
      self(self, cls + 1, remaining - c, mask | extra);
    }
  };
  rec(rec, 0, take, 0);
  return moves;
}

std::optional<Player> Solver::child_value_shortcut(const Position& pos,
                                                   Player mover,
                                                   std::uint64_t move,
                                                   Position& child) const {
  if (mover == Player::Maker) {
    std::vector<std::uint64_t> next;
    next.reserve(pos.edges.size());
    for (std::uint64_t e : pos.edges) {
      const std::uint64_t rest = e & ~move;
      if (rest == 0) return Player::Maker;  // edge completed
      next.push_back(rest);
    }
    child = reduce(std::move(next));
    return std::nullopt;
  }
  std::vector<std::uint64_t> next;
  next.reserve(pos.edges.size());
  for (std::uint64_t e : pos.edges) {
    if ((e & move) == 0) next.push_back(e);
  }
  if (next.empty()) return Player::Breaker;  // every live edge broken
  child.edges = std::move(next);  // Breaker deletes edges, no re-reduction needed
  return std::nullopt;
}

Player Solver::value(const Position& pos, Player to_move) {
  if (pos.edges.empty()) return Player::Breaker;

  const auto key = memo_key(pos, to_move);
  if (const auto it = memo_.find(key); it != memo_.end()) {
    ++memo_hits_;
    return it->second;
  }

  if (++nodes_ > limits_.max_nodes) {
    throw GuardError("solver node guard exceeded: " +
                     std::to_string(limits_.max_nodes) + " nodes");
  }

  Player result = opponent(to_move);
  if (to_move == Player::Maker && beck_breaker_win(pos)) {
    result = Player::Breaker;
  } else {
    const auto moves = representative_moves(pos, to_move);
    for (std::uint64_t move : moves) {
      Position child;
      Player child_value;
      if (const auto quick = child_value_shortcut(pos, to_move, move, child)) {
        child_value = *quick;
      } else {
        child_value = value(child, opponent(to_move));
      }
      if (child_value == to_move) {
        result = to_move;
        break;
      }
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

Player Solver::value_of(const GameState& state) {
  switch (state.status()) {
    case GameStatus::MakerWin: return Player::Maker;
    case GameStatus::BreakerWin: return Player::Breaker;
    case GameStatus::Ongoing: break;
  }
  check_board_size(state.board());
  bool maker_won = false;
  const Position pos = position_from(state, maker_won);
  if (maker_won) return Player::Maker;
  return value(pos, state.to_move());
}

std::vector<int> Solver::best_move(const GameState& state) {
  if (state.status() != GameStatus::Ongoing) {
    throw InputError("best_move requires an ongoing position");
  }
  check_board_size(state.board());
  bool maker_won = false;
  const Position pos = position_from(state, maker_won);
  // Ongoing status guarantees live edges remain.
  const Player mover = state.to_move();

  auto rep_moves = representative_moves(pos, mover);
  std::vector<std::vector<int>> materialized;
  materialized.reserve(rep_moves.size());
  for (std::uint64_t m : rep_moves) materialized.push_back(mask_to_vertices(m));
  std::sort(materialized.begin(), materialized.end());

  std::uint64_t support = 0;
  for (std::uint64_t e : pos.edges) support |= e;

  const std::vector<int>* chosen = &materialized.front();
  for (const auto& move : materialized) {
    std::uint64_t mask = 0;
    for (int v : move) mask |= 1ULL << v;
    Position child;
    Player child_value;
    if (const auto quick = child_value_shortcut(pos, mover, mask, child)) {
      child_value = *quick;
    } else {
      child_value = value(child, opponent(mover));
    }
    if (child_value == mover) {
      chosen = &move;
      break;
    }
  }

  // Pad with the smallest free vertices outside the live-edge support so the
  // move reaches the full legal size.
  std::vector<int> move = *chosen;
  const int quota = config_.quota(mover);
  const int full = std::min(quota, state.free_count());
  if (static_cast<int>(move.size()) < full) {
    for (int v : state.free_vertices()) {
      if (static_cast<int>(move.size()) == full) break;
      if (!(support & (1ULL << v))) move.push_back(v);
    }
    std::sort(move.begin(), move.end());
  }
  return move;
}

SolveResult solve_state(const GameState& state, const GameConfig& config,
                        const SolverLimits& limits) {
  Solver solver(config, limits);
  SolveResult result;
  result.winner = solver.value_of(state);
  if (state.status() == GameStatus::Ongoing) {
    result.principal_move = solver.best_move(state);
  }
  result.nodes_expanded = solver.nodes_expanded();
  result.memo_hits = solver.memo_hits();
  return result;
}

SolveResult solve(const Hypergraph& board, const GameConfig& config,
                  const SolverLimits& limits) {
  auto shared = std::make_shared<const Hypergraph>(board);
  return solve_state(GameState::initial(shared, config), config, limits);
}

std::vector<int> best_move(const GameState& state, const GameConfig& config,
                           const SolverLimits& limits) {
  Solver solver(config, limits);
  return solver.best_move(state);
}

std::optional<int> minimal_disjoint_edges_for_maker(int m, int b, int s,
                                                    int max_edges,
                                                    const SolverLimits& limits) {
  if (m < 1 || b < 1 || s < 1) throw InputError("parameters must be >= 1");
  if (!(b < m && m < s)) {
    throw ApplicabilityError(
        "disjoint-edge threshold is defined for b < m < s; got m=" +
        std::to_string(m) + " b=" + std::to_string(b) + " s=" +
        std::to_string(s));
  }
  for (int count = 1; count <= max_edges; ++count) {
    std::vector<Edge> edges;
    for (int i = 0; i < count; ++i) {
      Edge e(s);
      for (int j = 0; j < s; ++j) e[j] = i * s + j;
      edges.push_back(std::move(e));
    }
    const Hypergraph board = Hypergraph::build(count * s, std::move(edges), s);
    const GameConfig config{m, b, Player::Maker};
    if (solve(board, config, limits).winner == Player::Maker) return count;
  }
  return std::nullopt;
}

}  // namespace mbg
