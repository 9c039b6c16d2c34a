#include <memory>

#include "doctest.h"
#include "mbg/strategies.hpp"
#include "oracles.hpp"

using namespace mbg;

namespace {

std::shared_ptr<const Hypergraph> board(int n, std::vector<Edge> edges,
                                        std::optional<int> s = std::nullopt) {
  return std::make_shared<const Hypergraph>(Hypergraph::build(n, edges, s));
}

}  // namespace

TEST_SUITE_BEGIN("strategies");

TEST_CASE("kill applicability") {
  const GameConfig one{1, 1, Player::Maker};
  CHECK(breaker_kill_applicable(
            Hypergraph::build(6, {{0, 1, 2}, {3, 4, 5}}), one)
            .ok);
  // ceil((3+1)/2) = 2, so max degree must be < 2; degree 2 is rejected.
  const GameConfig m2b3{2, 3, Player::Maker};
  CHECK(!breaker_kill_applicable(
             Hypergraph::build(5, {{0, 1, 2}, {0, 3, 4}}), m2b3)
             .ok);
  CHECK_THROWS_AS(
      make_breaker_kill(board(5, {{0, 1, 2}, {0, 3, 4}}), m2b3),
      ApplicabilityError);
}

TEST_CASE("kill always beats a random Maker on matchings") {
  Xoshiro256StarStar rng(21);
  for (int game = 0; game < 30; ++game) {
    const int pairs = 1 + static_cast<int>(rng.next_below(3));
    std::vector<Edge> edges;
    for (int i = 0; i < pairs; ++i) edges.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    auto b = board(3 * pairs, edges);
    const auto result =
        arena(b, {1, 1, Player::Maker}, ArenaSide::random(),
              ArenaSide::named("kill"), {rng.next(), 0});
    CHECK(result.winner == Player::Breaker);
  }
}

TEST_CASE("kill also works when Breaker moves first") {
  auto b = board(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  const GameConfig config{1, 1, Player::Breaker};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto result = arena(b, config, ArenaSide::optimal(),
                              ArenaSide::named("kill"), {seed, 0});
    CHECK(result.winner == Player::Breaker);
    CHECK(result.transcript[0].mover == Player::Breaker);
  }
}

TEST_CASE("kill beats the optimal Maker within its hypotheses") {
  Xoshiro256StarStar rng(22);
  int played = 0;
  for (int trial = 0; trial < 200 && played < 15; ++trial) {
    const auto h = oracles::random_board(rng, 10, 3, 1.2);
    const GameConfig config{1, 1, Player::Maker};
    if (!breaker_kill_applicable(h, config).ok) continue;
    ++played;
    auto b = std::make_shared<const Hypergraph>(h);
    const auto result = arena(b, config, ArenaSide::optimal(),
                              ArenaSide::named("kill"), {rng.next(), 0});
    CHECK(result.winner == Player::Breaker);
  }
  CHECK(played >= 10);
}

TEST_CASE("maker star applicability") {
  const GameConfig config{1, 1, Player::Maker};
  auto star = board(3, {{0, 1}, {0, 2}}, 2);
  CHECK(maker_star_applicable(*star, config).ok);
  CHECK(!maker_star_applicable(Hypergraph::build(3, {{0, 1}}, 2), config).ok);
  // Breaker-start configurations are refused.
  CHECK(!maker_star_applicable(*star, {1, 1, Player::Breaker}).ok);
  // m must equal s-1.
  CHECK(!maker_star_applicable(*star, {2, 1, Player::Maker}).ok);
}

TEST_CASE("maker star beats the optimal Breaker") {
  // 2-star, s=2, m=b=1: take the centre, then the surviving leaf.
  auto star = board(3, {{0, 1}, {0, 2}}, 2);
  const auto result = arena(star, {1, 1, Player::Maker},
                            ArenaSide::named("star"), ArenaSide::optimal(),
                            {3, 0});
  CHECK(result.winner == Player::Maker);
  CHECK(result.transcript[0].picks == std::vector<int>{0});

  // Two disjoint 2-stars of 3-edges, m=2, b=3.
  auto twin = board(10, {{0, 1, 2}, {0, 3, 4}, {5, 6, 7}, {5, 8, 9}}, 3);
  const auto big = arena(twin, {2, 3, Player::Maker}, ArenaSide::named("star"),
                         ArenaSide::optimal(), {4, 0});
  CHECK(big.winner == Player::Maker);
}

TEST_CASE("disjoint edges strategy") {
  const GameConfig config{1, 1, Player::Maker};
  auto pairs = board(6, {{0, 1}, {2, 3}, {4, 5}}, 2);
  CHECK(breaker_disjoint_edges_applicable(*pairs, config).ok);
  // Edge size m is completable in one turn: rejected.
  CHECK(!breaker_disjoint_edges_applicable(*pairs, {2, 2, Player::Maker}).ok);
  CHECK(!breaker_disjoint_edges_applicable(
             Hypergraph::build(5, {{0, 1}, {1, 2}}, 2), config)
             .ok);
  // b < m: rejected.
  CHECK(!breaker_disjoint_edges_applicable(
             Hypergraph::build(6, {{0, 1, 2}, {3, 4, 5}}), {2, 1, Player::Maker})
             .ok);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto result = arena(pairs, config, ArenaSide::optimal(),
                              ArenaSide::named("disjoint-edges"), {seed, 0});
    CHECK(result.winner == Player::Breaker);
  }
}

TEST_CASE("tree/unicycle strategy on fixed boards") {
  const GameConfig config{1, 1, Player::Maker};
  auto tree = board(5, {{0, 1, 2}, {2, 3, 4}}, 3);
  CHECK(breaker_tree_unicycle_applicable(*tree, config).ok);
  CHECK(solve(*tree, config).winner == Player::Breaker);
  CHECK(arena(tree, config, ArenaSide::optimal(),
              ArenaSide::named("tree-unicycle"), {5, 0})
            .winner == Player::Breaker);

  auto cycle = board(6, {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}}, 3);
  CHECK(arena(cycle, config, ArenaSide::optimal(),
              ArenaSide::named("tree-unicycle"), {6, 0})
            .winner == Player::Breaker);

  // Hypotheses: m <= s-2 fails at s=2.
  CHECK(!breaker_tree_unicycle_applicable(
             Hypergraph::build(4, {{0, 1}, {2, 3}}, 2), config)
             .ok);
  // A complex component is rejected.
  CHECK(!breaker_tree_unicycle_applicable(
             Hypergraph::build(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}, 3), config)
             .ok);
}

TEST_CASE("tree/unicycle strategy batch vs optimal Maker") {
  Xoshiro256StarStar rng(23);
  for (int game = 0; game < 25; ++game) {
    const int n = 8 + static_cast<int>(rng.next_below(5));
    const auto h = oracles::random_tree_unicycle_collection(rng, n, 3);
    auto b = std::make_shared<const Hypergraph>(h);
    const auto result =
        arena(b, {1, 1, Player::Maker}, ArenaSide::optimal(),
              ArenaSide::named("tree-unicycle"), {rng.next(), 0});
    CHECK(result.winner == Player::Breaker);
  }
}

TEST_CASE("arena consistency with the solver") {
  Xoshiro256StarStar rng(24);
  for (int trial = 0; trial < 25; ++trial) {
    const auto h = oracles::random_board(rng, 7, 2 + rng.next_below(2), 1.6);
    const GameConfig config{1 + static_cast<int>(rng.next_below(2)), 1,
                            Player::Maker};
    auto b = std::make_shared<const Hypergraph>(h);
    const auto result = arena(b, config, ArenaSide::optimal(),
                              ArenaSide::optimal(), {rng.next(), 0});
    CHECK(result.winner == solve(h, config).winner);
  }
}

TEST_CASE("strategy lookup validates sides") {
  auto b = board(3, {{0, 1}, {0, 2}}, 2);
  const GameConfig config{1, 1, Player::Maker};
  CHECK_THROWS_AS(make_strategy("star", Player::Breaker, b, config),
                  ApplicabilityError);
  CHECK_THROWS_AS(make_strategy("kill", Player::Maker, b, config),
                  ApplicabilityError);
  CHECK_THROWS_AS(make_strategy("nonsense", Player::Maker, b, config),
                  InputError);
}

TEST_SUITE_END();
