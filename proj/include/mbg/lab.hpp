#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mbg/hypergraph.hpp"
#include "mbg/rng.hpp"
#include "mbg/solver.hpp"

namespace mbg {

/// A named boolean property of a sampled board. Game-parameter predicates
/// carry their own (m, b, first).
struct PredicateSpec {
  enum class Kind {
    HasEdge,
    MaxDegreeGe,
    HasKDisjointDStars,
    AllTreeUnicycle,
    NotAllTreeUnicycle,
    CoversAllTSubsets,
    MakerWinExact,
    BreakerStrategyWins,
  };

  Kind kind = Kind::HasEdge;
  int degree = 0;                  // MaxDegreeGe
  int stars_k = 0, stars_d = 0;    // HasKDisjointDStars
  int m = 1, b = 1;                // game-parameter predicates
  Player first = Player::Maker;
  std::string strategy;            // BreakerStrategyWins

  /// Canonical text form, stable across runs (no commas, CSV-safe).
  std::string render() const;

  /// Success probability is non-decreasing in p for every kind except
  /// AllTreeUnicycle and BreakerStrategyWins, which are non-increasing.
  bool monotone_increasing() const;
};

struct LabLimits {
  std::uint64_t work_cap = kDefaultWorkCap;
  int exact_solver_vertex_cap = 14;  // MakerWinExact board-size guard
  SolverLimits solver{};
  int workers = 0;                   // 0 = hardware concurrency
};

/// Rejects configurations whose predicate cannot run at this board size
/// (for example MakerWinExact beyond the solver cap). Meant to run at
/// config-validation time, before any sampling starts.
void validate_predicate(const PredicateSpec& pred, int n, int s,
                        const LabLimits& limits = {});

bool eval_predicate(const PredicateSpec& pred, const Hypergraph& board,
                    const LabLimits& limits = {});

/// Minimum number of vertices the Maker side ends up owning when both
/// players use their full quotas until the board is exhausted.
int maker_final_take(int n, int m, int b, Player first);

/// One Monte Carlo measurement; the fields fully determine reproduction.
struct ExperimentRecord {
  int n = 0, s = 0, m = 1, b = 1;
  double p = 0.0;
  std::string p_text;
  std::string predicate;
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  std::uint64_t base_seed = 0;
  std::uint64_t stream_lo = 0;
  std::uint64_t stream_hi = 0;  // exclusive
  double wall_time_seconds = 0.0;
};

/// Samples `samples` boards on the streams [seed.stream_index,
/// seed.stream_index + samples) and counts predicate successes. The result
/// is independent of the worker count; workers only split the stream range.
ExperimentRecord estimate(int n, int s, double p, const PredicateSpec& pred,
                          std::uint64_t samples, const SeedSpec& seed,
                          const LabLimits& limits = {});

struct WilsonInterval {
  double p_hat = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval; the default z is the 95% two-sided quantile.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t samples,
                               double z = 1.959963984540054);

struct PHalfResult {
  double p_half = 0.0;
  double half_width = 0.0;
  std::vector<ExperimentRecord> probes;
};

/// Bisection on log p for the p at which the success probability crosses
/// `quantile`. Each probe spends `budget` samples on fresh streams. Stops
/// when the Wilson interval at the midpoint no longer separates from the
/// target or the bracket's relative width drops below 5%. Decreasing
/// predicates are handled by complementation.
PHalfResult find_p_quantile(int n, int s, const PredicateSpec& pred,
                            double quantile, std::uint64_t budget,
                            const SeedSpec& seed,
                            std::pair<double, double> bracket,
                            const LabLimits& limits = {});

/// find_p_quantile at 1/2.
PHalfResult find_p_half(int n, int s, const PredicateSpec& pred,
                        std::uint64_t budget, const SeedSpec& seed,
                        std::pair<double, double> bracket,
                        const LabLimits& limits = {});

struct FitPoint {
  double n = 0.0;
  double p_half = 0.0;
  double half_width = 0.0;
};

struct ThresholdFit {
  std::vector<FitPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double residual_stderr = 0.0;
};

/// Ordinary least squares of log(p_half) against log(n); the slope is the
/// empirical threshold exponent. Requires >= 3 points with distinct n.
ThresholdFit fit_exponent(const std::vector<FitPoint>& points);

struct WindowRow {
  int n = 0;
  double quantile_low = 0.0;
  double quantile_high = 0.0;
  double p_at_low = 0.0;
  double p_at_high = 0.0;
  double ratio = 0.0;  // p_at_high / p_at_low
};

/// Exploratory width of the threshold window: locates the p values where
/// the success probability crosses each quantile and reports their ratio.
std::vector<WindowRow> constant_window(
    const std::vector<int>& n_list, int s, const PredicateSpec& pred,
    std::pair<double, double> quantiles, std::uint64_t budget,
    const SeedSpec& seed,
    const std::vector<std::pair<double, double>>& brackets,
    const LabLimits& limits = {});

/// Static log-log scatter of the fit with its regression line.
void write_loglog_svg(const ThresholdFit& fit, const std::string& path);

}  // namespace mbg
