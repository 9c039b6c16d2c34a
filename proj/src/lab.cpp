#include "mbg/lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include "mbg/format.hpp"
#include "mbg/random_hypergraph.hpp"
#include "mbg/strategies.hpp"

namespace mbg {

std::string PredicateSpec::render() const {
  const std::string game_params = "m=" + std::to_string(m) +
                                  ";b=" + std::to_string(b) +
                                  ";first=" + to_string(first);
  switch (kind) {
    case Kind::HasEdge: return "has_edge";
    case Kind::MaxDegreeGe: return "max_degree_ge(" + std::to_string(degree) + ")";
    case Kind::HasKDisjointDStars:
      return "has_k_disjoint_d_stars(k=" + std::to_string(stars_k) +
             ";d=" + std::to_string(stars_d) + ")";
    case Kind::AllTreeUnicycle: return "all_tree_unicycle";
    case Kind::NotAllTreeUnicycle: return "not_all_tree_unicycle";
    case Kind::CoversAllTSubsets: return "covers_all_t_subsets(" + game_params + ")";
    case Kind::MakerWinExact: return "maker_win_exact(" + game_params + ")";
    case Kind::BreakerStrategyWins:
      return "breaker_strategy_wins(" + strategy + ";" + game_params + ")";
  }
  return "?";
}

bool PredicateSpec::monotone_increasing() const {
  return kind != Kind::AllTreeUnicycle && kind != Kind::BreakerStrategyWins;
}

void validate_predicate(const PredicateSpec& pred, int n, int s,
                        const LabLimits& limits) {
  if (n < 1 || s < 1 || s > n) throw InputError("need 1 <= s <= n");
  switch (pred.kind) {
    case PredicateSpec::Kind::MaxDegreeGe:
      if (pred.degree < 1) throw InputError("max_degree_ge needs degree >= 1");
      break;
    case PredicateSpec::Kind::HasKDisjointDStars:
      if (pred.stars_k < 1 || pred.stars_d < 1) {
        throw InputError("has_k_disjoint_d_stars needs k >= 1 and d >= 1");
      }
      break;
    case PredicateSpec::Kind::MakerWinExact:
      if (pred.m < 1 || pred.b < 1) throw InputError("need m, b >= 1");
      if (n > limits.exact_solver_vertex_cap) {
        throw GuardError("maker_win_exact allowed only for n <= " +
                         std::to_string(limits.exact_solver_vertex_cap) +
                         "; got n = " + std::to_string(n));
      }
      break;
    case PredicateSpec::Kind::CoversAllTSubsets:
      if (pred.m < 1 || pred.b < 1) throw InputError("need m, b >= 1");
      break;
    case PredicateSpec::Kind::BreakerStrategyWins:
      if (pred.m < 1 || pred.b < 1) throw InputError("need m, b >= 1");
      if (pred.strategy != "kill" && pred.strategy != "disjoint-edges" &&
          pred.strategy != "tree-unicycle") {
        throw InputError("unknown breaker strategy '" + pred.strategy + "'");
      }
      break;
    default:
      break;
  }
}

bool eval_predicate(const PredicateSpec& pred, const Hypergraph& board,
                    const LabLimits& limits) {
  switch (pred.kind) {
    case PredicateSpec::Kind::HasEdge:
      return board.edge_count() > 0;
    case PredicateSpec::Kind::MaxDegreeGe:
      return board.max_degree() >= pred.degree;
    case PredicateSpec::Kind::HasKDisjointDStars:
      return find_disjoint_d_stars(board, pred.stars_d, pred.stars_k,
                                   limits.work_cap)
          .has_value();
    case PredicateSpec::Kind::AllTreeUnicycle:
      return is_tree_unicycle_collection(board);
    case PredicateSpec::Kind::NotAllTreeUnicycle:
      return !is_tree_unicycle_collection(board);
    case PredicateSpec::Kind::CoversAllTSubsets: {
      const int t = maker_final_take(board.vertex_count(), pred.m, pred.b,
                                     pred.first);
      return covers_all_t_subsets(board, t, limits.work_cap);
    }
    case PredicateSpec::Kind::MakerWinExact: {
      const GameConfig config{pred.m, pred.b, pred.first};
      return solve(board, config, limits.solver).winner == Player::Maker;
    }
    case PredicateSpec::Kind::BreakerStrategyWins: {
      const GameConfig config{pred.m, pred.b, pred.first};
      if (pred.strategy == "kill") {
        return breaker_kill_applicable(board, config).ok;
      }
      if (pred.strategy == "disjoint-edges") {
        return breaker_disjoint_edges_applicable(board, config).ok;
      }
      return breaker_tree_unicycle_applicable(board, config).ok;
    }
  }
  throw InputError("unknown predicate kind");
}

int maker_final_take(int n, int m, int b, Player first) {
  if (n < 0 || m < 1 || b < 1) throw InputError("need n >= 0 and m, b >= 1");
  int remaining = n;
  int taken = 0;
  Player turn = first;
  while (remaining > 0) {
    const int quota = std::min(turn == Player::Maker ? m : b, remaining);
    if (turn == Player::Maker) taken += quota;
    remaining -= quota;
    turn = opponent(turn);
  }
  return taken;
}

ExperimentRecord estimate(int n, int s, double p, const PredicateSpec& pred,
                          std::uint64_t samples, const SeedSpec& seed,
                          const LabLimits& limits) {
  validate_predicate(pred, n, s, limits);
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability p must lie in [0, 1]");

  const auto start = std::chrono::steady_clock::now();

  int workers = limits.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  if (static_cast<std::uint64_t>(workers) > samples && samples > 0) {
    workers = static_cast<int>(samples);
  }
  if (workers < 1) workers = 1;

  // Each stream is sampled and evaluated independently; the total is a sum
  // over streams, so the chunking cannot change the result.
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::exception_ptr> failures(workers);
  auto run_chunk = [&](int w, std::uint64_t lo, std::uint64_t hi) {
    try {
      std::uint64_t hits = 0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        const SeedSpec stream{seed.base_seed, seed.stream_index + i};
        const Hypergraph board = sample_hypergraph(n, s, p, stream);
        if (eval_predicate(pred, board, limits)) ++hits;
      }
      partial[w] = hits;
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run_chunk(0, 0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, samples);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, samples);
      pool.emplace_back(run_chunk, w, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentRecord record;
  record.n = n;
  record.s = s;
  record.m = pred.m;
  record.b = pred.b;
  record.p = p;
  record.p_text = format_double(p);
  record.predicate = pred.render();
  record.samples = samples;
  for (std::uint64_t hits : partial) record.successes += hits;
  record.base_seed = seed.base_seed;
  record.stream_lo = seed.stream_index;
  record.stream_hi = seed.stream_index + samples;
  record.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return record;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t samples,
                               double z) {
  if (samples == 0) throw InputError("Wilson interval needs samples > 0");
  if (successes > samples) throw InputError("successes exceed samples");
  const double n = static_cast<double>(samples);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double margin =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  // At the boundary counts the interval endpoint is exactly 0 or 1.
  const double low = successes == 0 ? 0.0 : std::max(0.0, centre - margin);
  const double high =
      successes == samples ? 1.0 : std::min(1.0, centre + margin);
  return {phat, low, high};
}

PHalfResult find_p_quantile(int n, int s, const PredicateSpec& pred,
                            double quantile, std::uint64_t budget,
                            const SeedSpec& seed,
                            std::pair<double, double> bracket,
                            const LabLimits& limits) {
  validate_predicate(pred, n, s, limits);
  if (!(quantile > 0.0 && quantile < 1.0)) {
    throw InputError("quantile must lie strictly inside (0, 1)");
  }
  if (budget == 0) throw InputError("probe budget must be positive");
  auto [lo, hi] = bracket;
  if (!(0.0 < lo && lo < hi && hi <= 1.0)) {
    throw InputError("bracket must satisfy 0 < lo < hi <= 1");
  }

  const bool increasing = pred.monotone_increasing();
  const double target = increasing ? quantile : 1.0 - quantile;

  PHalfResult result;
  std::uint64_t stream_cursor = seed.stream_index;
  const auto probe = [&](double p) -> const ExperimentRecord& {
    const SeedSpec probe_seed{seed.base_seed, stream_cursor};
    stream_cursor += budget;
    result.probes.push_back(estimate(n, s, p, pred, budget, probe_seed, limits));
    return result.probes.back();
  };
  const auto effective = [&](const ExperimentRecord& record) {
    // Decreasing predicates are bisected through their complement.
    const std::uint64_t hits =
        increasing ? record.successes : record.samples - record.successes;
    return wilson_interval(hits, record.samples);
  };

  if (effective(probe(lo)).p_hat >= target) {
    throw InputError("bracket does not straddle the target at its low end");
  }
  if (effective(probe(hi)).p_hat <= target) {
    throw InputError("bracket does not straddle the target at its high end");
  }

  for (;;) {
    const double mid = std::sqrt(lo * hi);
    if ((hi - lo) / mid < 0.05) {
      result.p_half = mid;
      result.half_width = (hi - lo) / 2.0;
      return result;
    }
    const auto interval = effective(probe(mid));
    if (interval.low > target) {
      hi = mid;
    } else if (interval.high < target) {
      lo = mid;
    } else {
      // The midpoint is statistically indistinguishable from the target.
      result.p_half = mid;
      result.half_width = (hi - lo) / 2.0;
      return result;
    }
  }
}

PHalfResult find_p_half(int n, int s, const PredicateSpec& pred,
                        std::uint64_t budget, const SeedSpec& seed,
                        std::pair<double, double> bracket,
                        const LabLimits& limits) {
  return find_p_quantile(n, s, pred, 0.5, budget, seed, bracket, limits);
}

ThresholdFit fit_exponent(const std::vector<FitPoint>& points) {
  if (points.size() < 3) throw InputError("fit requires at least 3 points");
  const auto k = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& pt : points) {
    if (!(pt.n > 0.0) || !(pt.p_half > 0.0)) {
      throw InputError("fit points must have positive n and p_half");
    }
    const double x = std::log(pt.n);
    const double y = std::log(pt.p_half);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double sxx_centered = sxx - sx * sx / k;
  if (sxx_centered <= 0.0) {
    throw InputError("fit is degenerate: all n coincide");
  }
  ThresholdFit fit;
  fit.points = points;
  fit.slope = (sxy - sx * sy / k) / sxx_centered;
  fit.intercept = (sy - fit.slope * sx) / k;
  double ss_res = 0;
  for (const auto& pt : points) {
    const double predicted = fit.slope * std::log(pt.n) + fit.intercept;
    const double res = std::log(pt.p_half) - predicted;
    ss_res += res * res;
  }
  fit.residual_stderr = points.size() > 2
                            ? std::sqrt(ss_res / (k - 2.0))
                            : 0.0;
  return fit;
}

std::vector<WindowRow> constant_window(
    const std::vector<int>& n_list, int s, const PredicateSpec& pred,
    std::pair<double, double> quantiles, std::uint64_t budget,
    const SeedSpec& seed,
    const std::vector<std::pair<double, double>>& brackets,
    const LabLimits& limits) {
  if (brackets.size() != n_list.size()) {
    throw InputError("need one bracket per n");
  }
  auto [q_low, q_high] = quantiles;
  if (!(0.0 < q_low && q_low < q_high && q_high < 1.0)) {
    throw InputError("quantiles must satisfy 0 < low < high < 1");
  }
  std::vector<WindowRow> rows;
  std::uint64_t stream_cursor = seed.stream_index;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    WindowRow row;
    row.n = n_list[i];
    row.quantile_low = q_low;
    row.quantile_high = q_high;
    const SeedSpec seed_low{seed.base_seed, stream_cursor};
    auto low = find_p_quantile(n_list[i], s, pred, q_low, budget, seed_low,
                               brackets[i], limits);
    stream_cursor = low.probes.empty()
                        ? stream_cursor
                        : low.probes.back().stream_hi;
    const SeedSpec seed_high{seed.base_seed, stream_cursor};
    auto high = find_p_quantile(n_list[i], s, pred, q_high, budget, seed_high,
                                brackets[i], limits);
    stream_cursor = high.probes.empty()
                        ? stream_cursor
                        : high.probes.back().stream_hi;
    row.p_at_low = low.p_half;
    row.p_at_high = high.p_half;
    row.ratio = high.p_half / low.p_half;
    rows.push_back(row);
  }
  return rows;
}

void write_loglog_svg(const ThresholdFit& fit, const std::string& path) {
  const double width = 640, height = 480;
  const double margin = 60;

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& pt : fit.points) {
    const double x = std::log10(pt.n);
    const double y = std::log10(pt.p_half);
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (x_max <= x_min) x_max = x_min + 1;
  if (y_max <= y_min) y_max = y_min + 1;
  const double x_pad = 0.05 * (x_max - x_min);
  const double y_pad = 0.05 * (y_max - y_min);
  x_min -= x_pad; x_max += x_pad;
  y_min -= y_pad; y_max += y_pad;

  const auto sx = [&](double x) {
    return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
  };
  const auto sy = [&](double y) {
    return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write SVG file '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << format_double(sx(x_min)) << "\" y1=\""
      << format_double(sy(y_min)) << "\" x2=\"" << format_double(sx(x_max))
      << "\" y2=\"" << format_double(sy(y_min))
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << format_double(sx(x_min)) << "\" y1=\""
      << format_double(sy(y_min)) << "\" x2=\"" << format_double(sx(x_min))
      << "\" y2=\"" << format_double(sy(y_max))
      << "\" stroke=\"black\"/>\n";

  // Decade ticks.
  for (int d = static_cast<int>(std::ceil(x_min)); d <= std::floor(x_max); ++d) {
    out << "<line x1=\"" << format_double(sx(d)) << "\" y1=\""
        << format_double(sy(y_min)) << "\" x2=\"" << format_double(sx(d))
        << "\" y2=\"" << format_double(sy(y_min) + 6)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << format_double(sx(d)) << "\" y=\""
        << format_double(sy(y_min) + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(y_min)); d <= std::floor(y_max); ++d) {
    out << "<line x1=\"" << format_double(sx(x_min) - 6) << "\" y1=\""
        << format_double(sy(d)) << "\" x2=\"" << format_double(sx(x_min))
        << "\" y2=\"" << format_double(sy(d)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << format_double(sx(x_min) - 10) << "\" y=\""
        << format_double(sy(d) + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << d << "</text>\n";
  }

  // Fitted line, converted from natural-log coordinates.
  const double ln10 = std::log(10.0);
  const auto fit_y = [&](double x_log10) {
    return (fit.slope * (x_log10 * ln10) + fit.intercept) / ln10;
  };
  out << "<line x1=\"" << format_double(sx(x_min)) << "\" y1=\""
      << format_double(sy(fit_y(x_min))) << "\" x2=\""
      << format_double(sx(x_max)) << "\" y2=\""
      << format_double(sy(fit_y(x_max)))
      << "\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";

  for (const auto& pt : fit.points) {
    out << "<circle cx=\"" << format_double(sx(std::log10(pt.n)))
        << "\" cy=\"" << format_double(sy(std::log10(pt.p_half)))
        << "\" r=\"3.5\" fill=\"crimson\"/>\n";
  }
  out << "<text x=\"" << format_double(width / 2) << "\" y=\""
      << format_double(height - 15)
      << "\" font-size=\"13\" text-anchor=\"middle\">n (log scale)</text>\n";
  out << "<text x=\"15\" y=\"" << format_double(height / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << format_double(height / 2)
      << ")\">p at half success (log scale)</text>\n";
  out << "<text x=\"" << format_double(width - margin) << "\" y=\""
      << format_double(margin - 20)
      << "\" font-size=\"13\" text-anchor=\"end\">slope "
      << format_double(fit.slope) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace mbg
