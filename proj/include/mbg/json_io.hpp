#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mbg/hypergraph.hpp"
#include "mbg/lab.hpp"
#include "mbg/strategies.hpp"

namespace mbg {

using Json = nlohmann::ordered_json;

/// {"n": int, "s": int|null, "edges": [[int,...],...]} with edges in the
/// canonical order, so equal boards serialize byte-identically.
Json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

void write_hypergraph_file(const Hypergraph& h, const std::string& path);
Hypergraph read_hypergraph_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Json parse_json_text(const std::string& text);  // InputError on bad JSON

/// Exact decimal string -> double, rejecting anything outside [0, 1].
double parse_probability(const std::string& text);

Player player_from_string(const std::string& text);

/// Monte Carlo experiment description. Exactly one of `bracket` (find the
/// half-success p per n) or `p_list` (estimate at fixed p values) is set.
struct ExperimentConfig {
  PredicateSpec predicate;
  std::vector<int> n_list;
  int s = 2;
  std::optional<std::pair<double, double>> bracket;
  std::vector<double> p_list;
  std::uint64_t samples = 0;
  std::uint64_t base_seed = 0;
};

ExperimentConfig experiment_config_from_json(const Json& j,
                                             const LabLimits& limits = {});

PredicateSpec predicate_from_json(const std::string& name, const Json& params,
                                  int m, int b, Player first);

std::string experiment_csv_header();
std::string experiment_csv_row(const ExperimentRecord& record);

Json fit_points_json(const std::vector<FitPoint>& points);
std::vector<FitPoint> fit_points_from_json(const Json& j);
Json fit_report_json(const ThresholdFit& fit);

Json transcript_json(const Hypergraph& board, const GameConfig& config,
                     const std::string& maker_label,
                     const std::string& breaker_label,
                     const std::vector<TurnRecord>& transcript, Player winner);

}  // namespace mbg
