#include "mbg/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mbg/format.hpp"

namespace mbg {

Json hypergraph_to_json(const Hypergraph& h) {
  Json j;
  j["n"] = h.vertex_count();
  if (const auto s = h.declared_uniformity()) {
    j["s"] = *s;
  } else {
    j["s"] = nullptr;
  }
  j["edges"] = Json::array();
  for (const auto& e : h.edges()) j["edges"].push_back(e);
  return j;
}

Hypergraph hypergraph_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InputError("hypergraph JSON must be an object");
    const int n = j.at("n").get<int>();
    std::optional<int> s;
    if (j.contains("s") && !j.at("s").is_null()) s = j.at("s").get<int>();
    std::vector<Edge> edges;
    for (const auto& edge : j.at("edges")) {
      edges.push_back(edge.get<Edge>());
    }
    return Hypergraph::build(n, std::move(edges), s);
  } catch (const Json::exception& err) {
    throw InputError(std::string("malformed hypergraph JSON: ") + err.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << content;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& err) {
    throw InputError(std::string("malformed JSON: ") + err.what());
  }
}

void write_hypergraph_file(const Hypergraph& h, const std::string& path) {
  write_text_file(path, hypergraph_to_json(h).dump(2) + "\n");
}

Hypergraph read_hypergraph_file(const std::string& path) {
  return hypergraph_from_json(parse_json_text(read_text_file(path)));
}

double parse_probability(const std::string& text) {
  if (text.empty()) throw InputError("empty probability string");
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw InputError("cannot parse probability '" + text + "'");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InputError("probability '" + text + "' outside [0, 1]");
  }
  return value;
}

Player player_from_string(const std::string& text) {
  if (text == "maker") return Player::Maker;
  if (text == "breaker") return Player::Breaker;
  throw InputError("expected 'maker' or 'breaker', got '" + text + "'");
}

PredicateSpec predicate_from_json(const std::string& name, const Json& params,
                                  int m, int b, Player first) {
  PredicateSpec pred;
  pred.m = m;
  pred.b = b;
  pred.first = first;
  try {
    if (name == "has_edge") {
      pred.kind = PredicateSpec::Kind::HasEdge;
    } else if (name == "max_degree_ge") {
      pred.kind = PredicateSpec::Kind::MaxDegreeGe;
      pred.degree = params.at("degree").get<int>();
    } else if (name == "has_k_disjoint_d_stars") {
      pred.kind = PredicateSpec::Kind::HasKDisjointDStars;
      pred.stars_k = params.at("k").get<int>();
      pred.stars_d = params.at("d").get<int>();
    } else if (name == "all_tree_unicycle") {
      pred.kind = PredicateSpec::Kind::AllTreeUnicycle;
    } else if (name == "not_all_tree_unicycle") {
      pred.kind = PredicateSpec::Kind::NotAllTreeUnicycle;
    } else if (name == "covers_all_t_subsets") {
      pred.kind = PredicateSpec::Kind::CoversAllTSubsets;
    } else if (name == "maker_win_exact") {
      pred.kind = PredicateSpec::Kind::MakerWinExact;
    } else if (name == "breaker_strategy_wins") {
      pred.kind = PredicateSpec::Kind::BreakerStrategyWins;
      pred.strategy = params.at("strategy").get<std::string>();
    } else {
      throw InputError("unknown predicate '" + name + "'");
    }
  } catch (const Json::exception& err) {
    throw InputError("malformed predicate params: " + std::string(err.what()));
  }
  return pred;
}

ExperimentConfig experiment_config_from_json(const Json& j,
                                             const LabLimits& limits) {
  ExperimentConfig config;
  try {
    config.s = j.at("s").get<int>();
    const int m = j.value("m", 1);
    const int b = j.value("b", 1);
    const Player first = player_from_string(j.value("first", "maker"));
    config.predicate =
        predicate_from_json(j.at("predicate").get<std::string>(),
                            j.value("params", Json::object()), m, b, first);
    config.n_list = j.at("n_list").get<std::vector<int>>();
    config.samples = j.at("samples").get<std::uint64_t>();
    config.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("bracket")) {
      const auto& br = j.at("bracket");
      if (!br.is_array() || br.size() != 2) {
        throw InputError("bracket must be a [low, high] pair");
      }
      config.bracket = {parse_probability(br.at(0).get<std::string>()),
                        parse_probability(br.at(1).get<std::string>())};
    }
    if (j.contains("p_list")) {
      for (const auto& text : j.at("p_list")) {
        config.p_list.push_back(parse_probability(text.get<std::string>()));
      }
    }
  } catch (const Json::exception& err) {
    throw InputError("malformed experiment config: " + std::string(err.what()));
  }
  if (config.n_list.empty()) throw InputError("n_list must be non-empty");
  if (config.samples == 0) throw InputError("samples must be positive");
  if (config.bracket.has_value() == !config.p_list.empty()) {
    throw InputError("config needs exactly one of 'bracket' or 'p_list'");
  }
  // Guard routing happens here, before any sampling.
  for (int n : config.n_list) {
    validate_predicate(config.predicate, n, config.s, limits);
  }
  return config;
}

std::string experiment_csv_header() {
  return "n,s,m,b,p,predicate,samples,successes,p_hat,ci_low,ci_high,"
         "base_seed,stream_lo,stream_hi";
}

std::string experiment_csv_row(const ExperimentRecord& record) {
  const auto interval = wilson_interval(record.successes, record.samples);
  std::ostringstream row;
  row << record.n << ',' << record.s << ',' << record.m << ',' << record.b
      << ',' << record.p_text << ',' << record.predicate << ','
      << record.samples << ',' << record.successes << ','
      << format_double(interval.p_hat) << ',' << format_double(interval.low)
      << ',' << format_double(interval.high) << ',' << record.base_seed << ','
      << record.stream_lo << ',' << record.stream_hi;
  return row.str();
}

Json fit_points_json(const std::vector<FitPoint>& points) {
  Json array = Json::array();
  for (const auto& pt : points) {
    Json row;
    row["n"] = pt.n;
    row["p_half"] = pt.p_half;
    row["half_width"] = pt.half_width;
    array.push_back(row);
  }
  return array;
}

std::vector<FitPoint> fit_points_from_json(const Json& j) {
  try {
    const Json& array = j.is_array() ? j : j.at("points");
    std::vector<FitPoint> points;
    for (const auto& row : array) {
      FitPoint pt;
      pt.n = row.at("n").get<double>();
      pt.p_half = row.at("p_half").get<double>();
      pt.half_width = row.value("half_width", 0.0);
      points.push_back(pt);
    }
    return points;
  } catch (const Json::exception& err) {
    throw InputError("malformed points JSON: " + std::string(err.what()));
  }
}

Json fit_report_json(const ThresholdFit& fit) {
  Json j;
  j["points"] = fit_points_json(fit.points);
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["stderr"] = fit.residual_stderr;
  return j;
}

Json transcript_json(const Hypergraph& board, const GameConfig& config,
                     const std::string& maker_label,
                     const std::string& breaker_label,
                     const std::vector<TurnRecord>& transcript, Player winner) {
  Json j;
  j["board"] = hypergraph_to_json(board);
  j["m"] = config.maker_picks;
  j["b"] = config.breaker_picks;
  j["first"] = to_string(config.first);
  j["maker"] = maker_label;
  j["breaker"] = breaker_label;
  j["turns"] = Json::array();
  for (const auto& turn : transcript) {
    Json row;
    row["player"] = to_string(turn.mover);
    row["picks"] = turn.picks;
    j["turns"].push_back(row);
  }
  j["winner"] = to_string(winner);
  return j;
}

}  // namespace mbg
