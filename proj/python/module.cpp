#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "mbg/flow.hpp"
#include "mbg/json_io.hpp"
#include "mbg/lab.hpp"
#include "mbg/random_hypergraph.hpp"

namespace py = pybind11;
using namespace mbg;

namespace {

std::shared_ptr<const Hypergraph> shared(const Hypergraph& board) {
  return std::make_shared<const Hypergraph>(board);
}

PredicateSpec make_predicate(const std::string& name, int degree, int k, int d,
                             int m, int b, Player first,
                             const std::string& strategy) {
  PredicateSpec pred;
  pred.m = m;
  pred.b = b;
  pred.first = first;
  if (name == "has_edge") {
    pred.kind = PredicateSpec::Kind::HasEdge;
  } else if (name == "max_degree_ge") {
    pred.kind = PredicateSpec::Kind::MaxDegreeGe;
    pred.degree = degree;
  } else if (name == "has_k_disjoint_d_stars") {
    pred.kind = PredicateSpec::Kind::HasKDisjointDStars;
    pred.stars_k = k;
    pred.stars_d = d;
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
    pred.strategy = strategy;
  } else {
    throw InputError("unknown predicate '" + name + "'");
  }
  return pred;
}

}  // namespace

PYBIND11_MODULE(_core, module) {
  module.doc() = "Maker-Breaker games on random uniform hypergraphs";

  py::register_exception<GuardError>(module, "GuardError");
  py::register_exception<ApplicabilityError>(module, "ApplicabilityError");
  py::register_exception<InputError>(module, "InputError");

  py::enum_<Player>(module, "Player")
      .value("Maker", Player::Maker)
      .value("Breaker", Player::Breaker);

  py::enum_<GameStatus>(module, "GameStatus")
      .value("Ongoing", GameStatus::Ongoing)
      .value("MakerWin", GameStatus::MakerWin)
      .value("BreakerWin", GameStatus::BreakerWin);

  py::enum_<ComponentClass>(module, "ComponentClass")
      .value("Tree", ComponentClass::Tree)
      .value("Unicycle", ComponentClass::Unicycle)
      .value("Complex", ComponentClass::Complex);

  py::class_<Hypergraph>(module, "Hypergraph")
      .def(py::init([](int n, const std::vector<Edge>& edges,
                       std::optional<int> s) {
             return Hypergraph::build(n, edges, s);
           }),
           py::arg("n"), py::arg("edges"), py::arg("s") = std::nullopt)
      .def_property_readonly("n", &Hypergraph::vertex_count)
      .def_property_readonly("edges",
                             [](const Hypergraph& h) { return h.edges(); })
      .def_property_readonly("s", &Hypergraph::uniformity)
      .def("degree", &Hypergraph::degree, py::arg("v"))
      .def("max_degree", &Hypergraph::max_degree)
      .def("__eq__", [](const Hypergraph& a, const Hypergraph& b) { return a == b; })
      .def("__repr__", [](const Hypergraph& h) {
        return "Hypergraph(n=" + std::to_string(h.vertex_count()) +
               ", edges=" + std::to_string(h.edge_count()) + ")";
      });

  py::class_<Component>(module, "Component")
      .def_readonly("vertices", &Component::vertices)
      .def_readonly("edge_indices", &Component::edge_indices)
      .def_readonly("excess", &Component::excess)
      .def_readonly("cls", &Component::cls);

  py::class_<ComponentSummary>(module, "ComponentSummary")
      .def_readonly("components", &ComponentSummary::components)
      .def_readonly("isolated_vertices", &ComponentSummary::isolated_vertices);

  module.def("components", &components, py::arg("board"));
  module.def("is_tree_unicycle_collection", &is_tree_unicycle_collection,
             py::arg("board"));
  module.def("is_easier", &is_easier, py::arg("easier"), py::arg("harder"));

  py::class_<Star>(module, "Star")
      .def_readonly("centre", &Star::centre)
      .def_readonly("edge_indices", &Star::edge_indices);

  module.def("find_disjoint_d_stars", &find_disjoint_d_stars, py::arg("board"),
             py::arg("d"), py::arg("k"), py::arg("work_cap") = kDefaultWorkCap);
  module.def("count_d_stars", &count_d_stars, py::arg("board"), py::arg("d"),
             py::arg("work_cap") = kDefaultWorkCap);
  module.def("count_intersecting_star_pairs", &count_intersecting_star_pairs,
             py::arg("board"), py::arg("d"),
             py::arg("work_cap") = kDefaultWorkCap);
  module.def("covers_all_t_subsets", &covers_all_t_subsets, py::arg("board"),
             py::arg("t"), py::arg("work_cap") = kDefaultWorkCap);

  module.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  module.def("unrank_subset", &unrank_subset, py::arg("rank"), py::arg("n"),
             py::arg("s"));
  module.def("rank_subset", &rank_subset, py::arg("subset"), py::arg("n"));
  module.def(
      "sample",
      [](int n, int s, double p, std::uint64_t seed, std::uint64_t stream) {
        return sample_hypergraph(n, s, p, SeedSpec{seed, stream});
      },
      py::arg("n"), py::arg("s"), py::arg("p"), py::arg("seed"),
      py::arg("stream") = 0);

  py::class_<GameConfig>(module, "GameConfig")
      .def(py::init([](int m, int b, Player first) {
             GameConfig config{m, b, first};
             config.validate();
             return config;
           }),
           py::arg("m") = 1, py::arg("b") = 1,
           py::arg("first") = Player::Maker)
      .def_readonly("m", &GameConfig::maker_picks)
      .def_readonly("b", &GameConfig::breaker_picks)
      .def_readonly("first", &GameConfig::first);

  py::class_<GameState>(module, "GameState")
      .def_property_readonly("to_move", &GameState::to_move)
      .def_property_readonly("status", &GameState::status)
      .def_property_readonly("free", &GameState::free_vertices)
      .def("owner", [](const GameState& s, int v) {
        switch (s.owner(v)) {
          case Owner::Maker: return std::string("maker");
          case Owner::Breaker: return std::string("breaker");
          default: return std::string("free");
        }
      });

  module.def(
      "initial_state",
      [](const Hypergraph& board, const GameConfig& config) {
        return GameState::initial(shared(board), config);
      },
      py::arg("board"), py::arg("config"));
  module.def("legal_moves", &legal_moves, py::arg("state"), py::arg("config"));
  module.def("apply_move", &apply, py::arg("state"), py::arg("move"),
             py::arg("config"));

  py::class_<ResidualGame>(module, "ResidualGame")
      .def(py::init([](std::vector<Edge> live, std::vector<int> free_vertices) {
             ResidualGame game;
             game.live_edges = std::move(live);
             game.free_vertices = std::move(free_vertices);
             return canonical_residual(std::move(game));
           }),
           py::arg("live_edges"), py::arg("free_vertices"))
      .def_readonly("live_edges", &ResidualGame::live_edges)
      .def_readonly("free_vertices", &ResidualGame::free_vertices)
      .def_readonly("maker_already_won", &ResidualGame::maker_already_won);

  module.def("residual", &residual, py::arg("state"));
  module.def("es_beck_criterion", &es_beck_criterion, py::arg("residual"),
             py::arg("m"), py::arg("b"));

  py::class_<SolveResult>(module, "SolveResult")
      .def_readonly("winner", &SolveResult::winner)
      .def_readonly("principal_move", &SolveResult::principal_move)
      .def_readonly("nodes_expanded", &SolveResult::nodes_expanded)
      .def_readonly("memo_hits", &SolveResult::memo_hits);

  module.def(
      "solve",
      [](const Hypergraph& board, const GameConfig& config,
         std::uint64_t max_nodes) {
        return solve(board, config, SolverLimits{max_nodes});
      },
      py::arg("board"), py::arg("config"),
      py::arg("max_nodes") = SolverLimits{}.max_nodes);
  module.def(
      "best_move",
      [](const GameState& state, const GameConfig& config,
         std::uint64_t max_nodes) {
        return best_move(state, config, SolverLimits{max_nodes});
      },
      py::arg("state"), py::arg("config"),
      py::arg("max_nodes") = SolverLimits{}.max_nodes);
  module.def("minimal_disjoint_edges_for_maker",
             [](int m, int b, int s, int max_edges, std::uint64_t max_nodes) {
               return minimal_disjoint_edges_for_maker(
                   m, b, s, max_edges, SolverLimits{max_nodes});
             },
             py::arg("m"), py::arg("b"), py::arg("s"), py::arg("max_edges"),
             py::arg("max_nodes") = SolverLimits{}.max_nodes);

  py::class_<FlowNetwork>(module, "FlowNetwork")
      .def_readonly("node_count", &FlowNetwork::node_count)
      .def_readonly("source", &FlowNetwork::source)
      .def_readonly("sink", &FlowNetwork::sink)
      .def_property_readonly("arcs", [](const FlowNetwork& net) {
        std::vector<std::tuple<int, int, int>> out;
        for (const auto& arc : net.arcs) {
          out.emplace_back(arc.from, arc.to, arc.capacity);
        }
        return out;
      });

  module.def("build_network", &build_network, py::arg("board"));
  module.def(
      "max_flow",
      [](const FlowNetwork& net) {
        const auto result = max_flow(net);
        return py::make_tuple(result.value, result.arc_flow,
                              result.min_cut_source_side);
      },
      py::arg("network"));
  module.def("extract_shrunken_system", &extract_shrunken_system,
             py::arg("board"));

  module.def(
      "strategy_applicable",
      [](const std::string& name, const Hypergraph& board,
         const GameConfig& config) {
        Applicability check;
        if (name == "kill") {
          check = breaker_kill_applicable(board, config);
        } else if (name == "star") {
          check = maker_star_applicable(board, config);
        } else if (name == "disjoint-edges") {
          check = breaker_disjoint_edges_applicable(board, config);
        } else if (name == "tree-unicycle") {
          check = breaker_tree_unicycle_applicable(board, config);
        } else {
          throw InputError("unknown strategy '" + name + "'");
        }
        return py::make_tuple(check.ok, check.reason);
      },
      py::arg("name"), py::arg("board"), py::arg("config"));

  py::class_<TurnRecord>(module, "TurnRecord")
      .def_readonly("mover", &TurnRecord::mover)
      .def_readonly("picks", &TurnRecord::picks);

  py::class_<ArenaResult>(module, "ArenaResult")
      .def_readonly("winner", &ArenaResult::winner)
      .def_readonly("transcript", &ArenaResult::transcript)
      .def_readonly("turns", &ArenaResult::turns);

  module.def(
      "arena",
      [](const Hypergraph& board, const GameConfig& config,
         const std::string& maker, const std::string& breaker,
         std::uint64_t seed, std::uint64_t stream, std::uint64_t max_nodes) {
        const auto side = [](const std::string& name) {
          if (name == "optimal") return ArenaSide::optimal();
          if (name == "random") return ArenaSide::random();
          return ArenaSide::named(name);
        };
        return arena(shared(board), config, side(maker), side(breaker),
                     SeedSpec{seed, stream}, SolverLimits{max_nodes});
      },
      py::arg("board"), py::arg("config"), py::arg("maker"),
      py::arg("breaker"), py::arg("seed"), py::arg("stream") = 0,
      py::arg("max_nodes") = SolverLimits{}.max_nodes);

  py::class_<PredicateSpec>(module, "PredicateSpec")
      .def_property_readonly("name", &PredicateSpec::render)
      .def_property_readonly("monotone_increasing",
                             &PredicateSpec::monotone_increasing);

  module.def("predicate", &make_predicate, py::arg("name"),
             py::arg("degree") = 0, py::arg("k") = 0, py::arg("d") = 0,
             py::arg("m") = 1, py::arg("b") = 1,
             py::arg("first") = Player::Maker, py::arg("strategy") = "");

  module.def("eval_predicate",
             [](const PredicateSpec& pred, const Hypergraph& board) {
               return eval_predicate(pred, board);
             },
             py::arg("predicate"), py::arg("board"));
  module.def("maker_final_take", &maker_final_take, py::arg("n"), py::arg("m"),
             py::arg("b"), py::arg("first"));

  py::class_<ExperimentRecord>(module, "ExperimentRecord")
      .def_readonly("n", &ExperimentRecord::n)
      .def_readonly("s", &ExperimentRecord::s)
      .def_readonly("m", &ExperimentRecord::m)
      .def_readonly("b", &ExperimentRecord::b)
      .def_readonly("p", &ExperimentRecord::p)
      .def_readonly("predicate", &ExperimentRecord::predicate)
      .def_readonly("samples", &ExperimentRecord::samples)
      .def_readonly("successes", &ExperimentRecord::successes)
      .def_readonly("base_seed", &ExperimentRecord::base_seed)
      .def_readonly("stream_lo", &ExperimentRecord::stream_lo)
      .def_readonly("stream_hi", &ExperimentRecord::stream_hi);

  module.def(
      "estimate",
      [](int n, int s, double p, const PredicateSpec& pred,
         std::uint64_t samples, std::uint64_t seed, std::uint64_t stream,
         int workers) {
        LabLimits limits;
        limits.workers = workers;
        return estimate(n, s, p, pred, samples, SeedSpec{seed, stream}, limits);
      },
      py::arg("n"), py::arg("s"), py::arg("p"), py::arg("predicate"),
      py::arg("samples"), py::arg("seed"), py::arg("stream") = 0,
      py::arg("workers") = 0);

  py::class_<WilsonInterval>(module, "WilsonInterval")
      .def_readonly("p_hat", &WilsonInterval::p_hat)
      .def_readonly("low", &WilsonInterval::low)
      .def_readonly("high", &WilsonInterval::high);

  module.def("wilson_interval", &wilson_interval, py::arg("successes"),
             py::arg("samples"), py::arg("z") = 1.959963984540054);

  py::class_<PHalfResult>(module, "PHalfResult")
      .def_readonly("p_half", &PHalfResult::p_half)
      .def_readonly("half_width", &PHalfResult::half_width)
      .def_readonly("probes", &PHalfResult::probes);

  module.def(
      "find_p_half",
      [](int n, int s, const PredicateSpec& pred, std::uint64_t budget,
         std::uint64_t seed, std::pair<double, double> bracket, int workers) {
        LabLimits limits;
        limits.workers = workers;
        return find_p_half(n, s, pred, budget, SeedSpec{seed, 0}, bracket,
                           limits);
      },
      py::arg("n"), py::arg("s"), py::arg("predicate"), py::arg("budget"),
      py::arg("seed"), py::arg("bracket"), py::arg("workers") = 0);

  py::class_<WindowRow>(module, "WindowRow")
      .def_readonly("n", &WindowRow::n)
      .def_readonly("quantile_low", &WindowRow::quantile_low)
      .def_readonly("quantile_high", &WindowRow::quantile_high)
      .def_readonly("p_at_low", &WindowRow::p_at_low)
      .def_readonly("p_at_high", &WindowRow::p_at_high)
      .def_readonly("ratio", &WindowRow::ratio);

  module.def(
      "constant_window",
      [](const std::vector<int>& n_list, int s, const PredicateSpec& pred,
         std::pair<double, double> quantiles, std::uint64_t budget,
         std::uint64_t seed,
         const std::vector<std::pair<double, double>>& brackets, int workers) {
        LabLimits limits;
        limits.workers = workers;
        return constant_window(n_list, s, pred, quantiles, budget,
                               SeedSpec{seed, 0}, brackets, limits);
      },
      py::arg("n_list"), py::arg("s"), py::arg("predicate"),
      py::arg("quantiles"), py::arg("budget"), py::arg("seed"),
      py::arg("brackets"), py::arg("workers") = 0);

  py::class_<FitPoint>(module, "FitPoint")
      .def(py::init([](double n, double p_half, double half_width) {
             return FitPoint{n, p_half, half_width};
           }),
           py::arg("n"), py::arg("p_half"), py::arg("half_width") = 0.0)
      .def_readonly("n", &FitPoint::n)
      .def_readonly("p_half", &FitPoint::p_half)
      .def_readonly("half_width", &FitPoint::half_width);

  py::class_<ThresholdFit>(module, "ThresholdFit")
      .def_readonly("points", &ThresholdFit::points)
      .def_readonly("slope", &ThresholdFit::slope)
      .def_readonly("intercept", &ThresholdFit::intercept)
      .def_readonly("residual_stderr", &ThresholdFit::residual_stderr);

  module.def("fit_exponent", &fit_exponent, py::arg("points"));
}
