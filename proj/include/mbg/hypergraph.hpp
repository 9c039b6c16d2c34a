#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbg/errors.hpp"

namespace mbg {

/// An edge is a strictly increasing list of vertex ids.
using Edge = std::vector<int>;

/// Default cap on elementary steps for the enumerative operations below.
inline constexpr std::uint64_t kDefaultWorkCap = 100'000'000ULL;

/// Immutable hypergraph on vertices 0..n-1. Edges are stored sorted
/// internally and the edge list is kept in canonical (lexicographic) order
/// with set-duplicates removed, so equal hypergraphs serialize identically.
class Hypergraph {
 public:
  /// Validates ids, sorts each edge, removes duplicate edges, orders the
  /// edge list lexicographically. Rejects empty edges, ids outside [0, n)
  /// and, when `uniformity` is declared, edges of any other size.
  static Hypergraph build(int n, std::vector<Edge> raw_edges,
                          std::optional<int> uniformity = std::nullopt);

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::optional<int> declared_uniformity() const { return declared_s_; }

  /// Declared uniformity if present, otherwise the common edge size when all
  /// edges agree; nullopt for mixed-size or undeclared edgeless boards.
  std::optional<int> uniformity() const;

  /// Number of edges containing v.
  int degree(int v) const;

  int max_degree() const;

  bool operator==(const Hypergraph& other) const = default;

 private:
  Hypergraph(int n, std::vector<Edge> edges, std::optional<int> s)
      : n_(n), edges_(std::move(edges)), declared_s_(s) {}

  int n_ = 0;
  std::vector<Edge> edges_;
  std::optional<int> declared_s_;
};

enum class ComponentClass { Tree, Unicycle, Complex };

std::string to_string(ComponentClass cls);

/// One connected component: its vertices, the indices of its edges, and
/// (for uniform boards) its excess (s-1)|E_c| - |V_c| and classification.
struct Component {
  std::vector<int> vertices;
  std::vector<int> edge_indices;
  std::optional<long long> excess;
  std::optional<ComponentClass> cls;
};

/// Components cover exactly the non-isolated vertices; isolated vertices are
/// reported separately and are never classified.
struct ComponentSummary {
  std::vector<Component> components;
  std::vector<int> isolated_vertices;
};

/// Union-find decomposition into connected components. Excess and class are
/// filled only when the board is uniform.
ComponentSummary components(const Hypergraph& h);

/// True iff every component is a tree (excess -1) or a unicycle (excess 0).
/// Requires a uniform board; edgeless boards qualify vacuously.
bool is_tree_unicycle_collection(const Hypergraph& h);

/// True iff for every edge e' of `harder` some edge e of `easier` satisfies
/// e is a subset of e'. Both boards must share the vertex count.
bool is_easier(const Hypergraph& easier, const Hypergraph& harder);

/// A d-star: d edges pairwise intersecting exactly in the centre vertex.
/// Convention for d = 1: the star is the single edge itself, its centre is
/// recorded as the edge's smallest vertex and plays no role in counting.
struct Star {
  int centre = 0;
  std::vector<int> edge_indices;
};

/// Exhaustive backtracking search for k pairwise vertex-disjoint d-stars.
/// An empty optional is a proof that no such system exists.
std::optional<std::vector<Star>> find_disjoint_d_stars(
    const Hypergraph& h, int d, int k, std::uint64_t work_cap = kDefaultWorkCap);

/// Total number of d-stars. For d = 1 this equals the edge count.
std::uint64_t count_d_stars(const Hypergraph& h, int d,
                            std::uint64_t work_cap = kDefaultWorkCap);

/// Number of unordered pairs of distinct d-stars sharing at least one vertex.
std::uint64_t count_intersecting_star_pairs(
    const Hypergraph& h, int d, std::uint64_t work_cap = kDefaultWorkCap);

/// True iff every t-subset of the vertices contains some edge entirely.
/// Isolated vertices participate in the enumeration.
bool covers_all_t_subsets(const Hypergraph& h, int t,
                          std::uint64_t work_cap = kDefaultWorkCap);

}  // namespace mbg
