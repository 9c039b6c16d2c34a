#include "mbg/hypergraph.hpp"

#include <algorithm>
#include <numeric>

namespace mbg {
namespace {

// Weighted quick-union with path compression.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int p) {
    int root = p;
    while (root != parent_[root]) root = parent_[root];
    while (p != root) {
      const int next = parent_[p];
      parent_[p] = root;
      p = next;
    }
    return root;
  }

  void merge(int x, int y) {
    const int i = find(x);
    const int j = find(y);
    if (i == j) return;
    if (size_[i] < size_[j]) {
      parent_[i] = j;
      size_[j] += size_[i];
    } else {
      parent_[j] = i;
      size_[i] += size_[j];
    }
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

struct WorkCounter {
  std::uint64_t used = 0;
  std::uint64_t cap = kDefaultWorkCap;

  void spend(std::uint64_t steps) {
    used += steps;
    if (used > cap) {
      throw GuardError("work guard exceeded: " + std::to_string(used) + " > " +
                       std::to_string(cap) + " elementary steps");
    }
  }
};

// Word-parallel vertex sets for boards of arbitrary n.
class VertexSet {
 public:
  explicit VertexSet(int n) : words_((n + 63) / 64, 0) {}

  void insert(int v) { words_[v >> 6] |= 1ULL << (v & 63); }

  bool intersects(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  void merge(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  }

  bool contains_all(const Edge& e) const {
    for (int v : e) {
      if (!(words_[v >> 6] & (1ULL << (v & 63)))) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<std::vector<int>> incidence_lists(const Hypergraph& h) {
  std::vector<std::vector<int>> inc(h.vertex_count());
  for (int i = 0; i < h.edge_count(); ++i) {
    for (int v : h.edges()[i]) inc[v].push_back(i);
  }
  return inc;
}

// |e1 ∩ e2| for sorted edges.
int intersection_size(const Edge& a, const Edge& b) {
  int count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

struct StarRecord {
  Star star;
  VertexSet support;
};

// Enumerates every d-star in canonical order. For d = 1 each edge appears
// once with its smallest vertex recorded as centre.
std::vector<StarRecord> enumerate_stars(const Hypergraph& h, int d,
                                        WorkCounter& work) {
  if (d < 1) throw InputError("star parameter d must be >= 1");
  std::vector<StarRecord> stars;
  const auto& edges = h.edges();
  if (d == 1) {
    for (int i = 0; i < h.edge_count(); ++i) {
      StarRecord rec{Star{edges[i].front(), {i}}, VertexSet(h.vertex_count())};
      for (int v : edges[i]) rec.support.insert(v);
      work.spend(edges[i].size());
      stars.push_back(std::move(rec));
    }
    return stars;
  }

  const auto inc = incidence_lists(h);
  std::vector<int> chosen;
  for (int centre = 0; centre < h.vertex_count(); ++centre) {
    const auto& through = inc[centre];
    if (static_cast<int>(through.size()) < d) continue;

    // Pairs of chosen edges must intersect in exactly the centre.
    auto extend = [&](auto&& self, std::size_t start) -> void {
      if (static_cast<int>(chosen.size()) == d) {
        StarRecord rec{Star{centre, chosen}, VertexSet(h.vertex_count())};
        for (int ei : chosen) {
          for (int v : edges[ei]) rec.support.insert(v);
        }
        stars.push_back(std::move(rec));
        return;
      }
      for (std::size_t j = start; j < through.size(); ++j) {
        const int candidate = through[j];
        bool ok = true;
        for (int ei : chosen) {
          work.spend(edges[candidate].size());
          if (intersection_size(edges[ei], edges[candidate]) != 1) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        chosen.push_back(candidate);
        self(self, j + 1);
        chosen.pop_back();
      }
    };
    extend(extend, 0);
  }
  return stars;
}

}  // namespace

Hypergraph Hypergraph::build(int n, std::vector<Edge> raw_edges,
                             std::optional<int> uniformity) {
  if (n < 0) throw InputError("vertex count must be non-negative");
  if (uniformity && *uniformity < 1) {
    throw InputError("declared uniformity must be >= 1");
  }
  for (auto& e : raw_edges) {
    if (e.empty()) throw InputError("empty edge rejected");
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.front() < 0 || e.back() >= n) {
      throw InputError("vertex id out of range [0, " + std::to_string(n) + ")");
    }
    if (uniformity && static_cast<int>(e.size()) != *uniformity) {
      throw InputError("edge size " + std::to_string(e.size()) +
                       " violates declared uniformity " +
                       std::to_string(*uniformity));
    }
  }
  std::sort(raw_edges.begin(), raw_edges.end());
  raw_edges.erase(std::unique(raw_edges.begin(), raw_edges.end()),
                  raw_edges.end());
  return Hypergraph(n, std::move(raw_edges), uniformity);
}

std::optional<int> Hypergraph::uniformity() const {
  if (declared_s_) return declared_s_;
  if (edges_.empty()) return std::nullopt;
  const auto size = edges_.front().size();
  for (const auto& e : edges_) {
    if (e.size() != size) return std::nullopt;
  }
  return static_cast<int>(size);
}

int Hypergraph::degree(int v) const {
  if (v < 0 || v >= n_) throw InputError("vertex id out of range");
  int deg = 0;
  for (const auto& e : edges_) {
    if (std::binary_search(e.begin(), e.end(), v)) ++deg;
  }
  return deg;
}

int Hypergraph::max_degree() const {
  std::vector<int> deg(n_, 0);
  for (const auto& e : edges_) {
    for (int v : e) ++deg[v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::string to_string(ComponentClass cls) {
  switch (cls) {
    case ComponentClass::Tree: return "tree";
    case ComponentClass::Unicycle: return "unicycle";
    case ComponentClass::Complex: return "complex";
  }
  return "?";
}

ComponentSummary components(const Hypergraph& h) {
  const int n = h.vertex_count();
  UnionFind uf(n);
  std::vector<bool> touched(n, false);
  for (const auto& e : h.edges()) {
    for (int v : e) touched[v] = true;
    for (std::size_t i = 1; i < e.size(); ++i) uf.merge(e[0], e[i]);
  }

  ComponentSummary summary;
  std::vector<int> comp_index(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!touched[v]) {
      summary.isolated_vertices.push_back(v);
      continue;
    }
    const int root = uf.find(v);
    if (comp_index[root] < 0) {
      comp_index[root] = static_cast<int>(summary.components.size());
      summary.components.emplace_back();
    }
    summary.components[comp_index[root]].vertices.push_back(v);
  }
  for (int i = 0; i < h.edge_count(); ++i) {
    const int root = uf.find(h.edges()[i].front());
    summary.components[comp_index[root]].edge_indices.push_back(i);
  }

  if (const auto s = h.uniformity()) {
    for (auto& comp : summary.components) {
      const long long excess =
          static_cast<long long>(*s - 1) * static_cast<long long>(comp.edge_indices.size()) -
          static_cast<long long>(comp.vertices.size());
      comp.excess = excess;
      comp.cls = excess <= -1  ? ComponentClass::Tree
                 : excess == 0 ? ComponentClass::Unicycle
                               : ComponentClass::Complex;
    }
  }
  return summary;
}

bool is_tree_unicycle_collection(const Hypergraph& h) {
  if (h.edge_count() == 0) return true;
  if (!h.uniformity()) {
    throw InputError("tree/unicycle classification requires a uniform board");
  }
  const auto summary = components(h);
  for (const auto& comp : summary.components) {
    if (*comp.cls == ComponentClass::Complex) return false;
  }
  return true;
}

bool is_easier(const Hypergraph& easier, const Hypergraph& harder) {
  if (easier.vertex_count() != harder.vertex_count()) {
    throw InputError("easier-than comparison requires equal vertex counts");
  }
  for (const auto& big : harder.edges()) {
    VertexSet inside(harder.vertex_count());
    for (int v : big) inside.insert(v);
    bool covered = false;
    for (const auto& small : easier.edges()) {
      if (inside.contains_all(small)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

std::optional<std::vector<Star>> find_disjoint_d_stars(const Hypergraph& h,
                                                       int d, int k,
                                                       std::uint64_t work_cap) {
  if (d < 1 || k < 1) throw InputError("star search requires d >= 1 and k >= 1");
  if (h.edge_count() > 0 && !h.uniformity()) {
    throw InputError("star search requires a uniform board");
  }
  WorkCounter work{0, work_cap};
  const auto stars = enumerate_stars(h, d, work);
  if (static_cast<int>(stars.size()) < k) return std::nullopt;

  std::vector<int> chosen;
  VertexSet used(h.vertex_count());
  auto search = [&](auto&& self, std::size_t start, VertexSet used_set) -> bool {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (std::size_t i = start; i < stars.size(); ++i) {
      if (stars.size() - i < static_cast<std::size_t>(k) - chosen.size()) break;
      work.spend(1);
      if (used_set.intersects(stars[i].support)) continue;
      VertexSet next = used_set;
      next.merge(stars[i].support);
      chosen.push_back(static_cast<int>(i));
      if (self(self, i + 1, std::move(next))) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(search, 0, used)) return std::nullopt;

  std::vector<Star> result;
  result.reserve(k);
  for (int idx : chosen) result.push_back(stars[idx].star);
  return result;
}

std::uint64_t count_d_stars(const Hypergraph& h, int d,
                            std::uint64_t work_cap) {
  WorkCounter work{0, work_cap};
  return enumerate_stars(h, d, work).size();
}

std::uint64_t count_intersecting_star_pairs(const Hypergraph& h, int d,
                                            std::uint64_t work_cap) {
  WorkCounter work{0, work_cap};
  const auto stars = enumerate_stars(h, d, work);
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < stars.size(); ++i) {
    for (std::size_t j = i + 1; j < stars.size(); ++j) {
      work.spend(1);
      if (stars[i].support.intersects(stars[j].support)) ++pairs;
    }
  }
  return pairs;
}

bool covers_all_t_subsets(const Hypergraph& h, int t, std::uint64_t work_cap) {
  const int n = h.vertex_count();
  if (t < 0 || t > n) throw InputError("subset size t must lie in [0, n]");
  WorkCounter work{0, work_cap};

  // Lexicographic enumeration of t-subsets.
  std::vector<int> subset(t);
  std::iota(subset.begin(), subset.end(), 0);
  for (;;) {
    VertexSet inside(n);
    for (int v : subset) inside.insert(v);
    bool contains_edge = false;
    for (const auto& e : h.edges()) {
      work.spend(e.size());
      if (static_cast<int>(e.size()) <= t && inside.contains_all(e)) {
        contains_edge = true;
        break;
      }
    }
    if (!contains_edge) return false;

    int i = t - 1;
    while (i >= 0 && subset[i] == n - t + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < t; ++j) subset[j] = subset[j - 1] + 1;
    work.spend(1);
  }
  return true;
}

}  // namespace mbg
