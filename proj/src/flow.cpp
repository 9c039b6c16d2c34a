#include "mbg/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace mbg {
namespace {

// Adjacency-list Dinic over paired residual arcs.
class Dinic {
 public:
  explicit Dinic(int n) : head_(n), level_(n), iter_(n) {}

  int add_arc(int from, int to, int capacity) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity});
    head_[from].push_back(id);
    arcs_.push_back({from, 0});
    head_[to].push_back(id + 1);
    return id;
  }

  long long run(int source, int sink) {
    long long total = 0;
    while (bfs(source, sink)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      for (;;) {
        const long long pushed =
            dfs(source, sink, std::numeric_limits<long long>::max());
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  int flow_on(int arc_id) const { return arcs_[arc_id + 1].capacity; }

  std::vector<int> residual_reachable(int source) const {
    std::vector<int> order;
    std::vector<bool> seen(head_.size(), false);
    std::queue<int> queue;
    queue.push(source);
    seen[source] = true;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      order.push_back(u);
      for (int id : head_[u]) {
        const auto& arc = arcs_[id];
        if (arc.capacity > 0 && !seen[arc.to]) {
          seen[arc.to] = true;
          queue.push(arc.to);
        }
      }
    }
    std::sort(order.begin(), order.end());
    return order;
  }

 private:
  struct Arc {
    int to;
    int capacity;  // residual
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    queue.push(source);
    level_[source] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int id : head_[u]) {
        const auto& arc = arcs_[id];
        if (arc.capacity > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push(arc.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  long long dfs(int u, int sink, long long limit) {
    if (u == sink) return limit;
    for (int& i = iter_[u]; i < static_cast<int>(head_[u].size()); ++i) {
      const int id = head_[u][i];
      Arc& arc = arcs_[id];
      if (arc.capacity <= 0 || level_[arc.to] != level_[u] + 1) continue;
      const long long pushed =
          dfs(arc.to, sink, std::min<long long>(limit, arc.capacity));
      if (pushed > 0) {
        arc.capacity -= static_cast<int>(pushed);
        arcs_[id ^ 1].capacity += static_cast<int>(pushed);
        return pushed;
      }
    }
    level_[u] = -1;
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace

FlowNetwork build_network(const Hypergraph& h) {
  const auto s = h.uniformity();
  if (h.edge_count() > 0 && !s) {
    throw InputError("flow network requires a uniform board");
  }
  const int uniform = s.value_or(2);
  if (uniform < 2) throw InputError("flow network requires uniformity s >= 2");

  FlowNetwork net;
  net.hyperedge_count = h.edge_count();
  net.vertex_count = h.vertex_count();
  net.node_count = 2 + net.hyperedge_count + net.vertex_count;
  net.source = 0;
  net.sink = net.node_count - 1;

  for (int j = 0; j < net.hyperedge_count; ++j) {
    net.arcs.push_back({net.source, net.edge_node(j), uniform - 1});
  }
  for (int j = 0; j < net.hyperedge_count; ++j) {
    for (int v : h.edges()[j]) {
      net.arcs.push_back({net.edge_node(j), net.vertex_node(v), 1});
    }
  }
  for (int v = 0; v < net.vertex_count; ++v) {
    net.arcs.push_back({net.vertex_node(v), net.sink, 1});
  }
  return net;
}

MaxFlowResult max_flow(const FlowNetwork& net) {
  Dinic dinic(net.node_count);
  std::vector<int> ids;
  ids.reserve(net.arcs.size());
  for (const auto& arc : net.arcs) {
    ids.push_back(dinic.add_arc(arc.from, arc.to, arc.capacity));
  }
  MaxFlowResult result;
  result.value = dinic.run(net.source, net.sink);
  result.arc_flow.reserve(ids.size());
  for (int id : ids) result.arc_flow.push_back(dinic.flow_on(id));
  result.min_cut_source_side = dinic.residual_reachable(net.source);
  return result;
}

std::optional<Hypergraph> extract_shrunken_system(const Hypergraph& h) {
  const auto s = h.uniformity();
  if (h.edge_count() == 0) {
    // Vacuously extractable: the empty system over the same vertices.
    const std::optional<int> down =
        s && *s >= 2 ? std::optional<int>(*s - 1) : std::nullopt;
    return Hypergraph::build(h.vertex_count(), {}, down);
  }
  const FlowNetwork net = build_network(h);
  const auto flow = max_flow(net);
  const long long want =
      static_cast<long long>(*s - 1) * static_cast<long long>(h.edge_count());
  if (flow.value != want) return std::nullopt;

  // Incidence arcs are grouped by edge after the |E| source arcs.
  std::vector<Edge> shrunken(h.edge_count());
  std::size_t arc_index = h.edge_count();
  for (int j = 0; j < h.edge_count(); ++j) {
    for (int v : h.edges()[j]) {
      if (flow.arc_flow[arc_index] == 1) shrunken[j].push_back(v);
      ++arc_index;
    }
  }
  return Hypergraph::build(h.vertex_count(), std::move(shrunken), *s - 1);
}

}  // namespace mbg
