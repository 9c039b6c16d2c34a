#pragma once

#include <optional>
#include <vector>

#include "mbg/hypergraph.hpp"

namespace mbg {

struct FlowArc {
  int from = 0;
  int to = 0;
  int capacity = 0;
};

/// The layered network of an s-uniform board H: source -> edge nodes with
/// capacity s-1, edge -> vertex unit arcs for incidences, vertex -> sink
/// unit arcs for every vertex. Node ids: 0 = source, 1..|E| edge nodes,
/// |E|+1..|E|+n vertex nodes, last = sink. Arc order is deterministic:
/// all source arcs in edge order, then incidence arcs grouped by edge, then
/// sink arcs in vertex order.
struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  int hyperedge_count = 0;
  int vertex_count = 0;
  std::vector<FlowArc> arcs;

  int edge_node(int edge_index) const { return 1 + edge_index; }
  int vertex_node(int v) const { return 1 + hyperedge_count + v; }
};

/// Builds the network above. Requires an s-uniform board with s >= 2.
FlowNetwork build_network(const Hypergraph& h);

struct MaxFlowResult {
  long long value = 0;
  std::vector<int> arc_flow;               // parallel to FlowNetwork::arcs
  std::vector<int> min_cut_source_side;    // nodes reachable in the residual
};

/// Integral maximum flow (Dinic). Deterministic for a given arc order.
MaxFlowResult max_flow(const FlowNetwork& net);

/// If the maximum flow saturates every source arc (value = (s-1)|E|),
/// returns the (s-1)-uniform system whose i-th edge is the s-1 vertices
/// receiving unit flow from edge i: its edges are pairwise disjoint, each
/// contained in the original edge. Returns nullopt otherwise, which happens
/// exactly when some edge sub-collection outgrows its vertex support.
std::optional<Hypergraph> extract_shrunken_system(const Hypergraph& h);

}  // namespace mbg
