#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace enrich {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Simple undirected graph on labels 1..n, stored 0-based.
struct LabeledGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> adj;

  LabeledGraph() = default;
  explicit LabeledGraph(std::size_t vertices) : n(vertices), adj(vertices) {}

  void add_edge(std::uint32_t u, std::uint32_t v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::size_t edge_count() const;
  // 1-based pairs with u < v, sorted.
  std::vector<Edge> edges() const;

  static LabeledGraph from_edges(std::size_t n, const std::vector<Edge>& one_based);
};

bool is_connected(const LabeledGraph& g);
// No loops and no repeated edges.
bool is_simple(const LabeledGraph& g);

// "n m" followed by one "u v" line per edge.
std::string edge_list_text(const LabeledGraph& g);

}  // namespace enrich
