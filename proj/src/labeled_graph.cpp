#include "enrich/labeled_graph.hpp"

#include <algorithm>

namespace enrich {

std::size_t LabeledGraph::edge_count() const {
  std::size_t deg = 0;
  for (const auto& a : adj) deg += a.size();
  return deg / 2;
}

std::vector<Edge> LabeledGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v : adj[u])
      if (u < v) out.emplace_back(u + 1, v + 1);
  std::sort(out.begin(), out.end());
  return out;
}

LabeledGraph LabeledGraph::from_edges(std::size_t n, const std::vector<Edge>& one_based) {
  LabeledGraph g(n);
  for (auto [u, v] : one_based) g.add_edge(u - 1, v - 1);
  return g;
}

bool is_connected(const LabeledGraph& g) {
  if (g.n == 0) return true;
  std::vector<char> seen(g.n, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    stack.pop_back();
    for (std::uint32_t v : g.adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == g.n;
}

bool is_simple(const LabeledGraph& g) {
  for (std::uint32_t u = 0; u < g.n; ++u) {
    std::vector<std::uint32_t> a = g.adj[u];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
    if (std::binary_search(a.begin(), a.end(), u)) return false;
  }
  return true;
}

std::string edge_list_text(const LabeledGraph& g) {
  const auto e = g.edges();
  std::string s = std::to_string(g.n) + " " + std::to_string(e.size()) + "\n";
  for (auto [u, v] : e) s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

}  // namespace enrich
