#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "enrich/enriched.hpp"
#include "enrich/labeled_graph.hpp"
#include "enrich/series.hpp"

namespace enrich {

enum class GraphClass { cactus, outerplanar, series_parallel };

std::string to_string(GraphClass c);
// Accepts "cactus", "outerplanar", "series-parallel" (also "sp").
GraphClass parse_graph_class(const std::string& s);

// A derived block: 2-connected graph (or single edge) on local vertices
// 0 = star and 1..size. slots[i - 1] is the child slot of local vertex i.
struct Block {
  std::uint32_t size = 0;
  std::vector<Edge> edges;
  std::vector<std::uint32_t> slots;
};

struct BlockDecoration {
  std::vector<Block> blocks;
};

// Exact exponential-generating-function coefficients of B' up to x^order.
Series bprime_series(GraphClass c, std::size_t order);
// Weights of R = SET(B'): Phi = exp(B').
WeightSource bprime_weights(GraphClass c);
// Closed-form or Newton value of B'(x) for 0 <= x < radius.
Real bprime_value(GraphClass c, const Real& x);
Real bprime_radius(GraphClass c);

// Series-parallel networks at x: S = x (1 + P) D, P = 2 e^S - 2 - S, D = 1 + S + P.
struct NetworkValues {
  Real S, P, D;
};
NetworkValues sp_networks(const Real& x);
// Exact network series S, P, D truncated at order.
struct NetworkSeries {
  Series S, P, D;
};
NetworkSeries sp_network_series(std::size_t order);

// Boltzmann sampler for B' at a fixed t. draw() returns nullopt when the
// block would exceed the budget.
class BPrimeSampler {
 public:
  BPrimeSampler(GraphClass c, double t);
  std::optional<Block> draw(RngStream& rng, std::size_t budget = kNoBudget) const;
  double value() const { return value_; }
  double t() const { return t_; }

 private:
  std::optional<Block> draw_cactus(RngStream& rng, std::size_t budget) const;
  std::optional<Block> draw_outerplanar(RngStream& rng, std::size_t budget) const;
  std::optional<Block> draw_sp(RngStream& rng, std::size_t budget) const;

  GraphClass cls_;
  double t_ = 0;
  double value_ = 0;
  double d_ = 0;               // outerplanar D(t)
  double s_ = 0, p_ = 0, dn_ = 0;  // series-parallel S, P, D at t
};

Block bprime_boltzmann(GraphClass c, double t, RngStream& rng);

std::shared_ptr<const EnrichedClass<BlockDecoration>> make_graph_class(GraphClass c, const ClassOptions& opts = {});
// Default-option instance, built once per process.
std::shared_ptr<const EnrichedClass<BlockDecoration>> graph_class(GraphClass c);

// Number of labelled connected members on n vertices.
Integer count_class(GraphClass c, std::size_t n);

// Glues each vertex's blocks at that vertex: local 0 is the vertex itself,
// local i its child in slot slots[i - 1]. Labels are kept as sampled.
LabeledGraph enriched_to_graph(const EnrichedTree<BlockDecoration>& t);

LabeledGraph sample_graph(GraphClass c, std::size_t n, RngStream& rng, EnrichedStats* stats = nullptr);

// Every block is a bridge or a cycle.
bool is_cactus(const LabeledGraph& g);
// Planar after adding a vertex adjacent to everything.
bool is_outerplanar(const LabeledGraph& g);
// No K4 minor: series-parallel reductions empty the graph.
bool is_series_parallel(const LabeledGraph& g);
bool in_class(GraphClass c, const LabeledGraph& g);

}  // namespace enrich
