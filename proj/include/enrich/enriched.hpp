#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "enrich/bgw.hpp"
#include "enrich/boltzmann.hpp"
#include "enrich/dist.hpp"
#include "enrich/rng.hpp"

namespace enrich {

template <class Payload>
struct Decoration {
  std::size_t size = 0;  // number of child slots decorated
  Payload payload{};
};

struct Empty {
  friend bool operator==(const Empty&, const Empty&) = default;
};

struct ClassOptions {
  SolveOptions solve;
  std::optional<double> t0;  // overrides the default rule
};

// A tame enriched-tree class: weights, tilt, offspring law and the
// decoration sampler at t0.
template <class Payload>
struct EnrichedClass {
  std::string name;
  WeightSource weights;
  TiltParams tilt;
  std::shared_ptr<const OffspringDistribution> offspring;
  double t0 = 0;
  BoltzmannSampler<Decoration<Payload>> decoration;
  // Applied once per accepted decoration; places the child slots uniformly.
  std::function<void(Decoration<Payload>&, RngStream&)> finalize;
  // Optional replacement for rejection on the plain decoration sampler; must
  // return the same conditional law given the size.
  std::function<Decoration<Payload>(std::size_t, RngStream&, std::uint64_t*)> exact;
};

template <class Payload>
struct EnrichedTree {
  PlaneTree skeleton;
  std::vector<Decoration<Payload>> decorations;  // preorder, one per vertex
  std::vector<std::uint32_t> labels;            // labels[v] in 1..n
};

struct EnrichedStats {
  BgwStats bgw;
  std::uint64_t decoration_attempts = 0;
};

template <class Payload>
void relabel_uniform(EnrichedTree<Payload>& t, RngStream& rng) {
  const auto perm = random_permutation(t.skeleton.size(), rng);
  t.labels.resize(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) t.labels[v] = perm[v] + 1;
}

template <class Payload>
EnrichedTree<Payload> sample_enriched_tree(const EnrichedClass<Payload>& cls, std::size_t n,
                                           RngStream& rng, EnrichedStats* stats = nullptr) {
  EnrichedTree<Payload> out;
  out.skeleton = sample_bgw_conditioned(n, *cls.offspring, rng, stats ? &stats->bgw : nullptr);
  out.decorations.reserve(n);
  std::uint64_t attempts = 0;
  for (std::uint32_t k : out.skeleton.outdeg) {
    out.decorations.push_back(cls.exact ? cls.exact(k, rng, &attempts)
                                        : exact_size_by_rejection(cls.decoration, k, rng, &attempts));
    if (cls.finalize) cls.finalize(out.decorations.back(), rng);
  }
  if (stats) stats->decoration_attempts += attempts;
  relabel_uniform(out, rng);
  return out;
}

// Fills tilt, offspring and t0 from the weight source.
template <class Payload>
void prepare_class(EnrichedClass<Payload>& cls, const ClassOptions& opts) {
  cls.tilt = solve_tilt(cls.weights, opts.solve);
  cls.offspring = OffspringDistribution::from_weights(cls.weights, cls.tilt);
  cls.t0 = opts.t0 ? *opts.t0 : default_t0(cls.tilt, cls.weights.radius);
  const double tau = static_cast<double>(cls.tilt.tau);
  if (!(cls.t0 > tau) || (cls.weights.radius && !(cls.t0 < static_cast<double>(*cls.weights.radius))))
    throw DomainError(cls.name + ": t0 must lie strictly between tau and the radius");
}

// R = SET (Cayley trees, Poisson(1) offspring).
WeightSource cayley_weights();
std::shared_ptr<const EnrichedClass<Empty>> make_cayley_class(const ClassOptions& opts = {});

// R = 1 + x^2 (full binary trees).
WeightSource binary_weights();
std::shared_ptr<const EnrichedClass<Empty>> make_binary_class(const ClassOptions& opts = {});

// Rooted labelled tree as parent labels: parent[label-1] = parent label, 0 at the root.
std::vector<std::uint32_t> parent_labels(const EnrichedTree<Empty>& t);

}  // namespace enrich
