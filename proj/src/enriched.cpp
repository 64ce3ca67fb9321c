#include "enrich/enriched.hpp"

#include <cmath>

namespace enrich {

WeightSource cayley_weights() {
  WeightSource w;
  w.name = "cayley";
  w.phi = [](const Real& x) { return Real(boost::multiprecision::exp(x)); };
  w.dphi = w.phi;
  w.coeff = [](std::size_t k) {
    Integer f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    return Rational(Integer(1), f);
  };
  w.scaled_coeffs = [](std::size_t order, long double scale) {
    std::vector<long double> c(order + 1);
    c[0] = 1;
    for (std::size_t k = 1; k <= order; ++k) c[k] = c[k - 1] * scale / static_cast<long double>(k);
    return c;
  };
  w.tail_hint = 0.2;
  return w;
}

WeightSource binary_weights() {
  WeightSource w;
  w.name = "binary";
  w.phi = [](const Real& x) { return Real(1 + x * x); };
  w.dphi = [](const Real& x) { return Real(2 * x); };
  w.coeff = [](std::size_t k) { return Rational(k == 0 || k == 2 ? 1 : 0); };
  w.scaled_coeffs = [](std::size_t order, long double scale) {
    std::vector<long double> c(order + 1, 0.0L);
    c[0] = 1;
    if (order >= 2) c[2] = scale * scale;
    return c;
  };
  return w;
}

std::shared_ptr<const EnrichedClass<Empty>> make_cayley_class(const ClassOptions& opts) {
  auto cls = std::make_shared<EnrichedClass<Empty>>();
  cls->name = "cayley";
  cls->weights = cayley_weights();
  prepare_class(*cls, opts);
  const double t = cls->t0;
  auto& s = cls->decoration;
  s.t = t;
  s.gen_value = std::exp(t);
  s.draw = [t](RngStream& rng, std::size_t) -> std::optional<Decoration<Empty>> {
    return Decoration<Empty>{static_cast<std::size_t>(sample_poisson(t, rng)), {}};
  };
  s.size = [](const Decoration<Empty>& d) { return d.size; };
  s.has_size = [](std::size_t) { return true; };
  return cls;
}

std::shared_ptr<const EnrichedClass<Empty>> make_binary_class(const ClassOptions& opts) {
  auto cls = std::make_shared<EnrichedClass<Empty>>();
  cls->name = "binary";
  cls->weights = binary_weights();
  prepare_class(*cls, opts);
  const double t = cls->t0;
  auto& s = cls->decoration;
  s.t = t;
  s.gen_value = 1 + t * t;
  const double p2 = t * t / (1 + t * t);
  s.draw = [p2](RngStream& rng, std::size_t) -> std::optional<Decoration<Empty>> {
    return Decoration<Empty>{sample_bernoulli(p2, rng) ? 2u : 0u, {}};
  };
  s.size = [](const Decoration<Empty>& d) { return d.size; };
  s.has_size = [](std::size_t k) { return k == 0 || k == 2; };
  return cls;
}

std::vector<std::uint32_t> parent_labels(const EnrichedTree<Empty>& t) {
  const TreeIndex ix = index_tree(t.skeleton);
  std::vector<std::uint32_t> parent(t.skeleton.size(), 0);
  for (std::size_t v = 1; v < t.skeleton.size(); ++v) parent[t.labels[v] - 1] = t.labels[ix.parent[v]];
  return parent;
}

}  // namespace enrich
