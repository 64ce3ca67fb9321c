#include "enrich/graphs.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>

#include "enrich/errors.hpp"
#include "enrich/leafcond.hpp"

namespace enrich {

namespace mp = boost::multiprecision;

std::string to_string(GraphClass c) {
  switch (c) {
    case GraphClass::cactus: return "cactus";
    case GraphClass::outerplanar: return "outerplanar";
    case GraphClass::series_parallel: return "series-parallel";
  }
  return "?";
}

GraphClass parse_graph_class(const std::string& s) {
  if (s == "cactus") return GraphClass::cactus;
  if (s == "outerplanar") return GraphClass::outerplanar;
  if (s == "series-parallel" || s == "series_parallel" || s == "sp") return GraphClass::series_parallel;
  throw UsageError("unknown graph class: " + s);
}

// ---------------------------------------------------------------- values

namespace {

Real sp_g(const Real& s) {
  const Real e = mp::exp(s);
  return (2 * e - 1 - s) * (2 * e - 1);
}

Real sp_dg(const Real& s) {
  const Real e = mp::exp(s);
  return (2 * e - 1) * (2 * e - 1) + (2 * e - 1 - s) * 2 * e;
}

// Network singularity: x g'(S) = 1 together with S = x g(S).
const Real& sp_radius() {
  static const Real r = [] {
    Real lo = 0, hi = 1;
    for (int i = 0; i < 200; ++i) {
      const Real mid = (lo + hi) / 2;
      (mid * sp_dg(mid) - sp_g(mid) < 0 ? lo : hi) = mid;
    }
    return Real(lo / sp_g(lo));
  }();
  return r;
}

Real outerplanar_d(const Real& x) { return (1 + x - mp::sqrt(1 - 6 * x + x * x)) / 4; }

// exp of a scaled series with zero constant term.
std::vector<long double> scaled_exp(const std::vector<long double>& b) {
  std::vector<long double> e(b.size(), 0.0L);
  e[0] = 1;
  for (std::size_t k = 1; k < b.size(); ++k) {
    long double acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<long double>(j) * b[j] * e[k - j];
    e[k] = acc / static_cast<long double>(k);
  }
  return e;
}

std::vector<long double> conv(const std::vector<long double>& a, const std::vector<long double>& b) {
  std::vector<long double> r(a.size(), 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < r.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// B'_k s^k for k = 0..order.
std::vector<long double> scaled_bprime(GraphClass c, std::size_t order, long double s) {
  std::vector<long double> b(order + 1, 0.0L);
  if (order == 0) return b;
  switch (c) {
    case GraphClass::cactus: {
      long double pw = s;
      b[1] = s;
      for (std::size_t k = 2; k <= order; ++k) b[k] = (pw *= s) / 2;
      break;
    }
    case GraphClass::outerplanar: {
      std::vector<long double> d(order + 1, 0.0L);
      d[1] = s;
      for (std::size_t k = 2; k <= order; ++k) {
        long double acc = 0;
        for (std::size_t j = 1; j < k; ++j) acc += d[j] * d[k - j];
        d[k] = 2 * acc - s * d[k - 1];
      }
      b[1] = s;
      for (std::size_t k = 2; k <= order; ++k) b[k] = d[k] / 2;
      break;
    }
    case GraphClass::series_parallel: {
      const std::size_t n = order + 1;
      std::vector<long double> S(n, 0.0L), E(n, 0.0L), P(n, 0.0L), D(n, 0.0L);
      E[0] = 1;
      D[0] = 1;
      for (std::size_t k = 1; k < n; ++k) {
        // [x^(k-1)] (1 + P) D uses indices below k only.
        long double acc = D[k - 1];
        for (std::size_t j = 1; j < k; ++j) acc += P[j] * D[k - 1 - j];
        S[k] = s * acc;
        long double e = 0;
        for (std::size_t j = 1; j <= k; ++j) e += static_cast<long double>(j) * S[j] * E[k - j];
        E[k] = e / static_cast<long double>(k);
        P[k] = 2 * E[k] - S[k];
        D[k] = S[k] + P[k];
      }
      std::vector<long double> onep = P;
      onep[0] = 1;
      const auto r = conv(conv(onep, onep), D);
      const auto s2 = conv(S, S);
      const auto ps = conv(P, S);
      b[1] = s;
      for (std::size_t k = 2; k <= order; ++k) {
        b[k] += s * s / 2 * r[k - 2];
        b[k] += s * (2 * E[k - 1] - 2 * S[k - 1] - s2[k - 1] / 2 - ps[k - 1]);
      }
      break;
    }
  }
  return b;
}

}  // namespace

NetworkValues sp_networks(const Real& x) {
  if (x < 0 || x >= sp_radius()) throw DomainError("series-parallel networks: x outside [0, radius)");
  // Newton from the left on the convex x g(S) - S climbs to the smallest root.
  Real s = 0;
  const Real eps("1e-48");
  for (int i = 0; i < 4000; ++i) {
    const Real step = (x * sp_g(s) - s) / (x * sp_dg(s) - 1);
    s -= step;
    if (mp::abs(step) < eps) break;
  }
  const Real e = mp::exp(s);
  NetworkValues v;
  v.S = s;
  v.P = 2 * e - 2 - s;
  v.D = 1 + v.S + v.P;
  return v;
}

NetworkSeries sp_network_series(std::size_t order) {
  const Series X = Series::x(order);
  const Series one = Series::constant(Rational(1), order);
  const Series two = Series::constant(Rational(2), order);
  Series S(order), P(order), D = one;
  for (std::size_t pass = 0; pass <= order; ++pass) {
    S = X * (one + P) * D;
    P = ps_scale(ps_exp(S), Rational(2)) - two - S;
    D = one + S + P;
  }
  return {S, P, D};
}

Series bprime_series(GraphClass c, std::size_t order) {
  Series b(order);
  if (order == 0) return b;
  switch (c) {
    case GraphClass::cactus:
      b[1] = 1;
      for (std::size_t k = 2; k <= order; ++k) b[k] = Rational(1, 2);
      break;
    case GraphClass::outerplanar: {
      std::vector<Integer> d(order + 1, 0);
      d[1] = 1;
      for (std::size_t k = 2; k <= order; ++k) {
        Integer acc = 0;
        for (std::size_t j = 1; j < k; ++j) acc += d[j] * d[k - j];
        d[k] = 2 * acc - d[k - 1];
      }
      b[1] = 1;
      for (std::size_t k = 2; k <= order; ++k) b[k] = Rational(d[k], 2);
      break;
    }
    case GraphClass::series_parallel: {
      const auto [S, P, D] = sp_network_series(order);
      const Series X = Series::x(order);
      const Series one = Series::constant(Rational(1), order);
      const Series two = Series::constant(Rational(2), order);
      const Series E = ps_exp(S);
      const Series r = ps_scale(ps_shift((one + P) * (one + P) * D, 2), Rational(1, 2));
      const Series m = X * (ps_scale(E, Rational(2)) - two - ps_scale(S, Rational(2)) -
                            ps_scale(S * S, Rational(1, 2)));
      const Series rm = X * P * S;
      b = X + r + m - rm;
      break;
    }
  }
  return b;
}

Real bprime_radius(GraphClass c) {
  switch (c) {
    case GraphClass::cactus: return Real(1);
    case GraphClass::outerplanar: return 3 - 2 * mp::sqrt(Real(2));
    case GraphClass::series_parallel: return sp_radius();
  }
  return Real(0);
}

Real bprime_value(GraphClass c, const Real& x) {
  if (x < 0 || x >= bprime_radius(c)) throw DomainError("B': x outside [0, radius)");
  switch (c) {
    case GraphClass::cactus: return x + x * x / (2 * (1 - x));
    case GraphClass::outerplanar: return (x + outerplanar_d(x)) / 2;
    case GraphClass::series_parallel: {
      const auto v = sp_networks(x);
      const Real e = mp::exp(v.S);
      return x + x * x / 2 * (1 + v.P) * (1 + v.P) * v.D + x * (2 * e - 2 - 2 * v.S - v.S * v.S / 2) -
             x * v.P * v.S;
    }
  }
  return Real(0);
}

WeightSource bprime_weights(GraphClass c) {
  WeightSource w;
  w.name = to_string(c);
  w.phi = [c](const Real& x) -> Real { return mp::exp(bprime_value(c, x)); };
  if (c == GraphClass::cactus) {
    w.dphi = [](const Real& x) -> Real {
      const Real b = x + x * x / (2 * (1 - x));
      return mp::exp(b) * (1 + (2 * x - x * x) / (2 * (1 - x) * (1 - x)));
    };
  } else if (c == GraphClass::outerplanar) {
    w.dphi = [](const Real& x) -> Real {
      const Real dd = (1 + (3 - x) / mp::sqrt(1 - 6 * x + x * x)) / 4;
      return mp::exp((x + outerplanar_d(x)) / 2) * (1 + dd) / 2;
    };
  }
  w.coeff = [c](std::size_t k) { return ps_exp(bprime_series(c, k))[k]; };
  w.scaled_coeffs = [c](std::size_t order, long double scale) {
    return scaled_exp(scaled_bprime(c, order, scale));
  };
  w.radius = bprime_radius(c);
  w.tail_hint = c == GraphClass::cactus ? 0.5 : 0.8;
  return w;
}

// ---------------------------------------------------------------- B' samplers

BPrimeSampler::BPrimeSampler(GraphClass c, double t) : cls_(c), t_(t) {
  const Real x(t);
  if (!(t > 0) || x >= bprime_radius(c)) throw DomainError("B' sampler: t outside (0, radius)");
  value_ = static_cast<double>(bprime_value(c, x));
  if (c == GraphClass::outerplanar) d_ = static_cast<double>(outerplanar_d(x));
  if (c == GraphClass::series_parallel) {
    const auto v = sp_networks(x);
    s_ = static_cast<double>(v.S);
    p_ = static_cast<double>(v.P);
    dn_ = static_cast<double>(v.D);
  }
}

std::optional<Block> BPrimeSampler::draw(RngStream& rng, std::size_t budget) const {
  switch (cls_) {
    case GraphClass::cactus: return draw_cactus(rng, budget);
    case GraphClass::outerplanar: return draw_outerplanar(rng, budget);
    case GraphClass::series_parallel: return draw_sp(rng, budget);
  }
  return std::nullopt;
}

std::optional<Block> BPrimeSampler::draw_cactus(RngStream& rng, std::size_t budget) const {
  Block b;
  if (sample_bernoulli(t_ / value_, rng)) {
    b.size = 1;
    b.edges = {{0, 1}};
  } else {
    b.size = static_cast<std::uint32_t>(2 + sample_geometric(t_, rng));
    for (std::uint32_t i = 0; i < b.size; ++i) b.edges.emplace_back(i, i + 1);
    b.edges.emplace_back(0, b.size);
  }
  if (b.size > budget) return std::nullopt;
  return b;
}

std::optional<Block> BPrimeSampler::draw_outerplanar(RngStream& rng, std::size_t budget) const {
  Block b;
  // 2 B' = X + D and the size-1 dissection is also an edge.
  if (sample_bernoulli(t_ / (t_ + d_), rng)) {
    b.size = 1;
    b.edges = {{0, 1}};
    return budget >= 1 ? std::optional<Block>(b) : std::nullopt;
  }
  PlaneTree tree;
  std::size_t pending = 1, leaves = 0;
  const double leaf = t_ / d_;
  while (pending > 0) {
    --pending;
    if (sample_bernoulli(leaf, rng)) {
      tree.outdeg.push_back(0);
      if (++leaves > budget) return std::nullopt;
    } else {
      const auto m = sample_geometric_ge(d_, 2, rng);
      tree.outdeg.push_back(static_cast<std::uint32_t>(m));
      pending += m;
    }
  }
  b.size = static_cast<std::uint32_t>(leaves);
  if (leaves == 1) {
    b.edges = {{0, 1}};
    return b;
  }
  // Star sits at polygon position 1, local vertex j at position j + 1.
  const Dissection dis = degree_seq_to_dissection(tree);
  for (std::uint32_t i = 1; i < dis.polygon; ++i) b.edges.emplace_back(i - 1, i);
  b.edges.emplace_back(0, static_cast<std::uint32_t>(dis.polygon - 1));
  for (auto [u, v] : dis.diagonals) b.edges.emplace_back(u - 1, v - 1);
  return b;
}

std::optional<Block> BPrimeSampler::draw_sp(RngStream& rng, std::size_t budget) const {
  enum Kind : std::uint8_t { kLink, kNet, kSeries, kParallel };
  struct Task {
    Kind kind;
    bool star;  // first pole is the star vertex
    std::uint32_t a, b;
  };
  const double es = std::exp(s_);
  const double w_edge = t_;
  const double w_r = t_ * t_ / 2 * (1 + p_) * (1 + p_) * dn_;
  const double w_m = t_ * (2 * es - 2 - 2 * s_ - s_ * s_ / 2);

  Block blk;
  std::vector<Task> star, rest;
  for (;;) {
    // Candidate from B' + B'_(rm). A graph occurs once per decomposition
    // node holding the star, so acceptance with the inverse multiplicity
    // leaves B' Boltzmann. Star tasks run first: they alone fix the
    // multiplicity, and a rejected candidate is dropped unfinished.
    blk.edges.clear();
    star.clear();
    rest.clear();
    std::uint32_t next = 1;
    std::uint32_t multiplicity = 1;
    const double u = rng.uniform() * (w_edge + w_r + w_m);
    if (u < w_edge) {
      blk.size = 1;
      blk.edges = {{0, 1}};
      if (budget < 1) return std::nullopt;
      return blk;
    }
    if (u < w_edge + w_r) {
      const std::uint32_t a = next++, b = next++;
      rest.push_back({kNet, false, a, b});
      star.push_back({kLink, true, 0, b});
      star.push_back({kLink, true, 0, a});
    } else {
      // Root parallel node between the star and one vertex: an edge with at
      // least two series branches, or at least three branches.
      const std::uint32_t x = next++;
      std::uint64_t branches;
      if (sample_bernoulli((es - 1 - s_) / (2 * es - 2 - 2 * s_ - s_ * s_ / 2), rng)) {
        blk.edges.emplace_back(0, x);
        branches = sample_poisson_ge(s_, 2, rng);
      } else {
        branches = sample_poisson_ge(s_, 3, rng);
      }
      for (std::uint64_t i = 0; i < branches; ++i) star.push_back({kSeries, true, 0, x});
    }

    auto run = [&](std::vector<Task>& stack) {
      const Task task = stack.back();
      stack.pop_back();
      auto push = [&](Task t) { (t.star ? star : rest).push_back(t); };
      switch (task.kind) {
        case kLink:
          if (sample_bernoulli(1 / (1 + p_), rng))
            blk.edges.emplace_back(task.a, task.b);
          else
            push({kParallel, task.star, task.a, task.b});
          break;
        case kNet: {
          const double v = rng.uniform() * dn_;
          if (v < 1)
            blk.edges.emplace_back(task.a, task.b);
          else if (v < 1 + s_)
            push({kSeries, false, task.a, task.b});
          else
            push({kParallel, false, task.a, task.b});
          break;
        }
        case kSeries: {
          multiplicity += task.star;
          const std::uint32_t x = next++;
          push({kNet, false, x, task.b});
          push({kLink, task.star, task.a, x});
          break;
        }
        case kParallel: {
          multiplicity += task.star;
          std::uint64_t branches;
          if (sample_bernoulli((es - 1) / p_, rng)) {
            blk.edges.emplace_back(task.a, task.b);
            branches = sample_poisson_ge(s_, 1, rng);
          } else {
            branches = sample_poisson_ge(s_, 2, rng);
          }
          for (std::uint64_t i = 0; i < branches; ++i) push({kSeries, task.star, task.a, task.b});
          break;
        }
      }
    };

    while (!star.empty()) run(star);
    if (multiplicity > 1 && rng.below(multiplicity) != 0) continue;
    // Accepted: the remaining work only adds vertices, so overshooting the
    // budget at any point decides the outcome.
    while (!rest.empty()) {
      if (next - 1 > budget) return std::nullopt;
      run(rest);
    }
    if (next - 1 > budget) return std::nullopt;
    blk.size = next - 1;
    return blk;
  }
}

Block bprime_boltzmann(GraphClass c, double t, RngStream& rng) { return *BPrimeSampler(c, t).draw(rng); }

// ---------------------------------------------------------------- classes

std::shared_ptr<const EnrichedClass<BlockDecoration>> make_graph_class(GraphClass c, const ClassOptions& opts) {
  auto cls = std::make_shared<EnrichedClass<BlockDecoration>>();
  cls->name = to_string(c);
  cls->weights = bprime_weights(c);
  prepare_class(*cls, opts);
  auto bp = std::make_shared<const BPrimeSampler>(c, cls->t0);
  auto& s = cls->decoration;
  s.t = cls->t0;
  s.gen_value = std::exp(bp->value());
  auto draw_blocks = [bp](std::uint64_t count, RngStream& rng,
                         std::size_t budget) -> std::optional<Decoration<BlockDecoration>> {
    Decoration<BlockDecoration> d;
    for (std::uint64_t i = 0; i < count; ++i) {
      auto b = bp->draw(rng, budget - d.size);
      if (!b) return std::nullopt;
      b->slots.resize(b->size);
      std::iota(b->slots.begin(), b->slots.end(), static_cast<std::uint32_t>(d.size + 1));
      d.size += b->size;
      d.payload.blocks.push_back(std::move(*b));
    }
    return d;
  };
  s.draw = [bp, draw_blocks](RngStream& rng, std::size_t budget) {
    return draw_blocks(sample_poisson(bp->value(), rng), rng, budget);
  };
  // A nonempty target needs at least one block, so the empty set is skipped.
  cls->exact = [bp, draw_blocks](std::size_t k, RngStream& rng, std::uint64_t* attempts) {
    if (k == 0) {
      if (attempts) ++*attempts;
      return Decoration<BlockDecoration>{};
    }
    for (std::uint64_t a = 1;; ++a) {
      auto d = draw_blocks(sample_poisson_ge(bp->value(), 1, rng), rng, k);
      if (d && d->size == k) {
        if (attempts) *attempts += a;
        return std::move(*d);
      }
    }
  };
  s.size = [](const Decoration<BlockDecoration>& d) { return d.size; };
  s.has_size = [](std::size_t) { return true; };
  cls->finalize = [](Decoration<BlockDecoration>& d, RngStream& rng) {
    if (d.size < 2) return;
    const auto perm = random_permutation(d.size, rng);
    for (auto& b : d.payload.blocks)
      for (auto& slot : b.slots) slot = perm[slot - 1] + 1;
  };
  return cls;
}

std::shared_ptr<const EnrichedClass<BlockDecoration>> graph_class(GraphClass c) {
  static std::once_flag once[3];
  static std::shared_ptr<const EnrichedClass<BlockDecoration>> cache[3];
  const auto i = static_cast<std::size_t>(c);
  std::call_once(once[i], [&] { cache[i] = make_graph_class(c); });
  return cache[i];
}

Integer count_class(GraphClass c, std::size_t n) {
  if (n == 0) return 0;
  const Series a = ps_implicit_tree(ps_exp(bprime_series(c, n)));
  Integer f = 1;
  for (std::size_t i = 2; i < n; ++i) f *= i;
  const Rational v = a[n] * Rational(f);
  if (mp::denominator(v) != 1) throw InvariantViolation("count_class: non-integral count");
  return mp::numerator(v);
}

LabeledGraph enriched_to_graph(const EnrichedTree<BlockDecoration>& t) {
  const std::size_t n = t.skeleton.size();
  if (t.decorations.size() != n || t.labels.size() != n)
    throw InvariantViolation("enriched_to_graph: decoration or label count mismatch");
  const TreeIndex ix = index_tree(t.skeleton);
  LabeledGraph g(n);
  std::vector<char> used;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t d = t.skeleton.outdeg[v];
    const std::uint32_t* kids = ix.child.data() + ix.first_child[v];
    used.assign(d + 1, 0);
    std::size_t covered = 0;
    for (const Block& b : t.decorations[v].payload.blocks) {
      if (b.slots.size() != b.size) throw InvariantViolation("enriched_to_graph: block without slots");
      for (std::uint32_t s : b.slots) {
        if (s < 1 || s > d || used[s]) throw InvariantViolation("enriched_to_graph: inconsistent slot sets");
        used[s] = 1;
        ++covered;
      }
      auto vertex = [&](std::uint32_t local) { return local == 0 ? v : kids[b.slots[local - 1] - 1]; };
      for (auto [a, c] : b.edges) g.add_edge(t.labels[vertex(a)] - 1, t.labels[vertex(c)] - 1);
    }
    if (covered != d) throw InvariantViolation("enriched_to_graph: slots do not cover the children");
  }
  return g;
}

LabeledGraph sample_graph(GraphClass c, std::size_t n, RngStream& rng, EnrichedStats* stats) {
  if (n == 0) throw DomainError("graph size must be positive");
  return enriched_to_graph(sample_enriched_tree(*graph_class(c), n, rng, stats));
}

// ---------------------------------------------------------------- predicates

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::no_property,
                                         boost::property<boost::edge_index_t, std::size_t>>;

BoostGraph to_boost(const LabeledGraph& g, bool apex) {
  BoostGraph bg(g.n + (apex ? 1 : 0));
  std::size_t idx = 0;
  for (auto [u, v] : g.edges()) boost::add_edge(u - 1, v - 1, idx++, bg);
  if (apex)
    for (std::size_t u = 0; u < g.n; ++u) boost::add_edge(u, g.n, idx++, bg);
  return bg;
}

}  // namespace

bool is_cactus(const LabeledGraph& g) {
  const BoostGraph bg = to_boost(g, false);
  std::vector<std::size_t> comp(boost::num_edges(bg));
  const std::size_t k = boost::biconnected_components(bg, boost::make_iterator_property_map(
                                                              comp.begin(), boost::get(boost::edge_index, bg)));
  std::vector<std::size_t> edges(k, 0);
  std::vector<std::set<std::size_t>> verts(k);
  for (auto [it, end] = boost::edges(bg); it != end; ++it) {
    const std::size_t c = comp[boost::get(boost::edge_index, bg, *it)];
    ++edges[c];
    verts[c].insert(boost::source(*it, bg));
    verts[c].insert(boost::target(*it, bg));
  }
  for (std::size_t c = 0; c < k; ++c)
    if (edges[c] != 1 && edges[c] != verts[c].size()) return false;
  return true;
}

bool is_outerplanar(const LabeledGraph& g) {
  BoostGraph bg = to_boost(g, true);
  return boost::boyer_myrvold_planarity_test(bg);
}

bool is_series_parallel(const LabeledGraph& g) {
  std::vector<std::set<std::uint32_t>> adj(g.n);
  for (std::uint32_t u = 0; u < g.n; ++u)
    for (std::uint32_t v : g.adj[u])
      if (v != u) adj[u].insert(v);
  std::vector<char> gone(g.n, 0);
  std::vector<std::uint32_t> work(g.n);
  std::iota(work.begin(), work.end(), 0u);
  std::size_t left = g.n;
  // Vertices of degree <= 2 are removed (degree 2 is suppressed, parallel
  // edges merge); a K4-minor-free graph always has one.
  while (!work.empty()) {
    const std::uint32_t v = work.back();
    work.pop_back();
    if (gone[v] || adj[v].size() > 2) continue;
    std::vector<std::uint32_t> nb(adj[v].begin(), adj[v].end());
    for (std::uint32_t w : nb) adj[w].erase(v);
    adj[v].clear();
    gone[v] = 1;
    --left;
    if (nb.size() == 2) {
      adj[nb[0]].insert(nb[1]);
      adj[nb[1]].insert(nb[0]);
    }
    for (std::uint32_t w : nb) work.push_back(w);
  }
  return left == 0;
}

bool in_class(GraphClass c, const LabeledGraph& g) {
  if (!is_simple(g) || !is_connected(g)) return false;
  switch (c) {
    case GraphClass::cactus: return is_cactus(g);
    case GraphClass::outerplanar: return is_outerplanar(g);
    case GraphClass::series_parallel: return is_series_parallel(g);
  }
  return false;
}

}  // namespace enrich
