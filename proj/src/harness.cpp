#include "enrich/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <boost/math/distributions/chi_squared.hpp>

#include "enrich/errors.hpp"
#include "enrich/series.hpp"

namespace enrich {

namespace {

struct NamedClass {
  ClassId id;
  const char* name;
};

constexpr NamedClass kNames[] = {
    {ClassId::cactus, "cactus"},         {ClassId::outerplanar, "outerplanar"},
    {ClassId::series_parallel, "series-parallel"}, {ClassId::cayley, "cayley"},
    {ClassId::tree_leaves, "tree-leaves"}, {ClassId::dissection, "dissection"},
    {ClassId::cograph, "cograph"},       {ClassId::permutation, "permutation"},
};

std::optional<GraphClass> graph_class_of(ClassId c) {
  switch (c) {
    case ClassId::cactus:
      return GraphClass::cactus;
    case ClassId::outerplanar:
      return GraphClass::outerplanar;
    case ClassId::series_parallel:
      return GraphClass::series_parallel;
    default:
      return std::nullopt;
  }
}

SimpleSet default_simples() { return SimpleSet::from({{2, 4, 1, 3}, {3, 1, 4, 2}}); }

Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::string to_string(ClassId c) {
  for (const auto& e : kNames)
    if (e.id == c) return e.name;
  return "?";
}

ClassId parse_class_id(const std::string& s) {
  for (const auto& e : kNames)
    if (s == e.name) return e.id;
  if (s == "sp" || s == "series_parallel") return ClassId::series_parallel;
  if (s == "tree_leaves") return ClassId::tree_leaves;
  throw UsageError("unknown class: " + s);
}

const std::vector<ClassId>& all_class_ids() {
  static const std::vector<ClassId> ids = [] {
    std::vector<ClassId> v;
    for (const auto& e : kNames) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string tree_text(const PlaneTree& t) {
  std::string out;
  for (std::size_t i = 0; i < t.outdeg.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(t.outdeg[i]);
  }
  return out;
}

std::string canonical_text(const SampledObject& o) {
  switch (o.kind) {
    case ObjectKind::tree:
      return tree_text(o.tree);
    case ObjectKind::graph:
      return edge_list_text(o.graph);
    case ObjectKind::dissection:
      return dissection_text(o.dissection);
    case ObjectKind::permutation:
      return permutation_text(o.permutation);
  }
  return {};
}

ClassSpec::ClassSpec(ClassConfig cfg) : cfg_(std::move(cfg)), name_(to_string(cfg_.id)) {
  if (auto g = graph_class_of(cfg_.id)) {
    graph_ = make_graph_class(*g, cfg_.options);
    return;
  }
  switch (cfg_.id) {
    case ClassId::cayley:
      cayley_ = make_cayley_class(cfg_.options);
      break;
    case ClassId::tree_leaves:
      leaf_ = make_leafcond_class(cfg_.zeta ? *cfg_.zeta : dissection_zeta(), cfg_.options);
      break;
    case ClassId::dissection:
      leaf_ = cfg_.options.t0 ? make_leafcond_class(dissection_zeta(), cfg_.options) : dissection_class();
      break;
    case ClassId::cograph:
      leaf_ = cfg_.options.t0 ? make_leafcond_class(cograph_zeta(), cfg_.options) : cograph_class();
      break;
    case ClassId::permutation:
      perm_ = make_perm_class(cfg_.simples ? *cfg_.simples : default_simples(), cfg_.options.t0);
      break;
    default:
      break;
  }
}

SampledObject ClassSpec::sample(std::size_t n, RngStream& rng, SampleStats* stats) const {
  if (n == 0) throw DomainError("size must be at least 1");
  SampledObject o;
  if (graph_) {
    EnrichedStats es;
    const auto t = sample_enriched_tree(*graph_, n, rng, &es);
    o.kind = ObjectKind::graph;
    o.tree = t.skeleton;
    o.graph = enriched_to_graph(t);
    if (stats) {
      stats->bgw_rejections += es.bgw.rejections;
      stats->decoration_attempts += es.decoration_attempts;
    }
    return o;
  }
  switch (cfg_.id) {
    case ClassId::cayley: {
      EnrichedStats es;
      const auto t = sample_enriched_tree(*cayley_, n, rng, &es);
      o.kind = ObjectKind::tree;
      o.tree = t.skeleton;
      const auto parent = parent_labels(t);
      o.graph = LabeledGraph(n);
      for (std::size_t v = 0; v < n; ++v)
        if (parent[v]) o.graph.add_edge(static_cast<std::uint32_t>(v), parent[v] - 1);
      if (stats) stats->bgw_rejections += es.bgw.rejections;
      return o;
    }
    case ClassId::tree_leaves:
    case ClassId::dissection:
    case ClassId::cograph: {
      if (cfg_.id == ClassId::dissection && n < 2) throw Infeasible("dissection size must be at least 2");
      LeafCondStats ls;
      o.tree = sample_tree_leafcond(*leaf_, n, rng, &ls);
      if (stats) {
        stats->bgw_rejections += ls.bgw.rejections;
        stats->decoration_attempts += ls.tuple_attempts;
      }
      if (cfg_.id == ClassId::dissection) {
        o.kind = ObjectKind::dissection;
        o.dissection = degree_seq_to_dissection(o.tree);
      } else if (cfg_.id == ClassId::cograph) {
        o.kind = ObjectKind::graph;
        const unsigned parity = static_cast<unsigned>(rng.below(2));
        auto labels = random_permutation(n, rng);
        for (auto& l : labels) ++l;
        o.graph = cograph_from_tree(o.tree, parity, labels);
      }
      return o;
    }
    case ClassId::permutation: {
      PermStats ps;
      o.kind = ObjectKind::permutation;
      o.permutation = sample_permutation(*perm_, n, rng, &ps);
      if (stats) {
        stats->bgw_rejections += ps.tree.bgw.rejections;
        stats->decoration_attempts += ps.decoration_attempts + ps.tree.tuple_attempts;
        stats->pairs += ps.pairs;
      }
      return o;
    }
    default:
      throw UsageError("class cannot be sampled: " + name_);
  }
}

Integer ClassSpec::count(std::size_t n) const {
  if (n == 0) throw DomainError("size must be at least 1");
  if (auto g = graph_class_of(cfg_.id)) return count_class(*g, n);
  switch (cfg_.id) {
    case ClassId::cayley: {
      Integer c = 1;
      for (std::size_t i = 1; i < n; ++i) c *= n;
      return c;
    }
    case ClassId::dissection: {
      if (n < 2) return 0;
      // Plane trees by leaves without unary vertices: D = x + D^2 / (1 - D).
      Series d(n);
      for (std::size_t it = 0; it <= n; ++it) {
        Series q = ps_quasi_inverse(d);
        q[0] = 0;
        Series next = ps_mul(d, q);
        next[1] += 1;
        d = next;
      }
      return boost::multiprecision::numerator(d[n]);
    }
    case ClassId::cograph: {
      // Connected cographs T = x + e^T - 1 - T; all cographs 2T - x.
      Series t(n);
      for (std::size_t it = 0; it <= n; ++it) {
        Series next = ps_exp(t) - t;
        next[0] = 0;
        next[1] += 1;
        t = next;
      }
      Rational c = 2 * t[n] * Rational(factorial(n)) - (n == 1 ? 1 : 0);
      return boost::multiprecision::numerator(c);
    }
    case ClassId::permutation:
      return count_permutations(*perm_->simples, n);
    default:
      throw UsageError("count is not defined for " + name_);
  }
}

const OffspringDistribution& ClassSpec::offspring() const {
  if (graph_) return *graph_->offspring;
  if (cayley_) return *cayley_->offspring;
  if (leaf_) return *leaf_->xi;
  return *perm_->packed->xi;
}

const TiltParams& ClassSpec::tilt() const {
  if (graph_) return graph_->tilt;
  if (cayley_) return cayley_->tilt;
  if (leaf_) return leaf_->tilt;
  return perm_->packed->tilt;
}

std::optional<Real> ClassSpec::weight_radius() const {
  if (graph_) return graph_->weights.radius;
  if (cayley_) return cayley_->weights.radius;
  if (leaf_) return leaf_->weights.radius;
  return perm_->packed->weights.radius;
}

std::vector<PlaneTree> enumerate_plane_trees(std::size_t n) {
  std::vector<PlaneTree> out;
  if (n == 0) return out;
  PlaneTree cur;
  cur.outdeg.resize(n);
  // open = number of vertices still to be placed in the current prefix.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t open) {
    if (i == n) {
      if (open == 0) out.push_back(cur);
      return;
    }
    if (open == 0) return;
    for (std::size_t d = n - i - 1 + 1; d-- > 0;) {
      if (open - 1 + d > n - i - 1) continue;
      cur.outdeg[i] = static_cast<std::uint32_t>(d);
      rec(i + 1, open - 1 + d);
    }
  };
  rec(0, 1);
  std::sort(out.begin(), out.end(), [](const PlaneTree& a, const PlaneTree& b) { return a.outdeg < b.outdeg; });
  return out;
}

bool is_p4_free(const LabeledGraph& g) {
  const std::size_t n = g.n;
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (std::size_t u = 0; u < n; ++u)
    for (auto v : g.adj[u]) a[u][v] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          const std::size_t q[4] = {i, j, k, l};
          int edges = 0, deg[4] = {0, 0, 0, 0};
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y)
              if (a[q[x]][q[y]]) ++edges, ++deg[x], ++deg[y];
          // Three edges with degrees 1, 1, 2, 2 is exactly a path.
          std::sort(deg, deg + 4);
          if (edges == 3 && deg[0] == 1 && deg[1] == 1 && deg[2] == 2) return false;
        }
  return true;
}

namespace {

std::vector<LabeledGraph> all_graphs(std::size_t n) {
  std::vector<Edge> pairs;
  for (std::uint32_t u = 1; u <= n; ++u)
    for (std::uint32_t v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
  std::vector<LabeledGraph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) e.push_back(pairs[i]);
    out.push_back(LabeledGraph::from_edges(n, e));
  }
  return out;
}

bool crosses(const Edge& a, const Edge& b) {
  auto inside = [](std::uint32_t x, const Edge& e) { return e.first < x && x < e.second; };
  if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second) return false;
  return inside(b.first, a) != inside(b.second, a);
}

std::vector<Dissection> all_dissections(std::size_t polygon) {
  std::vector<Edge> diags;
  for (std::uint32_t u = 1; u <= polygon; ++u)
    for (std::uint32_t v = u + 2; v <= polygon; ++v)
      if (!(u == 1 && v == polygon)) diags.emplace_back(u, v);
  std::vector<Dissection> out;
  std::vector<Edge> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == diags.size()) {
      Dissection d{polygon, chosen};
      std::sort(d.diagonals.begin(), d.diagonals.end());
      out.push_back(d);
      return;
    }
    rec(i + 1);
    if (std::none_of(chosen.begin(), chosen.end(), [&](const Edge& e) { return crosses(e, diags[i]); })) {
      chosen.push_back(diags[i]);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

// Plane trees with n leaves and no unary vertex.
std::vector<PlaneTree> trees_by_leaves(std::size_t n) {
  std::vector<PlaneTree> out;
  for (std::size_t v = n; v <= 2 * n - 1; ++v)
    for (auto& t : enumerate_plane_trees(v))
      if (std::count(t.outdeg.begin(), t.outdeg.end(), 0u) == static_cast<std::ptrdiff_t>(n) &&
          std::count(t.outdeg.begin(), t.outdeg.end(), 1u) == 0)
        out.push_back(std::move(t));
  return out;
}

void check_cap(std::size_t n, std::size_t cap, const std::string& what) {
  if (n > cap) throw DomainError(what + " enumeration is capped at size " + std::to_string(cap));
  if (n == 0) throw DomainError("size must be at least 1");
}

Oracle uniform_oracle(std::vector<std::string> objects) {
  std::sort(objects.begin(), objects.end());
  Oracle o;
  o.prob.assign(objects.size(), objects.empty() ? 0.0 : 1.0 / objects.size());
  o.objects = std::move(objects);
  return o;
}

Oracle weighted_tree_oracle(const std::vector<PlaneTree>& trees, const std::function<double(std::size_t)>& p) {
  std::vector<std::pair<std::string, double>> rows;
  double total = 0;
  for (const auto& t : trees) {
    double w = 1;
    for (auto d : t.outdeg) w *= p(d);
    if (w > 0) rows.emplace_back(tree_text(t), w), total += w;
  }
  std::sort(rows.begin(), rows.end());
  Oracle o;
  for (auto& [s, w] : rows) {
    o.objects.push_back(s);
    o.prob.push_back(w / total);
  }
  return o;
}

}  // namespace

Oracle enumerate_class(const ClassSpec& spec, std::size_t n) {
  std::vector<std::string> objects;
  if (auto g = graph_class_of(spec.id())) {
    check_cap(n, 6, "graph");
    for (const auto& gr : all_graphs(n))
      if (in_class(*g, gr)) objects.push_back(edge_list_text(gr));
    return uniform_oracle(std::move(objects));
  }
  switch (spec.id()) {
    case ClassId::cayley: {
      check_cap(n, 8, "tree");
      const auto& d = spec.offspring();
      return weighted_tree_oracle(enumerate_plane_trees(n), [&](std::size_t k) { return d.prob(k); });
    }
    case ClassId::tree_leaves: {
      check_cap(n, 7, "tree");
      const ZetaSpec& z = spec.leafcond()->zeta;
      if (z.omega != std::vector<std::size_t>{0} || z.prob(1) != 0)
        throw DomainError("tree-leaves enumeration needs omega = {0} and no unary vertices");
      return weighted_tree_oracle(trees_by_leaves(n), [&](std::size_t k) { return static_cast<double>(z.prob(k)); });
    }
    case ClassId::dissection:
      check_cap(n, 7, "dissection");
      if (n < 2) return uniform_oracle({});
      for (const auto& d : all_dissections(n + 1)) objects.push_back(dissection_text(d));
      return uniform_oracle(std::move(objects));
    case ClassId::cograph:
      check_cap(n, 5, "cograph");
      for (const auto& gr : all_graphs(n))
        if (is_p4_free(gr)) objects.push_back(edge_list_text(gr));
      return uniform_oracle(std::move(objects));
    case ClassId::permutation: {
      check_cap(n, 6, "permutation");
      Permutation p(n);
      std::iota(p.begin(), p.end(), 1u);
      do {
        if (in_substitution_closure(p, *spec.perm()->simples)) objects.push_back(permutation_text(p));
      } while (std::next_permutation(p.begin(), p.end()));
      return uniform_oracle(std::move(objects));
    }
    default:
      throw DomainError("no oracle for " + spec.name());
  }
}

UniformityReport chi_square_test(const std::string& name, std::size_t n, const Oracle& oracle,
                                 const TextSampler& sampler, std::uint64_t samples, std::uint64_t seed,
                                 unsigned jobs) {
  const std::size_t M = oracle.objects.size();
  if (M == 0) throw DomainError("empty oracle");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < M; ++i) index.emplace(oracle.objects[i], i);

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  const RngStream root(seed);
  std::vector<std::vector<std::uint64_t>> tallies(chunks);
  std::atomic<std::uint64_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        RngStream rng = root.split(c);
        std::vector<std::uint64_t> tally(M, 0);
        const std::uint64_t m = std::min(kChunk, samples - c * kChunk);
        for (std::uint64_t i = 0; i < m; ++i) {
          const std::string s = sampler(n, rng);
          auto it = index.find(s);
          if (it == index.end()) throw CorrectnessFailure(name + " n=" + std::to_string(n) + ": sample outside the oracle:\n" + s);
          ++tally[it->second];
        }
        tallies[c] = std::move(tally);
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
        next = chunks;
        return;
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < threads; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  std::vector<std::uint64_t> obs(M, 0);
  for (const auto& t : tallies)
    for (std::size_t i = 0; i < M; ++i) obs[i] += t[i];

  UniformityReport r;
  r.class_name = name;
  r.n = n;
  r.samples = samples;
  r.support = M;
  r.dof = M - 1;
  for (std::size_t i = 0; i < M; ++i) {
    const double e = static_cast<double>(samples) * oracle.prob[i];
    const double o = static_cast<double>(obs[i]);
    if (obs[i]) ++r.observed_support;
    r.chi_square += (o - e) * (o - e) / e;
    r.max_rel_deviation = std::max(r.max_rel_deviation, std::abs(o / e - 1));
  }
  if (r.dof == 0) {
    r.p_value = 1;
  } else {
    const boost::math::chi_squared_distribution<double> dist(static_cast<double>(r.dof));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.chi_square));
  }
  return r;
}

UniformityReport uniformity_test(const ClassSpec& spec, std::size_t n, std::uint64_t samples, std::uint64_t seed,
                                 unsigned jobs) {
  const Oracle oracle = enumerate_class(spec, n);
  if (samples < 20 * oracle.objects.size())
    throw DomainError("uniformity test needs at least 20 samples per object");
  const TextSampler sampler = [&spec](std::size_t k, RngStream& rng) { return canonical_text(spec.sample(k, rng)); };
  return chi_square_test(spec.name(), n, oracle, sampler, samples, seed, jobs);
}

ScalingReport runtime_scaling(const ClassSpec& spec, const std::vector<std::size_t>& sizes, std::size_t reps,
                              std::uint64_t seed) {
  if (sizes.size() < 5) throw DomainError("scaling grid needs at least 5 sizes");
  if (!std::is_sorted(sizes.begin(), sizes.end(), std::less_equal<>()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end())
    throw DomainError("scaling sizes must be strictly increasing");
  if (reps == 0) throw DomainError("reps must be positive");
  ScalingReport r;
  r.class_name = spec.name();
  r.sizes = sizes;
  const RngStream root(seed);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    RngStream rng = root.split(i);
    const std::size_t n = sizes[i];
    (void)spec.sample(n, rng);  // warmup
    std::vector<double> secs;
    double rejections = 0, output = 0;
    for (std::size_t k = 0; k < reps; ++k) {
      SampleStats st;
      const auto t0 = std::chrono::steady_clock::now();
      const SampledObject o = spec.sample(n, rng, &st);
      const auto t1 = std::chrono::steady_clock::now();
      secs.push_back(std::chrono::duration<double>(t1 - t0).count());
      rejections += static_cast<double>(st.bgw_rejections);
      output += static_cast<double>(n + (o.kind == ObjectKind::graph ? o.graph.edge_count() : 0));
    }
    std::vector<double> sorted = secs;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                            : (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]) / 2;
    r.median_seconds.push_back(median);
    r.mean_seconds.push_back(std::accumulate(secs.begin(), secs.end(), 0.0) / reps);
    r.mean_rejections.push_back(rejections / reps);
    r.normalized.push_back(median / (output / reps));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log(static_cast<double>(sizes[i])), y = std::log(r.median_seconds[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  r.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return r;
}

RejectionReport rejection_scaling(const ClassSpec& spec, const std::vector<std::size_t>& sizes, std::size_t reps,
                                  std::uint64_t seed) {
  RejectionReport r;
  r.sizes = sizes;
  const RngStream root(seed);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    RngStream rng = root.split(i);
    double total = 0;
    for (std::size_t k = 0; k < reps; ++k) {
      BgwStats st;
      (void)sample_degree_multiset(sizes[i], spec.offspring(), rng, &st);
      total += static_cast<double>(st.rejections);
    }
    r.mean_rejections.push_back(total / reps);
    r.scaled.push_back(total / reps / std::sqrt(static_cast<double>(sizes[i])));
  }
  return r;
}

namespace {

void check(InvariantCheck& c, bool ok, const std::string& what) {
  ++c.checked;
  if (!ok) {
    if (!c.failed) c.first_failure = what;
    ++c.failed;
  }
}

bool block_sizes_match(const EnrichedTree<BlockDecoration>& t) {
  for (std::size_t v = 0; v < t.skeleton.size(); ++v) {
    std::size_t s = 0;
    for (const auto& b : t.decorations[v].payload.blocks) s += b.size;
    if (s != t.skeleton.outdeg[v] || t.decorations[v].size != s) return false;
  }
  return true;
}

}  // namespace

std::vector<InvariantCheck> run_invariant_suite(std::uint64_t seed, std::size_t samples_per_class) {
  InvariantCheck prefix{"prefix positivity of degree sequences", 0, 0, {}};
  InvariantCheck decor{"decoration size equals outdegree", 0, 0, {}};
  InvariantCheck omega{"omega count preserved by spine blow-up", 0, 0, {}};
  InvariantCheck graphs{"graph class predicates", 0, 0, {}};
  InvariantCheck diss{"non-crossing diagonals", 0, 0, {}};
  InvariantCheck p4{"cographs are P4-free", 0, 0, {}};
  InvariantCheck alt{"sign alternation in canonical trees", 0, 0, {}};
  InvariantCheck anchors{"permutation transform anchors", 0, 0, {}};

  const RngStream root(seed);
  std::uint64_t stream = 0;
  const std::size_t sizes[] = {1, 2, 3, 5, 8, 13, 40, 120};

  for (GraphClass g : {GraphClass::cactus, GraphClass::outerplanar, GraphClass::series_parallel}) {
    const auto cls = graph_class(g);
    for (std::size_t i = 0; i < samples_per_class; ++i) {
      RngStream rng = root.split(stream++);
      const std::size_t n = sizes[i % std::size(sizes)];
      const auto t = sample_enriched_tree(*cls, n, rng);
      const std::string tag = to_string(g) + " n=" + std::to_string(n);
      check(prefix, is_valid_plane_tree(t.skeleton) && t.skeleton.size() == n, tag);
      check(decor, block_sizes_match(t), tag);
      const auto gr = enriched_to_graph(t);
      check(graphs, in_class(g, gr) && gr.n == n, tag);
    }
  }

  const auto cayley = make_cayley_class();
  for (std::size_t i = 0; i < samples_per_class; ++i) {
    RngStream rng = root.split(stream++);
    const std::size_t n = sizes[i % std::size(sizes)];
    const auto t = sample_enriched_tree(*cayley, n, rng);
    check(prefix, is_valid_plane_tree(t.skeleton) && t.skeleton.size() == n, "cayley n=" + std::to_string(n));
  }

  for (const auto& cls : {dissection_class(), cograph_class()}) {
    for (std::size_t i = 0; i < samples_per_class; ++i) {
      RngStream rng = root.split(stream++);
      const std::size_t n = 2 + sizes[i % std::size(sizes)];
      const PlaneTree t = sample_tree_leafcond(*cls, n, rng);
      const std::string tag = cls->zeta.name + " n=" + std::to_string(n);
      check(prefix, is_valid_plane_tree(t), tag);
      check(omega, count_in_omega(t, cls->zeta.omega) == n, tag);
      if (cls == dissection_class()) {
        const Dissection d = degree_seq_to_dissection(t);
        check(diss, d.polygon == n + 1 && diagonals_noncrossing(d), tag);
      } else if (n <= 14) {
        auto labels = random_permutation(n, rng);
        for (auto& l : labels) ++l;
        check(p4, is_p4_free(cograph_from_tree(t, static_cast<unsigned>(rng.below(2)), labels)), tag);
      }
    }
  }

  const auto perm = make_perm_class(default_simples());
  for (std::size_t i = 0; i < samples_per_class; ++i) {
    RngStream rng = root.split(stream++);
    const std::size_t n = 1 + sizes[i % std::size(sizes)];
    const PackedTree p = sample_packed_tree(*perm, n, rng);
    const std::string tag = "packed n=" + std::to_string(n);
    check(prefix, is_valid_plane_tree(p.shape), tag);
    check(omega, count_in_omega(p.shape, {0}) == n, tag);
    bool sizes_ok = true;
    for (std::size_t v = 0; v < p.shape.size(); ++v)
      if (p.shape.outdeg[v] && p.decor[v].size != p.shape.outdeg[v]) sizes_ok = false;
    check(decor, sizes_ok, tag);
    for (RootMode mode : {RootMode::minus_root, RootMode::plus_root}) {
      const CanonicalTree c = packed_to_canonical(p, *perm->simples, mode);
      const Permutation q = canonical_to_permutation(c);
      const CanonicalTree back = decompose(q);
      check(alt, is_canonical(c) && is_canonical(back) && canonical_to_permutation(back) == q &&
                     in_substitution_closure(q, *perm->simples),
            tag);
    }
  }

  {
    // Root 3142 over [12[1, 21[1, 1]], 1, 21[1, 1], 12[1, 1]].
    CanonicalTree t;
    t.simples = {{3, 1, 4, 2}};
    const std::pair<NodeKind, std::uint32_t> nodes[] = {
        {NodeKind::simple, 4}, {NodeKind::plus, 2}, {NodeKind::leaf, 0}, {NodeKind::minus, 2}, {NodeKind::leaf, 0},
        {NodeKind::leaf, 0},   {NodeKind::leaf, 0}, {NodeKind::minus, 2}, {NodeKind::leaf, 0}, {NodeKind::leaf, 0},
        {NodeKind::plus, 2},   {NodeKind::leaf, 0}, {NodeKind::leaf, 0}};
    for (auto [k, d] : nodes) {
      t.shape.outdeg.push_back(d);
      t.kind.push_back(k);
      t.simple.push_back(0);
    }
    const auto list = canonical_to_inverse_list(t);
    check(anchors, list == std::vector<std::uint32_t>{4, 7, 8, 1, 3, 2, 6, 5}, "inverse list");
    check(anchors, canonical_to_permutation(t) == Permutation{4, 6, 5, 1, 8, 7, 2, 3}, "permutation");
    check(anchors, substitute({1, 3, 2, 4}, {{1}, {1, 2}, {1, 3, 2}, {2, 1}}) == Permutation{1, 5, 6, 2, 4, 3, 8, 7},
          "substitution");
  }

  return {prefix, decor, omega, graphs, diss, p4, alt, anchors};
}

std::string report_text(const UniformityReport& r) {
  std::ostringstream o;
  o << "class=" << r.class_name << "\nn=" << r.n << "\nsamples=" << r.samples << "\nsupport=" << r.support
    << "\nobserved_support=" << r.observed_support << "\nchi_square=" << r.chi_square << "\ndof=" << r.dof
    << "\np_value=" << r.p_value << "\nmax_rel_deviation=" << r.max_rel_deviation << "\n";
  return o.str();
}

std::string report_text(const ScalingReport& r) {
  std::ostringstream o;
  o << "class=" << r.class_name << "\nslope=" << r.slope << "\n";
  for (std::size_t i = 0; i < r.sizes.size(); ++i)
    o << "n=" << r.sizes[i] << " median_s=" << r.median_seconds[i] << " mean_s=" << r.mean_seconds[i]
      << " rejections=" << r.mean_rejections[i] << " normalized=" << r.normalized[i] << "\n";
  return o.str();
}

std::string report_csv_header() { return "class,n,median_s,mean_s,mean_rejections,normalized\n"; }

std::string report_csv(const ScalingReport& r) {
  std::ostringstream o;
  for (std::size_t i = 0; i < r.sizes.size(); ++i)
    o << r.class_name << ',' << r.sizes[i] << ',' << r.median_seconds[i] << ',' << r.mean_seconds[i] << ','
      << r.mean_rejections[i] << ',' << r.normalized[i] << "\n";
  return o.str();
}

}  // namespace enrich
