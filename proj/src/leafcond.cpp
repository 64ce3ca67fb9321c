#include "enrich/leafcond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "enrich/errors.hpp"

namespace enrich {

namespace {

namespace mp = boost::multiprecision;

// Inversion by a forward walk; cheap when the mass sits on small indices.
std::size_t walk(const std::vector<double>& w, double total, RngStream& rng) {
  double u = rng.uniform() * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0) continue;
    last = i;
    if (u < w[i]) return i;
    u -= w[i];
  }
  return last;
}

}  // namespace

ZetaSpec dissection_zeta() {
  const Real c = 1 - 1 / mp::sqrt(Real(2));
  ZetaSpec z;
  z.name = "dissection";
  z.prob = [c](std::size_t k) -> Real {
    if (k == 0) return (1 - 2 * c) / (1 - c);
    if (k == 1) return Real(0);
    return mp::pow(c, static_cast<long>(k - 1));
  };
  z.pgf = [c](const Real& x) -> Real { return (1 - 2 * c) / (1 - c) + c * x * x / (1 - c * x); };
  z.omega = {0};
  z.radius = 1 / c;
  return z;
}

ZetaSpec cograph_zeta() {
  const Real l = mp::log(Real(2));
  ZetaSpec z;
  z.name = "cograph";
  z.prob = [l](std::size_t k) -> Real {
    if (k == 0) return 2 - 1 / l;
    if (k == 1) return Real(0);
    Real f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    return mp::pow(l, static_cast<long>(k - 1)) / f;
  };
  z.pgf = [l](const Real& x) -> Real { return 2 * (1 - 1 / l) + mp::exp(x * l) / l - x; };
  z.omega = {0};
  return z;
}

ZetaSpec finite_zeta(std::vector<Real> probs, std::vector<std::size_t> omega) {
  ZetaSpec z;
  z.name = "custom";
  auto p = std::make_shared<std::vector<Real>>(std::move(probs));
  z.prob = [p](std::size_t k) -> Real { return k < p->size() ? (*p)[k] : Real(0); };
  z.pgf = [p](const Real& x) -> Real {
    Real acc = 0;
    for (std::size_t k = p->size(); k-- > 0;) acc = acc * x + (*p)[k];
    return acc;
  };
  std::sort(omega.begin(), omega.end());
  omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
  z.omega = std::move(omega);
  return z;
}

bool in_omega(const ZetaSpec& z, std::size_t k) {
  return std::binary_search(z.omega.begin(), z.omega.end(), k);
}

void validate_zeta(const ZetaSpec& z, double tol) {
  if (z.omega.empty() || z.omega.front() != 0) throw DomainError(z.name + ": omega must contain 0");
  if (!(z.prob(0) > 0)) throw DomainError(z.name + ": P(zeta = 0) must be positive");
  bool branching = false;
  for (std::size_t k = 2; k < 64 && !branching; ++k) branching = z.prob(k) > 0;
  if (!branching) throw DomainError(z.name + ": P(zeta >= 2) must be positive");
  if (z.radius && !(*z.radius > 1)) throw DomainError(z.name + ": pgf radius must exceed 1");
  const Real h("1e-18");
  const Real mean = (z.pgf(1 + h) - z.pgf(1 - h)) / (2 * h);
  if (mp::abs(z.pgf(Real(1)) - 1) > tol) throw DomainError(z.name + ": probabilities do not sum to 1");
  if (mp::abs(mean - 1) > 1e-9) throw DomainError(z.name + ": E[zeta] must equal 1");
  for (std::size_t k = 0; k < 64; ++k)
    if (z.prob(k) < 0) throw DomainError(z.name + ": negative probability");
}

Real zeta_omega_part(const ZetaSpec& z, const Real& x) {
  Real acc = 0;
  for (std::size_t k : z.omega) acc += z.prob(k) * mp::pow(x, static_cast<long>(k));
  return acc;
}

Real zeta_complement_part(const ZetaSpec& z, const Real& x) {
  if (x == 0) return in_omega(z, 1) ? Real(0) : z.prob(1);
  return (z.pgf(x) - zeta_omega_part(z, x)) / x;
}

WeightSource xi_weights(const ZetaSpec& z) {
  WeightSource w;
  w.name = z.name + "-xi";
  w.phi = [z](const Real& x) -> Real { return zeta_omega_part(z, x) / (1 - zeta_complement_part(z, x)); };

  // The tuple class diverges where B reaches 1 or at the pgf radius.
  const Real one(1);
  Real lo = one, hi;
  bool found = false;
  if (z.radius) {
    Real gap = (*z.radius - lo) / 2;
    for (int j = 0; j < 160; ++j, gap /= 2) {
      hi = *z.radius - gap;
      if (zeta_complement_part(z, hi) >= one) {
        found = true;
        break;
      }
      lo = hi;
    }
  } else {
    hi = 2;
    for (int j = 0; j < 200; ++j, hi *= 2) {
      if (zeta_complement_part(z, hi) >= one) {
        found = true;
        break;
      }
      lo = hi;
    }
  }
  if (found) {
    for (int i = 0; i < 200; ++i) {
      const Real mid = (lo + hi) / 2;
      (zeta_complement_part(z, mid) < one ? lo : hi) = mid;
    }
    w.radius = lo;
  } else if (z.radius) {
    w.radius = *z.radius;
  }
  // Otherwise B is the constant P(zeta = 1) and the tuple class is entire.
  if (w.radius) w.tail_hint = static_cast<double>(1 / *w.radius);

  auto omega = z.omega;
  auto prob = z.prob;
  w.scaled_coeffs = [omega, prob](std::size_t order, long double scale) {
    auto member = [&](std::size_t k) { return std::binary_search(omega.begin(), omega.end(), k); };
    std::vector<long double> a(order + 1, 0.0L), b(order + 1, 0.0L), r(order + 1, 0.0L);
    long double pw = 1;
    for (std::size_t k = 0; k <= order; ++k, pw *= scale) {
      if (member(k)) a[k] = to_long_double(prob(k)) * pw;
      if (!member(k + 1)) b[k] = to_long_double(prob(k + 1)) * pw;
    }
    for (std::size_t k = 0; k <= order; ++k) {
      long double acc = a[k];
      for (std::size_t j = 1; j <= k; ++j) acc += b[j] * r[k - j];
      r[k] = acc / (1 - b[0]);
    }
    return r;
  };
  return w;
}

std::shared_ptr<const OffspringDistribution> xi_from_zeta(const ZetaSpec& z, const SolveOptions& opts) {
  validate_zeta(z);
  const WeightSource w = xi_weights(z);
  return OffspringDistribution::from_weights(w, solve_tilt(w, opts));
}

std::shared_ptr<const LeafCondClass> make_leafcond_class(ZetaSpec z, const ClassOptions& opts) {
  validate_zeta(z);
  auto cls = std::make_shared<LeafCondClass>();
  cls->zeta = z;
  cls->weights = xi_weights(z);
  cls->tilt = solve_tilt(cls->weights, opts.solve);
  cls->xi = OffspringDistribution::from_weights(cls->weights, cls->tilt);
  auto prob = z.prob;
  cls->zeta_table = std::make_shared<OffspringDistribution>(
      [prob](std::size_t order) {
        std::vector<long double> p(order + 1);
        for (std::size_t k = 0; k <= order; ++k) p[k] = to_long_double(prob(k));
        return p;
      },
      cls->tilt, 64);
  cls->rho = cls->weights.radius ? *cls->weights.radius : Real(std::numeric_limits<double>::infinity());
  cls->t0 = opts.t0 ? *opts.t0 : default_t0(cls->tilt, cls->weights.radius);
  if (!(cls->t0 > 1) || !(cls->t0 < static_cast<double>(cls->rho)))
    throw DomainError(z.name + ": t0 must lie strictly between 1 and the radius");
  return cls;
}

std::size_t DecorationTuple::size() const {
  return y + std::accumulate(xs.begin(), xs.end(), std::size_t{0});
}

TupleSampler::TupleSampler(const LeafCondClass& cls, double t, std::size_t K) {
  if (!(t > 1) || !(t < static_cast<double>(cls.rho))) throw DomainError("tuple sampler: t out of range");
  const auto tab = cls.zeta_table->table(K + 1);
  y_weight_.assign(K + 1, 0.0);
  x_weight_.assign(K + 1, 0.0);
  double pw = 1;
  for (std::size_t k = 0; k <= K; ++k, pw *= t) {
    if (in_omega(cls.zeta, k)) y_weight_[k] = tab->p[k] * pw;
    if (!in_omega(cls.zeta, k + 1)) x_weight_[k] = tab->p[k + 1] * pw;
  }
  // Geometric parameter of the truncated class, so that every tuple keeps
  // weight proportional to gamma t^size.
  q_ = std::accumulate(x_weight_.begin(), x_weight_.end(), 0.0);
  y_total_ = std::accumulate(y_weight_.begin(), y_weight_.end(), 0.0);
  if (!(q_ < 1)) throw DomainError("tuple sampler: t at or beyond the radius");
}

std::optional<DecorationTuple> TupleSampler::draw(RngStream& rng, std::size_t budget) const {
  DecorationTuple out;
  out.y = walk(y_weight_, y_total_, rng);
  if (out.y > budget) return std::nullopt;
  std::size_t used = out.y;
  const std::uint64_t len = sample_geometric(q_, rng);
  for (std::uint64_t i = 0; i < len; ++i) {
    const std::size_t x = walk(x_weight_, q_, rng);
    used += x;
    if (used > budget) return std::nullopt;
    out.xs.push_back(x);
  }
  return out;
}

DecorationTuple TupleSampler::draw_exact(std::size_t k, RngStream& rng, std::uint64_t* attempts) const {
  for (std::uint64_t a = 1;; ++a) {
    auto t = draw(rng, k);
    if (t && t->size() == k) {
      if (attempts) *attempts += a;
      return std::move(*t);
    }
  }
}

DecorationTuple sample_decoration_tuple(const LeafCondClass& cls, double t, std::size_t K, RngStream& rng) {
  return *TupleSampler(cls, t, K).draw(rng);
}

PlaneTree spine_blowup(const PlaneTree& skeleton, const std::vector<DecorationTuple>& tuples) {
  const std::size_t n = skeleton.size();
  if (tuples.size() != n) throw InvariantViolation("spine_blowup: one tuple per vertex required");
  const TreeIndex ix = index_tree(skeleton);
  PlaneTree out;
  out.outdeg.reserve(n);
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    const DecorationTuple& tup = tuples[v];
    if (tup.size() != skeleton.outdeg[v]) throw InvariantViolation("spine_blowup: tuple size mismatch");
    for (std::size_t x : tup.xs) out.outdeg.push_back(static_cast<std::uint32_t>(x + 1));
    out.outdeg.push_back(static_cast<std::uint32_t>(tup.y));
    // Expansion order: terminal's children, then spine vertices from the
    // deepest up; push in reverse so the stack pops them in that order.
    const std::uint32_t* kids = ix.child.data() + ix.first_child[v];
    std::size_t offset = 0;
    for (std::size_t x : tup.xs) {
      for (std::size_t j = offset + x; j-- > offset;) stack.push_back(kids[j]);
      offset += x;
    }
    for (std::size_t j = offset + tup.y; j-- > offset;) stack.push_back(kids[j]);
  }
  return out;
}

std::size_t count_in_omega(const PlaneTree& t, const std::vector<std::size_t>& omega) {
  std::size_t c = 0;
  for (std::uint32_t d : t.outdeg) c += std::binary_search(omega.begin(), omega.end(), std::size_t{d});
  return c;
}

PlaneTree sample_tree_leafcond(const LeafCondClass& cls, std::size_t n, RngStream& rng, LeafCondStats* stats) {
  const PlaneTree skeleton = sample_bgw_conditioned(n, *cls.xi, rng, stats ? &stats->bgw : nullptr);
  const std::size_t K = *std::max_element(skeleton.outdeg.begin(), skeleton.outdeg.end());
  const TupleSampler sampler(cls, cls.t0, K);
  std::vector<DecorationTuple> tuples;
  tuples.reserve(n);
  std::uint64_t attempts = 0;
  for (std::uint32_t k : skeleton.outdeg) tuples.push_back(sampler.draw_exact(k, rng, &attempts));
  if (stats) stats->tuple_attempts += attempts;
  return spine_blowup(skeleton, tuples);
}

Dissection degree_seq_to_dissection(const PlaneTree& t) {
  const std::size_t N = t.size();
  if (N < 3 || t.outdeg[0] < 2) throw DomainError("dissection needs a root with at least two children");
  const TreeIndex ix = index_tree(t);
  std::size_t leaves = 0;
  for (std::uint32_t d : t.outdeg) {
    if (d == 1) throw DomainError("dissection: outdegree 1 is not allowed");
    leaves += d == 0;
  }
  const std::size_t P = leaves + 1;
  std::vector<std::uint32_t> next(P, 0);
  std::vector<Edge> edge_of(N);  // counterclockwise boundary edge of each tree vertex
  std::vector<Edge> diag;
  std::uint32_t fresh = 0;

  const std::uint32_t d0 = t.outdeg[0];
  for (std::uint32_t i = 0; i <= d0; ++i) next[i] = (i + 1) % (d0 + 1);
  fresh = d0 + 1;
  edge_of[0] = {0, 1};
  for (std::uint32_t j = 0; j < d0; ++j) edge_of[ix.child[ix.first_child[0] + j]] = {j + 1, (j + 2) % (d0 + 1)};

  for (std::uint32_t v = 1; v < N; ++v) {
    const std::uint32_t d = t.outdeg[v];
    if (d == 0) continue;
    const auto [a, b] = edge_of[v];
    diag.emplace_back(a, b);
    std::uint32_t prev = a;
    for (std::uint32_t j = 0; j < d; ++j) {
      const std::uint32_t w = j + 1 < d ? fresh++ : b;
      next[prev] = w;
      edge_of[ix.child[ix.first_child[v] + j]] = {prev, w};
      prev = w;
    }
  }

  std::vector<std::uint32_t> pos(P, 0);
  std::uint32_t u = 0;
  for (std::uint32_t i = 1; i <= P; ++i, u = next[u]) pos[u] = i;
  Dissection out;
  out.polygon = P;
  for (auto [a, b] : diag) {
    std::uint32_t x = pos[a], y = pos[b];
    if (x > y) std::swap(x, y);
    out.diagonals.emplace_back(x, y);
  }
  std::sort(out.diagonals.begin(), out.diagonals.end());
  return out;
}

bool diagonals_noncrossing(const Dissection& d) {
  for (std::size_t i = 0; i < d.diagonals.size(); ++i) {
    const auto [a, b] = d.diagonals[i];
    if (!(a < b) || b > d.polygon || a < 1 || b - a < 2 || (a == 1 && b == d.polygon)) return false;
    for (std::size_t j = i + 1; j < d.diagonals.size(); ++j) {
      const auto [c, e] = d.diagonals[j];
      if ((a < c && c < b && b < e) || (c < a && a < e && e < b)) return false;
      if (a == c && b == e) return false;
    }
  }
  return true;
}

std::string dissection_text(const Dissection& d) {
  std::string s = "polygon " + std::to_string(d.polygon) + "\n";
  for (auto [u, v] : d.diagonals) s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

std::shared_ptr<const LeafCondClass> dissection_class() {
  static const std::shared_ptr<const LeafCondClass> cls = make_leafcond_class(dissection_zeta());
  return cls;
}

std::shared_ptr<const LeafCondClass> cograph_class() {
  static const std::shared_ptr<const LeafCondClass> cls = make_leafcond_class(cograph_zeta());
  return cls;
}

Dissection sample_dissection(std::size_t n, RngStream& rng) {
  if (n < 2) throw DomainError("dissection size must be at least 2");
  return degree_seq_to_dissection(sample_tree_leafcond(*dissection_class(), n, rng));
}

LabeledGraph cograph_from_tree(const PlaneTree& t, unsigned parity, const std::vector<std::uint32_t>& labels) {
  const std::size_t N = t.size();
  const TreeIndex ix = index_tree(t);
  // Leaves of the subtree of v occupy preorder-leaf positions [lo[v], hi[v]).
  std::vector<std::uint32_t> lo(N), hi(N), leaf_vertex;
  for (std::uint32_t v = 0; v < N; ++v)
    if (t.outdeg[v] == 0) {
      lo[v] = static_cast<std::uint32_t>(leaf_vertex.size());
      hi[v] = lo[v] + 1;
      leaf_vertex.push_back(v);
    }
  for (std::size_t v = N; v-- > 0;) {
    if (t.outdeg[v] == 0) continue;
    lo[v] = lo[ix.child[ix.first_child[v]]];
    hi[v] = hi[ix.child[ix.first_child[v + 1] - 1]];
  }
  if (labels.size() != leaf_vertex.size()) throw InvariantViolation("cograph: one label per leaf required");
  LabeledGraph g(leaf_vertex.size());
  // Degrees first so every adjacency list is allocated once.
  std::vector<std::uint64_t> deg(N, 0);
  for (std::uint32_t c = 1; c < N; ++c) {
    const std::uint32_t v = ix.parent[c];
    deg[c] = deg[v] + (ix.depth[v] % 2 == parity ? (hi[v] - lo[v]) - (hi[c] - lo[c]) : 0);
  }
  for (std::size_t a = 0; a < leaf_vertex.size(); ++a) g.adj[labels[a] - 1].reserve(deg[leaf_vertex[a]]);
  for (std::uint32_t v = 0; v < N; ++v) {
    if (t.outdeg[v] < 2 || ix.depth[v] % 2 != parity) continue;
    for (std::uint32_t i = ix.first_child[v]; i < ix.first_child[v + 1]; ++i)
      for (std::uint32_t j = i + 1; j < ix.first_child[v + 1]; ++j) {
        const std::uint32_t ci = ix.child[i], cj = ix.child[j];
        for (std::uint32_t a = lo[ci]; a < hi[ci]; ++a)
          for (std::uint32_t b = lo[cj]; b < hi[cj]; ++b) g.add_edge(labels[a] - 1, labels[b] - 1);
      }
  }
  return g;
}

LabeledGraph sample_cograph(std::size_t n, RngStream& rng) {
  if (n == 0) throw DomainError("cograph size must be positive");
  const PlaneTree t = sample_tree_leafcond(*cograph_class(), n, rng);
  const unsigned parity = static_cast<unsigned>(rng.below(2));
  auto perm = random_permutation(n, rng);
  for (auto& p : perm) ++p;
  return cograph_from_tree(t, parity, perm);
}

}  // namespace enrich
