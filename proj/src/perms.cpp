#include "enrich/perms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "enrich/errors.hpp"
#include "enrich/series.hpp"

namespace enrich {

bool is_permutation(const Permutation& p) {
  std::vector<char> seen(p.size() + 1, 0);
  for (auto v : p) {
    if (v == 0 || v > p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i] - 1] = static_cast<std::uint32_t>(i + 1);
  return q;
}

Permutation parse_permutation(const std::string& s) {
  Permutation p;
  const bool compact = std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) || c == ','; });
  if (compact) {
    for (unsigned char c : s) {
      if (!std::isdigit(c)) throw DomainError("bad permutation: " + s);
      p.push_back(c - '0');
    }
  } else {
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    long long v;
    while (in >> v) {
      if (v <= 0) throw DomainError("bad permutation: " + s);
      p.push_back(static_cast<std::uint32_t>(v));
    }
    if (!in.eof()) throw DomainError("bad permutation: " + s);
  }
  if (p.empty() || !is_permutation(p)) throw DomainError("not a permutation: " + s);
  return p;
}

std::string permutation_text(const Permutation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p[i]);
  }
  return out;
}

Permutation substitute(const Permutation& sigma, const std::vector<Permutation>& nus) {
  if (sigma.size() != nus.size()) throw DomainError("substitute: arity mismatch");
  // offset[v] = total size of the blocks placed at values below v.
  std::vector<std::uint32_t> offset(sigma.size() + 2, 0);
  for (std::size_t i = 0; i < sigma.size(); ++i) offset[sigma[i] + 1] = static_cast<std::uint32_t>(nus[i].size());
  for (std::size_t v = 1; v <= sigma.size() + 1; ++v) offset[v] += offset[v - 1];
  Permutation out;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (auto x : nus[i]) out.push_back(offset[sigma[i]] + x);
  return out;
}

bool is_simple(const Permutation& p) {
  const std::size_t n = p.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t lo = p[i], hi = p[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
      if (hi - lo == j - i && j - i + 1 < n) return false;
    }
  }
  return true;
}

SimpleSet SimpleSet::from(std::vector<Permutation> perms) {
  SimpleSet s;
  std::set<Permutation> seen;
  for (auto& p : perms) {
    if (!is_permutation(p) || !is_simple(p)) throw DomainError("not a simple permutation: " + permutation_text(p));
    if (!seen.insert(p).second) throw DomainError("repeated simple: " + permutation_text(p));
    if (s.counts.size() <= p.size()) s.counts.resize(p.size() + 1, 0);
    ++s.counts[p.size()];
  }
  s.perms = std::move(perms);
  return s;
}

SimpleSet SimpleSet::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::vector<Permutation> perms;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto b = line.find_last_not_of(" \t\r");
    perms.push_back(parse_permutation(line.substr(a, b - a + 1)));
  }
  return from(std::move(perms));
}

std::size_t SimpleSet::min_size() const {
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k]) return k;
  return 0;
}

Integer q_coefficient(const SimpleSet& s, std::size_t k) {
  if (k < 2) return 0;
  // The symbol of size k, plus compositions of k into j parts per simple of size j.
  Integer q = 1;
  for (std::size_t j = 1; j < s.counts.size() && j <= k; ++j) {
    if (!s.counts[j]) continue;
    Integer c = 1;
    for (std::size_t i = 0; i < j - 1; ++i) c = c * (k - 1 - i) / (i + 1);
    q += c * s.counts[j];
  }
  return q;
}

Real q_value(const SimpleSet& s, const Real& x) {
  const Real u = x / (1 - x);
  Real v = x * u;
  for (std::size_t j = 1; j < s.counts.size(); ++j)
    if (s.counts[j]) v += Real(s.counts[j]) * pow(u, j);
  return v;
}

namespace {

Real s_derivative(const SimpleSet& s, const Real& x) {
  Real v = 0;
  for (std::size_t j = 1; j < s.counts.size(); ++j)
    if (s.counts[j]) v += Real(s.counts[j] * j) * pow(x, j - 1);
  return v;
}

}  // namespace

PermConstants solve_perm_constants(const SimpleSet& s) {
  if (s.perms.empty()) throw NoSimples("empty set of simple permutations");
  // f(0) = -1 and f increases.
  auto f = [&](const Real& k) { return s_derivative(s, k) - 2 / ((1 + k) * (1 + k)) + 1; };
  Real lo = 0, hi = 1;
  while (f(hi) <= 0) hi *= 2;
  for (int i = 0; i < 220; ++i) {
    const Real mid = (lo + hi) / 2;
    (f(mid) <= 0 ? lo : hi) = mid;
  }
  PermConstants c;
  c.kappa = (lo + hi) / 2;
  c.y = c.kappa / (1 + c.kappa);
  return c;
}

ZetaSpec packed_zeta(const SimpleSet& s, const Real& y) {
  auto sp = std::make_shared<const SimpleSet>(s);
  ZetaSpec z;
  z.name = "packed";
  z.omega = {0};
  z.radius = 1 / y;
  const Real p0 = 1 - q_value(s, y) / y;
  z.prob = [sp, y, p0](std::size_t k) -> Real {
    if (k == 0) return p0;
    if (k == 1) return Real(0);
    return Real(q_coefficient(*sp, k)) * pow(y, k - 1);
  };
  z.pgf = [sp, y, p0](const Real& x) -> Real { return p0 + q_value(*sp, x * y) / y; };
  return z;
}

QSampler::QSampler(std::shared_ptr<const SimpleSet> s, double t) : s_(std::move(s)), t_(t) {
  if (!(t > 0) || !(t < 1)) throw DomainError("decoration sampler: t must lie in (0, 1)");
  const double u = t / (1 - t);
  star_weight_ = t * u;
  value_ = star_weight_;
  for (const auto& p : s_->perms) {
    simple_weight_.push_back(std::pow(u, static_cast<double>(p.size())));
    value_ += simple_weight_.back();
  }
}

std::optional<QObject> QSampler::draw(RngStream& rng, std::size_t budget) const {
  QObject q;
  if (rng.uniform() * value_ < star_weight_) {
    q.size = 2 + sample_geometric(t_, rng);
    if (q.size > budget) return std::nullopt;
    return q;
  }
  q.star = false;
  q.simple = static_cast<std::uint32_t>(sample_categorical(simple_weight_, rng));
  const std::size_t m = s_->perms[q.simple].size();
  q.parts.resize(m);
  for (auto& c : q.parts) {
    c = static_cast<std::uint32_t>(1 + sample_geometric(t_, rng));
    q.size += c;
    if (q.size > budget) return std::nullopt;
  }
  return q;
}

QObject QSampler::draw_exact(std::size_t k, RngStream& rng, std::uint64_t* attempts) const {
  for (;;) {
    if (attempts) ++*attempts;
    auto q = draw(rng, k);
    if (q && q->size == k) return std::move(*q);
  }
}

std::shared_ptr<const PermClass> make_perm_class(SimpleSet s, std::optional<double> t0) {
  auto cls = std::make_shared<PermClass>();
  cls->constants = solve_perm_constants(s);
  cls->packed = make_leafcond_class(packed_zeta(s, cls->constants.y));
  const double y = static_cast<double>(cls->constants.y);
  cls->t0 = t0 ? *t0 : std::sqrt(y);
  if (!(cls->t0 > y) || !(cls->t0 < 1)) throw DomainError("decoration parameter must lie strictly between y and 1");
  cls->simples = std::make_shared<const SimpleSet>(std::move(s));
  cls->q = std::make_shared<const QSampler>(cls->simples, cls->t0);
  return cls;
}

PackedTree sample_packed_tree(const PermClass& cls, std::size_t n, RngStream& rng, PermStats* stats) {
  if (n == 0) throw DomainError("permutation size must be positive");
  PackedTree p;
  p.shape = sample_tree_leafcond(*cls.packed, n, rng, stats ? &stats->tree : nullptr);
  p.decor.resize(p.shape.size());
  std::uint64_t attempts = 0;
  for (std::size_t v = 0; v < p.shape.size(); ++v)
    if (p.shape.outdeg[v]) p.decor[v] = cls.q->draw_exact(p.shape.outdeg[v], rng, &attempts);
  if (stats) stats->decoration_attempts += attempts;
  return p;
}

bool is_canonical(const CanonicalTree& t) {
  const std::size_t N = t.shape.size();
  if (!is_valid_plane_tree(t.shape) || t.kind.size() != N || t.simple.size() != N) return false;
  const TreeIndex ix = index_tree(t.shape);
  for (std::size_t v = 0; v < N; ++v) {
    const auto d = t.shape.outdeg[v];
    switch (t.kind[v]) {
      case NodeKind::leaf:
        if (d) return false;
        break;
      case NodeKind::plus:
      case NodeKind::minus:
        if (d < 2) return false;
        for (auto i = ix.first_child[v]; i < ix.first_child[v + 1]; ++i)
          if (t.kind[ix.child[i]] == t.kind[v]) return false;
        break;
      case NodeKind::simple:
        if (t.simple[v] >= t.simples.size() || t.simples[t.simple[v]].size() != d) return false;
        break;
    }
  }
  return true;
}

CanonicalTree packed_to_canonical(const PackedTree& p, const SimpleSet& s, RootMode mode) {
  const TreeIndex ix = index_tree(p.shape);
  CanonicalTree out;
  out.simples = s.perms;
  out.shape.outdeg.reserve(2 * p.shape.size());
  out.kind.reserve(2 * p.shape.size());
  out.simple.reserve(2 * p.shape.size());

  // A subtree task emits packed vertex `at`; a group task emits an increasing
  // node over the packed children [at, at + count).
  struct Task {
    bool group;
    std::uint32_t at;
    std::uint32_t count;
    NodeKind parent;  // leaf stands for "no parent"
  };
  auto emit = [&](NodeKind k, std::uint32_t d, std::uint32_t simple) {
    out.shape.outdeg.push_back(d);
    out.kind.push_back(k);
    out.simple.push_back(simple);
  };
  auto resolve = [&](NodeKind parent) {
    switch (parent) {
      case NodeKind::leaf:
        return mode == RootMode::minus_root ? NodeKind::minus : NodeKind::plus;
      case NodeKind::minus:
        return NodeKind::plus;
      default:
        // Under an increasing node or a simple one.
        return NodeKind::minus;
    }
  };

  std::vector<Task> stack{{false, 0, 0, NodeKind::leaf}};
  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    if (task.group) {
      emit(NodeKind::plus, task.count, 0);
      for (std::uint32_t i = task.count; i-- > 0;)
        stack.push_back({false, ix.child[task.at + i], 0, NodeKind::plus});
      continue;
    }
    const std::uint32_t v = task.at;
    const std::uint32_t d = p.shape.outdeg[v];
    const std::uint32_t first = ix.first_child[v];
    if (d == 0) {
      emit(NodeKind::leaf, 0, 0);
      continue;
    }
    const QObject& q = p.decor[v];
    if (q.size != d) throw InvariantViolation("packed tree: decoration size differs from outdegree");
    if (q.star) {
      const NodeKind k = resolve(task.parent);
      emit(k, d, 0);
      for (std::uint32_t i = d; i-- > 0;) stack.push_back({false, ix.child[first + i], 0, k});
      continue;
    }
    emit(NodeKind::simple, static_cast<std::uint32_t>(q.parts.size()), q.simple);
    std::uint32_t off = d;
    for (std::size_t i = q.parts.size(); i-- > 0;) {
      off -= q.parts[i];
      if (q.parts[i] == 1)
        stack.push_back({false, ix.child[first + off], 0, NodeKind::simple});
      else
        stack.push_back({true, first + off, q.parts[i], NodeKind::simple});
    }
  }
  return out;
}

std::vector<std::uint32_t> canonical_to_inverse_list(const CanonicalTree& t) {
  const std::size_t N = t.shape.size();
  const TreeIndex ix = index_tree(t.shape);
  // Each vertex owns a linked list of labels; head/tail index into next.
  std::vector<std::uint32_t> head(N), tail(N), next;
  next.reserve(N);
  constexpr std::uint32_t kEnd = UINT32_MAX;
  std::uint32_t label = 0;
  std::vector<std::uint32_t> label_of(N, 0);
  for (std::size_t v = 0; v < N; ++v)
    if (!t.shape.outdeg[v]) label_of[v] = ++label;
  std::vector<std::uint32_t> order;  // positions of sigma^{-1}
  for (std::size_t v = N; v-- > 0;) {
    const std::uint32_t d = t.shape.outdeg[v];
    if (d == 0) {
      head[v] = tail[v] = static_cast<std::uint32_t>(next.size());
      next.push_back(kEnd);
      continue;
    }
    order.resize(d);
    switch (t.kind[v]) {
      case NodeKind::plus:
        for (std::uint32_t i = 0; i < d; ++i) order[i] = i;
        break;
      case NodeKind::minus:
        for (std::uint32_t i = 0; i < d; ++i) order[i] = d - 1 - i;
        break;
      case NodeKind::simple: {
        const Permutation& sg = t.simples.at(t.simple[v]);
        if (sg.size() != d) throw InvariantViolation("canonical tree: decoration size differs from outdegree");
        for (std::uint32_t i = 0; i < d; ++i) order[sg[i] - 1] = i;
        break;
      }
      case NodeKind::leaf:
        throw InvariantViolation("canonical tree: leaf with children");
    }
    const std::uint32_t first = ix.first_child[v];
    head[v] = head[ix.child[first + order[0]]];
    tail[v] = tail[ix.child[first + order[0]]];
    for (std::uint32_t i = 1; i < d; ++i) {
      const std::uint32_t c = ix.child[first + order[i]];
      next[tail[v]] = head[c];
      tail[v] = tail[c];
    }
  }
  // List nodes were created in reverse preorder of the leaves.
  std::vector<std::uint32_t> out;
  out.reserve(label);
  for (std::uint32_t at = head[0]; at != kEnd; at = next[at]) out.push_back(label - at);
  return out;
}

Permutation canonical_to_permutation(const CanonicalTree& t) { return inverse(canonical_to_inverse_list(t)); }

namespace {

bool is_interval(const Permutation& p, std::size_t a, std::size_t b) {
  const auto [lo, hi] = std::minmax_element(p.begin() + a, p.begin() + b);
  return *hi - *lo == b - a - 1;
}

Permutation standardize(const Permutation& p, std::size_t a, std::size_t b) {
  Permutation block(p.begin() + a, p.begin() + b);
  Permutation sorted = block;
  std::sort(sorted.begin(), sorted.end());
  for (auto& v : block) v = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin() + 1);
  return block;
}

void decompose_into(const Permutation& p, CanonicalTree& t) {
  const std::size_t n = p.size();
  auto emit = [&](NodeKind k, std::size_t d, std::uint32_t simple) {
    t.shape.outdeg.push_back(static_cast<std::uint32_t>(d));
    t.kind.push_back(k);
    t.simple.push_back(simple);
  };
  if (n == 1) {
    emit(NodeKind::leaf, 0, 0);
    return;
  }
  // Cut points of a sum or skew sum.
  std::vector<std::size_t> cuts{0};
  std::uint32_t hi = 0, lo = UINT32_MAX;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    hi = std::max(hi, p[i]);
    if (hi == i + 1) cuts.push_back(i + 1);
  }
  NodeKind kind = NodeKind::plus;
  if (cuts.size() == 1) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      lo = std::min(lo, p[i]);
      if (lo == n - i) cuts.push_back(i + 1);
    }
    kind = NodeKind::minus;
  }
  if (cuts.size() == 1) {
    // Simple root: blocks are the maximal proper intervals.
    cuts.clear();
    for (std::size_t a = 0; a < n;) {
      std::size_t b = a + 1;
      for (std::size_t e = n - (a == 0 ? 1 : 0); e > a + 1; --e)
        if (is_interval(p, a, e)) {
          b = e;
          break;
        }
      cuts.push_back(a);
      a = b;
    }
    cuts.push_back(n);
    Permutation quotient;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) quotient.push_back(p[cuts[i]]);
    quotient = standardize(quotient, 0, quotient.size());
    auto it = std::find(t.simples.begin(), t.simples.end(), quotient);
    if (it == t.simples.end()) it = t.simples.insert(t.simples.end(), quotient);
    emit(NodeKind::simple, quotient.size(), static_cast<std::uint32_t>(it - t.simples.begin()));
  } else {
    cuts.push_back(n);
    emit(kind, cuts.size() - 1, 0);
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) decompose_into(standardize(p, cuts[i], cuts[i + 1]), t);
}

}  // namespace

CanonicalTree decompose(const Permutation& p) {
  if (p.empty() || !is_permutation(p)) throw DomainError("decompose: not a permutation");
  CanonicalTree t;
  decompose_into(p, t);
  return t;
}

bool in_substitution_closure(const Permutation& p, const SimpleSet& s) {
  const CanonicalTree t = decompose(p);
  for (const auto& q : t.simples)
    if (std::find(s.perms.begin(), s.perms.end(), q) == s.perms.end()) return false;
  return true;
}

Permutation sample_permutation(const PermClass& cls, std::size_t n, RngStream& rng, PermStats* stats) {
  if (n == 0) throw DomainError("permutation size must be positive");
  if (n == 1) return {1};
  const SimpleSet& s = *cls.simples;
  if (n < s.min_size()) {
    // No gadget fits, so every packed tree has a symbol at the root and the
    // two root modes split the class evenly.
    if (stats) ++stats->pairs;
    const PackedTree p = sample_packed_tree(cls, n, rng, stats);
    const RootMode mode = rng.below(2) ? RootMode::plus_root : RootMode::minus_root;
    return canonical_to_permutation(packed_to_canonical(p, s, mode));
  }
  for (;;) {
    if (stats) ++stats->pairs;
    const PackedTree p1 = sample_packed_tree(cls, n, rng, stats);
    const PackedTree p2 = sample_packed_tree(cls, n, rng, stats);
    const bool g1 = !p1.decor[0].star && p1.shape.outdeg[0];
    const bool g2 = !p2.decor[0].star && p2.shape.outdeg[0];
    // Each output is hit by exactly b_n accepted pairs, b_n = gadget-rooted count.
    if (g1 && g2) return canonical_to_permutation(packed_to_canonical(p1, s, RootMode::minus_root));
    if (g1) return canonical_to_permutation(packed_to_canonical(p2, s, RootMode::plus_root));
    if (g2) return canonical_to_permutation(packed_to_canonical(p1, s, RootMode::minus_root));
  }
}

Integer count_permutations(const SimpleSet& s, std::size_t n) {
  if (n == 0) return 0;
  // P = x + P^2 / (1 - P) + S(P / (1 - P)), iterated to a fixed point.
  Series P(n);
  auto compose_s = [&](const Series& u) {
    Series out(n), pw(n);
    pw[0] = 1;
    for (std::size_t j = 1; j < s.counts.size(); ++j) {
      pw = ps_mul(pw, u);
      if (s.counts[j]) out = out + ps_scale(pw, Rational(s.counts[j]));
    }
    return out;
  };
  auto ratio = [](const Series& a) {
    Series u = ps_quasi_inverse(a);
    u[0] = 0;
    return u;
  };
  for (std::size_t it = 0; it <= n; ++it) {
    const Series u = ratio(P);
    Series next = ps_mul(P, u) + compose_s(u);
    next[1] += 1;
    P = next;
  }
  const Series u = ratio(P);
  const Series total = ps_scale(ps_mul(P, u), Rational(2)) + compose_s(u);
  Rational c = total[n] + (n == 1 ? 1 : 0);
  return boost::multiprecision::numerator(c);
}

}  // namespace enrich
