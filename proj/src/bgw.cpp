#include "enrich/bgw.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "enrich/errors.hpp"

namespace enrich {

bool is_valid_plane_tree(const PlaneTree& t) {
  if (t.outdeg.empty()) return false;
  std::int64_t open = 1;
  for (std::size_t i = 0; i < t.outdeg.size(); ++i) {
    open += static_cast<std::int64_t>(t.outdeg[i]) - 1;
    if (i + 1 < t.outdeg.size() && open <= 0) return false;
  }
  return open == 0;
}

TreeIndex index_tree(const PlaneTree& t) {
  const std::size_t n = t.size();
  TreeIndex ix;
  ix.parent.assign(n, 0);
  ix.depth.assign(n, 0);
  ix.first_child.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) ix.first_child[v + 1] = ix.first_child[v] + t.outdeg[v];
  ix.child.assign(n == 0 ? 0 : n - 1, 0);
  std::vector<std::uint32_t> fill(ix.first_child.begin(), ix.first_child.end() - 1);
  // Stack of vertices that still expect children.
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (v > 0) {
      while (fill[stack.back()] == ix.first_child[stack.back() + 1]) stack.pop_back();
      const std::uint32_t p = stack.back();
      ix.parent[v] = p;
      ix.depth[v] = ix.depth[p] + 1;
      ix.child[fill[p]++] = v;
    }
    if (t.outdeg[v] > 0) stack.push_back(v);
  }
  return ix;
}

namespace {

constexpr std::uint64_t kDirectTail = 48;

// Inversion on the tail table: j >= i with tail[j + 1] <= level < tail[j].
bool draw_tail(const OffspringDistribution& d, std::shared_ptr<const OffspringDistribution::Table>& tab,
               std::size_t i, std::uint64_t rem, std::uint64_t target, std::uint64_t& sum, DegreeMultiset& out,
               RngStream& rng, BgwStats* stats) {
  for (std::uint64_t r = rem; r > 0; --r) {
    if (sum + r * i > target) return false;
    const double level = tab->tail[i] * rng.uniform_pos();
    // Largest outdegree that keeps the remaining r - 1 draws feasible.
    const std::uint64_t limit = target - sum - (r - 1) * i;
    while (tab->tail.back() > level && tab->p.size() <= limit + 1) tab = d.table(2 * tab->p.size());
    const auto it = std::upper_bound(tab->tail.begin() + static_cast<std::ptrdiff_t>(i) + 1, tab->tail.end(), level,
                                     [](double lv, double t) { return t <= lv; });
    if (it == tab->tail.end()) return false;
    const std::size_t j = static_cast<std::size_t>(it - tab->tail.begin()) - 1;
    if (j > limit) return false;
    if (out.counts.size() <= j) out.counts.resize(j + 1, 0);
    ++out.counts[j];
    sum += j;
    if (stats) stats->max_index = std::max(stats->max_index, j);
  }
  return true;
}

}  // namespace

DegreeMultiset sample_degree_multiset(std::size_t n, const OffspringDistribution& d, RngStream& rng,
                                      BgwStats* stats, const BgwOptions& opts) {
  if (n == 0) throw DomainError("tree size must be positive");
  if (d.table(0)->p[0] <= 0) throw Infeasible("offspring law has no leaves");
  if ((n - 1) % d.span() != 0) throw Infeasible("size incompatible with the span of the offspring law");

  const double cap = opts.cap_factor * std::sqrt(static_cast<double>(n));
  const std::uint64_t target = n - 1;
  auto tab = d.table(32);
  DegreeMultiset out;
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (static_cast<double>(attempt) > cap) throw Infeasible("rejection cap reached");
    out.counts.clear();
    std::uint64_t rem = n, sum = 0;
    bool ok = true;
    for (std::size_t i = 0; rem > 0; ++i) {
      if (i >= tab->p.size()) tab = d.table(2 * i);
      // Remaining vertices all have outdegree >= i, so sum + rem * i is a lower bound.
      if (sum + rem * i > target) {
        ok = false;
        break;
      }
      if (rem <= kDirectTail) {
        // Few vertices left: draw each from the law conditioned on >= i
        // instead of walking a long tail one index at a time.
        ok = draw_tail(d, tab, i, rem, target, sum, out, rng, stats);
        rem = 0;
        break;
      }
      const double tl = tab->tail[i];
      const double ratio = tl > 0 ? std::min(1.0, tab->p[i] / tl) : 1.0;
      const std::uint64_t k = sample_binomial(rem, ratio, rng);
      out.counts.push_back(k);
      rem -= k;
      sum += k * i;
      if (stats) stats->max_index = std::max(stats->max_index, i);
    }
    if (ok && sum == target) return out;
    if (stats) ++stats->rejections;
  }
}

PlaneTree cyclic_rotate_to_tree(const std::vector<std::uint32_t>& seq) {
  const std::size_t n = seq.size();
  // The valid rotation starts right after the first minimum of the prefix sums of (d_i - 1).
  std::int64_t s = 0, best = 1;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s += static_cast<std::int64_t>(seq[i]) - 1;
    if (s < best) {
      best = s;
      arg = i;
    }
  }
  if (n == 0 || s != -1) throw DomainError("outdegrees must sum to n - 1");
  PlaneTree t;
  t.outdeg.resize(n);
  for (std::size_t j = 0; j < n; ++j) t.outdeg[j] = seq[(arg + 1 + j) % n];
  return t;
}

PlaneTree multiset_to_tree(const DegreeMultiset& m, RngStream& rng) {
  std::vector<std::uint32_t> seq;
  for (std::size_t j = 0; j < m.counts.size(); ++j)
    seq.insert(seq.end(), m.counts[j], static_cast<std::uint32_t>(j));
  shuffle(seq, rng);
  PlaneTree t = cyclic_rotate_to_tree(seq);
  assert(is_valid_plane_tree(t));
  return t;
}

PlaneTree sample_bgw_conditioned(std::size_t n, const OffspringDistribution& d, RngStream& rng,
                                 BgwStats* stats, const BgwOptions& opts) {
  return multiset_to_tree(sample_degree_multiset(n, d, rng, stats, opts), rng);
}

}  // namespace enrich
