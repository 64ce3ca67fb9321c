#pragma once

// Brute-force oracles written independently of the library's own predicates
// and enumerators. Everything here is exponential; keep sizes tiny.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace oracle {

using Edges = std::vector<std::pair<int, int>>;  // 0-based, u < v

inline std::vector<Edges> all_graphs(int n) {
  Edges pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<Edges> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs.size()); ++m) {
    Edges e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (m >> i & 1) e.push_back(pairs[i]);
    out.push_back(e);
  }
  return out;
}

inline bool connected(int n, const Edges& e) {
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (auto [u, v] : e) comp[find(u)] = find(v);
  for (int v = 0; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

// H is a minor of G iff G has disjoint connected branch sets, one per vertex
// of H, with an edge between the sets of every edge of H.
inline bool has_minor(int n, const Edges& g, int h, const Edges& hedges) {
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g) adj[u][v] = adj[v][u] = 1;
  std::vector<int> lab(n, 0);  // 0 = unused, else branch set index + 1
  auto check = [&] {
    for (int b = 1; b <= h; ++b) {
      std::vector<int> members;
      for (int v = 0; v < n; ++v)
        if (lab[v] == b) members.push_back(v);
      if (members.empty()) return false;
      std::vector<char> seen(n, 0);
      std::vector<int> stack{members[0]};
      seen[members[0]] = 1;
      std::size_t reached = 1;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y = 0; y < n; ++y)
          if (adj[x][y] && lab[y] == b && !seen[y]) seen[y] = 1, ++reached, stack.push_back(y);
      }
      if (reached != members.size()) return false;
    }
    for (auto [a, b] : hedges) {
      bool ok = false;
      for (int x = 0; x < n && !ok; ++x)
        for (int y = 0; y < n && !ok; ++y) ok = adj[x][y] && lab[x] == a + 1 && lab[y] == b + 1;
      if (!ok) return false;
    }
    return true;
  };
  std::function<bool(int)> rec = [&](int v) {
    if (v == n) return check();
    for (int b = 0; b <= h; ++b) {
      lab[v] = b;
      if (rec(v + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

inline const Edges& k4() {
  static const Edges e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return e;
}
inline const Edges& k23() {
  static const Edges e{{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}};
  return e;
}
inline const Edges& diamond() {
  static const Edges e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}};
  return e;
}

// Connected members by forbidden minors.
inline bool cactus(int n, const Edges& e) { return connected(n, e) && !has_minor(n, e, 4, diamond()); }
inline bool outerplanar(int n, const Edges& e) {
  return connected(n, e) && !has_minor(n, e, 4, k4()) && !has_minor(n, e, 5, k23());
}
inline bool series_parallel(int n, const Edges& e) { return connected(n, e) && !has_minor(n, e, 4, k4()); }

inline bool p4_free(int n, const Edges& e) {
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : e) adj[u][v] = adj[v][u] = 1;
  std::vector<int> q(4);
  // Try every ordered 4-tuple as a path a-b-c-d.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          if (adj[a][b] && adj[b][c] && adj[c][d] && !adj[a][c] && !adj[a][d] && !adj[b][d]) return false;
        }
  return true;
}

inline std::string edges_text(int n, Edges e) {
  std::sort(e.begin(), e.end());
  std::string s = std::to_string(n) + " " + std::to_string(e.size()) + "\n";
  for (auto [u, v] : e) s += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return s;
}

// Dissections of the p-gon as sorted diagonal lists (1-based vertices).
inline std::vector<Edges> dissections(int p) {
  Edges diags;
  for (int u = 1; u <= p; ++u)
    for (int v = u + 2; v <= p; ++v)
      if (!(u == 1 && v == p)) diags.emplace_back(u, v);
  auto cross = [](std::pair<int, int> a, std::pair<int, int> b) {
    return (a.first < b.first && b.first < a.second && a.second < b.second) ||
           (b.first < a.first && a.first < b.second && b.second < a.second);
  };
  std::vector<Edges> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << diags.size()); ++m) {
    Edges e;
    bool ok = true;
    for (std::size_t i = 0; i < diags.size() && ok; ++i)
      if (m >> i & 1) {
        for (auto& f : e) ok = ok && !cross(f, diags[i]);
        e.push_back(diags[i]);
      }
    if (ok) out.push_back(e);
  }
  return out;
}

using Perm = std::vector<std::uint32_t>;

inline Perm inflate(const Perm& sigma, const std::vector<Perm>& parts) {
  // Value block of part i starts after all parts whose sigma value is smaller.
  Perm out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    std::uint32_t base = 0;
    for (std::size_t j = 0; j < sigma.size(); ++j)
      if (sigma[j] < sigma[i]) base += static_cast<std::uint32_t>(parts[j].size());
    for (auto x : parts[i]) out.push_back(base + x);
  }
  return out;
}

// Closure of {1} under inflation of 12, 21 and the given simples, by size.
inline std::vector<std::set<Perm>> closure(const std::vector<Perm>& simples, std::size_t max_n) {
  std::vector<std::set<Perm>> by(max_n + 1);
  by[1].insert({1});
  std::vector<Perm> roots = simples;
  roots.push_back({1, 2});
  roots.push_back({2, 1});
  for (std::size_t n = 2; n <= max_n; ++n)
    for (const auto& r : roots) {
      const std::size_t k = r.size();
      if (k > n) continue;
      // Compositions of n into k positive parts.
      std::vector<std::size_t> sizes(k, 1);
      std::function<void(std::size_t, std::size_t)> comp = [&](std::size_t i, std::size_t left) {
        if (i + 1 == k) {
          sizes[i] = left;
          std::vector<Perm> parts(k);
          std::function<void(std::size_t)> pick = [&](std::size_t j) {
            if (j == k) {
              by[n].insert(inflate(r, parts));
              return;
            }
            for (const auto& p : by[sizes[j]]) {
              parts[j] = p;
              pick(j + 1);
            }
          };
          pick(0);
          return;
        }
        for (std::size_t s = 1; s + (k - i - 1) <= left; ++s) {
          sizes[i] = s;
          comp(i + 1, left - s);
        }
      };
      comp(0, n);
    }
  return by;
}

inline double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected) {
  double stat = 0;
  for (std::size_t i = 0; i < observed.size(); ++i)
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  if (observed.size() < 2) return 1;
  boost::math::chi_squared_distribution<double> d(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(d, stat));
}

// Pearson test of tallied keys against target probabilities; a key outside
// the target map yields p = 0.
template <class K>
double tally_p(const std::map<K, double>& target, const std::map<K, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto& [k, c] : counts) {
    if (!target.count(k)) return 0;
    total += c;
  }
  std::vector<double> obs, exp;
  for (auto& [k, p] : target) {
    auto it = counts.find(k);
    obs.push_back(it == counts.end() ? 0.0 : static_cast<double>(it->second));
    exp.push_back(p * static_cast<double>(total));
  }
  return chi_square_p(obs, exp);
}

}  // namespace oracle
