#pragma once

#include <cstdint>
#include <vector>

#include "enrich/dist.hpp"
#include "enrich/rng.hpp"

namespace enrich {

// Preorder outdegree sequence.
struct PlaneTree {
  std::vector<std::uint32_t> outdeg;

  std::size_t size() const { return outdeg.size(); }
  friend bool operator==(const PlaneTree&, const PlaneTree&) = default;
};

// Sum of outdegrees is n - 1 and every proper prefix keeps 1 + sum(d_i - 1) > 0.
bool is_valid_plane_tree(const PlaneTree& t);

// Parent and child arrays of a preorder tree; children of v are
// child[first_child[v] .. first_child[v + 1]).
struct TreeIndex {
  std::vector<std::uint32_t> parent;  // root maps to itself
  std::vector<std::uint32_t> depth;
  std::vector<std::uint32_t> first_child;
  std::vector<std::uint32_t> child;
};

TreeIndex index_tree(const PlaneTree& t);

struct DegreeMultiset {
  std::vector<std::uint64_t> counts;  // counts[j] = number of vertices of outdegree j
};

struct BgwStats {
  std::uint64_t rejections = 0;
  std::size_t max_index = 0;  // largest offspring index touched by the multinomial
};

struct BgwOptions {
  double cap_factor = 1e4;  // rejection cap = cap_factor * sqrt(n)
};

DegreeMultiset sample_degree_multiset(std::size_t n, const OffspringDistribution& d, RngStream& rng,
                                      BgwStats* stats = nullptr, const BgwOptions& opts = {});

PlaneTree multiset_to_tree(const DegreeMultiset& m, RngStream& rng);

// Unique rotation of a sequence with sum n - 1 that satisfies prefix positivity.
PlaneTree cyclic_rotate_to_tree(const std::vector<std::uint32_t>& seq);

PlaneTree sample_bgw_conditioned(std::size_t n, const OffspringDistribution& d, RngStream& rng,
                                 BgwStats* stats = nullptr, const BgwOptions& opts = {});

}  // namespace enrich
