#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "enrich/bgw.hpp"
#include "enrich/dist.hpp"
#include "enrich/enriched.hpp"
#include "enrich/labeled_graph.hpp"
#include "enrich/rng.hpp"

namespace enrich {

// Offspring law zeta of a tree conditioned on the number of vertices whose
// outdegree lies in omega (0 in omega, omega finite).
struct ZetaSpec {
  std::string name;
  std::function<Real(std::size_t)> prob;
  std::function<Real(const Real&)> pgf;
  std::vector<std::size_t> omega;  // sorted, contains 0
  std::optional<Real> radius;      // of pgf; nullopt when entire
};

// P(0) = 2 - sqrt 2, P(1) = 0, P(k) = c^(k-1) with c = 1 - 2^(-1/2).
ZetaSpec dissection_zeta();
// P(0) = 2 - 1/ln 2, P(1) = 0, P(k) = (ln 2)^(k-1) / k!.
ZetaSpec cograph_zeta();
// Finite support: probs[k] = P(zeta = k).
ZetaSpec finite_zeta(std::vector<Real> probs, std::vector<std::size_t> omega = {0});

// Throws DomainError unless P(0) > 0, P(>=2) > 0, P(omega) > 0 and E[zeta] = 1.
void validate_zeta(const ZetaSpec& z, double tol = 1e-12);

bool in_omega(const ZetaSpec& z, std::size_t k);
// A(x) = E[x^zeta; zeta in omega].
Real zeta_omega_part(const ZetaSpec& z, const Real& x);
// B(x) = E[x^(zeta-1); zeta not in omega].
Real zeta_complement_part(const ZetaSpec& z, const Real& x);

// Weights of the tuple class: generating function A(x) / (1 - B(x)).
WeightSource xi_weights(const ZetaSpec& z);
std::shared_ptr<const OffspringDistribution> xi_from_zeta(const ZetaSpec& z, const SolveOptions& opts = {});

struct LeafCondClass {
  ZetaSpec zeta;
  WeightSource weights;
  TiltParams tilt;  // tau = 1 up to solver precision
  std::shared_ptr<const OffspringDistribution> xi;
  std::shared_ptr<const OffspringDistribution> zeta_table;  // P(zeta = k) in double
  Real rho;  // radius of the tuple class; infinite when only zeta = 1 lies outside omega
  double t0 = 0;
};

std::shared_ptr<const LeafCondClass> make_leafcond_class(ZetaSpec z, const ClassOptions& opts = {});

struct DecorationTuple {
  std::size_t y = 0;
  std::vector<std::size_t> xs;

  std::size_t size() const;
  friend bool operator==(const DecorationTuple&, const DecorationTuple&) = default;
};

// Boltzmann sampler of the tuple class truncated to entries <= K.
class TupleSampler {
 public:
  TupleSampler(const LeafCondClass& cls, double t, std::size_t K);
  std::optional<DecorationTuple> draw(RngStream& rng, std::size_t budget = SIZE_MAX) const;
  DecorationTuple draw_exact(std::size_t k, RngStream& rng, std::uint64_t* attempts = nullptr) const;
  double continuation() const { return q_; }

 private:
  std::vector<double> y_weight_;  // P(zeta = y) t^y on omega
  std::vector<double> x_weight_;  // index x: P(zeta = x + 1) t^x off omega
  double q_ = 0;
  double y_total_ = 0;
};

DecorationTuple sample_decoration_tuple(const LeafCondClass& cls, double t, std::size_t K, RngStream& rng);

// Spine convention: spine vertex i has the next spine vertex as its leftmost
// child followed by x_i original children; the terminal vertex takes the last y.
PlaneTree spine_blowup(const PlaneTree& skeleton, const std::vector<DecorationTuple>& tuples);

std::size_t count_in_omega(const PlaneTree& t, const std::vector<std::size_t>& omega);

struct LeafCondStats {
  BgwStats bgw;
  std::uint64_t tuple_attempts = 0;
};

PlaneTree sample_tree_leafcond(const LeafCondClass& cls, std::size_t n, RngStream& rng,
                               LeafCondStats* stats = nullptr);

// Polygon vertices 1..polygon in boundary order; diagonals sorted with u < v.
struct Dissection {
  std::size_t polygon = 0;
  std::vector<Edge> diagonals;
  friend bool operator==(const Dissection&, const Dissection&) = default;
};

// Tree vertex i corresponds to an edge; the root is the side (1, 2). A vertex
// whose edge runs a -> b counterclockwise and has d children inserts d - 1 new
// vertices between a and b; its children take the new edges in order.
Dissection degree_seq_to_dissection(const PlaneTree& t);
bool diagonals_noncrossing(const Dissection& d);
std::string dissection_text(const Dissection& d);

std::shared_ptr<const LeafCondClass> dissection_class();
std::shared_ptr<const LeafCondClass> cograph_class();

Dissection sample_dissection(std::size_t n, RngStream& rng);
LabeledGraph sample_cograph(std::size_t n, RngStream& rng);
// Graph of a cotree-like plane tree: leaves in preorder receive labels[i],
// adjacency by the parity of the depth of their lowest common ancestor.
LabeledGraph cograph_from_tree(const PlaneTree& t, unsigned parity, const std::vector<std::uint32_t>& labels);

}  // namespace enrich
