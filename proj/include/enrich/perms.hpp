#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "enrich/bgw.hpp"
#include "enrich/leafcond.hpp"
#include "enrich/real.hpp"
#include "enrich/rng.hpp"

namespace enrich {

// One-line notation, images 1..n.
using Permutation = std::vector<std::uint32_t>;

bool is_permutation(const Permutation& p);
Permutation inverse(const Permutation& p);
// "2413" for single-digit images, otherwise space separated.
Permutation parse_permutation(const std::string& s);
std::string permutation_text(const Permutation& p);  // space separated

// sigma[nu_1, ..., nu_k]: the point (i, sigma(i)) is inflated by nu_i.
Permutation substitute(const Permutation& sigma, const std::vector<Permutation>& nus);

// Size >= 3 and no interval of length strictly between 1 and n.
bool is_simple(const Permutation& p);

struct SimpleSet {
  std::vector<Permutation> perms;
  std::vector<std::size_t> counts;  // counts[k] = number of members of size k

  // Validates every member; throws DomainError on a non-simple or repeated entry.
  static SimpleSet from(std::vector<Permutation> perms);
  // One permutation per line; blank lines and '#' comments ignored.
  static SimpleSet from_file(const std::string& path);
  std::size_t min_size() const;
  std::size_t max_size() const { return counts.empty() ? 0 : counts.size() - 1; }
};

// q_k = [x^k] Q with Q(x) = x^2 / (1 - x) + S(x / (1 - x)).
Integer q_coefficient(const SimpleSet& s, std::size_t k);
Real q_value(const SimpleSet& s, const Real& x);

// kappa solves S'(kappa) = 2 / (1 + kappa)^2 - 1; y = kappa / (1 + kappa).
struct PermConstants {
  Real kappa;
  Real y;
};
PermConstants solve_perm_constants(const SimpleSet& s);

// Offspring law with pgf 1 - Q(y)/y + Q(xy)/y.
ZetaSpec packed_zeta(const SimpleSet& s, const Real& y);

// Decoration of a packed-tree vertex: the formal symbol of the given size,
// or a gadget with a simple root whose i-th child has parts[i] leaves
// (1 = leaf, >= 2 = increasing node).
struct QObject {
  bool star = true;
  std::uint32_t simple = 0;  // index into SimpleSet::perms
  std::vector<std::uint32_t> parts;
  std::size_t size = 0;
};

class QSampler {
 public:
  QSampler(std::shared_ptr<const SimpleSet> s, double t);
  std::optional<QObject> draw(RngStream& rng, std::size_t budget) const;
  QObject draw_exact(std::size_t k, RngStream& rng, std::uint64_t* attempts = nullptr) const;
  double value() const { return value_; }

 private:
  std::shared_ptr<const SimpleSet> s_;
  double t_ = 0;
  double value_ = 0;
  double star_weight_ = 0;
  std::vector<double> simple_weight_;  // per member: (t / (1 - t))^size
};

struct PackedTree {
  PlaneTree shape;
  std::vector<QObject> decor;  // per vertex in preorder; size 0 at leaves
};

struct PermClass {
  std::shared_ptr<const SimpleSet> simples;
  PermConstants constants;
  std::shared_ptr<const LeafCondClass> packed;
  double t0 = 0;  // Boltzmann parameter of the decorations
  std::shared_ptr<const QSampler> q;
};

// t0 defaults to sqrt(y * min(1, rho_S / (1 + rho_S))) = sqrt(y) for finite sets.
std::shared_ptr<const PermClass> make_perm_class(SimpleSet s, std::optional<double> t0 = std::nullopt);

struct PermStats {
  LeafCondStats tree;
  std::uint64_t decoration_attempts = 0;
  std::uint64_t pairs = 0;
};

PackedTree sample_packed_tree(const PermClass& cls, std::size_t n, RngStream& rng, PermStats* stats = nullptr);

enum class NodeKind : std::uint8_t { leaf, plus, minus, simple };

struct CanonicalTree {
  PlaneTree shape;
  std::vector<NodeKind> kind;
  std::vector<std::uint32_t> simple;  // index into simples for simple nodes
  std::vector<Permutation> simples;

  friend bool operator==(const CanonicalTree&, const CanonicalTree&) = default;
};

// No vertex with one child, decoration sizes match, no like signs adjacent.
bool is_canonical(const CanonicalTree& t);

// minus_root turns a symbol at the root into a decreasing node (plus-
// indecomposable output); plus_root into an increasing node.
enum class RootMode { minus_root, plus_root };

CanonicalTree packed_to_canonical(const PackedTree& p, const SimpleSet& s, RootMode mode);

// Leaves labelled 1..n in preorder; each vertex lists its children's lists in
// the order of the inverse of its decoration. The result, read as a
// permutation, is the inverse of the represented permutation.
std::vector<std::uint32_t> canonical_to_inverse_list(const CanonicalTree& t);
Permutation canonical_to_permutation(const CanonicalTree& t);

// Substitution decomposition of p (cubic time; for checks at small sizes).
CanonicalTree decompose(const Permutation& p);
// Every simple node of the decomposition lies in s.
bool in_substitution_closure(const Permutation& p, const SimpleSet& s);

Permutation sample_permutation(const PermClass& cls, std::size_t n, RngStream& rng, PermStats* stats = nullptr);

// Size-n members of the substitution closure of s.
Integer count_permutations(const SimpleSet& s, std::size_t n);

}  // namespace enrich
