#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "enrich/bgw.hpp"
#include "enrich/enriched.hpp"
#include "enrich/graphs.hpp"
#include "enrich/labeled_graph.hpp"
#include "enrich/leafcond.hpp"
#include "enrich/perms.hpp"

namespace enrich {

enum class ClassId { cactus, outerplanar, series_parallel, cayley, tree_leaves, dissection, cograph, permutation };

std::string to_string(ClassId c);
ClassId parse_class_id(const std::string& s);  // UsageError on unknown names
const std::vector<ClassId>& all_class_ids();

struct ClassConfig {
  ClassId id = ClassId::cactus;
  ClassOptions options;               // t0 override and solver tolerances
  std::optional<ZetaSpec> zeta;       // tree-leaves only; dissection law when unset
  std::optional<SimpleSet> simples;   // permutation only; {2413, 3142} when unset
};

enum class ObjectKind { tree, graph, dissection, permutation };

// One sample. `tree` holds the underlying plane tree where one exists
// (skeleton, cotree shape, dissection tree); `graph` is filled for graph
// classes, cographs and Cayley trees.
struct SampledObject {
  ObjectKind kind = ObjectKind::tree;
  PlaneTree tree;
  LabeledGraph graph;
  Dissection dissection;
  Permutation permutation;
};

// Natural text form: outdegree line, edge list, polygon, or one-line notation.
std::string canonical_text(const SampledObject& o);
std::string tree_text(const PlaneTree& t);

struct SampleStats {
  std::uint64_t bgw_rejections = 0;
  std::uint64_t decoration_attempts = 0;
  std::uint64_t pairs = 0;  // permutations: packed-tree pairs drawn
};

// A prepared class: all constants are solved at construction, so sample()
// does no setup work. Safe to share across threads.
class ClassSpec {
 public:
  explicit ClassSpec(ClassConfig cfg);

  ClassId id() const { return cfg_.id; }
  const std::string& name() const { return name_; }
  SampledObject sample(std::size_t n, RngStream& rng, SampleStats* stats = nullptr) const;
  // Exact number of size-n objects; UsageError for tree-leaves.
  Integer count(std::size_t n) const;
  // Offspring law of the conditioned tree that the sampler runs on.
  const OffspringDistribution& offspring() const;
  // Tilt of that tree's weight sequence.
  const TiltParams& tilt() const;
  std::optional<Real> weight_radius() const;

  const LeafCondClass* leafcond() const { return leaf_.get(); }
  const PermClass* perm() const { return perm_.get(); }

 private:
  ClassConfig cfg_;
  std::string name_;
  std::shared_ptr<const EnrichedClass<BlockDecoration>> graph_;
  std::shared_ptr<const EnrichedClass<Empty>> cayley_;
  std::shared_ptr<const LeafCondClass> leaf_;
  std::shared_ptr<const PermClass> perm_;
};

// Exhaustive oracle: objects in canonical text, sorted, with target
// probabilities (uniform except for Cayley and tree-leaves shapes, which
// carry the product of offspring probabilities).
struct Oracle {
  std::vector<std::string> objects;
  std::vector<double> prob;
};

// Caps: graphs 6, dissections 7, permutations 6, cographs 5, trees 8
// (tree-leaves 7 leaves). DomainError beyond the cap.
Oracle enumerate_class(const ClassSpec& spec, std::size_t n);

// Plane trees with n vertices, lexicographic order.
std::vector<PlaneTree> enumerate_plane_trees(std::size_t n);
// No induced path on four vertices.
bool is_p4_free(const LabeledGraph& g);

struct UniformityReport {
  std::string class_name;
  std::size_t n = 0;
  std::uint64_t samples = 0;
  std::size_t support = 0;          // oracle size
  std::size_t observed_support = 0;
  double chi_square = 0;
  std::size_t dof = 0;
  double p_value = 0;
  double max_rel_deviation = 0;     // max |observed / expected - 1|
};

using TextSampler = std::function<std::string(std::size_t n, RngStream& rng)>;

// Samples are drawn in fixed chunks, chunk i from RngStream(seed).split(i),
// so the report does not depend on `jobs`. Throws CorrectnessFailure on an
// object outside the oracle.
UniformityReport chi_square_test(const std::string& name, std::size_t n, const Oracle& oracle,
                                 const TextSampler& sampler, std::uint64_t samples, std::uint64_t seed,
                                 unsigned jobs = 1);

// Requires samples >= 20 * support.
UniformityReport uniformity_test(const ClassSpec& spec, std::size_t n, std::uint64_t samples, std::uint64_t seed,
                                 unsigned jobs = 1);

struct ScalingReport {
  std::string class_name;
  std::vector<std::size_t> sizes;
  std::vector<double> median_seconds;
  std::vector<double> mean_seconds;
  std::vector<double> mean_rejections;
  std::vector<double> normalized;  // median time / (n + edges) for graphs, / n otherwise
  double slope = 0;                // least squares on log n, log median time
};

// Monotonic clock, one discarded warmup sample per size, median of reps.
ScalingReport runtime_scaling(const ClassSpec& spec, const std::vector<std::size_t>& sizes, std::size_t reps,
                              std::uint64_t seed);

struct RejectionReport {
  std::vector<std::size_t> sizes;
  std::vector<double> mean_rejections;
  std::vector<double> scaled;  // mean_rejections / sqrt(n)
};

// Multinomial rejection counts of the degree-multiset step alone.
RejectionReport rejection_scaling(const ClassSpec& spec, const std::vector<std::size_t>& sizes, std::size_t reps,
                                  std::uint64_t seed);

struct InvariantCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::string first_failure;
};

// Structural checks over fresh samples of every class.
std::vector<InvariantCheck> run_invariant_suite(std::uint64_t seed, std::size_t samples_per_class = 50);

std::string report_text(const UniformityReport& r);
std::string report_text(const ScalingReport& r);
std::string report_csv_header();
std::string report_csv(const ScalingReport& r);

}  // namespace enrich
