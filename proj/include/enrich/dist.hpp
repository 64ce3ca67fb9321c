#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "enrich/real.hpp"
#include "enrich/rng.hpp"

namespace enrich {

// Weight sequence omega_k = r_k / k! with generating function Phi.
struct WeightSource {
  std::string name;
  std::function<Real(const Real&)> phi;
  // Optional closed-form derivative; central differences otherwise.
  std::function<Real(const Real&)> dphi;
  // Optional exact weights, used by counting and by tests.
  std::function<Rational(std::size_t)> coeff;
  // omega_k * scale^k for k = 0..order, in floating point. Scaling first keeps
  // every entry bounded when scale is close to the radius.
  std::function<std::vector<long double>(std::size_t order, long double scale)> scaled_coeffs;
  std::optional<Real> radius;  // nullopt: entire function
  double tail_hint = 0.5;      // rough ratio p_{k+1}/p_k, sizes the first table
};

Real weight_derivative(const WeightSource& w, const Real& x);
Real psi(const WeightSource& w, const Real& x);

struct TiltParams {
  Real tau;
  Real rho_a;
  Real phi_tau;
  std::optional<Real> margin;  // rho_R - tau; nullopt when rho_R is infinite
  double residual = 0;         // |Psi(tau) - 1|
};

struct SolveOptions {
  double tol = 1e-12;
  int precision_digits = 30;
};

TiltParams solve_tilt(const WeightSource& w, const SolveOptions& opts = {});

// sqrt(tau * rho_R) for finite rho_R, else 2 tau.
double default_t0(const TiltParams& tilt, const std::optional<Real>& radius);

// Lazily grown table p_0..p_K of a critical offspring law, with tails.
class OffspringDistribution {
 public:
  using TableBuilder = std::function<std::vector<long double>(std::size_t order)>;

  struct Table {
    std::vector<double> p;
    std::vector<double> tail;  // tail[k] = P(xi >= k)
  };

  OffspringDistribution(TableBuilder builder, TiltParams tilt, std::size_t initial_order = 64);

  static std::shared_ptr<const OffspringDistribution> from_weights(const WeightSource& w,
                                                                   const TiltParams& tilt);

  double prob(std::size_t k) const;

  // Snapshot covering at least indices 0..min_order. Snapshots are immutable.
  std::shared_ptr<const Table> table(std::size_t min_order) const;

  // gcd of the support over the initial table.
  std::size_t span() const { return span_; }
  const TiltParams& tilt() const { return tilt_; }

 private:
  std::shared_ptr<const Table> build(std::size_t order) const;

  TableBuilder builder_;
  TiltParams tilt_;
  std::size_t span_ = 1;
  mutable std::mutex mu_;
  mutable std::shared_ptr<const Table> table_;
};

// Basic laws. Geometric laws use the continuation probability q:
// P(j) = (1 - q) q^j for j >= 0.
bool sample_bernoulli(double p, RngStream& rng);
std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng);
std::uint64_t sample_poisson(double lambda, RngStream& rng);
std::uint64_t sample_geometric(double q, RngStream& rng);
std::uint64_t sample_geometric_ge(double q, std::uint64_t m, RngStream& rng);
// Poisson(lambda) conditioned on being >= m.
std::uint64_t sample_poisson_ge(double lambda, std::uint64_t m, RngStream& rng);
// Index drawn proportionally to non-negative weights (inversion).
std::size_t sample_categorical(std::span<const double> weights, RngStream& rng);

}  // namespace enrich
