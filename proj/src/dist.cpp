#include "enrich/dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "enrich/errors.hpp"

namespace enrich {

Real weight_derivative(const WeightSource& w, const Real& x) {
  if (w.dphi) return w.dphi(x);
  Real h = (x > 1 ? x : Real(1)) * Real("1e-20");
  if (w.radius && x + 2 * h >= *w.radius) h = (*w.radius - x) / 4;
  if (x - h <= 0) h = x / 4;
  return (w.phi(x + h) - w.phi(x - h)) / (2 * h);
}

Real psi(const WeightSource& w, const Real& x) { return x * weight_derivative(w, x) / w.phi(x); }

TiltParams solve_tilt(const WeightSource& w, const SolveOptions& opts) {
  if (opts.precision_digits < 10 || opts.precision_digits > kMaxPrecisionDigits)
    throw DomainError("precision digits must lie in [10, " + std::to_string(kMaxPrecisionDigits) + "]");
  const Real one(1);

  Real lo = w.radius ? Real(*w.radius / 2) : one;
  for (int i = 0; psi(w, lo) >= one; ++i) {
    if (i > 200) throw SolverError(w.name + ": no left bracket with Psi < 1");
    lo /= 2;
  }

  Real hi;
  bool found = false;
  if (w.radius) {
    const int steps = static_cast<int>(3.33 * opts.precision_digits) + 16;
    Real gap = (*w.radius - lo) / 2;
    for (int j = 0; j < steps; ++j, gap /= 2) {
      hi = *w.radius - gap;
      if (psi(w, hi) > one) {
        found = true;
        break;
      }
      lo = hi;
    }
  } else {
    hi = lo * 2;
    for (int i = 0; i < 400; ++i, hi *= 2) {
      if (psi(w, hi) > one) {
        found = true;
        break;
      }
      lo = hi;
    }
  }
  if (!found) throw NotSubcritical(w.name + ": Psi stays below 1 up to the radius");

  const Real eps = boost::multiprecision::pow(Real(10), -opts.precision_digits);
  for (int i = 0; i < 1000 && hi - lo > eps * hi; ++i) {
    const Real mid = (lo + hi) / 2;
    (psi(w, mid) < one ? lo : hi) = mid;
  }
  Real tau = (lo + hi) / 2;
  // Newton polish with a secant slope taken inside the bracket.
  for (int i = 0; i < 2; ++i) {
    const Real h = (hi - lo) / 4;
    if (h <= 0) break;
    const Real slope = (psi(w, tau + h) - psi(w, tau - h)) / (2 * h);
    if (slope <= 0) break;
    const Real next = tau - (psi(w, tau) - one) / slope;
    if (next <= lo || next >= hi) break;
    tau = next;
  }

  TiltParams out;
  out.tau = tau;
  out.phi_tau = w.phi(tau);
  out.rho_a = tau / out.phi_tau;
  if (w.radius) {
    out.margin = *w.radius - tau;
    if (*out.margin <= 0) throw NotSubcritical(w.name + ": tau is not below the radius");
  }
  out.residual = static_cast<double>(boost::multiprecision::abs(psi(w, tau) - one));
  if (out.residual > opts.tol) throw SolverError(w.name + ": residual above tolerance");
  return out;
}

double default_t0(const TiltParams& tilt, const std::optional<Real>& radius) {
  if (radius) return static_cast<double>(boost::multiprecision::sqrt(tilt.tau * *radius));
  return static_cast<double>(2 * tilt.tau);
}

OffspringDistribution::OffspringDistribution(TableBuilder builder, TiltParams tilt,
                                             std::size_t initial_order)
    : builder_(std::move(builder)), tilt_(std::move(tilt)) {
  table_ = build(std::max<std::size_t>(initial_order, 8));
  std::size_t g = 0;
  for (std::size_t k = 1; k < table_->p.size(); ++k)
    if (table_->p[k] > 0) g = std::gcd(g, k);
  span_ = g == 0 ? 1 : g;
}

std::shared_ptr<const OffspringDistribution> OffspringDistribution::from_weights(
    const WeightSource& w, const TiltParams& tilt) {
  const long double tau = to_long_double(tilt.tau);
  const long double norm = to_long_double(tilt.phi_tau);
  auto scaled = w.scaled_coeffs;
  TableBuilder builder = [scaled, tau, norm](std::size_t order) {
    std::vector<long double> p = scaled(order, tau);
    for (auto& v : p) v /= norm;
    return p;
  };
  std::size_t initial = 64;
  if (w.tail_hint > 0 && w.tail_hint < 1)
    initial = std::clamp<std::size_t>(static_cast<std::size_t>(-41.0 / std::log(w.tail_hint)), 64, 1024);
  return std::make_shared<OffspringDistribution>(std::move(builder), tilt, initial);
}

std::shared_ptr<const OffspringDistribution::Table> OffspringDistribution::build(
    std::size_t order) const {
  const std::vector<long double> raw = builder_(order);
  auto t = std::make_shared<Table>();
  t->p.resize(raw.size());
  t->tail.resize(raw.size());
  long double below = 0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    t->p[k] = static_cast<double>(std::max<long double>(raw[k], 0));
    t->tail[k] = static_cast<double>(std::max<long double>(1 - below, 0));
    below += std::max<long double>(raw[k], 0);
  }
  return t;
}

std::shared_ptr<const OffspringDistribution::Table> OffspringDistribution::table(
    std::size_t min_order) const {
  std::shared_ptr<const Table> cur = std::atomic_load(&table_);
  if (cur->p.size() > min_order) return cur;
  std::lock_guard<std::mutex> lock(mu_);
  cur = std::atomic_load(&table_);
  if (cur->p.size() > min_order) return cur;
  std::size_t order = cur->p.size();
  while (order <= min_order) order *= 2;
  auto next = build(order);
  std::atomic_store(&table_, next);
  return next;
}

double OffspringDistribution::prob(std::size_t k) const { return table(k)->p[k]; }

bool sample_bernoulli(double p, RngStream& rng) {
  if (!(p >= 0 && p <= 1)) throw DomainError("bernoulli: p outside [0,1]");
  return rng.uniform() < p;
}

std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng) {
  if (!(p >= 0 && p <= 1)) throw DomainError("binomial: p outside [0,1]");
  if (n == 0 || p == 0) return 0;
  if (p == 1) return n;
  boost::random::binomial_distribution<long long, double> d(static_cast<long long>(n), p);
  return static_cast<std::uint64_t>(d(rng));
}

std::uint64_t sample_poisson(double lambda, RngStream& rng) {
  if (!(lambda >= 0) || !std::isfinite(lambda)) throw DomainError("poisson: invalid mean");
  if (lambda == 0) return 0;
  boost::random::poisson_distribution<long long, double> d(lambda);
  return static_cast<std::uint64_t>(d(rng));
}

std::uint64_t sample_geometric(double q, RngStream& rng) {
  if (!(q >= 0 && q < 1)) throw DomainError("geometric: q outside [0,1)");
  if (q == 0) return 0;
  const double v = std::floor(std::log(rng.uniform_pos()) / std::log(q));
  return v >= 9.2e18 ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

std::uint64_t sample_geometric_ge(double q, std::uint64_t m, RngStream& rng) {
  if (m > 0 && q == 0) throw DomainError("geometric_ge: q = 0 cannot reach m > 0");
  return m + sample_geometric(q, rng);
}

std::uint64_t sample_poisson_ge(double lambda, std::uint64_t m, RngStream& rng) {
  if (m == 0) return sample_poisson(lambda, rng);
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("poisson_ge: invalid mean");
  if (lambda >= static_cast<double>(m)) {
    for (;;) {
      const std::uint64_t j = sample_poisson(lambda, rng);
      if (j >= m) return j;
    }
  }
  // Inversion over w_j = lambda^(j-m) m! / j!, j >= m.
  double total = 0, w = 1;
  for (std::uint64_t j = m; w > 1e-18 * total || total == 0; ++j) {
    total += w;
    w *= lambda / static_cast<double>(j + 1);
  }
  double u = rng.uniform() * total;
  w = 1;
  for (std::uint64_t j = m;; ++j) {
    if (u < w || w < 1e-300) return j;
    u -= w;
    w *= lambda / static_cast<double>(j + 1);
  }
}

std::size_t sample_categorical(std::span<const double> weights, RngStream& rng) {
  if (weights.empty()) throw DomainError("categorical: empty table");
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw DomainError("categorical: negative weight");
    total += w;
  }
  if (!(total > 0)) throw DomainError("categorical: zero total weight");
  double u = rng.uniform() * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    last = i;
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return last;
}

}  // namespace enrich
