#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "enrich/dist.hpp"
#include "enrich/errors.hpp"
#include "enrich/rng.hpp"

namespace enrich {

inline constexpr std::size_t kNoBudget = std::numeric_limits<std::size_t>::max();

// Boltzmann sampler at a fixed parameter t. draw() returns nullopt as soon as
// the object under construction exceeds the budget; objects within budget
// keep their Boltzmann probabilities, so conditioning on size is unaffected.
template <class T>
struct BoltzmannSampler {
  double t = 0;
  double gen_value = 0;
  std::function<std::optional<T>(RngStream&, std::size_t budget)> draw;
  std::function<std::size_t(const T&)> size;
  std::function<bool(std::size_t)> has_size;  // optional: some object of size k exists
};

struct Atom {};

inline BoltzmannSampler<Atom> atom_sampler(double t) {
  BoltzmannSampler<Atom> s;
  s.t = t;
  s.gen_value = t;
  s.draw = [](RngStream&, std::size_t budget) -> std::optional<Atom> {
    if (budget < 1) return std::nullopt;
    return Atom{};
  };
  s.size = [](const Atom&) -> std::size_t { return 1; };
  s.has_size = [](std::size_t k) { return k == 1; };
  return s;
}

namespace detail {

template <class T>
std::optional<std::vector<T>> draw_many(const BoltzmannSampler<T>& inner, std::uint64_t count,
                                        RngStream& rng, std::size_t budget) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 64)));
  std::size_t used = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto obj = inner.draw(rng, budget == kNoBudget ? kNoBudget : budget - used);
    if (!obj) return std::nullopt;
    used += inner.size(*obj);
    if (used > budget) return std::nullopt;
    out.push_back(std::move(*obj));
  }
  return out;
}

template <class T>
std::function<std::size_t(const std::vector<T>&)> total_size(const BoltzmannSampler<T>& inner) {
  auto sz = inner.size;
  return [sz](const std::vector<T>& v) {
    std::size_t s = 0;
    for (const auto& x : v) s += sz(x);
    return s;
  };
}

inline void require_inside(double v, const char* what) {
  if (!(v >= 0 && v < 1)) throw DomainError(std::string(what) + ": parameter at or beyond the radius");
}

}  // namespace detail

// SET: Poisson(inner value) components.
template <class T>
BoltzmannSampler<std::vector<T>> set_of(const BoltzmannSampler<T>& inner) {
  BoltzmannSampler<std::vector<T>> s;
  s.t = inner.t;
  s.gen_value = std::exp(inner.gen_value);
  s.draw = [inner](RngStream& rng, std::size_t budget) {
    return detail::draw_many(inner, sample_poisson(inner.gen_value, rng), rng, budget);
  };
  s.size = detail::total_size(inner);
  return s;
}

// SEQ with at least m components (m = 0 gives plain SEQ).
template <class T>
BoltzmannSampler<std::vector<T>> seq_at_least(std::size_t m, const BoltzmannSampler<T>& inner) {
  detail::require_inside(inner.gen_value, "SEQ");
  BoltzmannSampler<std::vector<T>> s;
  s.t = inner.t;
  s.gen_value = std::pow(inner.gen_value, static_cast<double>(m)) / (1 - inner.gen_value);
  s.draw = [inner, m](RngStream& rng, std::size_t budget) {
    return detail::draw_many(inner, sample_geometric_ge(inner.gen_value, m, rng), rng, budget);
  };
  s.size = detail::total_size(inner);
  return s;
}

template <class T>
BoltzmannSampler<std::vector<T>> seq_of(const BoltzmannSampler<T>& inner) {
  return seq_at_least(0, inner);
}

// CYC: length j >= 1 with probability v^j / (j log(1/(1-v))).
template <class T>
BoltzmannSampler<std::vector<T>> cyc_of(const BoltzmannSampler<T>& inner) {
  detail::require_inside(inner.gen_value, "CYC");
  BoltzmannSampler<std::vector<T>> s;
  s.t = inner.t;
  const double v = inner.gen_value;
  s.gen_value = -std::log1p(-v);
  const double total = s.gen_value;
  s.draw = [inner, v, total](RngStream& rng, std::size_t budget) {
    double u = rng.uniform() * total;
    std::uint64_t j = 1;
    for (double pw = v; u >= pw / static_cast<double>(j) && pw > 0; ++j) {
      u -= pw / static_cast<double>(j);
      pw *= v;
    }
    return detail::draw_many(inner, j, rng, budget);
  };
  s.size = detail::total_size(inner);
  return s;
}

// Disjoint union: branch i with probability gen_value_i / sum.
template <class T>
BoltzmannSampler<T> union_of(std::vector<BoltzmannSampler<T>> branches) {
  if (branches.empty()) throw DomainError("UNION: no branches");
  BoltzmannSampler<T> s;
  s.t = branches.front().t;
  std::vector<double> weights;
  for (const auto& b : branches) {
    weights.push_back(b.gen_value);
    s.gen_value += b.gen_value;
  }
  s.size = branches.front().size;
  s.draw = [branches, weights](RngStream& rng, std::size_t budget) {
    return branches[sample_categorical(weights, rng)].draw(rng, budget);
  };
  return s;
}

template <class A, class B>
BoltzmannSampler<std::pair<A, B>> product_of(const BoltzmannSampler<A>& a, const BoltzmannSampler<B>& b) {
  BoltzmannSampler<std::pair<A, B>> s;
  s.t = a.t;
  s.gen_value = a.gen_value * b.gen_value;
  s.draw = [a, b](RngStream& rng, std::size_t budget) -> std::optional<std::pair<A, B>> {
    auto x = a.draw(rng, budget);
    if (!x) return std::nullopt;
    const std::size_t used = a.size(*x);
    if (used > budget) return std::nullopt;
    auto y = b.draw(rng, budget == kNoBudget ? kNoBudget : budget - used);
    if (!y) return std::nullopt;
    if (used + b.size(*y) > budget) return std::nullopt;
    return std::pair<A, B>(std::move(*x), std::move(*y));
  };
  auto sa = a.size;
  auto sb = b.size;
  s.size = [sa, sb](const std::pair<A, B>& p) { return sa(p.first) + sb(p.second); };
  return s;
}

// Structure-preserving relabel of the output type.
template <class U, class T, class F>
BoltzmannSampler<U> map_sampler(const BoltzmannSampler<T>& inner, F f,
                                std::function<std::size_t(const U&)> size) {
  BoltzmannSampler<U> s;
  s.t = inner.t;
  s.gen_value = inner.gen_value;
  s.has_size = inner.has_size;
  s.size = std::move(size);
  s.draw = [inner, f](RngStream& rng, std::size_t budget) -> std::optional<U> {
    auto x = inner.draw(rng, budget);
    if (!x) return std::nullopt;
    return f(std::move(*x));
  };
  return s;
}

// Repeats draws until the size is exactly k. attempts, when given, receives
// the number of draws used.
template <class T>
T exact_size_by_rejection(const BoltzmannSampler<T>& s, std::size_t k, RngStream& rng,
                          std::uint64_t* attempts = nullptr) {
  if (s.has_size && !s.has_size(k)) throw NoObjectOfSize("no object of size " + std::to_string(k));
  for (std::uint64_t a = 1;; ++a) {
    auto obj = s.draw(rng, k);
    if (obj && s.size(*obj) == k) {
      if (attempts) *attempts += a;
      return std::move(*obj);
    }
  }
}

}  // namespace enrich
