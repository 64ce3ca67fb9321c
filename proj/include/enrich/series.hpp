#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "enrich/errors.hpp"
#include "enrich/real.hpp"

namespace enrich {

// Formal power series truncated at order K: coefficients of x^0..x^K.
// Results of binary operations carry the smaller truncation order.
template <class T = Rational>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : c_(order + 1, T(0)) {}
  TruncatedSeries(std::initializer_list<T> coeffs) : c_(coeffs) {
    if (c_.empty()) c_.push_back(T(0));
  }
  explicit TruncatedSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(T(0));
  }

  static TruncatedSeries constant(const T& c, std::size_t order) {
    TruncatedSeries s(order);
    s.c_[0] = c;
    return s;
  }
  static TruncatedSeries x(std::size_t order) {
    TruncatedSeries s(order);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  const std::vector<T>& coeffs() const { return c_; }

  TruncatedSeries truncate(std::size_t order) const {
    TruncatedSeries s(order);
    for (std::size_t k = 0; k <= std::min(order, this->order()); ++k) s.c_[k] = c_[k];
    return s;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<T> c_;
};

template <class T>
TruncatedSeries<T> ps_add(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  const std::size_t K = std::min(a.order(), b.order());
  TruncatedSeries<T> r(K);
  for (std::size_t k = 0; k <= K; ++k) r[k] = a[k] + b[k];
  return r;
}

template <class T>
TruncatedSeries<T> ps_sub(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  const std::size_t K = std::min(a.order(), b.order());
  TruncatedSeries<T> r(K);
  for (std::size_t k = 0; k <= K; ++k) r[k] = a[k] - b[k];
  return r;
}

template <class T>
TruncatedSeries<T> ps_scale(const TruncatedSeries<T>& a, const T& c) {
  TruncatedSeries<T> r(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) r[k] = a[k] * c;
  return r;
}

template <class T>
TruncatedSeries<T> ps_mul(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  const std::size_t K = std::min(a.order(), b.order());
  TruncatedSeries<T> r(K);
  for (std::size_t i = 0; i <= K; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= K; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Multiplication by x^m (shifts coefficients up, order unchanged).
template <class T>
TruncatedSeries<T> ps_shift(const TruncatedSeries<T>& a, std::size_t m) {
  TruncatedSeries<T> r(a.order());
  for (std::size_t k = m; k <= a.order(); ++k) r[k] = a[k - m];
  return r;
}

// 1 / (1 - a), i.e. the sum of all powers of a.
template <class T>
TruncatedSeries<T> ps_quasi_inverse(const TruncatedSeries<T>& a) {
  if (a[0] != 0) throw DomainError("quasi_inverse: constant coefficient must be 0");
  const std::size_t K = a.order();
  TruncatedSeries<T> g(K);
  g[0] = T(1);
  for (std::size_t k = 1; k <= K; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * g[k - j];
    g[k] = acc;
  }
  return g;
}

// exp(f) from g' = f' g: k g_k = sum_j j f_j g_{k-j}.
template <class T>
TruncatedSeries<T> ps_exp(const TruncatedSeries<T>& f) {
  if (f[0] != 0) throw DomainError("exp: constant coefficient must be 0");
  const std::size_t K = f.order();
  TruncatedSeries<T> g(K);
  g[0] = T(1);
  for (std::size_t k = 1; k <= K; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += T(j) * f[j] * g[k - j];
    g[k] = acc / T(k);
  }
  return g;
}

// log(f) for f(0) = 1 from f h' = f': k h_k = k f_k - sum_{j<k} j h_j f_{k-j}.
template <class T>
TruncatedSeries<T> ps_log(const TruncatedSeries<T>& f) {
  if (f[0] != 1) throw DomainError("log: constant coefficient must be 1");
  const std::size_t K = f.order();
  TruncatedSeries<T> h(K);
  for (std::size_t k = 1; k <= K; ++k) {
    T acc = T(k) * f[k];
    for (std::size_t j = 1; j < k; ++j) acc -= T(j) * h[j] * f[k - j];
    h[k] = acc / T(k);
  }
  return h;
}

// f(g) by Horner; requires g(0) = 0.
template <class T>
TruncatedSeries<T> ps_compose(const TruncatedSeries<T>& f, const TruncatedSeries<T>& g) {
  if (g[0] != 0) throw DomainError("compose: inner series must vanish at 0");
  const std::size_t K = std::min(f.order(), g.order());
  const TruncatedSeries<T> inner = g.truncate(K);
  TruncatedSeries<T> r = TruncatedSeries<T>::constant(f[K], K);
  for (std::size_t j = K; j-- > 0;) {
    r = ps_mul(r, inner);
    r[0] += f[j];
  }
  return r;
}

// Unique A with A(0) = 0 and A = x r(A); pass m fixes coefficient m.
template <class T>
TruncatedSeries<T> ps_implicit_tree(const TruncatedSeries<T>& r) {
  if (r[0] == 0) throw DomainError("implicit_tree: r_0 must be positive");
  const std::size_t K = r.order();
  TruncatedSeries<T> a(K);
  for (std::size_t pass = 1; pass <= K; ++pass) {
    const TruncatedSeries<T> ra = ps_compose(r.truncate(pass - 1), a.truncate(pass - 1));
    TruncatedSeries<T> next(K);
    for (std::size_t k = 1; k <= pass; ++k) next[k] = ra[k - 1];
    for (std::size_t k = pass + 1; k <= K; ++k) next[k] = a[k];
    a = next;
  }
  return a;
}

// f(c x).
template <class T>
TruncatedSeries<T> ps_dilate(const TruncatedSeries<T>& f, const T& c) {
  TruncatedSeries<T> r(f.order());
  T pw(1);
  for (std::size_t k = 0; k <= f.order(); ++k) {
    r[k] = f[k] * pw;
    pw *= c;
  }
  return r;
}

template <class T>
TruncatedSeries<T> operator+(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  return ps_add(a, b);
}
template <class T>
TruncatedSeries<T> operator-(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  return ps_sub(a, b);
}
template <class T>
TruncatedSeries<T> operator*(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  return ps_mul(a, b);
}

// Value of the truncated polynomial at x.
inline Real ps_eval(const TruncatedSeries<Rational>& f, const Real& x) {
  Real acc = 0;
  for (std::size_t k = f.order() + 1; k-- > 0;) acc = acc * x + to_real(f[k]);
  return acc;
}

using Series = TruncatedSeries<Rational>;

}  // namespace enrich
