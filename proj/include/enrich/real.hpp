#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace enrich {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Working type for constants; 50 significant digits leaves headroom over the
// default solver target of 30.
using Real = boost::multiprecision::mpfr_float_50;

inline constexpr int kMaxPrecisionDigits = 45;

inline Real to_real(const Rational& q) {
  return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
}

inline long double to_long_double(const Real& x) { return x.convert_to<long double>(); }

}  // namespace enrich
