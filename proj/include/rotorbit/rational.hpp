#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rotorbit {

// Arbitrary-precision integers and rationals. Coefficient growth in the
// polynomial pipelines (Euclidean remainders, Chebyshev expansion) exceeds
// 64-bit long before the interesting inputs do, so everything exact is built
// on these.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt num(const Rational& r) { return numerator(r); }
inline BigInt den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// "p" or "p/q" with q > 0.
inline std::string rational_to_string(const Rational& r) {
  std::string s = num(r).str();
  if (!is_integer(r)) s += "/" + den(r).str();
  return s;
}

}  // namespace rotorbit
