#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "sigmaconv/dd.hpp"

namespace sigmaconv {

// Exact integer and rational arithmetic. Everything that the exact
// identities touch (sigma tables for integer exponents, Bernoulli
// numbers, D(n)) runs on these; floats never enter those paths.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt bigint_pow(const BigInt& base, unsigned e) {
  return boost::multiprecision::pow(base, e);
}

inline BigInt to_bigint(unsigned __int128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

inline BigInt to_bigint(__int128 v) {
  return v < 0 ? -to_bigint(static_cast<unsigned __int128>(-v))
               : to_bigint(static_cast<unsigned __int128>(v));
}

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

// top ~106 bits of x as a double-double (relative error ~2^-106)
inline dd to_dd(const BigInt& x) {
  double hi = x.convert_to<double>();
  BigInt rem = x - BigInt(hi);
  double lo = rem.convert_to<double>();
  double e;
  double s = detail::two_sum(hi, lo, e);
  return dd(s, e);
}

inline dd to_dd(const BigRat& x) {
  return to_dd(boost::multiprecision::numerator(x)) /
         to_dd(boost::multiprecision::denominator(x));
}

}  // namespace sigmaconv
