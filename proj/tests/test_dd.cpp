#include "doctest.h"

#include <cmath>

#include "sigmaconv/bigint.hpp"
#include "sigmaconv/dd.hpp"

using namespace sigmaconv;

namespace {
double rel_err(dd got, dd want) {
  dd diff = got - want;
  return std::fabs(to_double(diff) / to_double(want));
}
}  // namespace

TEST_CASE("dd add/mul keep more than double precision") {
  // (1 + 2^-60) - 1 survives in dd, vanishes in double
  dd one(1.0);
  dd tiny(std::ldexp(1.0, -60));
  dd sum = one + tiny;
  dd back = sum - one;
  CHECK(to_double(back) == doctest::Approx(std::ldexp(1.0, -60)).epsilon(1e-14));

  dd third = dd(1.0) / dd(3.0);
  dd reconstructed = third * dd(3.0);
  CHECK(std::fabs(to_double(reconstructed - dd(1.0))) < 1e-30);
}

TEST_CASE("dd exp and log round-trip") {
  for (double v : {-5.0, -0.7, 0.001, 0.5, 1.0, 3.25, 10.0, 42.0}) {
    dd x(v);
    dd y = log(exp(x));
    CHECK(std::fabs(to_double(y - x)) < 1e-29 * std::max(1.0, std::fabs(v)));
  }
  // e to 30+ digits: 2.718281828459045235360287471352...
  dd e = exp(dd(1.0));
  dd e_ref(2.718281828459045091e+00, 1.445646891729250158e-16);
  CHECK(std::fabs(to_double(e - e_ref)) < 1e-30);
}

TEST_CASE("dd pow matches integer powers exactly enough") {
  dd p = pow(dd(2.0), dd(10.0));
  CHECK(to_double(p) == 1024.0);
  dd q = pow(dd(3.0), dd(-2.0));
  CHECK(rel_err(q, dd(1.0) / dd(9.0)) < 1e-30);
  // non-integer exponent against double pow
  dd r = pow(dd(7.5), dd(2.25));
  CHECK(to_double(r) == doctest::Approx(std::pow(7.5, 2.25)).epsilon(1e-14));
}

TEST_CASE("dd sqrt") {
  dd s = sqrt(dd(2.0));
  CHECK(std::fabs(to_double(sqr(s) - dd(2.0))) < 1e-30);
}

TEST_CASE("bigint to dd conversion carries ~100 bits") {
  BigInt big = bigint_pow(BigInt(10), 25) + 12345;
  dd x = to_dd(big);
  // back out the low part: x - 1e25 should recover 12345 to high accuracy
  dd lead = pow(dd(10.0), dd(25.0));
  CHECK(to_double(x - lead) == doctest::Approx(12345.0).epsilon(1e-6));

  BigRat r(BigInt(1), BigInt(3));
  CHECK(std::fabs(to_double(to_dd(r) * dd(3.0) - dd(1.0))) < 1e-30);
}

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sigmaconv/special.hpp"

namespace {
using mp50 = boost::multiprecision::cpp_bin_float_50;
mp50 widen(dd v) { return mp50(v.hi) + mp50(v.lo); }
double rel_vs(dd got, mp50 want) {
  return std::fabs(static_cast<double>((widen(got) - want) / want));
}
}  // namespace

TEST_CASE("dd transcendentals against a 50-digit referee") {
  for (double x : {0.013, 0.5, 2.0, 7919.0, 8192.0}) {
    CHECK(rel_vs(log(dd(x)), log(mp50(x))) < 1e-30);
  }
  for (double x : {-12.0, -0.3, 0.25, 10.0, 43.0}) {
    CHECK(rel_vs(exp(dd(x)), exp(mp50(x))) < 1e-29);
  }
  for (double b : {-4.8, 1.5, 4.8, 11.0}) {
    for (double base : {2.0, 977.0, 8192.0}) {
      CHECK(rel_vs(pow(dd(base), dd(b)), pow(mp50(base), mp50(b))) < 1e-29);
    }
  }
}

TEST_CASE("dd log gamma against a 50-digit referee") {
  for (double x : {0.5, 1.0, 3.0, 5.8, 10.6, 31.9, 60.0}) {
    dd got = sigmaconv::special::log_gamma_dd(dd(x));
    mp50 want = lgamma(mp50(x));
    if (x == 1.0) {
      CHECK(std::fabs(to_double(got)) < 1e-29);
    } else {
      CHECK(std::fabs(static_cast<double>(widen(got) - want)) <
            1e-29 * std::max(1.0, std::fabs(static_cast<double>(want))));
    }
  }
}
