#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sigmaconv {

// Double-double arithmetic: a value stored as an unevaluated sum of two
// doubles, giving roughly 31 significant decimal digits. The algorithms
// are the classic error-free transformations of Dekker and Knuth as
// organized in the QD library of Hida, Li and Bailey.
//
// This type is the workhorse wherever plain double would lose the result
// to cancellation: the Euler-Maclaurin tail at negative s, and expansion
// terms of size ~n^{a+b+1} whose residual against the exact convolution
// is many orders of magnitude smaller.
struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}
};

namespace detail {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

// requires |a| >= |b|
inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

}  // namespace detail

inline dd operator-(dd a) { return dd(-a.hi, -a.lo); }

inline dd operator+(dd a, dd b) {
  double s1, s2, t1, t2;
  s1 = detail::two_sum(a.hi, b.hi, s2);
  t1 = detail::two_sum(a.lo, b.lo, t2);
  s2 += t1;
  s1 = detail::quick_two_sum(s1, s2, s2);
  s2 += t2;
  s1 = detail::quick_two_sum(s1, s2, s2);
  return dd(s1, s2);
}

inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
  double p1, p2;
  p1 = detail::two_prod(a.hi, b.hi, p2);
  p2 += a.hi * b.lo + a.lo * b.hi;
  p1 = detail::quick_two_sum(p1, p2, p2);
  return dd(p1, p2);
}

inline dd operator/(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * dd(q1);
  double q2 = r.hi / b.hi;
  r = r - b * dd(q2);
  double q3 = r.hi / b.hi;
  double s, e;
  s = detail::quick_two_sum(q1, q2, e);
  return dd(s, e) + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }

inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator<(dd a, dd b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator<=(dd a, dd b) { return !(b < a); }
inline bool operator>=(dd a, dd b) { return !(a < b); }

inline double to_double(dd a) { return a.hi + a.lo; }
inline dd fabs(dd a) { return a.hi < 0.0 ? -a : a; }

// exact scaling by a power of two
inline dd mul_pwr2(dd a, double p) { return dd(a.hi * p, a.lo * p); }

inline dd sqr(dd a) {
  double p1, p2;
  p1 = detail::two_prod(a.hi, a.hi, p2);
  p2 += 2.0 * a.hi * a.lo;
  p2 += a.lo * a.lo;
  p1 = detail::quick_two_sum(p1, p2, p2);
  return dd(p1, p2);
}

inline dd ldexp(dd a, int n) {
  return dd(std::ldexp(a.hi, n), std::ldexp(a.lo, n));
}

namespace ddc {
// nearest double-double representations (QD library constants)
inline constexpr dd pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr dd ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline constexpr double eps = 4.93038065763132e-32;  // 2^-104
}  // namespace ddc

// exp by 2^9 argument scaling plus Taylor series, as in QD
inline dd exp(dd a) {
  const double k = 512.0;
  const double inv_k = 1.0 / k;

  if (a.hi <= -700.0) return dd(0.0);
  if (a.hi >= 700.0)
    throw std::overflow_error("dd exp overflow: " + std::to_string(a.hi));
  if (a.hi == 0.0 && a.lo == 0.0) return dd(1.0);

  double m = std::floor(a.hi / ddc::ln2.hi + 0.5);
  dd r = mul_pwr2(a - ddc::ln2 * dd(m), inv_k);

  dd p = sqr(r);
  dd s = r + mul_pwr2(p, 0.5);
  p = p * r;
  dd t = p / dd(6.0);
  double fact = 6.0;
  int i = 3;
  for (;;) {
    s = s + t;
    p = p * r;
    ++i;
    fact *= i;
    t = p / dd(fact);
    if (std::fabs(to_double(t)) <= inv_k * ddc::eps || i > 20) break;
  }
  s = s + t;

  for (int j = 0; j < 9; ++j) s = mul_pwr2(s, 2.0) + sqr(s);
  s = s + dd(1.0);
  return ldexp(s, static_cast<int>(m));
}

// natural log via one Newton step on the double seed (doubles the precision)
inline dd log(dd a) {
  if (a.hi <= 0.0)
    throw std::domain_error("dd log of non-positive value");
  if (a.hi == 1.0 && a.lo == 0.0) return dd(0.0);
  dd x = dd(std::log(a.hi));
  x = x + a * exp(-x) - dd(1.0);
  x = x + a * exp(-x) - dd(1.0);
  return x;
}

// integer power by binary exponentiation
inline dd powi(dd a, long long n) {
  if (n == 0) return dd(1.0);
  bool inv = n < 0;
  unsigned long long e = inv ? -static_cast<unsigned long long>(n) : n;
  dd base = a, acc = dd(1.0);
  while (e) {
    if (e & 1ULL) acc = acc * base;
    base = sqr(base);
    e >>= 1ULL;
  }
  return inv ? dd(1.0) / acc : acc;
}

// a^b for real b; routes integer exponents through powi
inline dd pow(dd a, dd b) {
  if (b.lo == 0.0 && b.hi == std::rint(b.hi) && std::fabs(b.hi) < 1e9)
    return powi(a, static_cast<long long>(b.hi));
  return exp(b * log(a));
}

inline dd sqrt(dd a) {
  if (a.hi == 0.0 && a.lo == 0.0) return dd(0.0);
  if (a.hi < 0.0) throw std::domain_error("dd sqrt of negative value");
  double x = 1.0 / std::sqrt(a.hi);
  double ax = a.hi * x;
  return dd(ax) + (a - sqr(dd(ax))) * dd(x * 0.5);
}

}  // namespace sigmaconv
