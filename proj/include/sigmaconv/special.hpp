#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sigmaconv/bigint.hpp"
#include "sigmaconv/dd.hpp"

namespace sigmaconv::special {

// Raised when an adaptive evaluation cannot reach its tolerance within the
// configured resource cap. Callers must see this, never a degraded value.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncation control for the Euler-Maclaurin evaluation of zeta(s, x).
struct PrecisionProfile {
  double target_abs_err = 1e-12;
  int em_terms = 32;   // leading direct terms N0, adaptively doubled
  int em_depth = 12;   // Bernoulli correction terms M

  void validate() const {
    if (em_terms < 8 || em_depth < 2 || em_depth > 31 || !(target_abs_err > 0.0))
      throw std::invalid_argument(
          "PrecisionProfile: need N0 >= 8, 2 <= M <= 31, target > 0");
  }
};

inline constexpr int kBernoulliMax = 64;

// exact B_k (convention B_1 = -1/2), 0 <= k <= 64
const BigRat& bernoulli_number(int k);

// B_k(x) = sum_j C(k,j) B_j x^{k-j}
double bernoulli_poly(int k, double x);
dd bernoulli_poly_dd(int k, dd x);
BigRat bernoulli_poly_rat(int k, const BigRat& x);

// B_k(e/d) for e = 1..d, one Horner pass per entry
std::vector<double> bernoulli_poly_row(int k, std::uint64_t d);

// log Gamma by the Stirling series after shifting the argument up; about
// 30 digits in dd, which the expansion terms of asymptotic need.
dd log_gamma_dd(dd x);        // x >= 0.5
double log_gamma(double x);   // x > 0, reflection below 0.5
double gamma_real(double x);  // x > 0

// Gamma(a+1)Gamma(b+1)/Gamma(a+b+2)
double beta_factor(double a, double b);
dd beta_factor_dd(dd a, dd b);

// generalized binomial coefficient as a falling-factorial product
double binom_real(double b, unsigned m);
dd binom_real_dd(dd b, unsigned m);

// Hurwitz zeta for real s != 1 and x in (0, 1], by Euler-Maclaurin with
// adaptive N0. Negative and near-zero s route through double-double
// arithmetic internally: the direct terms grow like N0^{-s} there and
// cancel against the correction tail, which plain double cannot survive.
double hurwitz_zeta(double s, double x, const PrecisionProfile& prof = {});

// full double-double variant for coefficient-level work
dd hurwitz_zeta_dd(dd s, dd x, double target_abs_err = 1e-26);

// zeta(s, e/d) for e = 1..d
std::vector<double> hurwitz_row(double s, std::uint64_t d,
                                const PrecisionProfile& prof = {});

double riemann_zeta(double s, const PrecisionProfile& prof = {});
dd riemann_zeta_dd(dd s, double target_abs_err = 1e-26);

// zeta(-k, x) = -B_{k+1}(x)/(k+1), exact for rational x in (0, 1]
BigRat zeta_neg_int(int k, const BigRat& x);
double zeta_neg_int(int k, double x);

}  // namespace sigmaconv::special
