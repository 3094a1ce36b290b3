#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sigmaconv/arith.hpp"
#include "sigmaconv/convolution.hpp"
#include "sigmaconv/dd.hpp"

namespace sigmaconv::asymptotic {

using convolution::ExponentPair;
using convolution::Regime;

// Truncation of the d-sum in the residue terms.
struct ApproxConfig {
  std::uint64_t d_max = 2000;
  double tail_tolerance = 1e-9;
  // exact Bernoulli rows for zeta(-m-a, .): defaults to on for integer a
  std::optional<bool> use_exact_bernoulli_path;

  void validate() const;
};

// leading coefficient times sigma_{a+b+1}(n)
double main_term(double a, double b, std::uint64_t n,
                 const arith::FactorSieve& sieve);

// zeta(1-a) zeta(b+1) / ((b+1) zeta(b-a+2)) n^a sigma_{b-a+1}(n);
// refuses a >= b, where the hypothesis of the expansion fails
double secondary_term(double a, double b, std::uint64_t n,
                      const arith::FactorSieve& sieve);

// residue of the shifted integrand at s = -m, evaluated from the truncated
// d-sum over congruence pairs. For odd integer a the series terminates at
// the divisors of n; otherwise requires m < (b-a)/2 - 3/4.
double residue_term(unsigned m, double a, double b, std::uint64_t n,
                    const ApproxConfig& cfg = {});

// closed form for odd integer a: m = 0 gives -zeta(-a) sigma_b(n) / 2,
// every m >= 1 vanishes
double residue_closed_form_odd_a(unsigned m, unsigned a, double b,
                                 std::uint64_t n,
                                 const arith::FactorSieve& sieve);

struct ResidueEntry {
  unsigned m = 0;
  double value = 0.0;
};

struct Expansion {
  ExponentPair exponents;
  std::uint64_t n = 0;
  double main = 0.0;
  double secondary = 0.0;  // included per regime; 0 when absent
  std::vector<ResidueEntry> residues;
  double predicted_error_exponent = 0.0;
  double approx = 0.0;
};

double predicted_error_exponent(const ExponentPair& p);

Expansion expand(double a, double b, std::uint64_t n,
                 const ApproxConfig& cfg = {});

// high-precision value of the same expansion, for residual measurements
dd expand_dd(double a, double b, std::uint64_t n, const ApproxConfig& cfg = {});

struct FitPoint {
  std::uint64_t n = 0;
  double s_exact = 0.0;
  double approx = 0.0;
  double residual = 0.0;
  double log_n = 0.0;
  double log_abs_residual = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<FitPoint> points;  // usable points only
  std::uint64_t skipped = 0;     // residual exactly zero
};

std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi,
                                          int points);

// least-squares slope of log|S_exact - approx| against log n over the grid
FitResult error_exponent_fit(double a, double b,
                             const std::vector<std::uint64_t>& grid,
                             const ApproxConfig& cfg = {});

struct RestrictedPowerSum {
  double exact = 0.0;
  double main = 0.0;
  double deviation = 0.0;  // |exact - main| / n^{a+b}
};
// sum of j^a (n-j)^b over 1 <= j <= n-1 with j = k (mod m), against the
// equidistributed main term n^{a+b+1} beta / m
RestrictedPowerSum restricted_power_sum_check(std::uint64_t n, std::uint64_t m,
                                              std::uint64_t k, double a,
                                              double b);

struct GapCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tail_model = 0.0;
};

// truncated coprime double sum against zeta(r) zeta(s) / zeta(r+s); the
// tail model is a rigorous bound on the missing mass
GapCheck dirichlet_identity_check(double r, double s, std::uint64_t T);

// truncated sum over d of n^{a+b+1} d^{-a-b-2} sum_{e1 e2 = n (d)}
// zeta(a+1, e2/d) against the closed form; valid for a > -b, a != 0,
// including the continued range -b < a < 0
GapCheck hurwitz_sigma_identity_check(double a, double b, std::uint64_t n,
                                      std::uint64_t d_max);

}  // namespace sigmaconv::asymptotic
