#pragma once

#include <cstdint>

namespace sigmaconv::kloosterman {

// Parameters of the twisted sum S_n(m, k; d) over pairs e1 e2 = n (mod d).
// k may be negative; it is reduced mod d before use.
struct KloostermanQuery {
  long long m = 0;
  long long k = 0;
  std::uint64_t n = 1;
  std::uint64_t d = 1;
};

// Classical K(aa, bb; q) over units x mod q with y = x^{-1}. The sums are
// real by the x -> -x pairing; the imaginary accumulation is asserted
// below 1e-9 and the real part returned.
double kloosterman_sum(long long aa, long long bb, std::uint64_t q);

// S_n(m, k; d) by enumeration of solution pairs, grouped by gcd(e1, d)
double twisted_sum_direct(const KloostermanQuery& q);

// O(d^2) reference path over all pairs, for cross-checks
double twisted_sum_bruteforce(const KloostermanQuery& q);

// right-hand side of the decomposition into classical sums:
// sum over f | (d, n, k) of f * K(m, k n / f^2; d / f)
double twisted_sum_decomposed(const KloostermanQuery& q);

struct WeilCheck {
  double value = 0.0;
  double bound = 0.0;
  bool ok = false;
};
// |K(aa, bb; q)| <= tau(q) sqrt(q) gcd(aa, bb, q)^{1/2}
WeilCheck weil_check(long long aa, long long bb, std::uint64_t q);

struct DecompositionSweep {
  double max_gap = 0.0;
  std::uint64_t checks = 0;
};
// max |direct - decomposed| over d <= d_max and m, k, n in 1..param_max
DecompositionSweep decomposition_sweep(std::uint64_t d_max, int param_max);

struct WeilSweep {
  bool all_ok = true;
  double max_ratio = 0.0;  // |K| / bound
  std::uint64_t checks = 0;
};
WeilSweep weil_sweep(std::uint64_t q_max, int param_max);

struct TwistedBoundSweep {
  double max_ratio = 0.0;  // |S_n(m,k;d)| / [d^{1/2+eps} (d,k)^{1/2} (d,m)^{1/2}]
  std::uint64_t checks = 0;
};
// empirical check of the twisted-sum bound with eps = 0.1; the ratio must
// stay below one sweep-wide constant
TwistedBoundSweep twisted_bound_sweep(std::uint64_t d_max, int param_max,
                                      double eps = 0.1);

}  // namespace sigmaconv::kloosterman
