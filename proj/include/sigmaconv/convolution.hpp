#pragma once

#include <cstdint>
#include <vector>

#include "sigmaconv/arith.hpp"
#include "sigmaconv/bigint.hpp"

namespace sigmaconv::convolution {

// Parameter regimes of the expansion of S_{a,b}(n). The wide regime
// carries residue terms, the narrow regime main + secondary only, and
// everything else falls back to the main term alone.
enum class Regime { kWide, kNarrow, kHalberstam };

struct ExponentPair {
  double a = 0.0;
  double b = 0.0;
  Regime regime = Regime::kHalberstam;
};

// requires 0 < a <= b
ExponentPair classify(double a, double b);
const char* regime_name(Regime r);

// S_{a,b}(n) = sum_{k=1}^{n-1} sigma_a(k) sigma_b(n-k); empty sum is 0.
BigInt s_ab_int(std::uint64_t n, const arith::SigmaTableInt& ta,
                const arith::SigmaTableInt& tb);
double s_ab_real(std::uint64_t n, const arith::SigmaTableReal& ta,
                 const arith::SigmaTableReal& tb);
dd s_ab_dd(std::uint64_t n, const std::vector<dd>& ta,
           const std::vector<dd>& tb);

// batch values for n = 1..N (slot 0 unused); builds tables internally
std::vector<BigInt> s_ab_batch_int(unsigned a, unsigned b, std::uint64_t N);
std::vector<double> s_ab_batch_real(double a, double b, std::uint64_t N);

// S^k_{1,1}(n) = sum over kw*alpha + beta = n of sigma_1(alpha) sigma_1(beta)
BigInt s_weighted(unsigned kw, std::uint64_t n,
                  const arith::SigmaTableInt& sigma1);

// Exact checks of the printed closed forms, denominators cleared. A
// mathematical mismatch is reported, not thrown; only impossible inputs
// throw.
struct S33Report {
  int sign = 0;  // the epsilon in 120 S_{3,3}(n) = sigma_7(n) + sign*sigma_3(n)
  std::uint64_t n_checked = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t first_bad_n = 0;
};
S33Report verify_identity_s33(std::uint64_t N);

struct S11kReport {
  unsigned kw = 0;
  std::uint64_t n_checked = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t first_bad_n = 0;
};
S11kReport verify_identity_s11k(unsigned kw, std::uint64_t N);

}  // namespace sigmaconv::convolution
