#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sigmaconv/bigint.hpp"
#include "sigmaconv/dd.hpp"

namespace sigmaconv::arith {

// Smallest-prime-factor sieve; the factorization backbone for every
// divisor-function evaluation. Immutable after construction.
class FactorSieve {
 public:
  // 2 <= limit <= memory_cap entries of 4 bytes each
  explicit FactorSieve(std::uint64_t limit,
                       std::uint64_t memory_cap = 100'000'000ull);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t spf(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf(n) == n; }

  // prime factorization of n as (p, multiplicity), p ascending
  std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) const;

  // all positive divisors of n, ascending
  std::vector<std::uint64_t> divisors(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

// sigma_a(n) = sum of d^a over divisors d of n.
// Exact path for integer a >= 0; compensated float path for real a.
BigInt sigma_int(unsigned a, std::uint64_t n, const FactorSieve& sieve);
double sigma_real(double a, std::uint64_t n, const FactorSieve& sieve);
dd sigma_dd(dd a, std::uint64_t n, const FactorSieve& sieve);

// sigma values for all 1 <= n <= N via the divisor sieve, index n (slot 0
// unused). The integer table is exact; the float table precomputes d^a
// once per d and is good to ~1e-14 relative.
struct SigmaTableInt {
  unsigned exponent = 0;
  std::vector<BigInt> values;
  std::uint64_t limit() const { return values.size() - 1; }
};
struct SigmaTableReal {
  double exponent = 0.0;
  std::vector<double> values;
  std::uint64_t limit() const { return values.size() - 1; }
};

SigmaTableInt sigma_table_int(unsigned a, std::uint64_t N);
SigmaTableReal sigma_table_real(double a, std::uint64_t N);
std::vector<dd> sigma_table_dd(dd a, std::uint64_t N);

// u64 variant for bounded hot paths; throws on overflow.
std::vector<std::uint64_t> sigma_table_u64(unsigned a, std::uint64_t N);

// mu[n] for n <= N, values in {-1, 0, +1}; slot 0 unused
std::vector<std::int8_t> mobius_table(std::uint64_t N);

// Jordan totient J_k(n) = n^k prod_{p|n} (1 - p^{-k}), exact
BigInt jordan_totient(unsigned k, std::uint64_t n, const FactorSieve& sieve);

// out[n] = sum_{d|n} f[d] g[n/d], exact, O(N log N); arrays are 1-based
// with slot 0 ignored and must have equal length.
std::vector<BigInt> dirichlet_convolve(const std::vector<BigInt>& f,
                                       const std::vector<BigInt>& g);

}  // namespace sigmaconv::arith
