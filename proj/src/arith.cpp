#include "sigmaconv/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigmaconv/numeric.hpp"

namespace sigmaconv::arith {

FactorSieve::FactorSieve(std::uint64_t limit, std::uint64_t memory_cap)
    : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("FactorSieve: limit must be >= 2");
  if (limit > memory_cap)
    throw std::invalid_argument("FactorSieve: limit exceeds memory cap");
  spf_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

std::uint32_t FactorSieve::spf(std::uint64_t n) const {
  if (n < 2 || n > limit_)
    throw std::out_of_range("FactorSieve::spf: n outside sieve range");
  return spf_[n];
}

std::vector<std::pair<std::uint64_t, int>> FactorSieve::factorize(
    std::uint64_t n) const {
  if (n < 1 || n > limit_)
    throw std::out_of_range("FactorSieve::factorize: n outside sieve range");
  std::vector<std::pair<std::uint64_t, int>> out;
  while (n > 1) {
    std::uint64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::vector<std::uint64_t> FactorSieve::divisors(std::uint64_t n) const {
  auto fac = factorize(n);
  std::vector<std::uint64_t> divs{1};
  for (auto [p, e] : fac) {
    std::size_t base = divs.size();
    std::uint64_t pw = 1;
    for (int j = 1; j <= e; ++j) {
      pw *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

BigInt sigma_int(unsigned a, std::uint64_t n, const FactorSieve& sieve) {
  BigInt result = 1;
  for (auto [p, e] : sieve.factorize(n)) {
    BigInt pa = bigint_pow(BigInt(p), a);
    BigInt term = 1, acc = 1;
    for (int j = 0; j < e; ++j) {
      term *= pa;
      acc += term;
    }
    result *= acc;
  }
  return result;
}

double sigma_real(double a, std::uint64_t n, const FactorSieve& sieve) {
  KahanSum s;
  for (std::uint64_t d : sieve.divisors(n))
    s.add(std::pow(static_cast<double>(d), a));
  return s.value();
}

dd sigma_dd(dd a, std::uint64_t n, const FactorSieve& sieve) {
  dd s(0.0);
  for (std::uint64_t d : sieve.divisors(n))
    s += pow(dd(static_cast<double>(d)), a);
  return s;
}

constexpr std::uint64_t kTableCap = 100'000'000ull;

SigmaTableInt sigma_table_int(unsigned a, std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("sigma_table_int: N must be >= 1");
  if (N > kTableCap)
    throw std::invalid_argument("sigma_table_int: N exceeds memory cap");
  SigmaTableInt table;
  table.exponent = a;
  table.values.assign(N + 1, BigInt(0));
  for (std::uint64_t d = 1; d <= N; ++d) {
    BigInt da = bigint_pow(BigInt(d), a);
    for (std::uint64_t m = d; m <= N; m += d) table.values[m] += da;
  }
  return table;
}

SigmaTableReal sigma_table_real(double a, std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("sigma_table_real: N must be >= 1");
  if (N > kTableCap)
    throw std::invalid_argument("sigma_table_real: N exceeds memory cap");
  SigmaTableReal table;
  table.exponent = a;
  table.values.assign(N + 1, 0.0);
  for (std::uint64_t d = 1; d <= N; ++d) {
    // one transcendental evaluation per d, not per multiple
    double da = std::exp(a * std::log(static_cast<double>(d)));
    for (std::uint64_t m = d; m <= N; m += d) table.values[m] += da;
  }
  return table;
}

std::vector<dd> sigma_table_dd(dd a, std::uint64_t N) {
  std::vector<dd> values(N + 1, dd(0.0));
  for (std::uint64_t d = 1; d <= N; ++d) {
    dd da = pow(dd(static_cast<double>(d)), a);
    for (std::uint64_t m = d; m <= N; m += d) values[m] += da;
  }
  return values;
}

std::vector<std::uint64_t> sigma_table_u64(unsigned a, std::uint64_t N) {
  std::vector<std::uint64_t> values(N + 1, 0);
  for (std::uint64_t d = 1; d <= N; ++d) {
    std::uint64_t da = 1;
    for (unsigned j = 0; j < a; ++j) {
      if (__builtin_mul_overflow(da, d, &da))
        throw std::overflow_error("sigma_table_u64: d^a overflow");
    }
    for (std::uint64_t m = d; m <= N; m += d) {
      if (__builtin_add_overflow(values[m], da, &values[m]))
        throw std::overflow_error("sigma_table_u64: accumulation overflow");
    }
  }
  return values;
}

std::vector<std::int8_t> mobius_table(std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("mobius_table: N must be >= 1");
  if (N > kTableCap)
    throw std::invalid_argument("mobius_table: N exceeds memory cap");
  std::vector<std::int8_t> mu(N + 1, 0);
  std::vector<std::uint32_t> spf(N + 1, 0), primes;
  mu[1] = 1;
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
      mu[i] = -1;
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || i * p > N) break;
      spf[i * p] = p;
      mu[i * p] = (i % p == 0) ? 0 : -mu[i];
    }
  }
  return mu;
}

BigInt jordan_totient(unsigned k, std::uint64_t n, const FactorSieve& sieve) {
  if (k < 1) throw std::invalid_argument("jordan_totient: k must be >= 1");
  // J_k(n) = prod over p^e || n of p^{k(e-1)} (p^k - 1)
  BigInt result = 1;
  for (auto [p, e] : sieve.factorize(n)) {
    BigInt pk = bigint_pow(BigInt(p), k);
    result *= pk - 1;
    for (int j = 1; j < e; ++j) result *= pk;
  }
  return result;
}

std::vector<BigInt> dirichlet_convolve(const std::vector<BigInt>& f,
                                       const std::vector<BigInt>& g) {
  if (f.size() != g.size())
    throw std::invalid_argument("dirichlet_convolve: length mismatch");
  if (f.size() < 2) return {};
  std::uint64_t N = f.size() - 1;
  std::vector<BigInt> out(N + 1, BigInt(0));
  for (std::uint64_t d = 1; d <= N; ++d) {
    if (f[d] == 0) continue;
    for (std::uint64_t e = 1; d * e <= N; ++e) {
      if (g[e] == 0) continue;
      out[d * e] += f[d] * g[e];
    }
  }
  return out;
}

}  // namespace sigmaconv::arith
