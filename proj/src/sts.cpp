#include "sigmaconv/sts.hpp"

#include <stdexcept>

#include "sigmaconv/arith.hpp"
#include "sigmaconv/parallel.hpp"
#include "sigmaconv/special.hpp"

namespace sigmaconv::sts {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

// S_{1,2}(n) for n <= N on machine words; sigma_1 sigma_2 products stay
// under 2^55 for N <= ~10^6, the running sums need 128 bits
std::vector<u128> s12_fast(std::uint64_t N) {
  auto sig1 = arith::sigma_table_u64(1, N);
  auto sig2 = arith::sigma_table_u64(2, N);
  std::vector<u128> out(N + 1, 0);
  parallel_ranges(2, N + 1, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n) {
      u128 acc = 0;
      for (std::uint64_t k = 1; k < n; ++k)
        acc += static_cast<u128>(sig1[k]) * sig2[n - k];
      out[n] = acc;
    }
  });
  return out;
}

std::uint64_t jordan2_u64(std::uint64_t n, const arith::FactorSieve& sieve) {
  std::uint64_t j = 1;
  for (auto [p, e] : sieve.factorize(n)) {
    std::uint64_t p2 = p * p;
    j *= p2 - 1;
    for (int i = 1; i < e; ++i) j *= p2;
  }
  return j;
}

}  // namespace

StsTables build_tables(std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("build_tables: N must be >= 1");
  StsTables t;
  auto fast = s12_fast(N);
  t.s12.resize(N + 1);
  for (std::uint64_t n = 0; n <= N; ++n) t.s12[n] = to_bigint(fast[n]);
  auto mu = arith::mobius_table(N);
  auto sig2 = arith::sigma_table_int(2, N);
  t.mu_sigma2.resize(N + 1);
  for (std::uint64_t d = 1; d <= N; ++d)
    t.mu_sigma2[d] = BigInt(mu[d]) * sig2.values[d];
  return t;
}

StsCount d_count(std::uint64_t n, const StsTables& tables) {
  if (n < 1 || n > tables.limit())
    throw std::out_of_range("d_count: n outside table range");
  StsCount out;
  out.n = n;

  arith::FactorSieve sieve(std::max<std::uint64_t>(n, 2));
  BigInt poly_num = BigInt(n) * BigInt(n - 1) * arith::jordan_totient(2, n, sieve);
  out.polynomial_part = BigRat(poly_num, BigInt(6));

  BigInt conv = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) conv += tables.mu_sigma2[d] * tables.s12[n / d];
  out.convolution_part = conv;

  BigRat diff = out.polynomial_part - BigRat(conv);
  if (boost::multiprecision::denominator(diff) != 1)
    throw std::runtime_error("d_count: D(n) is not an integer at n=" +
                             std::to_string(n));
  out.d_value = boost::multiprecision::numerator(diff);
  return out;
}

std::vector<BigInt> d_table(std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("d_table: N must be >= 1");
  auto s12 = s12_fast(N);
  auto mu = arith::mobius_table(N);
  auto sig2 = arith::sigma_table_u64(2, N);
  arith::FactorSieve sieve(std::max<std::uint64_t>(N, 2));

  // (mu sigma_2) * S_{1,2} by the divisor sieve
  std::vector<i128> conv(N + 1, 0);
  for (std::uint64_t d = 1; d <= N; ++d) {
    if (mu[d] == 0) continue;
    i128 w = static_cast<i128>(mu[d]) * static_cast<i128>(sig2[d]);
    for (std::uint64_t m = d; m <= N; m += d)
      conv[m] += w * static_cast<i128>(s12[m / d]);
  }

  std::vector<BigInt> out(N + 1, BigInt(0));
  for (std::uint64_t n = 1; n <= N; ++n) {
    u128 poly_num = static_cast<u128>(n) * (n - 1) * jordan2_u64(n, sieve);
    if (poly_num % 6 != 0)
      throw std::runtime_error("d_table: n(n-1)J_2(n) not divisible by 6 at n=" +
                               std::to_string(n));
    i128 d_val = static_cast<i128>(poly_num / 6) - conv[n];
    out[n] = to_bigint(d_val);
  }
  return out;
}

DensityExperiment density_experiment(std::uint64_t N) {
  if (N < 100)
    throw std::invalid_argument("density_experiment: N must be >= 100");
  auto s12 = s12_fast(N);
  auto mu = arith::mobius_table(N);
  auto sig2 = arith::sigma_table_u64(2, N);
  arith::FactorSieve sieve(N);

  std::vector<i128> conv(N + 1, 0);
  for (std::uint64_t d = 1; d <= N; ++d) {
    if (mu[d] == 0) continue;
    i128 w = static_cast<i128>(mu[d]) * static_cast<i128>(sig2[d]);
    for (std::uint64_t m = d; m <= N; m += d)
      conv[m] += w * static_cast<i128>(s12[m / d]);
  }

  DensityExperiment out;
  out.target = 1.0 - special::riemann_zeta(2.0) * special::riemann_zeta(3.0) /
                         (2.0 * special::riemann_zeta(5.0));
  out.points.reserve(N - 1);
  double running = 0.0;
  std::uint64_t count = 0;
  for (std::uint64_t n = 2; n <= N; ++n) {
    u128 poly_num = static_cast<u128>(n) * (n - 1) * jordan2_u64(n, sieve);
    if (poly_num % 6 != 0)
      throw std::runtime_error("density_experiment: integrality failure");
    i128 poly = static_cast<i128>(poly_num / 6);
    i128 d_val = poly - conv[n];
    DensityPoint p;
    p.n = n;
    p.ratio = static_cast<double>(d_val) / static_cast<double>(poly);
    running += p.ratio;
    ++count;
    p.cesaro = running / static_cast<double>(count);
    out.points.push_back(p);
  }
  out.cesaro_final = out.points.back().cesaro;
  return out;
}

}  // namespace sigmaconv::sts
