#include "doctest.h"

#include <numeric>
#include <random>

#include "sigmaconv/arith.hpp"

using namespace sigmaconv;
using namespace sigmaconv::arith;

TEST_CASE("factor sieve basics") {
  FactorSieve s(30);
  CHECK(s.spf(9) == 3);
  CHECK(s.spf(10) == 2);
  CHECK(s.spf(30) == 2);
  CHECK(s.spf(25) == 5);
  CHECK(s.spf(29) == 29);
  FactorSieve tiny(2);
  CHECK(tiny.spf(2) == 2);
  CHECK_THROWS_AS(FactorSieve(1), std::invalid_argument);
  CHECK_THROWS_AS(FactorSieve(1000, 100), std::invalid_argument);
}

TEST_CASE("sieve invariants hold up to 10^4") {
  FactorSieve s(10000);
  for (std::uint64_t n = 2; n <= 10000; ++n) {
    std::uint64_t p = s.spf(n);
    CHECK(n % p == 0);
    CHECK(s.is_prime(p));
    // p is the smallest factor
    for (std::uint64_t q = 2; q < p; ++q) CHECK(n % q != 0);
    if (n > 200) break;  // exhaustive smallest-factor scan only for small n
  }
  // spf[p] == p for primes
  for (std::uint64_t p : {2, 3, 5, 7, 9973}) CHECK(s.spf(p) == p);
}

TEST_CASE("divisor enumeration") {
  FactorSieve s(1000);
  CHECK(s.divisors(1) == std::vector<std::uint64_t>{1});
  CHECK(s.divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(s.divisors(97) == std::vector<std::uint64_t>{1, 97});
}

TEST_CASE("sigma point values") {
  FactorSieve s(100);
  CHECK(sigma_int(3, 4, s) == 73);
  CHECK(sigma_int(0, 12, s) == 6);
  CHECK(sigma_real(1.5, 2, s) ==
        doctest::Approx(1.0 + std::pow(2.0, 1.5)).epsilon(1e-14));
  CHECK(sigma_int(1, 1, s) == 1);
  CHECK_THROWS(sigma_int(1, 101, s));
}

TEST_CASE("sigma tables match spec examples and per-n values") {
  auto t1 = sigma_table_int(1, 6);
  std::vector<BigInt> want{0, 1, 3, 4, 7, 6, 12};
  CHECK(t1.values == want);
  auto t2 = sigma_table_int(2, 4);
  CHECK(t2.values == std::vector<BigInt>{0, 1, 5, 10, 21});

  auto tf = sigma_table_real(1.0, 6);
  for (int n = 1; n <= 6; ++n)
    CHECK(tf.values[n] ==
          doctest::Approx(static_cast<double>(want[n])).epsilon(1e-12));
}

TEST_CASE("sigma table agrees with per-n sigma entrywise up to 10^4") {
  const std::uint64_t N = 10000;
  FactorSieve s(N);
  auto t = sigma_table_int(3, N);
  for (std::uint64_t n = 1; n <= N; ++n)
    CHECK(t.values[n] == sigma_int(3, n, s));
  auto tr = sigma_table_real(2.5, N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    double want = sigma_real(2.5, n, s);
    CHECK(tr.values[n] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("table builders reject absurd sizes") {
  CHECK_THROWS_AS(sigma_table_int(1, 200'000'000ull), std::invalid_argument);
  CHECK_THROWS_AS(mobius_table(200'000'000ull), std::invalid_argument);
}

TEST_CASE("sigma multiplicativity on random coprime pairs") {
  FactorSieve s(10000);
  std::mt19937_64 rng(20240815);
  std::uniform_int_distribution<std::uint64_t> dist(2, 9999);
  int found = 0;
  while (found < 200) {
    std::uint64_t m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1 || m * n > 10000) continue;
    ++found;
    CHECK(sigma_int(2, m * n, s) == sigma_int(2, m, s) * sigma_int(2, n, s));
    double lhs = sigma_real(1.7, m * n, s);
    double rhs = sigma_real(1.7, m, s) * sigma_real(1.7, n, s);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("mobius table") {
  auto mu = mobius_table(30);
  CHECK(mu[1] == 1);
  CHECK(mu[12] == 0);
  CHECK(mu[30] == -1);
  CHECK(mu[2] == -1);
  CHECK(mu[6] == 1);
  // sum over divisors is the unit at n = 1
  FactorSieve s(30);
  for (std::uint64_t n = 1; n <= 30; ++n) {
    int total = 0;
    for (auto d : s.divisors(n)) total += mu[d];
    CHECK(total == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("jordan totient") {
  FactorSieve s(100);
  CHECK(jordan_totient(2, 6, s) == 24);
  CHECK(jordan_totient(2, 5, s) == 24);
  CHECK(jordan_totient(1, 12, s) == 4);
  CHECK(jordan_totient(2, 1, s) == 1);
}

TEST_CASE("jordan totient equals mobius inversion of d^k") {
  const std::uint64_t N = 10000;
  FactorSieve s(N);
  auto mu = mobius_table(N);
  for (std::uint64_t n = 1; n <= N; n += 53) {
    BigInt want = 0;
    for (auto d : s.divisors(n))
      want += BigInt(mu[n / d]) * bigint_pow(BigInt(d), 2);
    CHECK(jordan_totient(2, n, s) == want);
  }
}

TEST_CASE("dirichlet convolution identities") {
  const std::uint64_t N = 60;
  auto mu = mobius_table(N);
  std::vector<BigInt> muv(N + 1), ones(N + 1, 1), id(N + 1);
  ones[0] = 0;
  for (std::uint64_t n = 0; n <= N; ++n) {
    muv[n] = mu[n];
    id[n] = n;
  }
  auto unit = dirichlet_convolve(muv, ones);
  for (std::uint64_t n = 1; n <= N; ++n) CHECK(unit[n] == (n == 1 ? 1 : 0));

  auto sig1 = dirichlet_convolve(ones, id);
  auto want = sigma_table_int(1, N);
  for (std::uint64_t n = 1; n <= N; ++n) CHECK(sig1[n] == want.values[n]);

  // (mu sigma_2) * S_{1,2} at n = 4: 29 - 5*1 = 24
  std::vector<BigInt> mu_sig2{0, 1, -5, -10, 0};
  std::vector<BigInt> s12{0, 0, 1, 8, 29};
  auto conv = dirichlet_convolve(mu_sig2, s12);
  CHECK(conv[4] == 24);

  CHECK_THROWS_AS(dirichlet_convolve(muv, std::vector<BigInt>(3)),
                  std::invalid_argument);
}

TEST_CASE("dirichlet convolution is associative and commutative") {
  const std::uint64_t N = 512;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-9, 9);
  std::vector<BigInt> f(N + 1), g(N + 1), h(N + 1);
  for (std::uint64_t n = 1; n <= N; ++n) {
    f[n] = dist(rng);
    g[n] = dist(rng);
    h[n] = dist(rng);
  }
  CHECK(dirichlet_convolve(f, g) == dirichlet_convolve(g, f));
  CHECK(dirichlet_convolve(dirichlet_convolve(f, g), h) ==
        dirichlet_convolve(f, dirichlet_convolve(g, h)));
}
