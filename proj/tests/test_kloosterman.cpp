#include "doctest.h"

#include <cmath>
#include <initializer_list>

#include "sigmaconv/kloosterman.hpp"

using namespace sigmaconv::kloosterman;

TEST_CASE("classical kloosterman sums") {
  CHECK(kloosterman_sum(1, 1, 1) == 1.0);
  // direct enumeration over the units of 5: 2 + 2 cos(4 pi / 5)
  double want = 2.0 + 2.0 * std::cos(4.0 * M_PI / 5.0);
  CHECK(kloosterman_sum(1, 1, 5) == doctest::Approx(want).epsilon(1e-12));
  CHECK(kloosterman_sum(1, 1, 5) == doctest::Approx(0.38196601).epsilon(1e-7));
  // counting case: K(0, 0; q) = phi(q)
  CHECK(kloosterman_sum(0, 0, 6) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(kloosterman_sum(0, 0, 7) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("kloosterman symmetry in the two arguments") {
  for (std::uint64_t q : {5ull, 12ull, 35ull, 97ull}) {
    for (long long aa = 1; aa <= 4; ++aa)
      for (long long bb = aa; bb <= 4; ++bb)
        CHECK(std::fabs(kloosterman_sum(aa, bb, q) -
                        kloosterman_sum(bb, aa, q)) < 1e-9);
  }
}

TEST_CASE("twisted sum basics") {
  CHECK(twisted_sum_direct({3, 4, 2, 1}) == 1.0);
  // m = k = 0 counts the solution pairs
  KloostermanQuery count{0, 0, 6, 12};
  double pairs = 0;
  for (std::uint64_t e1 = 1; e1 <= 12; ++e1)
    for (std::uint64_t e2 = 1; e2 <= 12; ++e2)
      if (e1 * e2 % 12 == 6) pairs += 1;
  CHECK(twisted_sum_direct(count) == doctest::Approx(pairs).epsilon(1e-12));
  // S_1(m, k; d) is the classical sum
  CHECK(twisted_sum_direct({1, 1, 1, 5}) ==
        doctest::Approx(kloosterman_sum(1, 1, 5)).epsilon(1e-12));
}

TEST_CASE("grouped direct path equals the O(d^2) reference") {
  for (std::uint64_t d = 1; d <= 40; ++d) {
    for (long long m : {0ll, 1ll, 3ll})
      for (long long k : {-7ll, 0ll, 2ll, 5ll})
        for (std::uint64_t n : {1ull, 4ull, 6ull}) {
          KloostermanQuery q{m, k, n, d};
          CHECK(std::fabs(twisted_sum_direct(q) - twisted_sum_bruteforce(q)) <
                1e-9);
        }
  }
}

TEST_CASE("decomposition identity, hand case and sweep slice") {
  // d=4, n=2, k=2, m=1: f in {1, 2} gives K(1,4;4) + 2 K(1,1;2) = 2
  KloostermanQuery q{1, 2, 2, 4};
  double want = kloosterman_sum(1, 4, 4) + 2.0 * kloosterman_sum(1, 1, 2);
  CHECK(twisted_sum_decomposed(q) == doctest::Approx(want).epsilon(1e-12));
  CHECK(twisted_sum_decomposed(q) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(twisted_sum_direct(q) == doctest::Approx(2.0).epsilon(1e-10));

  // f = 1 only when the gcd is trivial
  KloostermanQuery coprime{2, 3, 5, 7};
  CHECK(twisted_sum_decomposed(coprime) ==
        doctest::Approx(kloosterman_sum(2, 15, 7)).epsilon(1e-12));

  auto sweep = decomposition_sweep(60, 6);
  CHECK(sweep.max_gap < 1e-6);
  CHECK(sweep.checks == 60 * 216);
}

TEST_CASE("negative k reduces mod d consistently") {
  for (std::uint64_t d : {6ull, 15ull, 28ull}) {
    for (long long k : {-1ll, -5ll, -17ll}) {
      KloostermanQuery neg{2, k, 4, d};
      long long kmod = ((k % (long long)d) + (long long)d) % (long long)d;
      KloostermanQuery pos{2, kmod, 4, d};
      CHECK(std::fabs(twisted_sum_direct(neg) - twisted_sum_direct(pos)) < 1e-10);
      CHECK(std::fabs(twisted_sum_decomposed(neg) - twisted_sum_direct(neg)) <
            1e-6);
    }
  }
}

TEST_CASE("weil bound") {
  auto w = weil_check(1, 1, 5);
  CHECK(w.value == doctest::Approx(0.381966).epsilon(1e-5));
  CHECK(w.bound == doctest::Approx(2.0 * std::sqrt(5.0)).epsilon(1e-12));
  CHECK(w.ok);
  // counting case at a prime: value p - 1, bound 2p
  auto w0 = weil_check(0, 0, 13);
  CHECK(w0.value == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(w0.bound == doctest::Approx(26.0).epsilon(1e-12));
  CHECK(w0.ok);

  auto sweep = weil_sweep(120, 3);
  CHECK(sweep.all_ok);
  CHECK(sweep.max_ratio <= 1.0);
}

TEST_CASE("twisted-sum bound with eps = 0.1 holds with one constant") {
  // the full d <= 300 sweep peaks near 2.6; anything wandering past 4
  // would mean the gcd structure of the bound is wrong
  auto sweep = twisted_bound_sweep(120, 6);
  CHECK(sweep.max_ratio <= 4.0);
  CHECK(sweep.max_ratio > 0.5);  // sanity: the sums are not trivially tiny
}
