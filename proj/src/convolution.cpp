#include "sigmaconv/convolution.hpp"

#include <cmath>
#include <stdexcept>

#include "sigmaconv/numeric.hpp"
#include "sigmaconv/parallel.hpp"

namespace sigmaconv::convolution {

namespace {

using u128 = unsigned __int128;

double bit_length(const BigInt& v) {
  return v == 0 ? 0.0 : static_cast<double>(boost::multiprecision::msb(v)) + 1.0;
}

}  // namespace

ExponentPair classify(double a, double b) {
  if (!(a > 0.0) || !(b >= a))
    throw std::invalid_argument("classify: need 0 < a <= b");
  ExponentPair p;
  p.a = a;
  p.b = b;
  if (b - a > 1.5)
    p.regime = Regime::kWide;
  else if (std::max(a, 2.0 - a) < b && b <= a + 1.5)
    p.regime = Regime::kNarrow;
  else
    p.regime = Regime::kHalberstam;
  return p;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kWide: return "wide";
    case Regime::kNarrow: return "narrow";
    case Regime::kHalberstam: return "halberstam";
  }
  return "?";
}

BigInt s_ab_int(std::uint64_t n, const arith::SigmaTableInt& ta,
                const arith::SigmaTableInt& tb) {
  if (n < 1 || n > ta.limit() + 1 || n > tb.limit() + 1)
    throw std::out_of_range("s_ab_int: n outside table range");
  BigInt acc = 0;
  for (std::uint64_t k = 1; k < n; ++k) acc += ta.values[k] * tb.values[n - k];
  return acc;
}

double s_ab_real(std::uint64_t n, const arith::SigmaTableReal& ta,
                 const arith::SigmaTableReal& tb) {
  if (n < 1 || n > ta.limit() + 1 || n > tb.limit() + 1)
    throw std::out_of_range("s_ab_real: n outside table range");
  KahanSum acc;
  for (std::uint64_t k = 1; k < n; ++k)
    acc.add(ta.values[k] * tb.values[n - k]);
  return acc.value();
}

dd s_ab_dd(std::uint64_t n, const std::vector<dd>& ta,
           const std::vector<dd>& tb) {
  if (n < 1 || n > ta.size() || n > tb.size())
    throw std::out_of_range("s_ab_dd: n outside table range");
  dd acc(0.0);
  for (std::uint64_t k = 1; k < n; ++k) acc += ta[k] * tb[n - k];
  return acc;
}

std::vector<BigInt> s_ab_batch_int(unsigned a, unsigned b, std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("s_ab_batch_int: N must be >= 1");
  auto ta = arith::sigma_table_int(a, N);
  auto tb = (a == b) ? ta : arith::sigma_table_int(b, N);
  std::vector<BigInt> out(N + 1, BigInt(0));

  double max_a = 0, max_b = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    max_a = std::max(max_a, bit_length(ta.values[n]));
    max_b = std::max(max_b, bit_length(tb.values[n]));
  }
  // when every term and partial sum fits 128 bits, run on machine words
  if (max_a <= 63 && max_b <= 63 &&
      max_a + max_b + std::log2(static_cast<double>(N) + 1) < 126.0) {
    std::vector<std::uint64_t> ua(N + 1), ub(N + 1);
    for (std::uint64_t n = 0; n <= N; ++n) {
      ua[n] = ta.values[n].convert_to<std::uint64_t>();
      ub[n] = tb.values[n].convert_to<std::uint64_t>();
    }
    parallel_ranges(1, N + 1, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t n = lo; n < hi; ++n) {
        u128 acc = 0;
        for (std::uint64_t k = 1; k < n; ++k)
          acc += static_cast<u128>(ua[k]) * ub[n - k];
        out[n] = to_bigint(acc);
      }
    });
  } else {
    parallel_ranges(1, N + 1, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t n = lo; n < hi; ++n) out[n] = s_ab_int(n, ta, tb);
    });
  }
  return out;
}

std::vector<double> s_ab_batch_real(double a, double b, std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("s_ab_batch_real: N must be >= 1");
  auto ta = arith::sigma_table_real(a, N);
  auto tb = arith::sigma_table_real(b, N);
  std::vector<double> out(N + 1, 0.0);
  parallel_ranges(1, N + 1, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n) out[n] = s_ab_real(n, ta, tb);
  });
  return out;
}

BigInt s_weighted(unsigned kw, std::uint64_t n,
                  const arith::SigmaTableInt& sigma1) {
  if (kw < 1) throw std::invalid_argument("s_weighted: kw must be >= 1");
  if (n < 1 || n > sigma1.limit())
    throw std::out_of_range("s_weighted: n outside table range");
  BigInt acc = 0;
  for (std::uint64_t alpha = 1; alpha * kw < n; ++alpha)
    acc += sigma1.values[alpha] * sigma1.values[n - alpha * kw];
  return acc;
}

S33Report verify_identity_s33(std::uint64_t N) {
  if (N < 2) throw std::invalid_argument("verify_identity_s33: N must be >= 2");
  auto s33 = s_ab_batch_int(3, 3, N);
  auto sig7 = arith::sigma_table_int(7, N);
  auto sig3 = arith::sigma_table_int(3, N);

  // fix the sign from brute force at the probe points before sweeping
  int sign = 0;
  for (int candidate : {+1, -1}) {
    bool ok = true;
    for (std::uint64_t n = 2; n <= std::min<std::uint64_t>(4, N); ++n)
      ok = ok && (120 * s33[n] == sig7.values[n] + candidate * sig3.values[n]);
    if (ok) {
      sign = candidate;
      break;
    }
  }
  if (sign == 0)
    throw std::runtime_error(
        "verify_identity_s33: no sign matches at the probe points");

  S33Report rep;
  rep.sign = sign;
  for (std::uint64_t n = 2; n <= N; ++n) {
    ++rep.n_checked;
    if (120 * s33[n] != sig7.values[n] + sign * sig3.values[n]) {
      if (rep.mismatches == 0) rep.first_bad_n = n;
      ++rep.mismatches;
    }
  }
  return rep;
}

S11kReport verify_identity_s11k(unsigned kw, std::uint64_t N) {
  if (kw != 2 && kw != 4)
    throw std::invalid_argument("verify_identity_s11k: kw must be 2 or 4");
  if (N < 1) throw std::invalid_argument("verify_identity_s11k: N must be >= 1");
  auto sig1 = arith::sigma_table_int(1, N);
  auto sig3 = arith::sigma_table_int(3, N);
  // sigma of a non-integer argument is zero by convention
  auto s3 = [&](std::uint64_t n, unsigned div) {
    return n % div == 0 ? sig3.values[n / div] : BigInt(0);
  };
  auto s1 = [&](std::uint64_t n, unsigned div) {
    return n % div == 0 ? sig1.values[n / div] : BigInt(0);
  };

  S11kReport rep;
  rep.kw = kw;
  for (std::uint64_t n = 1; n <= N; ++n) {
    BigInt lhs, rhs;
    if (kw == 2) {
      lhs = 24 * s_weighted(2, n, sig1);
      rhs = 2 * sig3.values[n] + 8 * s3(n, 2) - 3 * BigInt(n) * sig1.values[n] -
            6 * BigInt(n) * s1(n, 2) + sig1.values[n] + s1(n, 2);
    } else {
      lhs = 48 * s_weighted(4, n, sig1);
      rhs = sig3.values[n] + 3 * s3(n, 2) + 16 * s3(n, 4) -
            3 * BigInt(n) * sig1.values[n] - 12 * BigInt(n) * s1(n, 4) +
            2 * sig1.values[n] + 2 * s1(n, 4);
    }
    ++rep.n_checked;
    if (lhs != rhs) {
      if (rep.mismatches == 0) rep.first_bad_n = n;
      ++rep.mismatches;
    }
  }
  return rep;
}

}  // namespace sigmaconv::convolution
