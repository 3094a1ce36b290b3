#include "sigmaconv/kloosterman.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sigmaconv/numeric.hpp"
#include "sigmaconv/parallel.hpp"

namespace sigmaconv::kloosterman {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// e(j/q) for j = 0..q-1; exact angle reduction happens in the index
struct RootTable {
  std::vector<double> cosv, sinv;
  explicit RootTable(std::uint64_t q) : cosv(q), sinv(q) {
    for (std::uint64_t j = 0; j < q; ++j) {
      double ang = kTwoPi * static_cast<double>(j) / static_cast<double>(q);
      cosv[j] = std::cos(ang);
      sinv[j] = std::sin(ang);
    }
  }
};

std::uint64_t mod_reduce(long long v, std::uint64_t q) {
  long long r = v % static_cast<long long>(q);
  if (r < 0) r += static_cast<long long>(q);
  return static_cast<std::uint64_t>(r);
}

// x^{-1} mod q for gcd(x, q) = 1, extended Euclid
std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t q) {
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(q), new_r = static_cast<long long>(x);
  while (new_r != 0) {
    long long quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  if (t < 0) t += static_cast<long long>(q);
  return static_cast<std::uint64_t>(t);
}

struct ComplexKahan {
  KahanSum re, im;
  void add(const RootTable& roots, std::uint64_t idx) {
    re.add(roots.cosv[idx]);
    im.add(roots.sinv[idx]);
  }
};

double finish_real(const ComplexKahan& acc, const char* what) {
  if (std::fabs(acc.im.value()) >= 1e-9)
    throw std::runtime_error(std::string(what) +
                             ": imaginary accumulation exceeds 1e-9");
  return acc.re.value();
}

double kloosterman_with_table(std::uint64_t ra, std::uint64_t rb,
                              std::uint64_t q, const RootTable& roots) {
  if (q == 1) return 1.0;
  ComplexKahan acc;
  for (std::uint64_t x = 1; x < q; ++x) {
    if (std::gcd(x, q) != 1) continue;
    std::uint64_t y = mod_inverse(x, q);
    acc.add(roots, (ra * x + rb * y) % q);
  }
  return finish_real(acc, "kloosterman_sum");
}

double twisted_direct_with_table(const KloostermanQuery& q,
                                 const RootTable& roots) {
  std::uint64_t d = q.d;
  if (d == 1) return 1.0;
  std::uint64_t rm = mod_reduce(q.m, d);
  std::uint64_t rk = mod_reduce(q.k, d);
  std::uint64_t rn = q.n % d;
  ComplexKahan acc;
  for (std::uint64_t e1 = 1; e1 <= d; ++e1) {
    std::uint64_t g = std::gcd(e1, d);
    if (rn % g != 0) continue;
    std::uint64_t dp = d / g;  // modulus of the reduced congruence
    // e1' e2 = n/g (mod d'), e1' = e1/g coprime to d'
    std::uint64_t e1p = (e1 / g) % dp;
    std::uint64_t e2_base;
    if (dp == 1) {
      e2_base = dp;  // all residues solve it; representative d' = 1
    } else {
      e2_base = (mod_inverse(e1p, dp) * ((rn / g) % dp)) % dp;
      if (e2_base == 0) e2_base = dp;
    }
    std::uint64_t base_idx = (rm * e1 + rk * e2_base) % d;
    std::uint64_t step = (rk * dp) % d;
    std::uint64_t idx = base_idx;
    for (std::uint64_t j = 0; j < g; ++j) {
      acc.add(roots, idx);
      idx += step;
      if (idx >= d) idx -= d;
    }
  }
  return finish_real(acc, "twisted_sum_direct");
}

}  // namespace

double kloosterman_sum(long long aa, long long bb, std::uint64_t q) {
  if (q < 1) throw std::invalid_argument("kloosterman_sum: q must be >= 1");
  if (q == 1) return 1.0;
  RootTable roots(q);
  return kloosterman_with_table(mod_reduce(aa, q), mod_reduce(bb, q), q, roots);
}

double twisted_sum_direct(const KloostermanQuery& q) {
  if (q.d < 1) throw std::invalid_argument("twisted_sum_direct: d must be >= 1");
  RootTable roots(q.d);
  return twisted_direct_with_table(q, roots);
}

double twisted_sum_bruteforce(const KloostermanQuery& q) {
  std::uint64_t d = q.d;
  if (d < 1) throw std::invalid_argument("twisted_sum_bruteforce: d must be >= 1");
  if (d == 1) return 1.0;
  RootTable roots(d);
  std::uint64_t rm = mod_reduce(q.m, d);
  std::uint64_t rk = mod_reduce(q.k, d);
  std::uint64_t rn = q.n % d;
  ComplexKahan acc;
  for (std::uint64_t e1 = 1; e1 <= d; ++e1)
    for (std::uint64_t e2 = 1; e2 <= d; ++e2)
      if ((e1 * e2) % d == rn) acc.add(roots, (rm * e1 + rk * e2) % d);
  return finish_real(acc, "twisted_sum_bruteforce");
}

double twisted_sum_decomposed(const KloostermanQuery& q) {
  std::uint64_t d = q.d;
  if (d < 1)
    throw std::invalid_argument("twisted_sum_decomposed: d must be >= 1");
  if (d == 1) return 1.0;
  std::uint64_t rk = mod_reduce(q.k, d);
  std::uint64_t g = std::gcd(std::gcd(d, q.n), rk);  // gcd(d, n, 0) = gcd(d, n)
  double total = 0.0;
  for (std::uint64_t f = 1; f <= g; ++f) {
    if (g % f != 0) continue;
    std::uint64_t sub_q = d / f;
    // k n / f^2 with f | k and f | n
    std::uint64_t kn_over_f2 = (rk / f) * (q.n / f);
    RootTable roots(sub_q);
    total += static_cast<double>(f) *
             kloosterman_with_table(mod_reduce(q.m, sub_q),
                                    kn_over_f2 % sub_q, sub_q, roots);
  }
  return total;
}

WeilCheck weil_check(long long aa, long long bb, std::uint64_t q) {
  if (q < 1) throw std::invalid_argument("weil_check: q must be >= 1");
  WeilCheck out;
  out.value = kloosterman_sum(aa, bb, q);
  std::uint64_t tau = 0;
  for (std::uint64_t dv = 1; dv * dv <= q; ++dv)
    if (q % dv == 0) tau += (dv * dv == q) ? 1 : 2;
  std::uint64_t g = std::gcd(std::gcd(mod_reduce(aa, q), mod_reduce(bb, q)), q);
  if (g == 0) g = q;
  out.bound = static_cast<double>(tau) * std::sqrt(static_cast<double>(q)) *
              std::sqrt(static_cast<double>(g));
  out.ok = std::fabs(out.value) <= out.bound + 1e-9;
  return out;
}

DecompositionSweep decomposition_sweep(std::uint64_t d_max, int param_max) {
  std::vector<double> per_d_gap(d_max + 1, 0.0);
  std::vector<std::uint64_t> per_d_checks(d_max + 1, 0);
  parallel_ranges(1, d_max + 1, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t d = lo; d < hi; ++d) {
      RootTable roots(d);
      double gap = 0.0;
      std::uint64_t checks = 0;
      for (int m = 1; m <= param_max; ++m)
        for (int k = 1; k <= param_max; ++k)
          for (int n = 1; n <= param_max; ++n) {
            KloostermanQuery q{m, k, static_cast<std::uint64_t>(n), d};
            double direct = twisted_direct_with_table(q, roots);
            double decomp = twisted_sum_decomposed(q);
            gap = std::max(gap, std::fabs(direct - decomp));
            ++checks;
          }
      per_d_gap[d] = gap;
      per_d_checks[d] = checks;
    }
  }, 8);
  DecompositionSweep out;
  for (std::uint64_t d = 1; d <= d_max; ++d) {
    out.max_gap = std::max(out.max_gap, per_d_gap[d]);
    out.checks += per_d_checks[d];
  }
  return out;
}

WeilSweep weil_sweep(std::uint64_t q_max, int param_max) {
  WeilSweep out;
  std::vector<double> per_q_ratio(q_max + 1, 0.0);
  parallel_ranges(1, q_max + 1, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t q = lo; q < hi; ++q) {
      double ratio = 0.0;
      for (int aa = 1; aa <= param_max; ++aa)
        for (int bb = 1; bb <= param_max; ++bb) {
          auto chk = weil_check(aa, bb, q);
          ratio = std::max(ratio, std::fabs(chk.value) / chk.bound);
        }
      per_q_ratio[q] = ratio;
    }
  }, 8);
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    out.max_ratio = std::max(out.max_ratio, per_q_ratio[q]);
    out.checks += static_cast<std::uint64_t>(param_max) * param_max;
  }
  out.all_ok = out.max_ratio <= 1.0 + 1e-12;
  return out;
}

TwistedBoundSweep twisted_bound_sweep(std::uint64_t d_max, int param_max,
                                      double eps) {
  std::vector<double> per_d(d_max + 1, 0.0);
  parallel_ranges(1, d_max + 1, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t d = lo; d < hi; ++d) {
      RootTable roots(d);
      double ratio = 0.0;
      for (int m = 1; m <= param_max; ++m)
        for (int k = 1; k <= param_max; ++k)
          for (int n = 1; n <= param_max; ++n) {
            KloostermanQuery q{m, k, static_cast<std::uint64_t>(n), d};
            double s = twisted_direct_with_table(q, roots);
            double denom =
                std::pow(static_cast<double>(d), 0.5 + eps) *
                std::sqrt(static_cast<double>(
                    std::gcd(d, static_cast<std::uint64_t>(k)))) *
                std::sqrt(static_cast<double>(
                    std::gcd(d, static_cast<std::uint64_t>(m))));
            ratio = std::max(ratio, std::fabs(s) / denom);
          }
      per_d[d] = ratio;
    }
  }, 8);
  TwistedBoundSweep out;
  for (std::uint64_t d = 1; d <= d_max; ++d)
    out.max_ratio = std::max(out.max_ratio, per_d[d]);
  out.checks = d_max * static_cast<std::uint64_t>(param_max) * param_max *
               param_max;
  return out;
}

}  // namespace sigmaconv::kloosterman
