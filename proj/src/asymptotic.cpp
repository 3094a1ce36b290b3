#include "sigmaconv/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "sigmaconv/numeric.hpp"
#include "sigmaconv/special.hpp"

namespace sigmaconv::asymptotic {

namespace {

using arith::FactorSieve;
using special::ToleranceError;

bool is_nonneg_int(double x) {
  return x >= 0.0 && x == std::rint(x) && x < 1e15;
}

bool is_odd_int(double x) {
  return is_nonneg_int(x) && (static_cast<long long>(x) % 2 == 1);
}

void check_magnitude(double exponent, std::uint64_t n) {
  if (exponent * std::log10(static_cast<double>(n)) > 290.0)
    throw std::overflow_error(
        "expansion term exceeds double range; reduce n or the exponents");
}

// visit every pair (e1, e2) in [1,d]^2 with e1 e2 = n (mod d)
template <class F>
void for_each_congruence_pair(std::uint64_t d, std::uint64_t n, F&& visit) {
  std::uint64_t rn = n % d;
  for (std::uint64_t e1 = 1; e1 <= d; ++e1) {
    std::uint64_t g = std::gcd(e1, d);
    if (rn % g != 0) continue;
    std::uint64_t dp = d / g;
    std::uint64_t e2;
    if (dp == 1) {
      e2 = 1;
    } else {
      // invert e1/g mod d' by Euclid
      long long t = 0, nt = 1;
      long long r = static_cast<long long>(dp),
                nr = static_cast<long long>((e1 / g) % dp);
      while (nr != 0) {
        long long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
      }
      if (t < 0) t += static_cast<long long>(dp);
      e2 = (static_cast<std::uint64_t>(t) * ((rn / g) % dp)) % dp;
      if (e2 == 0) e2 = dp;
    }
    for (std::uint64_t j = 0; j < g; ++j, e2 += dp) visit(e1, e2);
  }
}

// sigma with an exact integer path whenever the exponent allows it
dd sigma_any_dd(dd s, std::uint64_t n, const FactorSieve& sieve) {
  if (s.lo == 0.0 && is_nonneg_int(s.hi))
    return to_dd(arith::sigma_int(static_cast<unsigned>(s.hi), n, sieve));
  return arith::sigma_dd(s, n, sieve);
}

// zeta(1 - a), exact at the trivial zeros and the other negative integers
dd zeta_shift_dd(double a) {
  dd s = dd(1.0) - dd(a);
  if (s.lo == 0.0 && s.hi <= 0.0 && std::rint(s.hi) == s.hi && s.hi > -60.0)
    return to_dd(special::zeta_neg_int(static_cast<int>(-s.hi), BigRat(1)));
  return special::riemann_zeta_dd(s);
}

struct Coeffs {
  ExponentPair pair;
  dd main_coef{};
  bool has_secondary = false;
  dd secondary_coef{};
  std::vector<unsigned> residue_ms;
  double predicted = 0.0;
};

Coeffs make_coeffs(double a, double b) {
  Coeffs c;
  c.pair = convolution::classify(a, b);
  const dd A(a), B(b);
  c.main_coef = special::beta_factor_dd(A, B) *
                special::riemann_zeta_dd(A + dd(1.0)) *
                special::riemann_zeta_dd(B + dd(1.0)) /
                special::riemann_zeta_dd(A + B + dd(2.0));
  c.has_secondary = c.pair.regime != Regime::kHalberstam;
  if (c.has_secondary) {
    c.secondary_coef = zeta_shift_dd(a) * special::riemann_zeta_dd(B + dd(1.0)) /
                       ((B + dd(1.0)) * special::riemann_zeta_dd(B - A + dd(2.0)));
  }
  if (c.pair.regime == Regime::kWide) {
    double bound = (b - a) / 2.0 - 0.75;
    for (unsigned m = 0; static_cast<double>(m) < bound; ++m)
      c.residue_ms.push_back(m);
  }
  c.predicted = predicted_error_exponent(c.pair);
  return c;
}

}  // namespace

void ApproxConfig::validate() const {
  if (d_max < 10) throw std::invalid_argument("ApproxConfig: d_max must be >= 10");
  if (!(tail_tolerance > 0.0))
    throw std::invalid_argument("ApproxConfig: tail tolerance must be positive");
}

double predicted_error_exponent(const ExponentPair& p) {
  switch (p.regime) {
    case Regime::kWide:
      return (p.a + p.b) / 2.0 + 0.75;
    case Regime::kNarrow:
      return (p.a + p.b) / 2.0 + 1.0;
    case Regime::kHalberstam:
      break;
  }
  if (p.a > 1.0 && p.b > 1.0) return p.a + p.b;
  if (p.a <= 1.0 && p.b >= 1.0) return p.a + p.b + 1.0 - std::min(p.a, p.b);
  return p.a + p.b + 1.0 - p.a * p.b / (p.a + p.b - p.a * p.b);
}

double main_term(double a, double b, std::uint64_t n,
                 const FactorSieve& sieve) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("main_term: need a, b > 0");
  check_magnitude(a + b + 1.0, n);
  const dd A(a), B(b);
  dd coef = special::beta_factor_dd(A, B) *
            special::riemann_zeta_dd(A + dd(1.0)) *
            special::riemann_zeta_dd(B + dd(1.0)) /
            special::riemann_zeta_dd(A + B + dd(2.0));
  return to_double(coef * sigma_any_dd(A + B + dd(1.0), n, sieve));
}

double secondary_term(double a, double b, std::uint64_t n,
                      const FactorSieve& sieve) {
  if (!(a > 0.0) || !(b > a))
    throw std::invalid_argument(
        "secondary_term: requires b > a > 0 (no secondary term at a = b)");
  check_magnitude(b + 1.0, n);
  const dd A(a), B(b);
  dd coef = zeta_shift_dd(a) * special::riemann_zeta_dd(B + dd(1.0)) /
            ((B + dd(1.0)) * special::riemann_zeta_dd(B - A + dd(2.0)));
  dd na = pow(dd(static_cast<double>(n)), A);
  return to_double(coef * na * sigma_any_dd(B - A + dd(1.0), n, sieve));
}

double residue_term(unsigned m, double a, double b, std::uint64_t n,
                    const ApproxConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0) || !(b > 0.0) || n < 1)
    throw std::invalid_argument("residue_term: need a, b > 0 and n >= 1");
  check_magnitude(b - m, n);

  const bool a_int = is_nonneg_int(a) && a >= 1.0;
  const bool a_odd = is_odd_int(a);
  const double md = static_cast<double>(m);
  if (!a_odd && !(md < (b - a) / 2.0 - 0.75))
    throw std::invalid_argument(
        "residue_term: m outside the convergent range (b-a)/2 - 3/4");
  if (a_odd && cfg.d_max < n)
    throw std::invalid_argument(
        "residue_term: terminating series for odd a needs d_max >= n");

  const bool exact_rows = cfg.use_exact_bernoulli_path.value_or(a_int);
  if (exact_rows && !a_int)
    throw std::invalid_argument(
        "residue_term: exact Bernoulli rows need an integer a");

  const double d_expo = a - b + 2.0 * md;
  const int k2 = static_cast<int>(m) + 1;
  const int k1 = a_int ? static_cast<int>(m + a) + 1 : 0;

  KahanSum partial;
  double gross = 0.0;
  const std::size_t window = 200;
  std::deque<std::pair<std::uint64_t, double>> recent;

  for (std::uint64_t d = 1; d <= cfg.d_max; ++d) {
    std::vector<double> z1;
    if (exact_rows) {
      z1 = special::bernoulli_poly_row(k1, d);
      double scale1 = -1.0 / static_cast<double>(k1);
      for (auto& v : z1) v *= scale1;
    } else {
      z1.assign(d + 1, 0.0);
      for (std::uint64_t e = 1; e <= d; ++e)
        z1[e] = special::hurwitz_zeta(
            -md - a, static_cast<double>(e) / static_cast<double>(d));
    }
    auto b2 = special::bernoulli_poly_row(k2, d);
    double scale2 = -1.0 / static_cast<double>(k2);

    KahanSum inner;
    for_each_congruence_pair(d, n, [&](std::uint64_t e1, std::uint64_t e2) {
      inner.add(z1[e1] * b2[e2] * scale2);
    });
    double t = std::pow(static_cast<double>(d), d_expo) * inner.value();
    partial.add(t);
    gross += std::fabs(t);
    recent.emplace_back(d, std::fabs(t));
    if (recent.size() > window) recent.pop_front();
  }

  double tail = 0.0;
  if (!a_odd) {
    // envelope |t_d| <= C d^{d_expo + 1}, integrated past d_max with a
    // 10x safety factor
    double c_env = 0.0;
    for (auto& [d, t] : recent)
      c_env = std::max(c_env, t / std::pow(static_cast<double>(d), d_expo + 1.0));
    double tail_expo = d_expo + 2.0;
    if (tail_expo >= 0.0 && c_env > 0.0)
      throw ToleranceError(
          "residue_term: absolute tail model diverges at this m; "
          "only m < (b-a)/2 - 1 is truncatable for non-odd a");
    tail = 10.0 * c_env *
           std::pow(static_cast<double>(cfg.d_max), tail_expo) / -tail_expo;
    double floor = 1e-12 * std::max(1.0, gross);
    if (tail > cfg.tail_tolerance * std::fabs(partial.value()) + floor)
      throw ToleranceError(
          "residue_term: estimated tail above tolerance at d_max");
  }

  double scale = (m % 2 == 0 ? 1.0 : -1.0) *
                 std::pow(static_cast<double>(n), b - md) *
                 special::binom_real(b, m);
  return scale * partial.value();
}

double residue_closed_form_odd_a(unsigned m, unsigned a, double b,
                                 std::uint64_t n, const FactorSieve& sieve) {
  if (a % 2 != 1 || a < 1)
    throw std::invalid_argument(
        "residue_closed_form_odd_a: a must be an odd positive integer");
  if (m >= 1) return 0.0;
  check_magnitude(b, n);
  dd za = to_dd(special::zeta_neg_int(static_cast<int>(a), BigRat(1)));
  return to_double(mul_pwr2(-za, 0.5) * sigma_any_dd(dd(b), n, sieve));
}

Expansion expand(double a, double b, std::uint64_t n, const ApproxConfig& cfg) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("expand: n must be >= 1");
  check_magnitude(a + b + 1.0, n);
  Coeffs c = make_coeffs(a, b);
  FactorSieve sieve(std::max<std::uint64_t>(n, 2));

  Expansion out;
  out.exponents = c.pair;
  out.n = n;
  out.predicted_error_exponent = c.predicted;

  const dd A(a), B(b);
  dd main = c.main_coef * sigma_any_dd(A + B + dd(1.0), n, sieve);
  out.main = to_double(main);
  dd approx = main;

  if (c.has_secondary) {
    dd sec = c.secondary_coef * pow(dd(static_cast<double>(n)), A) *
             sigma_any_dd(B - A + dd(1.0), n, sieve);
    out.secondary = to_double(sec);
    approx += sec;
  }

  for (unsigned m : c.residue_ms) {
    double value;
    if (is_odd_int(a))
      value = residue_closed_form_odd_a(m, static_cast<unsigned>(a), b, n, sieve);
    else
      value = residue_term(m, a, b, n, cfg);
    out.residues.push_back({m, value});
    approx += dd(value);
  }
  out.approx = to_double(approx);
  return out;
}

dd expand_dd(double a, double b, std::uint64_t n, const ApproxConfig& cfg) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("expand_dd: n must be >= 1");
  check_magnitude(a + b + 1.0, n);
  Coeffs c = make_coeffs(a, b);
  FactorSieve sieve(std::max<std::uint64_t>(n, 2));

  const dd A(a), B(b);
  dd approx = c.main_coef * sigma_any_dd(A + B + dd(1.0), n, sieve);
  if (c.has_secondary)
    approx += c.secondary_coef * pow(dd(static_cast<double>(n)), A) *
              sigma_any_dd(B - A + dd(1.0), n, sieve);
  for (unsigned m : c.residue_ms) {
    if (is_odd_int(a)) {
      if (m == 0) {
        dd za = to_dd(special::zeta_neg_int(static_cast<int>(a), BigRat(1)));
        approx += mul_pwr2(-za, 0.5) * sigma_any_dd(B, n, sieve);
      }
    } else {
      approx += dd(residue_term(m, a, b, n, cfg));
    }
  }
  return approx;
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi,
                                          int points) {
  if (lo < 2 || hi <= lo || points < 2)
    throw std::invalid_argument("geometric_grid: need 2 <= lo < hi, points >= 2");
  std::vector<std::uint64_t> grid;
  double ratio = std::log(static_cast<double>(hi) / static_cast<double>(lo)) /
                 (points - 1);
  for (int j = 0; j < points; ++j) {
    auto n = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(lo) * std::exp(ratio * j)));
    if (grid.empty() || n > grid.back()) grid.push_back(n);
  }
  return grid;
}

FitResult error_exponent_fit(double a, double b,
                             const std::vector<std::uint64_t>& grid,
                             const ApproxConfig& cfg) {
  cfg.validate();
  if (grid.size() < 8)
    throw std::invalid_argument("error_exponent_fit: need a grid of >= 8 points");
  for (auto n : grid)
    if (n < 64)
      throw std::invalid_argument("error_exponent_fit: grid points must be >= 64");

  std::uint64_t n_max = *std::max_element(grid.begin(), grid.end());

  // reference convolution values: the integer path is exact, the float
  // path runs entirely in double-double
  std::vector<dd> s_values(grid.size());
  if (is_nonneg_int(a) && is_nonneg_int(b)) {
    auto ta = arith::sigma_table_int(static_cast<unsigned>(a), n_max);
    auto tb = arith::sigma_table_int(static_cast<unsigned>(b), n_max);
    for (std::size_t i = 0; i < grid.size(); ++i)
      s_values[i] = to_dd(convolution::s_ab_int(grid[i], ta, tb));
  } else {
    auto ta = arith::sigma_table_dd(dd(a), n_max);
    auto tb = arith::sigma_table_dd(dd(b), n_max);
    for (std::size_t i = 0; i < grid.size(); ++i)
      s_values[i] = convolution::s_ab_dd(grid[i], ta, tb);
  }

  FitResult fit;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dd approx = expand_dd(a, b, grid[i], cfg);
    dd res = s_values[i] - approx;
    double residual = to_double(fabs(res));
    if (residual == 0.0) {
      ++fit.skipped;
      continue;
    }
    FitPoint p;
    p.n = grid[i];
    p.s_exact = to_double(s_values[i]);
    p.approx = to_double(approx);
    p.residual = to_double(res);
    p.log_n = std::log(static_cast<double>(grid[i]));
    p.log_abs_residual = std::log(residual);
    fit.points.push_back(p);
  }
  if (fit.points.size() < 4)
    throw std::runtime_error("error_exponent_fit: fewer than 4 usable points");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& p : fit.points) {
    sx += p.log_n;
    sy += p.log_abs_residual;
    sxx += p.log_n * p.log_n;
    sxy += p.log_n * p.log_abs_residual;
  }
  double num = static_cast<double>(fit.points.size());
  fit.slope = (num * sxy - sx * sy) / (num * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / num;
  return fit;
}

RestrictedPowerSum restricted_power_sum_check(std::uint64_t n, std::uint64_t m,
                                              std::uint64_t k, double a,
                                              double b) {
  if (k < 1 || k > m || m > n)
    throw std::invalid_argument(
        "restricted_power_sum_check: need 1 <= k <= m <= n");
  check_magnitude(a + b + 1.0, n);
  KahanSum exact;
  for (std::uint64_t j = (k % m == 0 ? m : k % m); j <= n - 1; j += m)
    exact.add(std::pow(static_cast<double>(j), a) *
              std::pow(static_cast<double>(n - j), b));
  RestrictedPowerSum out;
  out.exact = exact.value();
  out.main = std::pow(static_cast<double>(n), a + b + 1.0) /
             static_cast<double>(m) * special::beta_factor(a, b);
  out.deviation = std::fabs(out.exact - out.main) /
                  std::pow(static_cast<double>(n), a + b);
  return out;
}

GapCheck dirichlet_identity_check(double r, double s, std::uint64_t T) {
  if (!(r > 1.0) || !(s > 1.0) || T < 10)
    throw std::invalid_argument(
        "dirichlet_identity_check: need r, s > 1 and T >= 10");
  std::vector<double> pr(T + 1), ps(T + 1);
  for (std::uint64_t i = 1; i <= T; ++i) {
    pr[i] = std::pow(static_cast<double>(i), -r);
    ps[i] = std::pow(static_cast<double>(i), -s);
  }
  KahanSum lhs;
  for (std::uint64_t nn = 1; nn <= T; ++nn)
    for (std::uint64_t mm = 1; mm <= T; ++mm)
      if (std::gcd(nn, mm) == 1) lhs.add(pr[nn] * ps[mm]);

  GapCheck out;
  out.lhs = lhs.value();
  out.rhs = special::riemann_zeta(r) * special::riemann_zeta(s) /
            special::riemann_zeta(r + s);
  out.gap = std::fabs(out.lhs - out.rhs);
  // the missing pairs live in {n > T} or {m > T}
  double td = static_cast<double>(T);
  out.tail_model = special::riemann_zeta(s) * std::pow(td, 1.0 - r) / (r - 1.0) +
                   special::riemann_zeta(r) * std::pow(td, 1.0 - s) / (s - 1.0);
  return out;
}

GapCheck hurwitz_sigma_identity_check(double a, double b, std::uint64_t n,
                                      std::uint64_t d_max) {
  if (!(b > 0.0) || !(a > -b) || a == 0.0)
    throw std::invalid_argument(
        "hurwitz_sigma_identity_check: need b > 0 and -b < a, a != 0");
  if (n < 1 || d_max < 10)
    throw std::invalid_argument(
        "hurwitz_sigma_identity_check: need n >= 1 and d_max >= 10");
  check_magnitude(a + b + 1.0, n);

  const double s = a + 1.0;
  const double na = std::pow(static_cast<double>(n), a + b + 1.0);
  KahanSum lhs;
  const std::size_t window = 100;
  std::deque<double> recent;
  for (std::uint64_t d = 1; d <= d_max; ++d) {
    auto row = special::hurwitz_row(s, d);
    KahanSum inner;
    for_each_congruence_pair(d, n, [&](std::uint64_t, std::uint64_t e2) {
      inner.add(row[e2]);
    });
    double t = na * std::pow(static_cast<double>(d), -a - b - 2.0) *
               inner.value();
    lhs.add(t);
    recent.push_back(std::fabs(t) *
                     std::pow(static_cast<double>(d) / d_max, b + 1.0));
    if (recent.size() > window) recent.pop_front();
  }

  FactorSieve sieve(std::max<std::uint64_t>(n, 2));
  GapCheck out;
  out.lhs = lhs.value();
  out.rhs = special::riemann_zeta(s) * special::riemann_zeta(b + 1.0) /
            special::riemann_zeta(a + b + 2.0) *
            arith::sigma_real(a + b + 1.0, n, sieve);
  out.gap = std::fabs(out.lhs - out.rhs);
  // per-d terms fall like d^{-b-1}; extrapolate the recent envelope
  double env = 0.0;
  for (double v : recent) env += v;
  env /= static_cast<double>(recent.size());
  out.tail_model = env * static_cast<double>(d_max) / b;
  return out;
}

}  // namespace sigmaconv::asymptotic
