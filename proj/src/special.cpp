#include "sigmaconv/special.hpp"

#include <cmath>
#include <mutex>

#include "sigmaconv/numeric.hpp"

namespace sigmaconv::special {

namespace {

std::vector<BigRat> build_bernoulli() {
  // B_k = -1/(k+1) * sum_{j<k} C(k+1, j) B_j, with B_1 = -1/2
  std::vector<BigRat> b(kBernoulliMax + 1);
  b[0] = 1;
  for (int k = 1; k <= kBernoulliMax; ++k) {
    BigRat acc = 0;
    BigInt binom = 1;  // C(k+1, 0)
    for (int j = 0; j < k; ++j) {
      acc += BigRat(binom) * b[j];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    b[k] = -acc / BigRat(k + 1);
  }
  return b;
}

const std::vector<BigRat>& bernoulli_all() {
  static const std::vector<BigRat> cache = build_bernoulli();
  return cache;
}

// exact coefficient of x^i in B_k(x): C(k, i) B_{k-i}
std::vector<BigRat> bernoulli_poly_coeffs(int k) {
  std::vector<BigRat> c(k + 1);
  BigInt binom = 1;  // C(k, k) walking down
  for (int i = k; i >= 0; --i) {
    c[i] = BigRat(binom) * bernoulli_all()[k - i];
    if (i > 0) binom = binom * i / (k - i + 1);
  }
  return c;
}

template <class Real>
const std::vector<std::vector<Real>>& poly_coeff_cache() {
  static const std::vector<std::vector<Real>> cache = [] {
    std::vector<std::vector<Real>> all(kBernoulliMax + 1);
    for (int k = 0; k <= kBernoulliMax; ++k) {
      auto exact = bernoulli_poly_coeffs(k);
      all[k].reserve(exact.size());
      for (auto& c : exact) {
        if constexpr (std::is_same_v<Real, dd>)
          all[k].push_back(to_dd(c));
        else
          all[k].push_back(to_double(c));
      }
    }
    return all;
  }();
  return cache;
}

// B_{2j}/(2j)! for the Euler-Maclaurin correction terms, j = 1..32
template <class Real>
const std::vector<Real>& em_coeffs() {
  static const std::vector<Real> cache = [] {
    std::vector<Real> v(33);
    BigInt fact = 1;
    for (int i = 1; i <= 2; ++i) fact *= i;
    for (int j = 1; j <= 32; ++j) {
      BigRat c = bernoulli_all()[2 * j] / BigRat(fact);
      if constexpr (std::is_same_v<Real, dd>)
        v[j] = to_dd(c);
      else
        v[j] = to_double(c);
      fact *= (2 * j + 1);
      fact *= (2 * j + 2);
    }
    return v;
  }();
  return cache;
}

template <class Real>
Real real_pow(Real base, Real e);

template <>
double real_pow<double>(double base, double e) { return std::pow(base, e); }

template <>
dd real_pow<dd>(dd base, dd e) { return pow(base, e); }

template <class Real>
struct EmEval {
  Real value{};
  double omitted = 0.0;  // magnitude of the first omitted correction term
  double noise = 0.0;    // cancellation roundoff of the direct terms
};

template <class Real>
constexpr double real_eps() {
  if constexpr (std::is_same_v<Real, dd>)
    return ddc::eps;
  else
    return 2.22e-16;
}

template <class Real>
double as_double(Real v) {
  if constexpr (std::is_same_v<Real, dd>)
    return to_double(v);
  else
    return v;
}

// One Euler-Maclaurin pass at fixed truncation:
//   sum_{k<N} (k+x)^{-s} + (N+x)^{1-s}/(s-1) + (N+x)^{-s}/2
//     + sum_{j<=M} B_{2j}/(2j)! (s)(s+1)...(s+2j-2) (N+x)^{-s-2j+1}
template <class Real>
EmEval<Real> em_pass(Real s, Real x, int n_terms, int depth) {
  EmEval<Real> out;
  Real partial{};
  if constexpr (std::is_same_v<Real, double>) {
    KahanSum ks;
    for (int k = 0; k < n_terms; ++k)
      ks.add(std::pow(k + x, -s));
    partial = ks.value();
  } else {
    for (int k = 0; k < n_terms; ++k)
      partial += real_pow(Real(static_cast<double>(k)) + x, -s);
  }

  Real w = Real(static_cast<double>(n_terms)) + x;
  Real value = partial + real_pow(w, Real(1.0) - s) / (s - Real(1.0)) +
               real_pow(w, -s) * Real(0.5);

  Real poch = s;                            // (s)(s+1)...(s+2j-2), j = 1
  Real pw = real_pow(w, -s - Real(1.0));    // w^{-s-2j+1}
  Real inv_w2 = Real(1.0) / (w * w);
  const auto& coef = em_coeffs<Real>();
  for (int j = 1; j <= depth; ++j) {
    value += coef[j] * poch * pw;
    poch *= (s + Real(2.0 * j - 1.0)) * (s + Real(2.0 * j));
    pw *= inv_w2;
  }
  double omitted;
  if constexpr (std::is_same_v<Real, double>)
    omitted = std::fabs(coef[depth + 1] * poch * pw);
  else
    omitted = std::fabs(to_double(coef[depth + 1] * poch * pw));

  out.value = value;
  out.omitted = omitted;
  // the direct terms reach (N+x)^{-s}; their rounding survives the
  // cancellation against the tail corrections
  double wd = as_double(w);
  double sd = as_double(s);
  out.noise = 4.0 * real_eps<Real>() *
              std::fabs(std::pow(wd, 1.0 - sd) / (1.0 - sd));
  return out;
}

constexpr int kEmTermCap = 1 << 16;

// target_trunc bounds the omitted correction term, target_noise the
// rounding of the cancelling direct sum. For s < 0 the direct terms grow
// like N^{-s}, so adaptation starts at the smallest admissible N.
template <class Real>
Real em_adaptive(Real s, Real x, int n0, int depth, double target_trunc,
                 double target_noise) {
  int start = as_double(s) < 0.0 ? 8 : n0;
  for (int n = start; n <= kEmTermCap; n *= 2) {
    auto pass = em_pass<Real>(s, x, n, depth);
    if (pass.noise > target_noise)
      throw ToleranceError(
          "hurwitz_zeta: rounding noise exceeds the absolute target at this "
          "s; the value scale makes the request unattainable");
    if (pass.omitted <= target_trunc) return pass.value;
  }
  throw ToleranceError("hurwitz_zeta: Euler-Maclaurin tail above target at N0 cap");
}

void check_hurwitz_args(double s, double x) {
  if (s == 1.0) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  if (!(x > 0.0) || x > 1.0)
    throw std::domain_error("hurwitz_zeta: x must lie in (0, 1]");
}

dd half_log_two_pi() {
  static const dd v = mul_pwr2(log(mul_pwr2(ddc::pi, 2.0)), 0.5);
  return v;
}

// B_{2j}/(2j(2j-1)) for the Stirling series
const std::vector<dd>& stirling_coeffs() {
  static const std::vector<dd> cache = [] {
    std::vector<dd> v(17);
    for (int j = 1; j <= 16; ++j)
      v[j] = to_dd(bernoulli_all()[2 * j] / BigRat(2 * j * (2 * j - 1)));
    return v;
  }();
  return cache;
}

}  // namespace

const BigRat& bernoulli_number(int k) {
  if (k < 0 || k > kBernoulliMax)
    throw std::invalid_argument("bernoulli_number: index outside cache range");
  return bernoulli_all()[k];
}

double bernoulli_poly(int k, double x) {
  if (k < 0 || k > kBernoulliMax)
    throw std::invalid_argument("bernoulli_poly: index outside cache range");
  const auto& c = poly_coeff_cache<double>()[k];
  double acc = c[k];
  for (int i = k - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

dd bernoulli_poly_dd(int k, dd x) {
  if (k < 0 || k > kBernoulliMax)
    throw std::invalid_argument("bernoulli_poly_dd: index outside cache range");
  const auto& c = poly_coeff_cache<dd>()[k];
  dd acc = c[k];
  for (int i = k - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

BigRat bernoulli_poly_rat(int k, const BigRat& x) {
  if (k < 0 || k > kBernoulliMax)
    throw std::invalid_argument("bernoulli_poly_rat: index outside cache range");
  auto c = bernoulli_poly_coeffs(k);
  BigRat acc = c[k];
  for (int i = k - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

std::vector<double> bernoulli_poly_row(int k, std::uint64_t d) {
  std::vector<double> row(d + 1, 0.0);
  for (std::uint64_t e = 1; e <= d; ++e)
    row[e] = bernoulli_poly(k, static_cast<double>(e) / static_cast<double>(d));
  return row;
}

dd log_gamma_dd(dd x) {
  if (!(to_double(x) >= 0.5))
    throw std::domain_error("log_gamma_dd: requires x >= 0.5");
  dd shift(0.0);
  dd y = x;
  while (to_double(y) < 32.0) {
    shift += log(y);
    y += dd(1.0);
  }
  dd res = (y - dd(0.5)) * log(y) - y + half_log_two_pi();
  dd inv_y2 = dd(1.0) / sqr(y);
  dd ypow = dd(1.0) / y;
  const auto& c = stirling_coeffs();
  for (int j = 1; j <= 16; ++j) {
    res += c[j] * ypow;
    ypow *= inv_y2;
  }
  return res - shift;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  if (x >= 0.5) return to_double(log_gamma_dd(dd(x)));
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  return std::log(M_PI) - std::log(std::sin(M_PI * x)) - log_gamma(1.0 - x);
}

double gamma_real(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_real: requires x > 0");
  if (x >= 0.5) return std::exp(log_gamma(x));
  return M_PI / (std::sin(M_PI * x) * gamma_real(1.0 - x));
}

double beta_factor(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("beta_factor: requires a, b > 0");
  return std::exp(log_gamma(a + 1.0) + log_gamma(b + 1.0) -
                  log_gamma(a + b + 2.0));
}

dd beta_factor_dd(dd a, dd b) {
  return exp(log_gamma_dd(a + dd(1.0)) + log_gamma_dd(b + dd(1.0)) -
             log_gamma_dd(a + b + dd(2.0)));
}

double binom_real(double b, unsigned m) {
  double num = 1.0, den = 1.0;
  for (unsigned i = 0; i < m; ++i) {
    num *= b - static_cast<double>(i);
    den *= static_cast<double>(i + 1);
  }
  return num / den;
}

dd binom_real_dd(dd b, unsigned m) {
  dd num(1.0), den(1.0);
  for (unsigned i = 0; i < m; ++i) {
    num *= b - dd(static_cast<double>(i));
    den *= dd(static_cast<double>(i + 1));
  }
  return num / den;
}

double hurwitz_zeta(double s, double x, const PrecisionProfile& prof) {
  prof.validate();
  check_hurwitz_args(s, x);
  // below this the direct terms grow and cancel; double cannot hold them
  if (s <= 0.25) {
    double target = std::max(1e-28, prof.target_abs_err * 1e-6);
    return to_double(em_adaptive<dd>(dd(s), dd(x), prof.em_terms,
                                     prof.em_depth, target,
                                     prof.target_abs_err));
  }
  return em_adaptive<double>(s, x, prof.em_terms, prof.em_depth,
                             prof.target_abs_err, prof.target_abs_err);
}

dd hurwitz_zeta_dd(dd s, dd x, double target_abs_err) {
  if (s == dd(1.0)) throw std::domain_error("hurwitz_zeta_dd: pole at s = 1");
  if (!(to_double(x) > 0.0) || to_double(x) > 1.0)
    throw std::domain_error("hurwitz_zeta_dd: x must lie in (0, 1]");
  return em_adaptive<dd>(s, x, 32, 14, target_abs_err,
                         std::max(target_abs_err, 1e-24));
}

std::vector<double> hurwitz_row(double s, std::uint64_t d,
                                const PrecisionProfile& prof) {
  std::vector<double> row(d + 1, 0.0);
  for (std::uint64_t e = 1; e <= d; ++e)
    row[e] = hurwitz_zeta(s, static_cast<double>(e) / static_cast<double>(d), prof);
  return row;
}

double riemann_zeta(double s, const PrecisionProfile& prof) {
  return hurwitz_zeta(s, 1.0, prof);
}

dd riemann_zeta_dd(dd s, double target_abs_err) {
  return hurwitz_zeta_dd(s, dd(1.0), target_abs_err);
}

BigRat zeta_neg_int(int k, const BigRat& x) {
  if (k < 0 || k > kBernoulliMax - 1)
    throw std::invalid_argument("zeta_neg_int: k outside cache range");
  if (!(x > 0) || x > 1)
    throw std::domain_error("zeta_neg_int: x must lie in (0, 1]");
  return -bernoulli_poly_rat(k + 1, x) / BigRat(k + 1);
}

double zeta_neg_int(int k, double x) {
  if (k < 0 || k > kBernoulliMax - 1)
    throw std::invalid_argument("zeta_neg_int: k outside cache range");
  return -bernoulli_poly(k + 1, x) / static_cast<double>(k + 1);
}

}  // namespace sigmaconv::special
