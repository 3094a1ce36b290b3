// Acceptance suite: every criterion runs at its stated tolerance and
// prints one pass/fail line. Exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sigmaconv/arith.hpp"
#include "sigmaconv/asymptotic.hpp"
#include "sigmaconv/convolution.hpp"
#include "sigmaconv/kloosterman.hpp"
#include "sigmaconv/special.hpp"
#include "sigmaconv/sts.hpp"

using namespace sigmaconv;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int criterion, bool pass, const std::string& detail, double secs) {
  std::printf("[%s] criterion %2d: %s (%.1f s)\n", pass ? "PASS" : "FAIL",
              criterion, detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void criterion_fails(int criterion, const std::string& why) {
  report(criterion, false, why, 0.0);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// 1. 120 S_{3,3}(n) = sigma_7(n) - sigma_3(n) exactly for 2 <= n <= 2000
void criterion_1() {
  Timer t;
  auto rep = convolution::verify_identity_s33(2000);
  double secs = t.seconds();
  bool pass = rep.sign == -1 && rep.mismatches == 0 && rep.n_checked == 1999 &&
              secs < 5.0;
  report(1, pass,
         "S_{3,3} identity: sign=" + std::string(rep.sign < 0 ? "minus" : "plus") +
             ", mismatches=" + std::to_string(rep.mismatches) +
             ", n_checked=" + std::to_string(rep.n_checked),
         secs);
}

// 2. the two weighted closed forms hold exactly for n <= 2000
void criterion_2() {
  Timer t;
  auto r2 = convolution::verify_identity_s11k(2, 2000);
  auto r4 = convolution::verify_identity_s11k(4, 2000);
  double secs = t.seconds();
  bool pass = r2.mismatches == 0 && r4.mismatches == 0 && secs < 10.0;
  report(2, pass,
         "weighted closed forms: k=2 mismatches=" + std::to_string(r2.mismatches) +
             ", k=4 mismatches=" + std::to_string(r4.mismatches),
         secs);
}

// 3. decomposition within 1e-6 for d <= 300, m,k,n in 1..10; Weil bound
//    for q <= 500, aa,bb in 1..3
void criterion_3() {
  Timer t;
  auto sweep = kloosterman::decomposition_sweep(300, 10);
  auto weil = kloosterman::weil_sweep(500, 3);
  double secs = t.seconds();
  bool pass = sweep.max_gap <= 1e-6 && weil.all_ok && secs < 60.0;
  report(3, pass,
         "kloosterman: decomposition max_gap=" + fmt(sweep.max_gap) +
             " over " + std::to_string(sweep.checks) +
             " checks, weil max_ratio=" + fmt(weil.max_ratio),
         secs);
}

// 4. special values within 1e-10 for k <= 8, d <= 20; multiplication
//    theorem within 1e-9 for s in {-2.5,-0.5,0.5,2.5}, d <= 25
void criterion_4() {
  Timer t;
  double worst_special = 0.0;
  for (int k = 0; k <= 8; ++k)
    for (std::uint64_t d = 1; d <= 20; ++d)
      for (std::uint64_t e = 1; e <= d; ++e) {
        double got = special::hurwitz_zeta(
            -static_cast<double>(k),
            static_cast<double>(e) / static_cast<double>(d));
        double want = to_double(special::zeta_neg_int(k, BigRat(e, d)));
        worst_special = std::max(worst_special, std::fabs(got - want));
      }
  double worst_mult = 0.0;
  for (double s : {-2.5, -0.5, 0.5, 2.5})
    for (std::uint64_t d = 1; d <= 25; ++d) {
      double sum = 0.0;
      for (std::uint64_t e = 1; e <= d; ++e)
        sum += special::hurwitz_zeta(
            s, static_cast<double>(e) / static_cast<double>(d));
      double want =
          std::pow(static_cast<double>(d), s) * special::riemann_zeta(s);
      worst_mult = std::max(worst_mult, std::fabs(sum - want));
    }
  double secs = t.seconds();
  bool pass = worst_special <= 1e-10 && worst_mult <= 1e-9;
  report(4, pass,
         "hurwitz: special-value gap=" + fmt(worst_special) +
             " (tol 1e-10), multiplication gap=" + fmt(worst_mult) +
             " (tol 1e-9)",
         secs);
}

// 5. truncated residues match the odd-a closed forms
void criterion_5() {
  Timer t;
  double worst_rel = 0.0, worst_scaled = 0.0;
  bool ok = true;
  for (double a : {1.0, 3.0, 5.0}) {
    double b = a + 2.5;
    for (std::uint64_t n : {10ull, 100ull, 1000ull}) {
      arith::FactorSieve sieve(std::max<std::uint64_t>(n, 2));
      double closed = asymptotic::residue_closed_form_odd_a(
          0, static_cast<unsigned>(a), b, n, sieve);
      double general = asymptotic::residue_term(0, a, b, n);
      double rel = std::fabs(general - closed) / std::fabs(closed);
      worst_rel = std::max(worst_rel, rel);
      ok = ok && rel <= 1e-6;
      for (unsigned m : {1u, 2u}) {
        double v = std::fabs(asymptotic::residue_term(m, a, b, n));
        double scaled =
            v / std::pow(static_cast<double>(n), b - static_cast<double>(m));
        worst_scaled = std::max(worst_scaled, scaled);
        ok = ok && scaled <= 1e-8;
      }
    }
  }
  report(5, ok,
         "odd-a residues: worst m=0 rel=" + fmt(worst_rel) +
             " (tol 1e-6), worst m>=1 scaled=" + fmt(worst_scaled) +
             " (tol 1e-8)",
         t.seconds());
}

// 6. regression slope <= predicted + 0.15 on n = 2^8..2^13
void criterion_6() {
  Timer t;
  auto grid = asymptotic::geometric_grid(256, 8192, 12);
  struct Pair { double a, b, predicted; };
  bool ok = true;
  std::string detail = "error-exponent slopes:";
  for (Pair p : {Pair{1, 2, 2.5}, Pair{2, 3, 3.5}, Pair{3, 7, 5.75},
                 Pair{1.5, 2.5, 3.0}, Pair{3, 4.8, 4.65}}) {
    auto fit = asymptotic::error_exponent_fit(p.a, p.b, grid);
    bool this_ok = fit.slope <= p.predicted + 0.15;
    ok = ok && this_ok;
    detail += " (" + fmt(p.a) + "," + fmt(p.b) + ")=" + fmt(fit.slope) +
              "<=" + fmt(p.predicted + 0.15) + (this_ok ? "" : "!");
  }
  double secs = t.seconds();
  ok = ok && secs < 300.0;
  report(6, ok, detail, secs);
}

// 7. lemma 3.2 deviation bounded by 1 across n = 10^2..10^4
void criterion_7() {
  Timer t;
  struct Tuple { double a, b; std::uint64_t m, k; };
  bool ok = true;
  double worst = 0.0;
  for (Tuple tu : {Tuple{1.0, 1.0, 1, 1}, Tuple{1.5, 2.5, 3, 2},
                   Tuple{2.25, 3.5, 5, 3}}) {
    for (std::uint64_t n : {100ull, 1000ull, 10000ull}) {
      auto r = asymptotic::restricted_power_sum_check(n, tu.m, tu.k, tu.a, tu.b);
      worst = std::max(worst, r.deviation);
      ok = ok && r.deviation <= 1.0;
    }
  }
  report(7, ok,
         "restricted power sums: worst deviation=" + fmt(worst) + " (bound 1)",
         t.seconds());
}

// 8. truncated identities meet their modeled tails (within 5x)
void criterion_8() {
  Timer t;
  bool ok = true;
  std::string detail = "tail models:";
  {
    auto g = asymptotic::dirichlet_identity_check(2.0, 2.0, 2000);
    bool this_ok = g.gap <= 5.0 * g.tail_model && g.gap <= 5.0 / 2000.0;
    ok = ok && this_ok;
    detail += " lemma33(2,2)=" + fmt(g.gap / g.tail_model) + "x";
    auto g2 = asymptotic::dirichlet_identity_check(3.0, 4.0, 500);
    bool ok2 = g2.gap <= 5.0 * g2.tail_model && g2.gap <= 1e-4;
    ok = ok && ok2;
    detail += " lemma33(3,4)=" + fmt(g2.gap / g2.tail_model) + "x";
  }
  {
    auto g = asymptotic::hurwitz_sigma_identity_check(1.0, 2.0, 6, 2000);
    bool this_ok =
        g.gap <= 5.0 * g.tail_model && g.gap <= 1e-3 * std::fabs(g.rhs);
    ok = ok && this_ok;
    detail += " hurwitz(1,2,6)=" + fmt(g.gap / g.tail_model) + "x";
    auto gc = asymptotic::hurwitz_sigma_identity_check(-0.5, 2.0, 6, 2000);
    bool okc = gc.gap <= 5.0 * gc.tail_model;
    ok = ok && okc;
    detail += " hurwitz(-0.5,2,6)=" + fmt(gc.gap / gc.tail_model) + "x";
    auto g1 = asymptotic::hurwitz_sigma_identity_check(1.0, 2.0, 1, 2000);
    ok = ok && g1.gap <= 5.0 * g1.tail_model;
  }
  report(8, ok, detail, t.seconds());
}

// 9. D(n) integral and nonnegative to 10^5; hand values at 4 and 5; the
//    Cesaro mean at 3*10^4 within 0.01 of 1 - zeta(2)zeta(3)/(2 zeta(5))
void criterion_9() {
  Timer t;
  bool ok = true;
  std::string detail;
  try {
    auto table = sts::d_table(100000);  // integrality enforced inside
    bool nonneg = true;
    for (std::uint64_t n = 4; n <= 100000; ++n)
      if (table[n] < 0) {
        nonneg = false;
        break;
      }
    ok = ok && nonneg && table[4] == 0 && table[5] == 2;
    auto exp = sts::density_experiment(30000);
    double diff = std::fabs(exp.cesaro_final - exp.target);
    ok = ok && diff <= 0.01;
    detail = "D(n): integral+nonneg to 1e5, D(4)=" + table[4].str() +
             ", D(5)=" + table[5].str() + ", cesaro=" + fmt(exp.cesaro_final) +
             " vs target=" + fmt(exp.target) + " |diff|=" + fmt(diff);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = t.seconds();
  ok = ok && secs < 120.0;
  report(9, ok, detail, secs);
}

// 10. CLI-measured runtimes with RC_THREADS=1
void criterion_10(const std::string& cli) {
  Timer t;
  if (cli.empty()) {
    criterion_fails(10, "no CLI path given (pass it as argv[1])");
    return;
  }
  auto bench = [&](const std::string& args,
                   const std::string& outfile) -> double {
    std::string cmd = "RC_THREADS=1 \"" + cli + "\" " + args +
                      " --format json --output " + outfile;
    if (std::system(cmd.c_str()) != 0) return -1.0;
    std::ifstream in(outfile);
    if (!in) return -1.0;
    nlohmann::json j;
    in >> j;
    return j.value("elapsed_seconds", -1.0);
  };
  double sigma_el = bench("sigma --a 1 --N 1000000 --bench",
                          "acceptance_bench_sigma.json");
  double conv_el = bench("convolve --a 1 --b 2 --N 10000 --bench",
                         "acceptance_bench_convolve.json");
  bool ok = sigma_el >= 0.0 && sigma_el < 2.0 && conv_el >= 0.0 &&
            conv_el < 30.0;
  report(10, ok,
         "performance (RC_THREADS=1): sigma_table(1,1e6)=" + fmt(sigma_el) +
             "s (tol 2), s_ab_batch(1,2,1e4)=" + fmt(conv_el) + "s (tol 30)",
         t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  std::printf("acceptance suite\n================\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(cli);
  std::printf("================\n%s: %d criterion(s) failed\n",
              failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures;
}
