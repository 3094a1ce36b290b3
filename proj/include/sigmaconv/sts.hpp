#pragma once

#include <cstdint>
#include <vector>

#include "sigmaconv/bigint.hpp"

namespace sigmaconv::sts {

// D(n) = (1/6) n (n-1) J_2(n) - ((mu sigma_2) * S_{1,2})(n), the number of
// primitive n-square surfaces with three horizontal cylinders. The
// polynomial part stays rational until the subtraction; the difference
// must come out a nonnegative integer or something upstream is broken.
struct StsCount {
  std::uint64_t n = 0;
  BigRat polynomial_part;
  BigInt convolution_part;
  BigInt d_value;
};

// per-n evaluation on prebuilt tables
struct StsTables {
  std::vector<BigInt> s12;       // S_{1,2}(m), m <= N
  std::vector<BigInt> mu_sigma2; // mu(d) sigma_2(d), d <= N
  std::uint64_t limit() const { return s12.size() - 1; }
};
StsTables build_tables(std::uint64_t N);

StsCount d_count(std::uint64_t n, const StsTables& tables);

// the full sweep n = 1..N; integrality enforced on every entry
std::vector<BigInt> d_table(std::uint64_t N);

struct DensityPoint {
  std::uint64_t n = 0;
  double ratio = 0.0;   // d_value / polynomial_part
  double cesaro = 0.0;  // running mean of the ratios so far
};

struct DensityExperiment {
  std::vector<DensityPoint> points;  // n = 2..N
  double target = 0.0;               // 1 - zeta(2) zeta(3) / (2 zeta(5))
  double cesaro_final = 0.0;
};

DensityExperiment density_experiment(std::uint64_t N);

}  // namespace sigmaconv::sts
