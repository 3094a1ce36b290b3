#pragma once

#include <cmath>

namespace sigmaconv {

// Kahan compensated accumulator for long float sums
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

inline bool nearly_equal(double a, double b, double rel, double abs_floor = 0.0) {
  double diff = std::fabs(a - b);
  return diff <= abs_floor + rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace sigmaconv
