#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace hecke {

/// Nodes and weights of a composite rule on [a, b].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite 8-point Gauss-Legendre with the given number of equal panels.
QuadRule gauss_legendre_composite(double a, double b, std::size_t panels);

/// Smallest panel count with panel width at most h (at least 1).
std::size_t panels_for(double a, double b, double h);

/// Sum of w_i v_i with compensated accumulation.
double weighted_sum(const std::vector<double>& w, const std::vector<double>& v);

/// Kahan-Babuska accumulator.
class Compensated {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0, c_ = 0.0;
};

}  // namespace hecke
