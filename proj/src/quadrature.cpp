#include "hecke/quadrature.hpp"

#include <cmath>

#include "hecke/error.hpp"

namespace hecke {

namespace {

// 8-point Gauss-Legendre on [-1, 1]
const double kX[4] = {0.1834346424956498049394761, 0.5255324099163289858177390, 0.7966664774136267395915539,
                      0.9602898564975362316835609};
const double kW[4] = {0.3626837833783619829651504, 0.3137066458778872873379622, 0.2223810344533744705443560,
                      0.1012285362903762591525314};

}  // namespace

QuadRule gauss_legendre_composite(double a, double b, std::size_t panels) {
  if (panels == 0) throw DomainError("quadrature needs at least one panel");
  QuadRule q;
  q.nodes.reserve(8 * panels);
  q.weights.reserve(8 * panels);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h, half = 0.5 * h;
    for (int k = 3; k >= 0; --k) {
      q.nodes.push_back(mid - half * kX[k]);
      q.weights.push_back(half * kW[k]);
    }
    for (int k = 0; k < 4; ++k) {
      q.nodes.push_back(mid + half * kX[k]);
      q.weights.push_back(half * kW[k]);
    }
  }
  return q;
}

std::size_t panels_for(double a, double b, double h) {
  if (!(h > 0.0)) throw DomainError("panel width must be positive");
  double n = std::ceil((b - a) / h - 1e-12);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

double weighted_sum(const std::vector<double>& w, const std::vector<double>& v) {
  Compensated c;
  for (std::size_t i = 0; i < w.size(); ++i) c.add(w[i] * v[i]);
  return c.value();
}

}  // namespace hecke
