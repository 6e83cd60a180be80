#pragma once

#include <vector>

namespace compacton {

struct QuadratureRule {
  std::vector<double> points;   // ascending, on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// Composite Gauss–Legendre integral of f over [a, b] with `panels` equal panels.
template <class F>
double composite_gauss(F&& f, double a, double b, int panels, int points = 8) {
  const QuadratureRule rule = gauss_legendre(points);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    double panel = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      panel += rule.weights[q] * f(mid + 0.5 * h * rule.points[q]);
    }
    total += 0.5 * h * panel;
  }
  return total;
}

}  // namespace compacton
