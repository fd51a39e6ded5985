#include "droplet/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace droplet {

std::array<Complex, 3> cubic_roots(Complex a3, Complex a2, Complex a1, Complex a0) {
  if (a3 == Complex{}) throw DomainError("cubic_roots: leading coefficient is zero");
  const Complex b2 = a2 / a3;
  const Complex b1 = a1 / a3;
  const Complex b0 = a0 / a3;

  Eigen::Matrix3cd companion;
  companion << -b2, -b1, -b0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, /*computeEigenvectors=*/false);
  const auto& eig = solver.eigenvalues();

  auto poly = [&](Complex w) { return ((w + b2) * w + b1) * w + b0; };
  auto dpoly = [&](Complex w) { return (3.0 * w + 2.0 * b2) * w + b1; };

  std::array<Complex, 3> roots{eig(0), eig(1), eig(2)};
  for (auto& w : roots) {
    double res = std::abs(poly(w));
    for (int it = 0; it < 6 && res > 0.0; ++it) {
      const Complex slope = dpoly(w);
      if (slope == Complex{}) break;
      const Complex next = w - poly(w) / slope;
      const double next_res = std::abs(poly(next));
      if (!(next_res < res)) break;
      w = next;
      res = next_res;
    }
  }
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax < ay;
    return std::arg(x) < std::arg(y);
  });
  return roots;
}

}  // namespace droplet
