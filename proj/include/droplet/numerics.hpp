#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <type_traits>

#include "droplet/error.hpp"
#include "droplet/potential.hpp"

namespace droplet {

/// Roots of a3 w^3 + a2 w^2 + a1 w + a0 (a3 != 0), computed as eigenvalues of
/// the companion matrix and polished by Newton steps that are only accepted
/// when they reduce the residual. Sorted by modulus, then argument.
std::array<Complex, 3> cubic_roots(Complex a3, Complex a2, Complex a1, Complex a0);

template <class T>
struct PeriodicIntegral {
  T value;
  int nodes;
};

/// Integral over [0, 2pi) of a smooth periodic function by the trapezoid
/// rule, doubling the node count until successive estimates differ by less
/// than tol (absolute). Odd nodes are added incrementally.
template <class F>
auto periodic_integral(F&& f, double tol, int initial_nodes = 64, int max_nodes = 1 << 21)
    -> PeriodicIntegral<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  int n = initial_nodes;
  T sum{};
  for (int k = 0; k < n; ++k) sum += f(two_pi * k / n);
  T estimate = sum * (two_pi / n);
  while (n < max_nodes) {
    T odd{};
    for (int k = 0; k < n; ++k) odd += f(two_pi * (k + 0.5) / n);
    sum += odd;
    n *= 2;
    const T refined = sum * (two_pi / n);
    if (std::abs(refined - estimate) < tol) return {refined, n};
    estimate = refined;
  }
  throw QuadratureError("periodic trapezoid rule did not converge");
}

}  // namespace droplet
