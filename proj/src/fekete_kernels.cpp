#include "droplet/fekete_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace droplet::kernels {

namespace {

bool symplectic(Symmetry s) { return s == Symmetry::SymplecticEnsemble; }

double log_dist2(Complex u) { return std::log(std::norm(u)); }

// log(|u + du|^2 / |u|^2) without forming the ratio.
double log_ratio(Complex u, Complex du) {
  const double num = 2.0 * std::real(std::conj(u) * du) + std::norm(du);
  return std::log1p(num / std::norm(u));
}

}  // namespace

double interaction_energy_serial(const std::vector<Complex>& z, Symmetry symmetry) {
  const std::size_t n = z.size();
  double energy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      energy -= log_dist2(z[j] - z[k]);
      if (symplectic(symmetry)) energy -= log_dist2(z[j] - std::conj(z[k]));
    }
    if (symplectic(symmetry)) energy -= log_dist2(z[j] - std::conj(z[j]));
  }
  return energy;
}

double interaction_energy_parallel(const std::vector<Complex>& z, Symmetry symmetry) {
  const long n = static_cast<long>(z.size());
  std::vector<double> rows(n, 0.0);
  const bool sp = symplectic(symmetry);
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < n; ++j) {
    double row = 0.0;
    for (long k = j + 1; k < n; ++k) {
      row -= log_dist2(z[j] - z[k]);
      if (sp) row -= log_dist2(z[j] - std::conj(z[k]));
    }
    if (sp) row -= log_dist2(z[j] - std::conj(z[j]));
    rows[j] = row;
  }
  double energy = 0.0;
  for (double r : rows) energy += r;
  return energy;
}

void interaction_gradient_serial(const std::vector<Complex>& z, Symmetry symmetry,
                                 std::vector<Complex>& grad) {
  const std::size_t n = z.size();
  grad.assign(n, Complex{});
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      // -log|u|^2 with u = z_j - z_k: d/d(conj z_j) = -1/conj(u).
      const Complex g = -1.0 / std::conj(z[j] - z[k]);
      grad[j] += g;
      grad[k] -= g;
      if (symplectic(symmetry)) {
        // -log|z_j - conj z_k|^2 contributes -1/(conj z_j - z_k) to j and
        // -1/(conj z_k - z_j) to k.
        grad[j] -= 1.0 / (std::conj(z[j]) - z[k]);
        grad[k] -= 1.0 / (std::conj(z[k]) - z[j]);
      }
    }
    if (symplectic(symmetry)) grad[j] -= Complex(0.0, 1.0) / z[j].imag();
  }
}

void interaction_gradient_parallel(const std::vector<Complex>& z, Symmetry symmetry,
                                   std::vector<Complex>& grad) {
  const long n = static_cast<long>(z.size());
  grad.assign(n, Complex{});
  const bool sp = symplectic(symmetry);
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < n; ++j) {
    Complex acc{};
    const Complex zj_bar = std::conj(z[j]);
    for (long k = 0; k < n; ++k) {
      if (k == j) continue;
      acc -= 1.0 / (zj_bar - std::conj(z[k]));
      if (sp) acc -= 1.0 / (zj_bar - z[k]);
    }
    if (sp) acc -= Complex(0.0, 1.0) / z[j].imag();
    grad[j] = acc;
  }
}

double interaction_energy_change_serial(const std::vector<Complex>& z,
                                        const std::vector<Complex>& delta, Symmetry symmetry) {
  const std::size_t n = z.size();
  double change = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      change -= log_ratio(z[j] - z[k], delta[j] - delta[k]);
      if (symplectic(symmetry)) {
        change -= log_ratio(z[j] - std::conj(z[k]), delta[j] - std::conj(delta[k]));
      }
    }
    if (symplectic(symmetry)) {
      change -= log_ratio(z[j] - std::conj(z[j]), delta[j] - std::conj(delta[j]));
    }
  }
  return change;
}

double interaction_energy_change_parallel(const std::vector<Complex>& z,
                                          const std::vector<Complex>& delta, Symmetry symmetry) {
  const long n = static_cast<long>(z.size());
  std::vector<double> rows(n, 0.0);
  const bool sp = symplectic(symmetry);
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < n; ++j) {
    double row = 0.0;
    for (long k = j + 1; k < n; ++k) {
      row -= log_ratio(z[j] - z[k], delta[j] - delta[k]);
      if (sp) row -= log_ratio(z[j] - std::conj(z[k]), delta[j] - std::conj(delta[k]));
    }
    if (sp) row -= log_ratio(z[j] - std::conj(z[j]), delta[j] - std::conj(delta[j]));
    rows[j] = row;
  }
  double change = 0.0;
  for (double r : rows) change += r;
  return change;
}

double min_separation(const std::vector<Complex>& z, Symmetry symmetry) {
  const long n = static_cast<long>(z.size());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(dynamic, 16)
  for (long j = 0; j < n; ++j) {
    for (long k = j + 1; k < n; ++k) best = std::min(best, std::abs(z[j] - z[k]));
    if (symplectic(symmetry)) best = std::min(best, std::abs(z[j].imag()));
  }
  return best;
}

}  // namespace droplet::kernels
