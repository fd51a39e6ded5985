#pragma once

#include <vector>

#include "droplet/potential.hpp"

// Pairwise logarithmic interaction of a point configuration. The serial
// versions loop over unordered pairs once and are the reference; the
// parallel versions split rows across OpenMP threads and sum row partials
// in index order, so results do not depend on the thread count.
namespace droplet::kernels {

/// Sum over j < k of -log|z_j - z_k|^2; the symplectic class adds the sum
/// over j <= k of -log|z_j - conj(z_k)|^2.
double interaction_energy_serial(const std::vector<Complex>& z, Symmetry symmetry);
double interaction_energy_parallel(const std::vector<Complex>& z, Symmetry symmetry);

/// d/d(conj z_j) of the interaction energy, written into `grad` (resized).
void interaction_gradient_serial(const std::vector<Complex>& z, Symmetry symmetry,
                                 std::vector<Complex>& grad);
void interaction_gradient_parallel(const std::vector<Complex>& z, Symmetry symmetry,
                                   std::vector<Complex>& grad);

/// Change of the interaction energy when every z_j moves by delta_j,
/// accumulated from per-pair log1p ratios so that it stays accurate when
/// the change is far below the rounding level of the energy itself.
double interaction_energy_change_serial(const std::vector<Complex>& z,
                                        const std::vector<Complex>& delta, Symmetry symmetry);
double interaction_energy_change_parallel(const std::vector<Complex>& z,
                                          const std::vector<Complex>& delta, Symmetry symmetry);

/// Smallest pairwise distance (and, for the symplectic class, distance to
/// the real axis).
double min_separation(const std::vector<Complex>& z, Symmetry symmetry);

}  // namespace droplet::kernels
