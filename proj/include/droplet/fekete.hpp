#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "droplet/geometry.hpp"
#include "droplet/potential.hpp"

namespace droplet {

/// Q: centred potential (params.p ignored). Qp: charge at params.p.
/// Qhat: the squared-coordinate potential, charge at 0.
enum class PotentialChoice { Q, Qhat, Qp };

const char* to_string(PotentialChoice which);

struct FeketeConfiguration {
  std::vector<Complex> points;
  double energy = 0;
  double grad_norm = 0;  // Euclidean norm of the real gradient
  int iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  std::vector<double> energy_trace;  // energy after each accepted step
};

/// Discrete Hamiltonian: pairwise -log|z_j - z_k|^2 plus N sum W(z_j) for
/// the complex class; the symplectic class adds the image-charge terms and
/// doubles the confinement. DomainError on coincident points, points on the
/// real axis (symplectic), or a potential that is not real-symmetric
/// (symplectic with non-real p).
double energy(const std::vector<Complex>& points, const ModelParams& params, PotentialChoice which);

/// d E / d(conj z_j); the real gradient is twice this.
std::vector<Complex> gradient(const std::vector<Complex>& points, const ModelParams& params,
                              PotentialChoice which);

enum class StepPolicy { Armijo, BarzilaiBorwein };

struct MinimizeOptions {
  int max_iter = 20000;
  double tol = 1e-8;  // stop when grad_norm <= tol * n
  StepPolicy step_policy = StepPolicy::BarzilaiBorwein;
  int threads = 0;  // 0: OpenMP default
  bool keep_trace = false;
  // Draw n/2 points and add their negatives (centred charge only), so the
  // configuration starts invariant under z -> -z.
  bool sign_symmetric_init = false;
};

/// Gradient descent with Armijo backtracking (constant 1e-4, factor 0.5)
/// from points drawn uniformly in the 20%-inflated bounding box of the
/// predicted droplet. The trial step is the previous accepted step doubled
/// (Armijo) or the Barzilai-Borwein length.
FeketeConfiguration minimize(int n, const ModelParams& params, PotentialChoice which,
                             std::uint64_t seed, const MinimizeOptions& opts = {});

/// Initial configuration used by minimize().
std::vector<Complex> initial_configuration(int n, const ModelParams& params, PotentialChoice which,
                                           std::uint64_t seed, bool sign_symmetric = false);

/// Number of single-linkage clusters at the given merge distance.
int count_clusters(const std::vector<Complex>& points, double threshold);

struct EmpiricalDiagnostics {
  int n = 0;
  double dilation = 0;
  double inside_fraction = 0;
  int clusters = 0;
  double cluster_threshold = 0;
  bool hole_expected = false;
  bool hole_detected = false;
  double min_distance_to_charge = 0;
  std::vector<Complex> empirical_moments;  // k = 0..4
  std::vector<Complex> predicted_moments;
  double max_moment_error = 0;  // max_k |emp - pred| / (1 + |pred|)
};

/// Compares a configuration against the region it should fill. Region
/// coordinates must match the potential: symmetric for Q/Qp, squared for
/// Qhat. Symplectic configurations are mirrored before comparison.
EmpiricalDiagnostics empirical_diagnostics(const FeketeConfiguration& config,
                                           const DropletRegion& region, const ModelParams& params,
                                           PotentialChoice which);

}  // namespace droplet
