#pragma once

#include <string>

#include "droplet/geometry.hpp"
#include "droplet/potential.hpp"

namespace droplet {

struct SweepOptions {
  int threads = 0;  // 0: OpenMP default
};

/// Outcome of a variational check. Fields that do not apply to the check
/// that produced the report are NaN.
struct VerificationReport {
  std::string check;
  Phase phase = Phase::PostCritical;
  Coords coords = Coords::Symmetric;
  int grid_size = 0;
  int interior_points = 0;
  int rays = 0;
  int ray_samples = 0;
  double interior_max_residual;
  double robin_constant;
  double robin_spread;
  double exterior_min_margin;
  double min_exterior_gradient;
  double far_field_margin;
  double mass_residual;
  bool monotone = true;
  bool violated = false;
  Complex offending_point{};

  VerificationReport();

  /// Flat "key = value" lines, fixed key order, 17 significant digits.
  std::string to_key_values() const;
};

/// Max |dW - C| over interior lattice points kept 0.02 * diameter away from
/// the boundary. Post-critical regions are checked in symmetric coordinates
/// with the ellipse/disk closed forms (W = Q), pre-critical ones in squared
/// coordinates with the residue Cauchy transform (W = Qhat).
VerificationReport verify_equality(const ModelParams& params, const DropletRegion& region,
                                   int grid_n, const SweepOptions& opts = {});

/// Integrates 2 Re(dH dz) along rays leaving the boundary and records the
/// smallest H - H(boundary); also the smallest |dH| beyond a thin layer.
/// A negative margin below -1e-9 sets `violated` and `offending_point`.
VerificationReport verify_inequality(const ModelParams& params, const DropletRegion& region,
                                     int rays, const SweepOptions& opts = {});

struct MassOneReport {
  double contour = 0;  // (1/2 pi i) loop integral over the unit circle
  double residue_zero = 0;
  double residue_a = 0;
  double expected_total = 0;  // 1 - tau^2
  double contour_residual = 0;
  double residue_zero_residual = 0;
  double residue_a_residual = 0;
  int nodes = 0;
};

MassOneReport mass_one_details(const RationalMap& map, const ModelParams& params);

/// |contour - (1 - tau^2)|.
double mass_one_check(const RationalMap& map, const ModelParams& params);

}  // namespace droplet
