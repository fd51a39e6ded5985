#pragma once

#include <array>
#include <utility>
#include <variant>
#include <vector>

#include "droplet/potential.hpp"

namespace droplet {

enum class Phase { PostCritical, Critical, PreCritical };

const char* to_string(Phase phase);

inline constexpr double kPhaseTieTolerance = 1e-14;
// Band in |w| - 1 (pre-critical) or in the normalized ellipse/circle radius
// (post-critical) inside which a point is reported as Boundary.
inline constexpr double kBoundaryTolerance = 1e-9;

/// tau_c = 1/(1 + 2c).
double critical_tau(double c);

/// Requires a centred charge.
Phase classify_phase(const ModelParams& params);

/// f(w) = d (1 - a w)(w - a tau)^2 / (w (w - a))
///      = r1 w + r2 + r3/w + r4/(w - a).
/// Maps the exterior of the unit disk onto the exterior of the squared
/// droplet.
struct RationalMap {
  double r1 = 0, r2 = 0, r3 = 0, r4 = 0;
  double a = 0;
  double d = 0;
  double tau = 0;
  double c = 0;

  // Factored form, or partial fractions when r4 == 0 (critical map, where the
  // factor (1 - a w)/(w - a) is 0/0 at w = a).
  Complex operator()(Complex w) const;
  Complex partial_fractions(Complex w) const;
  Complex derivative(Complex w) const;
  bool degenerate() const { return r4 == 0.0; }
};

/// Relative residuals of the algebraic identities satisfied by the map
/// coefficients. Each entry is |lhs - rhs| divided by the sum of the
/// magnitudes of the terms involved.
struct MapIdentityResiduals {
  double leading_constant = 0;   // r1 = -a d
  double inverse_pole_zero = 0;  // f(1/a) = 0
  double r3_r1 = 0;              // r3 = r1 tau^2
  double r4_r2 = 0;              // r4 = a (1 - tau^2)(r2 - 2 tau (1 + c))
  double r2_r1 = 0;
  double product_identity =
      0;  // ((2 - a^2 + a^4 tau^2) r1 + a r2)(r2 - 2tau(1+c)) = (1-tau^2) c^2 a (a^2-1)
  double double_zero_value = 0;     // f(a tau) = 0
  double double_zero_slope = 0;     // f'(a tau) = 0
  double double_zero_relation = 0;  // (a^2-1)/a^2 r1 - r2/a = 2 r1 tau

  double max() const;
};

MapIdentityResiduals map_identity_residuals(const RationalMap& map);

/// Closed-form coefficients for tau_c <= tau < 1, c > 0, p = 0. Throws
/// PhaseError below tau_c; identity violations beyond 1e-10 raise
/// std::logic_error.
RationalMap build_rational_map(const ModelParams& params);

/// f(w); DomainError at the poles 0 and a.
Complex eval_map(const RationalMap& map, Complex w);

/// The three solutions of f(w) = zeta (roots of the cubic
/// a d w^3 - (d + 2a^2 d tau - zeta) w^2 + a (2 d tau + a^2 tau^2 d - zeta) w - a^2 tau^2 d),
/// sorted by modulus.
std::array<Complex, 3> invert_map(const RationalMap& map, Complex zeta);

enum class Coords { Symmetric, Squared };

/// Ellipse (center on the real axis) minus an open disk.
struct PostCriticalShape {
  double semi_x = 0;
  double semi_y = 0;
  double ellipse_center = 0;
  Complex hole_center{};
  double hole_radius = 0;
};

struct PreCriticalShape {
  RationalMap map;
  // Radius (squared coordinates) of the disk at the origin that is tangent to
  // the image of the unit circle when tau = tau_c. Zero otherwise.
  double tangent_hole_radius = 0;
};

struct DropletRegion {
  Coords coords = Coords::Symmetric;
  std::variant<PostCriticalShape, PreCriticalShape> shape;

  bool postcritical() const { return std::holds_alternative<PostCriticalShape>(shape); }
  const PostCriticalShape& post() const { return std::get<PostCriticalShape>(shape); }
  const PreCriticalShape& pre() const { return std::get<PreCriticalShape>(shape); }
};

/// Largest value of the normalized ellipse form ((x - x0)/A)^2 + (y/B)^2 over
/// the boundary circle of the excluded disk, with every boundary angle where
/// it attains (to 1e-9) a local maximum of value 1.
struct ContainmentProbe {
  double max_form = 0;
  std::vector<Complex> tangencies;
};

ContainmentProbe probe_containment(const PostCriticalShape& shape);
ContainmentProbe probe_containment(const ModelParams& params);

/// True iff the closed excluded disk lies inside the closed ellipse.
bool check_containment(const ModelParams& params);

/// Throws ContainmentViolated when the disk pokes out of the ellipse.
/// Squared coordinates need p = 0.
DropletRegion postcritical_droplet(const ModelParams& params, Coords coords);

/// Needs tau >= tau_c, c > 0, p = 0.
DropletRegion precritical_droplet(const ModelParams& params, Coords coords);

/// Picks the builder from the phase. Off-centre charges and tau = tau_c go
/// to the ellipse-minus-disk description.
DropletRegion make_droplet(const ModelParams& params, Coords coords);

enum class Membership { Interior, Boundary, Exterior };

const char* to_string(Membership m);

Membership contains(const DropletRegion& region, Complex zeta, double tol = kBoundaryTolerance);

using Polyline = std::vector<Complex>;

/// Closed boundary curves (first point not repeated). Post-critical: the
/// ellipse then the circle (if any). Pre-critical squared: f on n roots of
/// unity. Pre-critical symmetric: the continuous square-root branches of the
/// squared boundary, two curves of n points when they separate.
std::vector<Polyline> boundary_points(const DropletRegion& region, int n);

/// Lebesgue area.
double area(const DropletRegion& region);

/// Maps a squared-coordinate region to the symmetric one, S = {z : z^2 in Shat}.
DropletRegion square_region(const DropletRegion& region);

struct Topology {
  int components = 0;  // connected components of the interior
  int holes = 0;
  int double_points = 0;  // tangency points between boundary curves
};

Topology topology(const DropletRegion& region);

/// Bounding box of the region, lower-left and upper-right corners.
std::pair<Complex, Complex> bounding_box(const DropletRegion& region);

/// Winding number of f(unit circle) around the origin.
int winding_about_origin(const RationalMap& map, int n = 4096);

/// f(z) = R z - kappa/(z - q) - kappa/q for tau = 0 and a real charge p > 0
/// above the simply connected threshold.
struct OffCenterMap {
  double R = 0;
  double kappa = 0;
  double q = 0;
  double c = 0;
  double p = 0;

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  // P(x) = x^3 - ((p^2 + 4c + 2)/(2p^2)) x^2 + 1/(2p^4) at x = q^2.
  double cubic_residual() const;
};

/// (1 - p^2)^2 / (4 p^2).
double offcenter_threshold(double p);

OffCenterMap offcenter_tau0_map(double c, double p);

}  // namespace droplet
