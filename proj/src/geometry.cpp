#include "droplet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "droplet/error.hpp"
#include "droplet/numerics.hpp"

namespace droplet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIdentityTolerance = 1e-10;

double rel(double lhs, double rhs, double scale) {
  const double diff = std::abs(lhs - rhs);
  if (diff == 0.0) return 0.0;
  return diff / std::max(scale, std::numeric_limits<double>::min());
}

Complex unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::PostCritical:
      return "post-critical";
    case Phase::Critical:
      return "critical";
    case Phase::PreCritical:
      return "pre-critical";
  }
  return "unknown";
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior:
      return "interior";
    case Membership::Boundary:
      return "boundary";
    case Membership::Exterior:
      return "exterior";
  }
  return "unknown";
}

double critical_tau(double c) {
  if (!std::isfinite(c) || c < 0.0) throw DomainError("critical_tau: c must be >= 0");
  return 1.0 / (1.0 + 2.0 * c);
}

Phase classify_phase(const ModelParams& params) {
  params.validate();
  if (!params.centered()) {
    throw DomainError("phase classification is only defined for a charge at the origin");
  }
  const double gap = params.tau - critical_tau(params.c);
  if (std::abs(gap) <= kPhaseTieTolerance) return Phase::Critical;
  return gap < 0.0 ? Phase::PostCritical : Phase::PreCritical;
}

// ---------------------------------------------------------------------------
// Rational map

Complex RationalMap::partial_fractions(Complex w) const {
  if (w == Complex{}) throw DomainError("conformal map evaluated at its pole w = 0");
  Complex value = r1 * w + r2 + r3 / w;
  if (r4 != 0.0) {
    if (w == Complex{a, 0.0}) throw DomainError("conformal map evaluated at its pole w = a");
    value += r4 / (w - a);
  }
  return value;
}

Complex RationalMap::operator()(Complex w) const {
  if (degenerate()) return partial_fractions(w);
  if (w == Complex{}) throw DomainError("conformal map evaluated at its pole w = 0");
  if (w == Complex{a, 0.0}) throw DomainError("conformal map evaluated at its pole w = a");
  const Complex u = w - a * tau;
  return d * (1.0 - a * w) * u * u / (w * (w - a));
}

Complex RationalMap::derivative(Complex w) const {
  if (w == Complex{}) throw DomainError("conformal map derivative at the pole w = 0");
  Complex value = r1 - r3 / (w * w);
  if (r4 != 0.0) {
    if (w == Complex{a, 0.0}) throw DomainError("conformal map derivative at the pole w = a");
    const Complex u = w - a;
    value -= r4 / (u * u);
  }
  return value;
}

double MapIdentityResiduals::max() const {
  return std::max({leading_constant, inverse_pole_zero, r3_r1, r4_r2, r2_r1, product_identity,
                   double_zero_value, double_zero_slope, double_zero_relation});
}

MapIdentityResiduals map_identity_residuals(const RationalMap& m) {
  const double a = m.a, t = m.tau, c = m.c;
  const double a2 = a * a;
  const double t2 = t * t;
  MapIdentityResiduals res;

  res.leading_constant = rel(m.r1, -a * m.d, std::abs(m.r1) + std::abs(a * m.d));

  // f(1/a) = r1/a + r2 + r3 a + a r4/(1 - a^2). At tau_c both r4 and 1 - a^2
  // vanish; the quotient tends to -d a (1 - tau)^2.
  const double one_minus_a2 = 1.0 - a2;
  const double last =
      std::abs(one_minus_a2) < 1e-8 ? -m.d * a * (1.0 - t) * (1.0 - t) : a * m.r4 / one_minus_a2;
  {
    const double terms[] = {m.r1 / a, m.r2, m.r3 * a, last};
    double sum = 0.0, scale = 0.0;
    for (double x : terms) {
      sum += x;
      scale += std::abs(x);
    }
    res.inverse_pole_zero = rel(sum, 0.0, scale);
  }

  res.r3_r1 = rel(m.r3, m.r1 * t2, std::abs(m.r3) + std::abs(m.r1 * t2));

  const double shift = m.r2 - 2.0 * t * (1.0 + c);
  res.r4_r2 =
      rel(m.r4, a * (1.0 - t2) * shift,
          std::abs(m.r4) + std::abs(a * (1.0 - t2)) * (std::abs(m.r2) + 2.0 * t * (1.0 + c)));

  {
    const double lhs = m.r2 * (1.0 - a2 * t2);
    const double rhs1 = m.r1 * (1.0 + a2 * t2) * (a2 - 1.0) / a;
    const double rhs2 = 2.0 * a2 * (1.0 - t2) * t * (1.0 + c);
    res.r2_r1 = rel(lhs, rhs1 + rhs2, std::abs(lhs) + std::abs(rhs1) + std::abs(rhs2));
  }

  {
    const double f1 = (2.0 - a2 + a2 * a2 * t2) * m.r1;
    const double f2 = a * m.r2;
    const double lhs = (f1 + f2) * shift;
    const double rhs = (1.0 - t2) * c * c * a * (a2 - 1.0);
    const double scale = (std::abs(f1) + std::abs(f2)) * (std::abs(m.r2) + 2.0 * t * (1.0 + c)) +
                         (1.0 - t2) * c * c * std::abs(a) * (1.0 + a2);
    res.product_identity = rel(lhs, rhs, scale);
  }

  {
    const double w = a * t;
    const double terms[] = {m.r1 * w, m.r2, m.r3 / w, m.degenerate() ? 0.0 : m.r4 / (w - a)};
    double sum = 0.0, scale = 0.0;
    for (double x : terms) {
      sum += x;
      scale += std::abs(x);
    }
    res.double_zero_value = rel(sum, 0.0, scale);
    const double slope_terms[] = {m.r1, -m.r3 / (w * w),
                                  m.degenerate() ? 0.0 : -m.r4 / ((w - a) * (w - a))};
    sum = scale = 0.0;
    for (double x : slope_terms) {
      sum += x;
      scale += std::abs(x);
    }
    res.double_zero_slope = rel(sum, 0.0, scale);
  }

  {
    const double x1 = (a2 - 1.0) / a2 * m.r1;
    const double x2 = -m.r2 / a;
    const double rhs = 2.0 * m.r1 * t;
    res.double_zero_relation = rel(x1 + x2, rhs, std::abs(x1) + std::abs(x2) + std::abs(rhs));
  }
  return res;
}

RationalMap build_rational_map(const ModelParams& params) {
  const Phase phase = classify_phase(params);
  if (phase == Phase::PostCritical) {
    throw PhaseError("rational map requires tau >= tau_c = " +
                     std::to_string(critical_tau(params.c)));
  }
  const double t = params.tau;
  const double c = params.c;
  const double k = 1.0 + 2.0 * c;
  RationalMap m;
  m.tau = t;
  m.c = c;
  m.d = (1.0 + t) * k / 2.0;
  if (phase == Phase::Critical) {
    // Joukowsky limit: the pole at a merges with the zero at 1/a.
    m.a = -1.0;
    m.r1 = m.d;
    m.r2 = (1.0 + t) / (2.0 * t) * (t * k + 2.0 * t - 1.0);
    m.r3 = m.r1 * t * t;
    m.r4 = 0.0;
  } else {
    const double s = std::sqrt(t * k);
    m.a = -1.0 / s;
    m.r1 = (1.0 + t) / 2.0 * std::sqrt(k / t);
    m.r2 = (1.0 + t) / (2.0 * t) * (t * k + 2.0 * t - 1.0);
    m.r3 = (1.0 + t) / 2.0 * t * s;
    m.r4 = (1.0 - t) * (1.0 - t) * (1.0 + t) * (1.0 - k * t) / (2.0 * t * s);
  }
  const MapIdentityResiduals res = map_identity_residuals(m);
  if (!(res.max() <= kIdentityTolerance)) {
    throw std::logic_error("rational map identities violated (max relative residual " +
                           std::to_string(res.max()) + ")");
  }
  return m;
}

Complex eval_map(const RationalMap& map, Complex w) { return map(w); }

std::array<Complex, 3> invert_map(const RationalMap& m, Complex zeta) {
  const double a = m.a, d = m.d, t = m.tau;
  const Complex c3 = a * d;
  const Complex c2 = -(d + 2.0 * a * a * d * t - zeta);
  const Complex c1 = a * (2.0 * d * t + a * a * t * t * d - zeta);
  const Complex c0 = -a * a * t * t * d;
  return cubic_roots(c3, c2, c1, c0);
}

// ---------------------------------------------------------------------------
// Post-critical shape

namespace {

struct EllipseForm {
  const PostCriticalShape& s;

  double value(double theta) const {
    const double x = s.hole_center.real() - s.ellipse_center + s.hole_radius * std::cos(theta);
    const double y = s.hole_center.imag() + s.hole_radius * std::sin(theta);
    return x * x / (s.semi_x * s.semi_x) + y * y / (s.semi_y * s.semi_y);
  }

  // Newton on the first derivative, only while the second derivative is
  // negative (we are climbing towards a maximum).
  double refine(double theta) const {
    const double rho = s.hole_radius;
    const double A2 = s.semi_x * s.semi_x, B2 = s.semi_y * s.semi_y;
    for (int it = 0; it < 50; ++it) {
      const double cs = std::cos(theta), sn = std::sin(theta);
      const double x = s.hole_center.real() - s.ellipse_center + rho * cs;
      const double y = s.hole_center.imag() + rho * sn;
      const double g = 2.0 * x * (-rho * sn) / A2 + 2.0 * y * (rho * cs) / B2;
      const double h = 2.0 * (rho * rho * sn * sn - x * rho * cs) / A2 +
                       2.0 * (rho * rho * cs * cs - y * rho * sn) / B2;
      if (!(h < 0.0)) break;
      const double step = g / h;
      theta -= step;
      if (std::abs(step) < 1e-15) break;
    }
    return theta;
  }
};

}  // namespace

ContainmentProbe probe_containment(const PostCriticalShape& shape) {
  ContainmentProbe probe;
  if (shape.hole_radius == 0.0) {
    const double x = shape.hole_center.real() - shape.ellipse_center;
    const double y = shape.hole_center.imag();
    probe.max_form = x * x / (shape.semi_x * shape.semi_x) + y * y / (shape.semi_y * shape.semi_y);
    return probe;
  }
  const EllipseForm form{shape};
  constexpr int samples = 1024;
  std::vector<double> values(samples);
  for (int k = 0; k < samples; ++k) values[k] = form.value(2.0 * kPi * k / samples);

  std::vector<double> maxima;
  probe.max_form = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double prev = values[(k + samples - 1) % samples];
    const double next = values[(k + 1) % samples];
    if (values[k] >= prev && values[k] > next) {
      const double theta = form.refine(2.0 * kPi * k / samples);
      const double v = std::max(form.value(theta), values[k]);
      probe.max_form = std::max(probe.max_form, v);
      maxima.push_back(theta);
    }
  }
  if (maxima.empty()) {
    // Constant form (concentric circle inside a circle).
    probe.max_form = values[0];
    return probe;
  }
  for (double theta : maxima) {
    if (std::abs(form.value(theta) - 1.0) > 1e-9) continue;
    const Complex point = shape.hole_center + shape.hole_radius * unit(theta);
    const bool seen = std::any_of(probe.tangencies.begin(), probe.tangencies.end(),
                                  [&](Complex q) { return std::abs(q - point) < 1e-6; });
    if (!seen) probe.tangencies.push_back(point);
  }
  return probe;
}

namespace {

PostCriticalShape symmetric_shape(const ModelParams& params) {
  const double s = std::sqrt(1.0 + params.c);
  PostCriticalShape shape;
  shape.semi_x = (1.0 + params.tau) * s;
  shape.semi_y = (1.0 - params.tau) * s;
  shape.ellipse_center = 0.0;
  shape.hole_center = params.p;
  shape.hole_radius = std::sqrt((1.0 - params.tau * params.tau) * params.c);
  return shape;
}

PostCriticalShape squared_shape(const ModelParams& params) {
  const double s2 = 1.0 + params.c;
  const double t = params.tau;
  PostCriticalShape shape;
  shape.semi_x = (1.0 + t * t) * s2;
  shape.semi_y = (1.0 - t * t) * s2;
  shape.ellipse_center = 2.0 * t * s2;
  shape.hole_center = 0.0;
  shape.hole_radius = (1.0 - t * t) * params.c;
  return shape;
}

constexpr double kContainmentSlack = 1e-12;

}  // namespace

ContainmentProbe probe_containment(const ModelParams& params) {
  params.validate();
  return probe_containment(symmetric_shape(params));
}

bool check_containment(const ModelParams& params) {
  return probe_containment(params).max_form <= 1.0 + kContainmentSlack;
}

DropletRegion postcritical_droplet(const ModelParams& params, Coords coords) {
  params.validate();
  if (coords == Coords::Squared && !params.centered()) {
    throw DomainError("squared coordinates need a charge at the origin");
  }
  const ContainmentProbe probe = probe_containment(params);
  if (probe.max_form > 1.0 + kContainmentSlack) {
    throw ContainmentViolated("excluded disk leaves the ellipse (max form " +
                              std::to_string(probe.max_form) + ")");
  }
  DropletRegion region;
  region.coords = coords;
  region.shape = coords == Coords::Symmetric ? symmetric_shape(params) : squared_shape(params);
  return region;
}

DropletRegion precritical_droplet(const ModelParams& params, Coords coords) {
  const Phase phase = classify_phase(params);
  if (phase == Phase::PostCritical) {
    throw PhaseError("pre-critical droplet requested below tau_c");
  }
  PreCriticalShape shape;
  shape.map = build_rational_map(params);
  if (phase == Phase::Critical) {
    shape.tangent_hole_radius = (1.0 - params.tau * params.tau) * params.c;
  }
  DropletRegion region;
  region.coords = coords;
  region.shape = shape;
  return region;
}

DropletRegion make_droplet(const ModelParams& params, Coords coords) {
  params.validate();
  if (!params.centered() || classify_phase(params) != Phase::PreCritical) {
    return postcritical_droplet(params, coords);
  }
  return precritical_droplet(params, coords);
}

// ---------------------------------------------------------------------------
// Membership

namespace {

Membership contains_post(const PostCriticalShape& s, Complex zeta, double tol) {
  const double x = (zeta.real() - s.ellipse_center) / s.semi_x;
  const double y = zeta.imag() / s.semi_y;
  const double e = std::sqrt(x * x + y * y);
  if (std::abs(e - 1.0) <= tol) return Membership::Boundary;
  if (e > 1.0) return Membership::Exterior;
  if (s.hole_radius > 0.0) {
    const double delta = std::abs(zeta - s.hole_center) / s.hole_radius;
    if (std::abs(delta - 1.0) <= tol) return Membership::Boundary;
    if (delta < 1.0) return Membership::Exterior;
  }
  return Membership::Interior;
}

Membership contains_pre_squared(const PreCriticalShape& s, Complex zeta, double tol) {
  if (s.tangent_hole_radius > 0.0) {
    const double delta = std::abs(zeta) / s.tangent_hole_radius;
    if (std::abs(delta - 1.0) <= tol) return Membership::Boundary;
    if (delta < 1.0) return Membership::Exterior;
  }
  const auto roots = invert_map(s.map, zeta);
  int skip = -1;
  if (s.map.degenerate()) {
    // The critical cubic always carries the spurious root w = a = -1.
    skip = 0;
    for (int j = 1; j < 3; ++j) {
      if (std::abs(roots[j] - s.map.a) < std::abs(roots[skip] - s.map.a)) skip = j;
    }
  }
  int inside = 0, counted = 0;
  for (int j = 0; j < 3; ++j) {
    if (j == skip) continue;
    ++counted;
    const double r = std::abs(roots[j]);
    if (std::abs(r - 1.0) <= tol) return Membership::Boundary;
    if (r < 1.0) ++inside;
  }
  return inside == counted ? Membership::Interior : Membership::Exterior;
}

}  // namespace

Membership contains(const DropletRegion& region, Complex zeta, double tol) {
  if (region.postcritical()) return contains_post(region.post(), zeta, tol);
  const Complex s = region.coords == Coords::Squared ? zeta : zeta * zeta;
  return contains_pre_squared(region.pre(), s, tol);
}

// ---------------------------------------------------------------------------
// Boundary, area, topology

namespace {

Polyline ellipse_curve(const PostCriticalShape& s, int n) {
  Polyline curve(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * k / n;
    curve[k] = {s.ellipse_center + s.semi_x * std::cos(theta), s.semi_y * std::sin(theta)};
  }
  return curve;
}

Polyline circle_curve(Complex center, double radius, int n) {
  Polyline curve(n);
  for (int k = 0; k < n; ++k) curve[k] = center + radius * unit(2.0 * kPi * k / n);
  return curve;
}

Complex nearest_branch(Complex value, Complex previous) {
  const Complex root = std::sqrt(value);
  return std::abs(root - previous) <= std::abs(root + previous) ? root : -root;
}

}  // namespace

std::vector<Polyline> boundary_points(const DropletRegion& region, int n) {
  if (n < 3) throw DomainError("boundary_points needs n >= 3");
  std::vector<Polyline> curves;
  if (region.postcritical()) {
    const auto& s = region.post();
    curves.push_back(ellipse_curve(s, n));
    if (s.hole_radius > 0.0) curves.push_back(circle_curve(s.hole_center, s.hole_radius, n));
    return curves;
  }
  const auto& s = region.pre();
  Polyline image(n);
  for (int k = 0; k < n; ++k) image[k] = s.map(unit(2.0 * kPi * k / n));

  if (region.coords == Coords::Squared) {
    curves.push_back(std::move(image));
    if (s.tangent_hole_radius > 0.0) curves.push_back(circle_curve(0.0, s.tangent_hole_radius, n));
    return curves;
  }

  Polyline branch(n);
  branch[0] = std::sqrt(image[0]);
  for (int k = 1; k < n; ++k) branch[k] = nearest_branch(image[k], branch[k - 1]);
  const Complex closing = nearest_branch(image[0], branch[n - 1]);
  if (std::abs(closing - branch[0]) <= std::abs(closing + branch[0])) {
    Polyline mirrored(n);
    for (int k = 0; k < n; ++k) mirrored[k] = -branch[k];
    curves.push_back(std::move(branch));
    curves.push_back(std::move(mirrored));
  } else {
    Polyline loop(branch);
    for (int k = 0; k < n; ++k) loop.push_back(-branch[k]);
    curves.push_back(std::move(loop));
  }
  if (s.tangent_hole_radius > 0.0) {
    curves.push_back(circle_curve(0.0, std::sqrt(s.tangent_hole_radius), n));
  }
  return curves;
}

double area(const DropletRegion& region) {
  if (region.postcritical()) {
    const auto& s = region.post();
    return kPi * (s.semi_x * s.semi_y - s.hole_radius * s.hole_radius);
  }
  const auto& s = region.pre();
  const bool squared = region.coords == Coords::Squared;
  // Green's formula (1/2) Im of the integral of conj(z) dz. With z = f(w) on
  // the unit circle this is Im(conj(f) i w f'). For the symmetric curves
  // z = +-sqrt(f) the branch cancels and the two curves together give
  // Im(conj(f) i w f')/(2|f|).
  auto integrand = [&](double theta) {
    const Complex w = unit(theta);
    const Complex f = s.map(w);
    const double g = std::imag(std::conj(f) * Complex(0.0, 1.0) * w * s.map.derivative(w));
    return squared ? 0.5 * g : 0.5 * g / std::abs(f);
  };
  const double outer = periodic_integral(integrand, 1e-12).value;
  const double h = s.tangent_hole_radius;
  return outer - (squared ? kPi * h * h : kPi * h);
}

DropletRegion square_region(const DropletRegion& region) {
  if (region.coords != Coords::Squared) {
    throw DomainError("square_region expects a region in squared coordinates");
  }
  DropletRegion out = region;
  out.coords = Coords::Symmetric;
  if (!region.postcritical()) return out;

  const auto& sq = region.post();
  if (sq.hole_center != Complex{}) {
    throw DomainError("square_region needs the excluded disk centred at the origin");
  }
  const double s2 = 0.5 * (sq.semi_x + sq.semi_y);
  const double t = sq.ellipse_center / (2.0 * s2);
  if (std::abs((1.0 + t * t) * s2 - sq.semi_x) > 1e-12 * sq.semi_x ||
      std::abs((1.0 - t * t) * s2 - sq.semi_y) > 1e-12 * sq.semi_x) {
    throw DomainError("square_region: ellipse is not the square of a centred ellipse");
  }
  PostCriticalShape sym;
  const double s = std::sqrt(s2);
  sym.semi_x = (1.0 + t) * s;
  sym.semi_y = (1.0 - t) * s;
  sym.ellipse_center = 0.0;
  sym.hole_center = 0.0;
  sym.hole_radius = std::sqrt(sq.hole_radius);
  out.shape = sym;
  return out;
}

int winding_about_origin(const RationalMap& map, int n) {
  double total = 0.0;
  Complex prev = map(unit(0.0));
  for (int k = 1; k <= n; ++k) {
    const Complex cur = map(unit(2.0 * kPi * k / n));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

Topology topology(const DropletRegion& region) {
  Topology topo;
  if (region.postcritical()) {
    const auto& s = region.post();
    if (s.hole_radius == 0.0) return {1, 0, 0};
    const int touches = static_cast<int>(probe_containment(s).tangencies.size());
    if (touches == 0) return {1, 1, 0};
    return {std::max(1, touches), 0, touches};
  }
  const auto& s = region.pre();
  const bool hole = s.tangent_hole_radius > 0.0;
  if (region.coords == Coords::Squared) return {1, 0, hole ? 1 : 0};
  if (hole) return {2, 0, 2};
  return winding_about_origin(s.map) == 0 ? Topology{2, 0, 0} : Topology{1, 0, 0};
}

std::pair<Complex, Complex> bounding_box(const DropletRegion& region) {
  if (region.postcritical()) {
    const auto& s = region.post();
    return {{s.ellipse_center - s.semi_x, -s.semi_y}, {s.ellipse_center + s.semi_x, s.semi_y}};
  }
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  for (const auto& curve : boundary_points(region, 2048)) {
    for (Complex z : curve) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
  }
  return {{x0, y0}, {x1, y1}};
}

// ---------------------------------------------------------------------------
// Off-centre map at tau = 0

Complex OffCenterMap::operator()(Complex z) const {
  if (z == Complex{q, 0.0}) throw DomainError("off-centre map evaluated at its pole");
  return R * z - kappa / (z - q) - kappa / q;
}

Complex OffCenterMap::derivative(Complex z) const {
  if (z == Complex{q, 0.0}) throw DomainError("off-centre map derivative at its pole");
  const Complex u = z - q;
  return R + kappa / (u * u);
}

double OffCenterMap::cubic_residual() const {
  const double x = q * q;
  const double p2 = p * p;
  const double b2 = (p2 + 4.0 * c + 2.0) / (2.0 * p2);
  const double b0 = 1.0 / (2.0 * p2 * p2);
  return std::abs(x * x * x - b2 * x * x + b0) / (x * x * x + b2 * x * x + b0);
}

double offcenter_threshold(double p) {
  if (!(p > 0.0)) throw DomainError("off-centre map needs p > 0");
  const double u = 1.0 - p * p;
  return u * u / (4.0 * p * p);
}

OffCenterMap offcenter_tau0_map(double c, double p) {
  if (!std::isfinite(c) || c < 0.0) throw DomainError("off-centre map needs c >= 0");
  if (!std::isfinite(p) || !(p > 0.0)) throw DomainError("off-centre map needs p > 0");
  if (c <= offcenter_threshold(p)) {
    throw PhaseError("c is below the simply connected threshold (1-p^2)^2/(4p^2)");
  }
  const double p2 = p * p;
  const auto roots =
      cubic_roots(1.0, -(p2 + 4.0 * c + 2.0) / (2.0 * p2), 0.0, 1.0 / (2.0 * p2 * p2));

  std::vector<OffCenterMap> candidates;
  for (Complex x : roots) {
    if (std::abs(x.imag()) > 1e-9 * std::max(1.0, std::abs(x))) continue;
    if (!(x.real() > 0.0)) continue;
    const double q = std::sqrt(x.real());
    if (!(q > 0.0 && q < 1.0)) continue;
    const double kappa = (1.0 - q * q) * (1.0 - p2 * q * q) / (2.0 * p * q);
    if (!(kappa > 0.0)) continue;
    OffCenterMap m;
    m.q = q;
    m.kappa = kappa;
    m.R = (1.0 + p2 * q * q) / (2.0 * p * q);
    m.c = c;
    m.p = p;
    candidates.push_back(m);
  }
  if (candidates.empty()) throw NoValidRoot("no root of P(q^2) = 0 with 0 < q < 1 and kappa > 0");
  if (candidates.size() > 1) throw NoValidRoot("several admissible roots of P(q^2) = 0");
  return candidates.front();
}

}  // namespace droplet
