#include "droplet/transforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "droplet/error.hpp"
#include "droplet/numerics.hpp"

namespace droplet {

namespace {

constexpr double kPi = std::numbers::pi;

void require_axes(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("ellipse semi-axes must be positive");
  }
}

double ellipse_form(double a, double b, Complex z) {
  const double x = z.real() / a, y = z.imag() / b;
  return x * x + y * y;
}

// sqrt(z^2 - k2) with the cut on the focal segment and ~z at infinity.
Complex focal_sqrt(Complex z, double k2) {
  if (k2 == 0.0) return z;
  return z * std::sqrt(1.0 - k2 / (z * z));
}

}  // namespace

CauchyValue ellipse_cauchy(double a, double b, Complex zeta) {
  require_axes(a, b);
  if (ellipse_form(a, b, zeta) <= 1.0) {
    return {std::conj(zeta) - (a - b) / (a + b) * zeta, SourceRegion::InsideSource};
  }
  return {2.0 * a * b / (zeta + focal_sqrt(zeta, a * a - b * b)), SourceRegion::OutsideSource};
}

double ellipse_log_constant(double a, double b) {
  require_axes(a, b);
  static std::mutex mutex;
  static std::map<std::pair<double, double>, double> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(a, b);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  // At the centre, integral of 2 log r r dr / pi over 0 <= r <= rho(theta).
  auto integrand = [a, b](double theta) {
    const double cs = std::cos(theta), sn = std::sin(theta);
    const double rho2 = a * a * b * b / (b * b * cs * cs + a * a * sn * sn);
    return 0.5 * rho2 * std::log(rho2) - 0.5 * rho2;
  };
  const double value = periodic_integral(integrand, 1e-14 * (1.0 + a * b)).value / kPi;
  cache.emplace(key, value);
  return value;
}

double ellipse_log_potential(double a, double b, Complex zeta) {
  require_axes(a, b);
  if (ellipse_form(a, b, zeta) > 1.0) {
    throw DomainError("ellipse_log_potential is only available inside the ellipse");
  }
  const Complex z2 = zeta * zeta;
  return std::norm(zeta) - (a - b) / (a + b) * z2.real() + ellipse_log_constant(a, b);
}

CauchyValue disk_cauchy(double R, Complex p, Complex zeta) {
  if (!(R >= 0.0)) throw DomainError("disk radius must be >= 0");
  const Complex u = zeta - p;
  if (std::abs(u) <= R) return {std::conj(u), SourceRegion::InsideSource};
  return {R * R / u, SourceRegion::OutsideSource};
}

double disk_log_potential(double R, Complex p, Complex zeta) {
  if (!(R > 0.0)) throw DomainError("disk radius must be positive");
  const double r = std::abs(zeta - p);
  if (r >= R) return R * R * std::log(r);
  return R * R * std::log(R) - 0.5 * R * R + 0.5 * r * r;
}

double jensen_average(double r, Complex zeta) {
  if (!(r > 0.0)) throw DomainError("jensen_average needs r > 0");
  return std::log(std::max(r, std::abs(zeta)));
}

double ellipse_power_moment(double a, double b, int k) {
  require_axes(a, b);
  if (k < 0) throw DomainError("moment order must be >= 0");
  if (k % 2 == 1) return 0.0;
  const int half = k / 2;
  // binom(1/2, half + 1)
  double binom = 1.0;
  for (int j = 0; j <= half; ++j) binom *= (0.5 - j) / (j + 1);
  return 2.0 * a * b * binom * std::pow(b * b - a * a, half);
}

Complex equilibrium_moment(const ModelParams& params, int n) {
  params.validate();
  if (n < 0) throw DomainError("moment order must be >= 0");
  if (!check_containment(params)) {
    throw PhaseError("closed-form moments need the post-critical regime");
  }
  if (n == 0) return 1.0;
  const Complex charge = -params.c * std::pow(params.p, n);
  if (n % 2 == 1) return charge;
  const int k = n / 2;
  // Catalan number 2(2k-1)!/((k-1)!(k+1)!)
  double catalan = 1.0;
  for (int j = 0; j < k; ++j) catalan = catalan * 2.0 * (2.0 * j + 1.0) / (j + 2.0);
  return catalan * std::pow(params.tau, k) * std::pow(1.0 + params.c, k + 1) + charge;
}

Complex postcritical_cauchy(const ModelParams& params, Complex zeta) {
  params.validate();
  const double s = std::sqrt(1.0 + params.c);
  if (ellipse_form((1.0 + params.tau) * s, (1.0 - params.tau) * s, zeta) < 1.0) {
    throw DomainError("postcritical_cauchy is only available outside the ellipse");
  }
  const double k2 = 4.0 * params.tau * (1.0 + params.c);
  return 2.0 * (1.0 + params.c) / (zeta + focal_sqrt(zeta, k2)) - params.c / (zeta - params.p);
}

Complex postcritical_cauchy_anywhere(const ModelParams& params, Complex zeta) {
  params.validate();
  const double t = params.tau;
  const double s = std::sqrt(1.0 + params.c);
  const double rho = std::sqrt((1.0 - t * t) * params.c);
  const Complex ellipse = ellipse_cauchy((1.0 + t) * s, (1.0 - t) * s, zeta).value;
  const Complex disk = disk_cauchy(rho, params.p, zeta).value;
  return (ellipse - disk) / (1.0 - t * t);
}

Complex preimage_residue(const RationalMap& m, Complex zeta, Complex w) {
  const double at = m.a * m.tau;
  return (m.d / zeta) * (at * w - (at * at + 1.0) + at / w);
}

Complex precritical_cauchy(const RationalMap& map, const ModelParams& params, Complex zeta) {
  if (std::abs(params.tau - map.tau) > 1e-15 || std::abs(params.c - map.c) > 1e-15) {
    throw DomainError("map and parameters disagree");
  }
  if (map.degenerate()) {
    throw PhaseError("residue formula needs tau > tau_c; use the post-critical transforms");
  }
  if (zeta == Complex{}) throw DomainError("precritical_cauchy is singular at 0");
  const auto roots = invert_map(map, zeta);
  const double t = map.tau;
  Complex sum = 1.0 / t;
  int inside = 0;
  for (Complex w : roots) {
    const double r = std::abs(w);
    if (std::abs(r - 1.0) <= kBoundaryTolerance) {
      throw BoundaryAmbiguity("point lies on the droplet boundary within tolerance");
    }
    if (r < 1.0) {
      ++inside;
      sum += preimage_residue(map, zeta, w);
    }
  }
  if (inside == 3) {
    sum += unit_phase_conj(zeta);
  } else if (inside != 2) {
    throw BoundaryAmbiguity("unexpected number of preimages inside the unit disk");
  }
  return sum / (1.0 - t * t);
}

Complex precritical_cauchy_exterior(const RationalMap& map, Complex w) {
  if (std::abs(w) < 1.0) throw DomainError("exterior preimage must satisfy |w| >= 1");
  const Complex zeta = map(w);
  const double t = map.tau;
  const Complex value = -t - map.c * (1.0 - t * t) / zeta - preimage_residue(map, zeta, w);
  return value / (1.0 - t * t);
}

std::vector<Complex> laurent_coefficients(const std::function<Complex(Complex)>& F, double radius,
                                          int nodes, int count) {
  if (nodes < 2 * count) throw DomainError("too few nodes for the requested coefficients");
  std::vector<Complex> coeffs(count);
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * kPi * j / nodes;
    const Complex z = std::polar(radius, theta);
    const Complex value = F(z);
    Complex power = z;
    for (int k = 0; k < count; ++k) {
      coeffs[k] += value * power;
      power *= z;
    }
  }
  for (auto& x : coeffs) x /= static_cast<double>(nodes);
  return coeffs;
}

std::vector<Complex> postcritical_laurent_moments(const ModelParams& params, int count) {
  params.validate();
  const double reach = (1.0 + params.tau) * std::sqrt(1.0 + params.c) + std::abs(params.p);
  return laurent_coefficients([&](Complex z) { return postcritical_cauchy(params, z); },
                              4.0 * reach, 256, count);
}

std::vector<Complex> precritical_laurent_moments(const RationalMap& map, const ModelParams& params,
                                                 int count) {
  const double reach = map.r1 + std::abs(map.r2) + map.r3 + std::abs(map.r4);
  return laurent_coefficients([&](Complex z) { return precritical_cauchy(map, params, z); },
                              4.0 * reach, 256, count);
}

}  // namespace droplet
