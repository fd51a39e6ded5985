#include "droplet/hermitian_1d.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "droplet/error.hpp"

namespace droplet::hermitian1d {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClamp = -1e-14;
constexpr double kMergeTolerance = 1e-12;
constexpr double kProximity = 1e-12;

void require(double c, double p) {
  if (!std::isfinite(c) || c < 0.0) throw DomainError("c must be >= 0");
  if (!std::isfinite(p)) throw DomainError("p must be finite");
}

}  // namespace

std::array<double, 4> edges(double c, double p) {
  require(c, p);
  const double s_plus = std::sqrt((p + 2.0) * (p + 2.0) + 8.0 * c);
  const double s_minus = std::sqrt((p - 2.0) * (p - 2.0) + 8.0 * c);
  return {(p - 2.0 - s_plus) / 2.0, (p + 2.0 - s_minus) / 2.0, (p - 2.0 + s_plus) / 2.0,
          (p + 2.0 + s_minus) / 2.0};
}

SpectralDensity1D make_spectral_density(double c, double p) {
  SpectralDensity1D s;
  s.c = c;
  s.p = p;
  s.lambda = edges(c, p);
  s.A = -c - 1.0;
  s.B = p * (c + 2.0);
  s.C = c * c - p * p;
  s.single_band = std::abs(s.lambda[2] - s.lambda[1]) <= kMergeTolerance;
  return s;
}

double density(const SpectralDensity1D& s, double x) {
  const auto& l = s.lambda;
  if (s.single_band) {
    if (x <= l[0] || x >= l[3]) return 0.0;
    return std::sqrt((x - l[0]) * (l[3] - x)) / (2.0 * kPi);
  }
  const bool in_band = (x > l[0] && x < l[1]) || (x > l[2] && x < l[3]);
  if (!in_band) return 0.0;
  double arg = -(x - l[0]) * (x - l[1]) * (x - l[2]) * (x - l[3]);
  if (arg < 0.0) {
    if (arg < kClamp) return 0.0;
    arg = 0.0;
  }
  return std::sqrt(arg) / (2.0 * kPi * std::abs(x - s.p));
}

double density(double c, double p, double x) { return density(make_spectral_density(c, p), x); }

double mp_density(double c, double x) {
  if (!std::isfinite(c) || c < 0.0) throw DomainError("c must be >= 0");
  const double root = std::sqrt(2.0 * c + 1.0);
  const double lo = (root - 1.0) * (root - 1.0);
  const double hi = (root + 1.0) * (root + 1.0);
  if (x < lo || x > hi) return 0.0;
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(std::max(0.0, (hi - x) * (x - lo))) / (2.0 * kPi * x);
}

Complex stieltjes(const SpectralDensity1D& s, Complex z) {
  if (z == Complex{s.p, 0.0}) throw DomainError("stieltjes evaluated at the charge");
  const auto& l = s.lambda;
  if (std::abs(z.imag()) <= kProximity) {
    const double x = z.real();
    const bool near = s.single_band ? (x >= l[0] - kProximity && x <= l[3] + kProximity)
                                    : ((x >= l[0] - kProximity && x <= l[1] + kProximity) ||
                                       (x >= l[2] - kProximity && x <= l[3] + kProximity));
    if (near) throw ProximityError("stieltjes evaluated on the support");
  }
  Complex root = 1.0;
  for (double e : l) root *= std::sqrt(z - e);
  const Complex u = z - s.p;
  const Complex sqrt_R = root / (2.0 * u);
  const double reach = std::max(std::abs(l[0]), std::abs(l[3])) + std::abs(s.p);
  if (std::abs(z) > 2.0 * reach + 1.0) {
    // z/2 - sqrt(R) = (z^2/4 - R)/(z/2 + sqrt(R)) avoids the cancellation far out.
    const Complex gap = -(s.A * z * z + s.B * z + s.C) / (u * u);
    return gap / (z / 2.0 + sqrt_R) - s.c / u;
  }
  return z / 2.0 - s.c / u - sqrt_R;
}

Complex stieltjes(double c, double p, Complex z) {
  return stieltjes(make_spectral_density(c, p), z);
}

Complex schiffer_R(const SpectralDensity1D& s, Complex z) {
  if (z == Complex{s.p, 0.0}) throw DomainError("R has a double pole at p");
  const Complex u = z - s.p;
  const Complex quad = z * z / 4.0;
  const Complex frac = (s.A * z * z + s.B * z + s.C) / (u * u);
  const Complex value = quad + frac;
  Complex prod = 1.0;
  for (double e : s.lambda) prod *= z - e;
  const Complex factored = prod / (4.0 * u * u);
  const double scale = std::abs(quad) + std::abs(frac) + std::abs(factored);
  if (std::abs(value - factored) > 1e-12 * scale) {
    throw std::logic_error("R(z): partial-fraction and factored forms disagree");
  }
  return value;
}

Complex schiffer_R(double c, double p, Complex z) {
  return schiffer_R(make_spectral_density(c, p), z);
}

double moment(const SpectralDensity1D& s, int k) {
  if (k < 0) throw DomainError("moment order must be >= 0");
  const auto& l = s.lambda;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  // x = m - h cos(theta) turns sqrt((x - a)(b - x)) into h sin(theta).
  auto band = [&](double a, double b, auto&& rest) {
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    if (h <= 0.0) return 0.0;
    auto f = [&](double theta) {
      const double x = m - h * std::cos(theta);
      const double sn = std::sin(theta);
      return std::pow(x, k) * h * h * sn * sn * rest(x);
    };
    return GK::integrate(f, 0.0, kPi, 15, 1e-15);
  };
  if (s.single_band) {
    return band(l[0], l[3], [](double) { return 1.0 / (2.0 * kPi); });
  }
  const double left = band(l[0], l[1], [&](double x) {
    return std::sqrt(std::max(0.0, (l[2] - x) * (l[3] - x))) / (2.0 * kPi * std::abs(x - s.p));
  });
  const double right = band(l[2], l[3], [&](double x) {
    return std::sqrt(std::max(0.0, (x - l[0]) * (x - l[1]))) / (2.0 * kPi * std::abs(x - s.p));
  });
  return left + right;
}

double total_mass(const SpectralDensity1D& s) { return moment(s, 0); }

}  // namespace droplet::hermitian1d
