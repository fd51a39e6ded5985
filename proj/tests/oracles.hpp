#pragma once

// Brute-force reference computations used only by the tests. None of them
// call into the library.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Distance from an interior point z to the ellipse (x/a)^2 + (y/b)^2 = 1
// along direction e^{i phi}.
inline double ellipse_ray_length(double a, double b, Complex z, double phi) {
  const double ux = std::cos(phi) / a, uy = std::sin(phi) / b;
  const double px = z.real() / a, py = z.imag() / b;
  const double A = ux * ux + uy * uy;
  const double B = 2.0 * (px * ux + py * uy);
  const double C = px * px + py * py - 1.0;
  return (-B + std::sqrt(B * B - 4.0 * A * C)) / (2.0 * A);
}

// Cauchy transform of dA = d^2z/pi over the ellipse at an interior point,
// in polar coordinates about z: -(1/pi) times the integral of e^{-i phi} R(phi).
inline Complex ellipse_cauchy_inside(double a, double b, Complex z, int nodes = 4096) {
  Complex sum{};
  for (int k = 0; k < nodes; ++k) {
    const double phi = 2.0 * kPi * k / nodes;
    sum += std::polar(1.0, -phi) * ellipse_ray_length(a, b, z, phi);
  }
  return -sum * (2.0 * kPi / nodes) / kPi;
}

// Same transform at an exterior point: tensor Gauss-Legendre in the
// normalized radius times trapezoid in angle, z = (a r cos t, b r sin t).
inline Complex ellipse_cauchy_outside(double a, double b, Complex z, int angles = 2048) {
  using GL = boost::math::quadrature::gauss<double, 40>;
  Complex sum{};
  for (int k = 0; k < angles; ++k) {
    const double t = 2.0 * kPi * k / angles;
    const double re = GL::integrate(
        [&](double r) {
          return std::real(1.0 / (z - Complex(a * r * std::cos(t), b * r * std::sin(t)))) * r;
        },
        0.0, 1.0);
    const double im = GL::integrate(
        [&](double r) {
          return std::imag(1.0 / (z - Complex(a * r * std::cos(t), b * r * std::sin(t)))) * r;
        },
        0.0, 1.0);
    sum += Complex(re, im);
  }
  return sum * (a * b) * (2.0 * kPi / angles) / kPi;
}

// Integral of log|z - w|^2 dA(w) over the ellipse for interior z, polar
// coordinates about z: (1/pi) times the integral of R^2 log R - R^2/2.
inline double ellipse_log_inside(double a, double b, Complex z, int nodes = 4096) {
  double sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double R = ellipse_ray_length(a, b, z, 2.0 * kPi * k / nodes);
    sum += R * R * std::log(R) - 0.5 * R * R;
  }
  return sum * (2.0 * kPi / nodes) / kPi;
}

// Integral of log|z - w| dA(w) over the disk |w - p| <= R: tanh-sinh in the
// radius (split where the circle of radius r passes through z) and a dense
// trapezoid in angle.
inline double disk_log(double R, Complex p, Complex z, int angles = 4096) {
  const Complex u = z - p;
  auto ring = [&](double r) {
    double s = 0.0;
    for (int k = 0; k < angles; ++k) {
      s += std::log(std::abs(u - std::polar(r, 2.0 * kPi * k / angles)));
    }
    return s / angles * 2.0 * kPi * r;
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double split = std::abs(u);
  double total = 0.0;
  if (split > 0.0 && split < R) {
    total = ts.integrate(ring, 0.0, split) + ts.integrate(ring, split, R);
  } else {
    total = ts.integrate(ring, 0.0, R);
  }
  return total / kPi;
}

// Midpoint rule for (1/2pi) times the integral of log|z - r e^{it}|.
inline double jensen_midpoint(double r, Complex z, int nodes = 10000) {
  double s = 0.0;
  for (int k = 0; k < nodes; ++k) {
    s += std::log(std::abs(z - std::polar(r, 2.0 * kPi * (k + 0.5) / nodes)));
  }
  return s / nodes;
}

// Integral of z^k dA over the ellipse by tensor Gauss-Legendre.
inline Complex ellipse_moment(double a, double b, int k, int angles = 512) {
  using GL = boost::math::quadrature::gauss<double, 30>;
  Complex sum{};
  for (int j = 0; j < angles; ++j) {
    const double t = 2.0 * kPi * j / angles;
    const Complex dir(a * std::cos(t), b * std::sin(t));
    const double radial = GL::integrate([&](double r) { return std::pow(r, k + 1); }, 0.0, 1.0);
    sum += std::pow(dir, k) * radial;
  }
  return sum * (a * b) * (2.0 * kPi / angles) / kPi;
}

// Tanh-sinh integral of f over [lo, hi]; tolerates endpoint singularities.
inline double integrate(const std::function<double(double)>& f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi);
}

// Central difference of a real function along a complex direction.
inline double central_difference(const std::function<double(Complex)>& f, Complex z, Complex dir,
                                 double h) {
  return (f(z + h * dir) - f(z - h * dir)) / (2.0 * h);
}

// Wirtinger d/dz from central differences: (f_x - i f_y)/2.
inline Complex wirtinger_fd(const std::function<double(Complex)>& f, Complex z, double h) {
  const double fx = central_difference(f, z, 1.0, h);
  const double fy = central_difference(f, z, Complex(0.0, 1.0), h);
  return 0.5 * Complex(fx, -fy);
}

// Even-odd crossing test for a closed polygon.
inline bool polygon_contains(const std::vector<Complex>& poly, Complex z) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = poly[i], b = poly[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x =
          a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

// Whether segments [p1, p2] and [q1, q2] cross properly.
inline bool segments_cross(Complex p1, Complex p2, Complex q1, Complex q2) {
  auto cross = [](Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// Number of proper crossings between non-adjacent edges of a closed polyline.
inline int self_intersections(const std::vector<Complex>& poly) {
  const std::size_t n = poly.size();
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) ++count;
    }
  }
  return count;
}

}  // namespace oracle
