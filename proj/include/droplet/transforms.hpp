#pragma once

#include <functional>
#include <vector>

#include "droplet/geometry.hpp"
#include "droplet/potential.hpp"

namespace droplet {

// All transforms integrate against dA = d^2z / pi.

enum class SourceRegion { InsideSource, OutsideSource };

struct CauchyValue {
  Complex value;
  SourceRegion region;
};

/// Integral of dA(z)/(zeta - z) over the ellipse (x/a)^2 + (y/b)^2 <= 1.
/// Inside: conj(zeta) - ((a-b)/(a+b)) zeta. Outside: 2ab/(zeta + sqrt(zeta^2 - a^2 + b^2)),
/// which reduces to ab/zeta for a circle.
CauchyValue ellipse_cauchy(double a, double b, Complex zeta);

/// Integral of log|zeta - z|^2 dA(z) over the ellipse, for zeta inside it:
/// |zeta|^2 - ((a-b)/(a+b)) Re zeta^2 + c0(a, b).
double ellipse_log_potential(double a, double b, Complex zeta);

/// c0(a, b), the value of the ellipse log potential at the centre. Computed
/// once per (a, b) by periodic quadrature in polar coordinates and cached.
double ellipse_log_constant(double a, double b);

/// Integral of dA(z)/(zeta - z) over the disk |z - p| <= R.
CauchyValue disk_cauchy(double R, Complex p, Complex zeta);

/// Integral of log|zeta - z| dA(z) over the disk |z - p| <= R.
double disk_log_potential(double R, Complex p, Complex zeta);

/// (1/2pi) times the integral of log|zeta - r e^{it}| dt = log max(r, |zeta|).
double jensen_average(double r, Complex zeta);

/// Integral of z^k dA over the ellipse; zero for odd k.
double ellipse_power_moment(double a, double b, int k);

/// Moment of order n of the post-critical equilibrium measure.
Complex equilibrium_moment(const ModelParams& params, int n);

/// Cauchy transform of the post-critical equilibrium measure for zeta
/// outside the ellipse S1 (DomainError inside).
Complex postcritical_cauchy(const ModelParams& params, Complex zeta);

/// Same measure, any zeta not on a boundary: ellipse and disk closed forms
/// combined with the density 1/(1 - tau^2).
Complex postcritical_cauchy_anywhere(const ModelParams& params, Complex zeta);

/// Cauchy transform of the pre-critical measure on the squared droplet,
/// by residues at the preimages of zeta inside the unit disk.
/// BoundaryAmbiguity within kBoundaryTolerance of the boundary.
Complex precritical_cauchy(const RationalMap& map, const ModelParams& params, Complex zeta);

/// Exterior Cauchy transform at zeta = f(w), |w| >= 1, using the known
/// outside preimage w. Stable up to the boundary.
Complex precritical_cauchy_exterior(const RationalMap& map, Complex w);

/// (d/zeta)(a tau w - (a^2 tau^2 + 1) + a tau/w), the residue contributed
/// by a preimage w of zeta.
Complex preimage_residue(const RationalMap& map, Complex zeta, Complex w);

/// Coefficients m_0..m_{count-1} of F(zeta) = sum m_k / zeta^{k+1}, by the
/// trapezoid rule on |zeta| = radius.
std::vector<Complex> laurent_coefficients(const std::function<Complex(Complex)>& F, double radius,
                                          int nodes, int count);

/// Moments m_0..m_{count-1} of the post-critical measure from its Cauchy
/// transform.
std::vector<Complex> postcritical_laurent_moments(const ModelParams& params, int count);

/// Moments of the squared-coordinate pre-critical measure from its Cauchy
/// transform.
std::vector<Complex> precritical_laurent_moments(const RationalMap& map, const ModelParams& params,
                                                 int count);

}  // namespace droplet
