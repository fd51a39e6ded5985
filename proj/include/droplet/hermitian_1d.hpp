#pragma once

#include <array>

#include "droplet/potential.hpp"

// Equilibrium measure of V(x) = x^2/2 - 2c log|x - p| on the real line.
namespace droplet::hermitian1d {

/// Band edges l1 <= l2 <= l3 <= l4; the support is [l1, l2] u [l3, l4].
std::array<double, 4> edges(double c, double p);

struct SpectralDensity1D {
  double c = 0;
  double p = 0;
  std::array<double, 4> lambda{};
  // R(z) = z^2/4 + (A z^2 + B z + C)/(z - p)^2
  double A = 0, B = 0, C = 0;
  bool single_band = false;  // l2 == l3 within 1e-12 (c = 0, |p| < 2)
};

SpectralDensity1D make_spectral_density(double c, double p);

/// sqrt(-prod(x - l_j)) / (2 pi |x - p|) on the bands, 0 elsewhere.
double density(const SpectralDensity1D& s, double x);
double density(double c, double p, double x);

/// Marchenko-Pastur form sqrt((l+^2 - x)(x - l-^2))/(2 pi x) on
/// [l-^2, l+^2], l+- = sqrt(2c + 1) +- 1.
double mp_density(double c, double x);

/// Integral of dmu(s)/(z - s) = z/2 - c/(z - p) - sqrt(R(z)) with sqrt(R)
/// taken as the product of the principal roots of the four linear factors
/// over 2(z - p). ProximityError within 1e-12 of the support, DomainError
/// at z = p.
Complex stieltjes(const SpectralDensity1D& s, Complex z);
Complex stieltjes(double c, double p, Complex z);

/// R(z) from its partial-fraction form; throws std::logic_error if it
/// disagrees with prod(z - l_j)/(4 (z - p)^2) beyond 1e-12 relative.
Complex schiffer_R(const SpectralDensity1D& s, Complex z);
Complex schiffer_R(double c, double p, Complex z);

/// Integral of x^k dmu(x), band by band after x = m - h cos(theta).
double moment(const SpectralDensity1D& s, int k);
double total_mass(const SpectralDensity1D& s);

}  // namespace droplet::hermitian1d
