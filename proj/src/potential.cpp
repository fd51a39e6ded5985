#include "droplet/potential.hpp"

#include <cmath>
#include <string>

#include "droplet/error.hpp"

namespace droplet {

void ModelParams::validate() const {
  if (!std::isfinite(tau) || !std::isfinite(c) || !std::isfinite(p.real()) ||
      !std::isfinite(p.imag())) {
    throw DomainError("model parameters must be finite");
  }
  if (tau < 0.0 || tau >= 1.0) {
    throw DomainError("tau must lie in [0, 1), got " + std::to_string(tau));
  }
  if (c < 0.0) {
    throw DomainError("charge strength c must be >= 0, got " + std::to_string(c));
  }
}

Complex unit_phase_conj(Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) throw DomainError("phase of zero is undefined");
  return std::conj(z) / r;
}

namespace {

void require_off_charge(const ModelParams& params, Complex zeta, Complex charge) {
  if (params.c > 0.0 && zeta == charge) {
    throw DomainError("potential evaluated at the point charge");
  }
}

void require_centred(const ModelParams& params) {
  if (!params.centered()) {
    throw DomainError("Qhat is only defined for a charge at the origin");
  }
}

}  // namespace

double eval_Q(const ModelParams& params, Complex zeta) {
  params.validate();
  require_off_charge(params, zeta, params.p);
  const double t = params.tau;
  const double quad = (std::norm(zeta) - t * (zeta * zeta).real()) / (1.0 - t * t);
  if (params.c == 0.0) return quad;
  return quad - 2.0 * params.c * std::log(std::abs(zeta - params.p));
}

double eval_Qhat(const ModelParams& params, Complex zeta) {
  params.validate();
  require_centred(params);
  require_off_charge(params, zeta, Complex{});
  const double t = params.tau;
  const double lin = 2.0 * (std::abs(zeta) - t * zeta.real()) / (1.0 - t * t);
  if (params.c == 0.0) return lin;
  return lin - 2.0 * params.c * std::log(std::abs(zeta));
}

Complex wirtinger_dQ(const ModelParams& params, Complex zeta) {
  params.validate();
  require_off_charge(params, zeta, params.p);
  const double t = params.tau;
  Complex value = (std::conj(zeta) - t * zeta) / (1.0 - t * t);
  if (params.c > 0.0) value -= params.c / (zeta - params.p);
  return value;
}

Complex wirtinger_dQhat(const ModelParams& params, Complex zeta) {
  params.validate();
  require_centred(params);
  if (zeta == Complex{}) throw DomainError("dQhat is singular at the origin");
  const double t = params.tau;
  Complex value = (unit_phase_conj(zeta) - t) / (1.0 - t * t);
  if (params.c > 0.0) value -= params.c / zeta;
  return value;
}

double laplacian(const ModelParams& params, Complex zeta, PotentialKind which) {
  params.validate();
  const double t = params.tau;
  if (which == PotentialKind::Q) return 1.0 / (1.0 - t * t);
  const double r = std::abs(zeta);
  if (r == 0.0) throw DomainError("Laplacian of Qhat is singular at the origin");
  return 1.0 / (2.0 * (1.0 - t * t) * r);
}

}  // namespace droplet
