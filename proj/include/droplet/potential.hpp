#pragma once

#include <complex>

namespace droplet {

using Complex = std::complex<double>;

enum class Symmetry { ComplexEnsemble, SymplecticEnsemble };

/// Model parameters: non-Hermiticity tau in [0,1), charge strength c >= 0,
/// charge location p, and the ensemble symmetry class.
struct ModelParams {
  double tau = 0.0;
  double c = 0.0;
  Complex p{0.0, 0.0};
  Symmetry symmetry = Symmetry::ComplexEnsemble;

  /// Throws DomainError unless 0 <= tau < 1, c >= 0 and all values are finite.
  void validate() const;
  bool centered() const { return p == Complex{0.0, 0.0}; }
};

enum class PotentialKind { Q, Qhat };

/// sqrt(conj(z)/z) on the principal branch, i.e. conj(z)/|z|.
Complex unit_phase_conj(Complex z);

/// Q_p(z) = (|z|^2 - tau Re z^2)/(1 - tau^2) - 2c log|z - p|.
double eval_Q(const ModelParams& params, Complex zeta);

/// Qhat(z) = 2(|z| - tau Re z)/(1 - tau^2) - 2c log|z|, so that
/// Q(z) = Qhat(z^2)/2 for a centred charge. Requires p = 0.
double eval_Qhat(const ModelParams& params, Complex zeta);

/// Holomorphic Wirtinger derivative d/dz of eval_Q.
Complex wirtinger_dQ(const ModelParams& params, Complex zeta);

/// Holomorphic Wirtinger derivative d/dz of eval_Qhat.
Complex wirtinger_dQhat(const ModelParams& params, Complex zeta);

/// Quarter Laplacian d dbar of the chosen potential. Constant 1/(1-tau^2)
/// for Q; 1/(2(1-tau^2)|z|) for Qhat.
double laplacian(const ModelParams& params, Complex zeta, PotentialKind which);

}  // namespace droplet
