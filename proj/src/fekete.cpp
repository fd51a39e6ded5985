#include "droplet/fekete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "droplet/error.hpp"
#include "droplet/fekete_kernels.hpp"
#include "droplet/transforms.hpp"

namespace droplet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kArmijo = 1e-4;
constexpr double kShrink = 0.5;
constexpr double kMinSeparation = 1e-12;
constexpr double kAxisBand = 1e-6;

bool symplectic(const ModelParams& p) { return p.symmetry == Symmetry::SymplecticEnsemble; }

// The potential actually used, with the charge moved where the choice says.
ModelParams effective(const ModelParams& params, PotentialChoice which) {
  params.validate();
  ModelParams out = params;
  if (which == PotentialChoice::Q) out.p = 0.0;
  if (which == PotentialChoice::Qhat && !params.centered()) {
    throw DomainError("Qhat needs the charge at the origin");
  }
  if (symplectic(out) && out.p.imag() != 0.0) {
    throw DomainError("symplectic class needs W(z) = W(conj z), i.e. a real charge location");
  }
  return out;
}

double W(const ModelParams& P, PotentialChoice which, Complex z) {
  return which == PotentialChoice::Qhat ? eval_Qhat(P, z) : eval_Q(P, z);
}

Complex dW(const ModelParams& P, PotentialChoice which, Complex z) {
  return which == PotentialChoice::Qhat ? wirtinger_dQhat(P, z) : wirtinger_dQ(P, z);
}

// W(z + dz) - W(z) without cancellation.
double W_change(const ModelParams& P, PotentialChoice which, Complex z, Complex dz) {
  const double t = P.tau;
  const double dnorm = 2.0 * std::real(std::conj(z) * dz) + std::norm(dz);
  double smooth;
  if (which == PotentialChoice::Qhat) {
    const double dabs = dnorm / (std::abs(z + dz) + std::abs(z));
    smooth = 2.0 * (dabs - t * dz.real()) / (1.0 - t * t);
  } else {
    smooth = (dnorm - t * std::real(2.0 * z * dz + dz * dz)) / (1.0 - t * t);
  }
  if (P.c == 0.0) return smooth;
  const Complex u = z - P.p;
  const double ratio = (2.0 * std::real(std::conj(u) * dz) + std::norm(dz)) / std::norm(u);
  return smooth - P.c * std::log1p(ratio);
}

Complex charge_location(const ModelParams& P) { return P.p; }

void check_points(const std::vector<Complex>& z, const ModelParams& P) {
  if (z.empty()) throw DomainError("configuration is empty");
  for (Complex x : z) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw DomainError("configuration has a non-finite point");
    }
    if (symplectic(P) && x.imag() == 0.0) {
      throw DomainError("symplectic configuration has a point on the real axis");
    }
  }
  if (z.size() > 1 && kernels::min_separation(z, Symmetry::ComplexEnsemble) == 0.0) {
    throw DomainError("configuration has coincident points");
  }
}

double confinement_weight(const ModelParams& P, std::size_t n) {
  return (symplectic(P) ? 2.0 : 1.0) * static_cast<double>(n);
}

double energy_unchecked(const std::vector<Complex>& z, const ModelParams& P,
                        PotentialChoice which) {
  double e = kernels::interaction_energy_parallel(z, P.symmetry);
  double conf = 0.0;
  for (Complex x : z) conf += W(P, which, x);
  return e + confinement_weight(P, z.size()) * conf;
}

void gradient_unchecked(const std::vector<Complex>& z, const ModelParams& P, PotentialChoice which,
                        std::vector<Complex>& g) {
  kernels::interaction_gradient_parallel(z, P.symmetry, g);
  const double weight = confinement_weight(P, z.size());
  for (std::size_t j = 0; j < z.size(); ++j) g[j] += weight * std::conj(dW(P, which, z[j]));
}

// Portable uniform double in [0, 1) from the raw 64-bit engine output.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::pair<Complex, Complex> predicted_box(const ModelParams& P, PotentialChoice which) {
  const Coords coords = which == PotentialChoice::Qhat ? Coords::Squared : Coords::Symmetric;
  try {
    return bounding_box(make_droplet(P, coords));
  } catch (const ContainmentViolated&) {
    // Off-centre charge without a closed-form droplet: use the ellipse S1.
    const double s = std::sqrt(1.0 + P.c);
    const double A = (1.0 + P.tau) * s, B = (1.0 - P.tau) * s;
    return {{-A, -B}, {A, B}};
  }
}

}  // namespace

const char* to_string(PotentialChoice which) {
  switch (which) {
    case PotentialChoice::Q:
      return "Q";
    case PotentialChoice::Qhat:
      return "Qhat";
    case PotentialChoice::Qp:
      return "Qp";
  }
  return "unknown";
}

double energy(const std::vector<Complex>& points, const ModelParams& params,
              PotentialChoice which) {
  const ModelParams P = effective(params, which);
  check_points(points, P);
  return energy_unchecked(points, P, which);
}

std::vector<Complex> gradient(const std::vector<Complex>& points, const ModelParams& params,
                              PotentialChoice which) {
  const ModelParams P = effective(params, which);
  check_points(points, P);
  std::vector<Complex> g;
  gradient_unchecked(points, P, which, g);
  return g;
}

std::vector<Complex> initial_configuration(int n, const ModelParams& params, PotentialChoice which,
                                           std::uint64_t seed, bool sign_symmetric) {
  if (n < 1) throw DomainError("need at least one point");
  const ModelParams P = effective(params, which);
  if (sign_symmetric && (!P.centered() || which == PotentialChoice::Qhat || symplectic(P))) {
    throw DomainError("sign-symmetric start needs a centred charge and the symmetric-coordinate Q");
  }
  auto [lo, hi] = predicted_box(P, which);
  const Complex mid = 0.5 * (lo + hi);
  const Complex half = 0.5 * (hi - lo) * 1.2;
  lo = mid - half;
  hi = mid + half;
  if (symplectic(P)) lo.imag(std::max(lo.imag(), 0.0));

  const double avoid = P.c > 0.0 ? 0.1 / std::sqrt(static_cast<double>(n)) : 0.0;
  const Complex charge = charge_location(P);
  std::mt19937_64 rng(seed);
  std::vector<Complex> z;
  z.reserve(n);
  while (static_cast<int>(z.size()) < n) {
    const Complex x{lo.real() + uniform01(rng) * (hi.real() - lo.real()),
                    lo.imag() + uniform01(rng) * (hi.imag() - lo.imag())};
    if (avoid > 0.0 && std::abs(x - charge) < avoid) continue;
    if (symplectic(P) && std::abs(x.imag()) < kAxisBand) continue;
    const bool paired = sign_symmetric && static_cast<int>(z.size()) + 2 <= n;
    if (paired && std::abs(x) < avoid + 1e-9) continue;
    z.push_back(x);
    if (paired) z.push_back(-x);
  }
  return z;
}

FeketeConfiguration minimize(int n, const ModelParams& params, PotentialChoice which,
                             std::uint64_t seed, const MinimizeOptions& opts) {
  const ModelParams P = effective(params, which);
#ifdef _OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
  FeketeConfiguration cfg;
  cfg.seed = seed;
  std::vector<Complex> z = initial_configuration(n, params, which, seed, opts.sign_symmetric_init);
  const auto [lo, hi] = predicted_box(P, which);
  const double scale = std::abs(hi - lo);

  auto norm_of = [](const std::vector<Complex>& v) {
    double s = 0.0;
    for (Complex x : v) s += std::norm(x);
    return std::sqrt(s);
  };

  double E = energy_unchecked(z, P, which);
  std::vector<Complex> g, g_prev, z_prev, trial(n), step(n);
  gradient_unchecked(z, P, which, g);
  for (auto& x : g) x *= 2.0;  // real gradient
  double gn = norm_of(g);

  auto max_abs = [](const std::vector<Complex>& v) {
    double m = 0.0;
    for (Complex x : v) m = std::max(m, std::abs(x));
    return m;
  };
  // First trial moves the fastest point by 1% of the box.
  double alpha = gn > 0.0 ? 0.01 * scale / max_abs(g) : 0.0;
  const double alpha_cap_len = 0.25 * scale;

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (gn <= opts.tol * n) {
      cfg.converged = true;
      break;
    }
    if (it > 0 && opts.step_policy == StepPolicy::BarzilaiBorwein) {
      double ss = 0.0, sy = 0.0;
      for (int j = 0; j < n; ++j) {
        const Complex s = z[j] - z_prev[j];
        ss += std::norm(s);
        sy += std::real(std::conj(s) * (g[j] - g_prev[j]));
      }
      alpha = sy > 0.0 ? ss / sy : 2.0 * alpha;
    } else if (it > 0) {
      alpha *= 2.0;
    }
    alpha = std::min(alpha, alpha_cap_len / max_abs(g));

    bool accepted = false;
    double dE = 0.0;
    for (int tries = 0; tries < 80; ++tries) {
      bool ok = true;
      for (int j = 0; j < n; ++j) {
        step[j] = -alpha * g[j];
        trial[j] = z[j] + step[j];
        if (symplectic(P) &&
            (std::abs(trial[j].imag()) < kAxisBand || (trial[j].imag() > 0) != (z[j].imag() > 0))) {
          ok = false;
        }
        if (P.c > 0.0 && trial[j] == charge_location(P)) ok = false;
      }
      if (ok && n > 1 &&
          kernels::min_separation(trial, Symmetry::ComplexEnsemble) < kMinSeparation) {
        ok = false;
      }
      if (ok) {
        dE = kernels::interaction_energy_change_parallel(z, step, P.symmetry);
        double dconf = 0.0;
        for (int j = 0; j < n; ++j) dconf += W_change(P, which, z[j], step[j]);
        dE += confinement_weight(P, n) * dconf;
        if (dE <= -kArmijo * alpha * gn * gn) {
          accepted = true;
          break;
        }
      }
      alpha *= kShrink;
    }
    if (!accepted) break;

    z_prev = z;
    g_prev = g;
    z = trial;
    E += dE;
    if (opts.keep_trace) cfg.energy_trace.push_back(E);
    gradient_unchecked(z, P, which, g);
    for (auto& x : g) x *= 2.0;
    gn = norm_of(g);
  }
  if (!cfg.converged && gn <= opts.tol * n) cfg.converged = true;

  cfg.points = std::move(z);
  cfg.energy = energy_unchecked(cfg.points, P, which);
  cfg.grad_norm = gn;
  cfg.iterations = it;
  return cfg;
}

int count_clusters(const std::vector<Complex>& points, double threshold) {
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int clusters = static_cast<int>(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (std::abs(points[j] - points[k]) > threshold) continue;
      const std::size_t a = find(j), b = find(k);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
        --clusters;
      }
    }
  }
  return clusters;
}

EmpiricalDiagnostics empirical_diagnostics(const FeketeConfiguration& config,
                                           const DropletRegion& region, const ModelParams& params,
                                           PotentialChoice which) {
  const ModelParams P = effective(params, which);
  const Coords expected = which == PotentialChoice::Qhat ? Coords::Squared : Coords::Symmetric;
  if (region.coords != expected) {
    throw DomainError("region coordinates do not match the potential");
  }
  std::vector<Complex> z = config.points;
  if (symplectic(P)) {
    for (Complex x : config.points) z.push_back(std::conj(x));
  }
  EmpiricalDiagnostics d;
  d.n = static_cast<int>(z.size());
  if (z.empty()) return d;
  const double spacing = 1.0 / std::sqrt(static_cast<double>(d.n));
  d.dilation = 3.0 * spacing;
  d.cluster_threshold = 4.0 * spacing;

  const auto curves = boundary_points(region, 2048);
  int inside = 0;
  for (Complex x : z) {
    if (contains(region, x) != Membership::Exterior) {
      ++inside;
      continue;
    }
    double best = kInf;
    for (const auto& curve : curves) {
      for (Complex b : curve) best = std::min(best, std::abs(x - b));
    }
    if (best <= d.dilation) ++inside;
  }
  d.inside_fraction = static_cast<double>(inside) / d.n;
  d.clusters = count_clusters(z, d.cluster_threshold);

  const Complex charge = charge_location(P);
  d.min_distance_to_charge = kInf;
  for (Complex x : z)
    d.min_distance_to_charge = std::min(d.min_distance_to_charge, std::abs(x - charge));
  if (region.postcritical() && region.post().hole_radius > 0.0) {
    d.hole_expected = true;
    d.hole_detected = d.min_distance_to_charge > 0.5 * region.post().hole_radius;
  }

  constexpr int kMoments = 5;
  d.empirical_moments.assign(kMoments, Complex{});
  for (Complex x : z) {
    Complex power = 1.0;
    for (int k = 0; k < kMoments; ++k) {
      d.empirical_moments[k] += power;
      power *= x;
    }
  }
  for (auto& m : d.empirical_moments) m /= static_cast<double>(d.n);

  d.predicted_moments.assign(kMoments, Complex{});
  const bool squared = which == PotentialChoice::Qhat;
  if (region.postcritical()) {
    for (int k = 0; k < kMoments; ++k) {
      d.predicted_moments[k] = equilibrium_moment(P, squared ? 2 * k : k);
    }
  } else {
    const auto hat = precritical_laurent_moments(region.pre().map, P, kMoments);
    for (int k = 0; k < kMoments; ++k) {
      if (squared) {
        d.predicted_moments[k] = hat[k];
      } else {
        d.predicted_moments[k] = k % 2 == 0 ? hat[k / 2] : Complex{};
      }
    }
  }
  for (int k = 1; k < kMoments; ++k) {
    const double err = std::abs(d.empirical_moments[k] - d.predicted_moments[k]) /
                       (1.0 + std::abs(d.predicted_moments[k]));
    d.max_moment_error = std::max(d.max_moment_error, err);
  }
  return d;
}

}  // namespace droplet
