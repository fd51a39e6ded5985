#include "droplet/variational.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "droplet/error.hpp"
#include "droplet/numerics.hpp"
#include "droplet/transforms.hpp"
#include "exception_slot.hpp"

namespace droplet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMarginFloor = -1e-9;
constexpr double kStandoff = 0.02;
constexpr double kFarField = 10.0;

using Gauss = boost::math::quadrature::gauss<double, 10>;

struct Context {
  ModelParams params;
  Phase phase;
  bool post;
  DropletRegion region;  // symmetric for post, squared for pre
};

Phase phase_of(const ModelParams& params) {
  if (!params.centered()) {
    if (!check_containment(params)) {
      throw PhaseError("off-centre charge without containment has no closed-form droplet");
    }
    return Phase::PostCritical;
  }
  return classify_phase(params);
}

bool close(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

Context make_context(const ModelParams& params, const DropletRegion& region) {
  params.validate();
  Context ctx{params, phase_of(params), false, region};
  const bool expect_post = !params.centered() || ctx.phase != Phase::PreCritical;
  if (region.postcritical() != expect_post) {
    throw PhaseMismatch(std::string("region shape does not match the ") + to_string(ctx.phase) +
                        " phase of the parameters");
  }
  ctx.post = expect_post;
  if (ctx.post) {
    if (region.coords == Coords::Squared) ctx.region = square_region(region);
    const auto& s = ctx.region.post();
    const double root = std::sqrt(1.0 + params.c);
    const double t = params.tau;
    if (!close(s.semi_x, (1.0 + t) * root) || !close(s.semi_y, (1.0 - t) * root) ||
        !close(s.hole_radius, std::sqrt((1.0 - t * t) * params.c)) ||
        std::abs(s.hole_center - params.p) > 1e-12 || s.ellipse_center != 0.0) {
      throw PhaseMismatch("region was built for different parameters");
    }
  } else {
    ctx.region.coords = Coords::Squared;
    const auto& m = ctx.region.pre().map;
    if (!close(m.tau, params.tau) || !close(m.c, params.c)) {
      throw PhaseMismatch("conformal map was built for different parameters");
    }
  }
  return ctx;
}

// dH = dW - C for the working coordinates (W = Q symmetric, Qhat squared).
Complex dH_post(const ModelParams& params, Complex zeta) {
  return wirtinger_dQ(params, zeta) - postcritical_cauchy_anywhere(params, zeta);
}

Complex dH_pre_interior(const RationalMap& map, const ModelParams& params, Complex zeta) {
  return wirtinger_dQhat(params, zeta) - precritical_cauchy(map, params, zeta);
}

// H up to an additive constant in the post-critical case: Q minus the
// logarithmic potential of the measure, from the ellipse and disk closed forms.
double robin_post(const ModelParams& params, Complex zeta) {
  const double t = params.tau;
  const double root = std::sqrt(1.0 + params.c);
  const double rho = std::sqrt((1.0 - t * t) * params.c);
  double log_pot = ellipse_log_potential((1.0 + t) * root, (1.0 - t) * root, zeta);
  if (rho > 0.0) log_pot -= 2.0 * disk_log_potential(rho, params.p, zeta);
  return eval_Q(params, zeta) - log_pot / (1.0 - t * t);
}

double diameter_of(const DropletRegion& region) {
  const auto [lo, hi] = bounding_box(region);
  return std::max(hi.real() - lo.real(), hi.imag() - lo.imag());
}

double distance_to(const std::vector<Polyline>& curves, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& curve : curves) {
    for (Complex b : curve) best = std::min(best, std::abs(z - b));
  }
  return best;
}

void set_threads(const SweepOptions& opts) {
#ifdef _OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#else
  (void)opts;
#endif
}

}  // namespace

VerificationReport::VerificationReport()
    : interior_max_residual(kNaN),
      robin_constant(kNaN),
      robin_spread(kNaN),
      exterior_min_margin(kNaN),
      min_exterior_gradient(kNaN),
      far_field_margin(kNaN),
      mass_residual(kNaN) {}

std::string VerificationReport::to_key_values() const {
  std::string out;
  char buf[128];
  auto put = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
    out += buf;
  };
  auto put_int = [&](const char* key, long v) {
    std::snprintf(buf, sizeof buf, "%s = %ld\n", key, v);
    out += buf;
  };
  out += "check = " + check + "\n";
  out += std::string("phase = ") + to_string(phase) + "\n";
  out += std::string("coords = ") + (coords == Coords::Symmetric ? "symmetric" : "squared") + "\n";
  put_int("grid_size", grid_size);
  put_int("interior_points", interior_points);
  put_int("rays", rays);
  put_int("ray_samples", ray_samples);
  put("interior_max_residual", interior_max_residual);
  put("robin_constant", robin_constant);
  put("robin_spread", robin_spread);
  put("exterior_min_margin", exterior_min_margin);
  put("min_exterior_gradient", min_exterior_gradient);
  put("far_field_margin", far_field_margin);
  put("mass_residual", mass_residual);
  out += std::string("monotone = ") + (monotone ? "true" : "false") + "\n";
  out += std::string("violated = ") + (violated ? "true" : "false") + "\n";
  put("offending_re", offending_point.real());
  put("offending_im", offending_point.imag());
  return out;
}

// ---------------------------------------------------------------------------
// Equality

VerificationReport verify_equality(const ModelParams& params, const DropletRegion& region,
                                   int grid_n, const SweepOptions& opts) {
  if (grid_n < 2) throw DomainError("grid_n must be >= 2");
  const Context ctx = make_context(params, region);
  VerificationReport rep;
  rep.check = "equality";
  rep.phase = ctx.phase;
  rep.coords = ctx.region.coords;
  rep.grid_size = grid_n;

  const auto curves = boundary_points(ctx.region, 2048);
  const double diam = diameter_of(ctx.region);
  const auto [lo, hi] = bounding_box(ctx.region);
  const double hx = (hi.real() - lo.real()) / grid_n;
  const double hy = (hi.imag() - lo.imag()) / grid_n;
  auto node = [&](int i, int j) {
    return Complex{lo.real() + (i + 0.5) * hx, lo.imag() + (j + 0.5) * hy};
  };

  const int total = grid_n * grid_n;
  std::vector<char> kept(total, 0);
  std::vector<double> residual(total, 0.0);
  std::vector<double> robin(total, kNaN);
  set_threads(opts);
  detail::ExceptionSlot failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (int idx = 0; idx < total; ++idx) {
    failure.run([&] {
      const Complex z = node(idx % grid_n, idx / grid_n);
      if (contains(ctx.region, z) != Membership::Interior) return;
      if (distance_to(curves, z) < kStandoff * diam) return;
      kept[idx] = 1;
      if (ctx.post) {
        residual[idx] = std::abs(dH_post(ctx.params, z));
        robin[idx] = robin_post(ctx.params, z);
      } else {
        residual[idx] = std::abs(dH_pre_interior(ctx.region.pre().map, ctx.params, z));
      }
    });
  }
  failure.rethrow();

  double worst = 0.0;
  int count = 0;
  for (int idx = 0; idx < total; ++idx) {
    if (!kept[idx]) continue;
    ++count;
    if (residual[idx] >= worst) {
      worst = residual[idx];
      rep.offending_point = node(idx % grid_n, idx / grid_n);
    }
  }
  rep.interior_points = count;
  rep.interior_max_residual = count > 0 ? worst : kNaN;
  if (count == 0) return rep;

  if (ctx.post) {
    double lo_h = std::numeric_limits<double>::infinity(), hi_h = -lo_h, sum = 0.0;
    for (int idx = 0; idx < total; ++idx) {
      if (!kept[idx]) continue;
      lo_h = std::min(lo_h, robin[idx]);
      hi_h = std::max(hi_h, robin[idx]);
      sum += robin[idx];
    }
    rep.robin_constant = sum / count;
    rep.robin_spread = hi_h - lo_h;
    return rep;
  }

  // Pre-critical: H is only known up to a constant, so spread is measured by
  // integrating dH along lattice edges of a breadth-first spanning tree.
  const auto& map = ctx.region.pre().map;
  auto edge_increment = [&](Complex z0, Complex z1, bool& inside) {
    inside = true;
    const Complex dz = z1 - z0;
    const double value = Gauss::integrate(
        [&](double s) {
          const Complex z = z0 + s * dz;
          if (contains(ctx.region, z) != Membership::Interior) {
            inside = false;
            return 0.0;
          }
          return 2.0 * std::real(dH_pre_interior(map, ctx.params, z) * dz);
        },
        0.0, 1.0);
    return value;
  };
  std::vector<double> H(total, kNaN);
  double lo_h = std::numeric_limits<double>::infinity(), hi_h = -lo_h;
  for (int start = 0; start < total; ++start) {
    if (!kept[start] || !std::isnan(H[start])) continue;
    H[start] = 0.0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      lo_h = std::min(lo_h, H[cur]);
      hi_h = std::max(hi_h, H[cur]);
      const int i = cur % grid_n, j = cur / grid_n;
      const int nbrs[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
      for (const auto& nb : nbrs) {
        if (nb[0] < 0 || nb[0] >= grid_n || nb[1] < 0 || nb[1] >= grid_n) continue;
        const int k = nb[1] * grid_n + nb[0];
        if (!kept[k] || !std::isnan(H[k])) continue;
        bool inside = true;
        const double inc = edge_increment(node(i, j), node(nb[0], nb[1]), inside);
        if (!inside) continue;
        H[k] = H[cur] + inc;
        queue.push_back(k);
      }
    }
  }
  rep.robin_spread = hi_h - lo_h;
  return rep;
}

// ---------------------------------------------------------------------------
// Inequality

namespace {

struct RayResult {
  double min_margin = std::numeric_limits<double>::infinity();
  Complex worst_point{};
  double min_gradient = std::numeric_limits<double>::infinity();
  double end_margin = 0.0;
  bool monotone = true;
  int samples = 0;
};

// Integrates dH/ds along s in [s0, s1] (s1 may be below s0) on panels whose
// width grows quadratically away from s0, where H - H(s0) is quadratic.
// `point` maps s to the plane, `slope` returns (dH/ds, |dH|) at s.
template <class Point, class Slope>
RayResult integrate_ray(double s0, double s1, int panels, double layer, Point point, Slope slope) {
  RayResult out;
  double H = 0.0;
  double prev = s0;
  for (int k = 1; k <= panels; ++k) {
    const double frac = static_cast<double>(k) / panels;
    const double s = s0 + (s1 - s0) * frac * frac;
    H += Gauss::integrate([&](double u) { return slope(u).first; }, prev, s);
    prev = s;
    ++out.samples;
    if (H < out.min_margin) {
      out.min_margin = H;
      out.worst_point = point(s);
    }
    if (std::abs(s - s0) >= layer) {
      const auto [ds, grad] = slope(s);
      out.min_gradient = std::min(out.min_gradient, grad);
      // Moving away from the boundary H must increase.
      if (!((s1 > s0 ? ds : -ds) > 0.0)) out.monotone = false;
    }
  }
  out.end_margin = H;
  return out;
}

void merge(VerificationReport& rep, const RayResult& r, bool far) {
  if (std::isnan(rep.exterior_min_margin) || r.min_margin < rep.exterior_min_margin) {
    rep.exterior_min_margin = r.min_margin;
    rep.offending_point = r.worst_point;
  }
  if (std::isnan(rep.min_exterior_gradient) || r.min_gradient < rep.min_exterior_gradient) {
    rep.min_exterior_gradient = r.min_gradient;
  }
  if (far && (std::isnan(rep.far_field_margin) || r.end_margin < rep.far_field_margin)) {
    rep.far_field_margin = r.end_margin;
  }
  rep.monotone = rep.monotone && r.monotone;
  rep.ray_samples += r.samples;
}

constexpr int kPanels = 400;

}  // namespace

VerificationReport verify_inequality(const ModelParams& params, const DropletRegion& region,
                                     int rays, const SweepOptions& opts) {
  if (rays < 1) throw DomainError("rays must be >= 1");
  const Context ctx = make_context(params, region);
  VerificationReport rep;
  rep.check = "inequality";
  rep.phase = ctx.phase;
  rep.coords = ctx.region.coords;
  rep.rays = rays;

  const double diam = diameter_of(ctx.region);
  const double layer = 1e-3 * diam;
  std::vector<RayResult> outer(rays), inner;
  set_threads(opts);
  detail::ExceptionSlot failure;

  if (ctx.post) {
    const auto& s = ctx.region.post();
    const ModelParams& P = ctx.params;
    const double A = s.semi_x, B = s.semi_y;
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = 0; j < rays; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / rays;
      const Complex dir = std::polar(1.0, phi);
      const double r0 =
          A * B /
          std::sqrt(B * B * std::cos(phi) * std::cos(phi) + A * A * std::sin(phi) * std::sin(phi));
      failure.run([&] {
        outer[j] = integrate_ray(
            r0, kFarField * diam, kPanels, layer, [&](double r) { return r * dir; },
            [&](double r) {
              const Complex g = dH_post(P, r * dir);
              return std::make_pair(2.0 * std::real(g * dir), std::abs(g));
            });
      });
    }
    if (s.hole_radius > 0.0) {
      inner.resize(rays);
      const double rho = s.hole_radius;
#pragma omp parallel for schedule(dynamic, 1)
      for (int j = 0; j < rays; ++j) {
        const Complex dir = std::polar(1.0, 2.0 * kPi * (j + 0.5) / rays);
        failure.run([&] {
          inner[j] = integrate_ray(
              rho, 0.01 * rho, kPanels, 1e-3 * rho,
              [&](double r) { return s.hole_center + r * dir; },
              [&](double r) {
                const Complex g = dH_post(P, s.hole_center + r * dir);
                return std::make_pair(2.0 * std::real(g * dir), std::abs(g));
              });
        });
      }
    }
  } else {
    const auto& map = ctx.region.pre().map;
    const ModelParams& P = ctx.params;
    const double t_max = 1.0 + kFarField * diam / map.r1;
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = 0; j < rays; ++j) {
      const Complex dir = std::polar(1.0, 2.0 * kPi * (j + 0.5) / rays);
      failure.run([&] {
        outer[j] = integrate_ray(
            1.0, t_max, kPanels, 1e-3, [&](double t) { return map(t * dir); },
            [&](double t) {
              const Complex w = t * dir;
              const Complex g = wirtinger_dQhat(P, map(w)) - precritical_cauchy_exterior(map, w);
              return std::make_pair(2.0 * std::real(g * map.derivative(w) * dir), std::abs(g));
            });
      });
    }
  }
  failure.rethrow();

  for (const auto& r : outer) merge(rep, r, true);
  for (const auto& r : inner) merge(rep, r, false);
  if (rep.exterior_min_margin < kMarginFloor) rep.violated = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Mass one

MassOneReport mass_one_details(const RationalMap& map, const ModelParams& params) {
  if (std::abs(params.tau - map.tau) > 1e-15 || std::abs(params.c - map.c) > 1e-15) {
    throw DomainError("map and parameters disagree");
  }
  if (map.degenerate()) throw PhaseError("mass-one identity needs tau > tau_c");
  const double t = map.tau, a = map.a;
  MassOneReport rep;
  rep.expected_total = 1.0 - t * t;

  // On |w| = 1, sqrt(conj(f(1/conj w)) f(w)) = |f(w)|; dw = i w dtheta.
  const auto contour = periodic_integral(
      [&](double theta) {
        const Complex w = std::polar(1.0, theta);
        const Complex f = map(w);
        return std::real(std::abs(f) * map.derivative(w) * w / f);
      },
      1e-14);
  rep.contour = contour.value / (2.0 * kPi);
  rep.nodes = contour.nodes;

  // Meromorphic continuation of the integrand inside the disk.
  auto phi = [&](Complex w) {
    return map.d * (1.0 - a * t * w) * (w - a * t) / w * map.derivative(w) / map(w);
  };
  auto residue = [&](Complex center, double radius) {
    const auto r = periodic_integral(
        [&](double theta) {
          const Complex u = std::polar(radius, theta);
          return phi(center + u) * u;
        },
        1e-13 * (1.0 + map.c));
    return std::real(r.value) / (2.0 * kPi);
  };
  rep.residue_zero = residue(0.0, 0.5 * std::abs(a) * t);
  // Keep the circle around a clear of the zeros at a*tau and 1/a.
  const double gap = std::min(1.0 - t, t * (1.0 + 2.0 * map.c) - 1.0);
  rep.residue_a = residue(a, 0.5 * std::abs(a) * gap);

  rep.contour_residual = std::abs(rep.contour - rep.expected_total);
  rep.residue_zero_residual = std::abs(rep.residue_zero - (1.0 + map.c) * (1.0 - t * t));
  rep.residue_a_residual = std::abs(rep.residue_a + map.c * (1.0 - t * t));
  return rep;
}

double mass_one_check(const RationalMap& map, const ModelParams& params) {
  return mass_one_details(map, params).contour_residual;
}

}  // namespace droplet
