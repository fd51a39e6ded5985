#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "droplet/fekete_kernels.hpp"

using namespace droplet;
namespace k = droplet::kernels;

namespace {

std::vector<Complex> cloud(int n, std::uint64_t seed, bool upper) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> z(n);
  for (auto& x : z) {
    x = {u(rng), u(rng)};
    if (upper) x.imag(std::abs(x.imag()) + 0.05);
  }
  return z;
}

// Direct double loop in long double.
long double brute_energy(const std::vector<Complex>& z, Symmetry s) {
  long double e = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t i = j + 1; i < z.size(); ++i) {
      e -= std::log(static_cast<long double>(std::norm(z[j] - z[i])));
    }
    if (s == Symmetry::SymplecticEnsemble) {
      for (std::size_t i = j; i < z.size(); ++i) {
        e -= std::log(static_cast<long double>(std::norm(z[j] - std::conj(z[i]))));
      }
    }
  }
  return e;
}

}  // namespace

TEST_CASE("serial and parallel kernels agree") {
  for (Symmetry s : {Symmetry::ComplexEnsemble, Symmetry::SymplecticEnsemble}) {
    const auto z = cloud(301, 5, s == Symmetry::SymplecticEnsemble);
    const double es = k::interaction_energy_serial(z, s);
    const double ep = k::interaction_energy_parallel(z, s);
    CHECK(es == doctest::Approx(static_cast<double>(brute_energy(z, s))).epsilon(1e-12));
    CHECK(ep == doctest::Approx(es).epsilon(1e-12));

    std::vector<Complex> gs, gp;
    k::interaction_gradient_serial(z, s, gs);
    k::interaction_gradient_parallel(z, s, gp);
    REQUIRE(gs.size() == z.size());
    REQUIRE(gp.size() == z.size());
    for (std::size_t j = 0; j < z.size(); ++j) CHECK(std::abs(gs[j] - gp[j]) <= 1e-10);

    std::vector<Complex> dz(z.size());
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 1e-3);
    for (auto& x : dz) x = {g(rng), g(rng)};
    const double cs = k::interaction_energy_change_serial(z, dz, s);
    const double cp = k::interaction_energy_change_parallel(z, dz, s);
    CHECK(cp == doctest::Approx(cs).epsilon(1e-12));
  }
}

TEST_CASE("parallel kernels are independent of the thread count") {
  const auto z = cloud(257, 12, true);
  std::vector<Complex> dz(z.size(), Complex(1e-4, -2e-4));
  for (Symmetry s : {Symmetry::ComplexEnsemble, Symmetry::SymplecticEnsemble}) {
    omp_set_num_threads(1);
    const double e1 = k::interaction_energy_parallel(z, s);
    const double c1 = k::interaction_energy_change_parallel(z, dz, s);
    std::vector<Complex> g1;
    k::interaction_gradient_parallel(z, s, g1);
    omp_set_num_threads(4);
    const double e4 = k::interaction_energy_parallel(z, s);
    const double c4 = k::interaction_energy_change_parallel(z, dz, s);
    std::vector<Complex> g4;
    k::interaction_gradient_parallel(z, s, g4);
    CHECK(e1 == e4);
    CHECK(c1 == c4);
    CHECK(g1 == g4);
  }
}

TEST_CASE("gradient matches finite differences of the energy") {
  for (Symmetry s : {Symmetry::ComplexEnsemble, Symmetry::SymplecticEnsemble}) {
    const auto z = cloud(40, 21, s == Symmetry::SymplecticEnsemble);
    std::vector<Complex> g;
    k::interaction_gradient_serial(z, s, g);
    const double h = 1e-6;
    for (std::size_t j : {0u, 7u, 39u}) {
      auto shifted = [&](Complex d) {
        auto w = z;
        w[j] += d;
        return k::interaction_energy_serial(w, s);
      };
      const double fx = (shifted(h) - shifted(-h)) / (2 * h);
      const double fy = (shifted(Complex(0, h)) - shifted(Complex(0, -h))) / (2 * h);
      // d/d(conj z) = (d/dx + i d/dy)/2
      CHECK(std::abs(g[j] - 0.5 * Complex(fx, fy)) <= 1e-6 * (1.0 + std::abs(g[j])));
    }
  }
}

TEST_CASE("energy change is accurate for large and tiny moves") {
  for (Symmetry s : {Symmetry::ComplexEnsemble, Symmetry::SymplecticEnsemble}) {
    const auto z = cloud(60, 33, s == Symmetry::SymplecticEnsemble);
    std::vector<Complex> dz(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) dz[j] = 0.01 * std::polar(1.0, 0.37 * j);
    auto moved = z;
    for (std::size_t j = 0; j < z.size(); ++j) moved[j] += dz[j];
    const long double ref = brute_energy(moved, s) - brute_energy(z, s);
    CHECK(k::interaction_energy_change_serial(z, dz, s) ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-10));

    // For a tiny move the change is linear in the step: compare with the gradient.
    std::vector<Complex> g;
    k::interaction_gradient_serial(z, s, g);
    for (auto& x : dz) x *= 1e-9;
    double linear = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) linear += 2.0 * std::real(std::conj(g[j]) * dz[j]);
    CHECK(k::interaction_energy_change_serial(z, dz, s) == doctest::Approx(linear).epsilon(1e-6));
  }
}

TEST_CASE("minimum separation") {
  std::vector<Complex> z{{0, 1}, {3, 1}, {0.5, 1.1}, {2, 0.2}};
  double best = 1e300;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) best = std::min(best, std::abs(z[i] - z[j]));
  }
  CHECK(k::min_separation(z, Symmetry::ComplexEnsemble) == doctest::Approx(best));
  // Distance to the real axis, twice the imaginary part to the mirror image.
  CHECK(k::min_separation(z, Symmetry::SymplecticEnsemble) <= 0.4 + 1e-15);
}
