#include <doctest.h>

#include <cmath>
#include <string>

#include "droplet/error.hpp"
#include "droplet/geometry.hpp"
#include "droplet/variational.hpp"

using namespace droplet;

namespace {

ModelParams make(double tau, double c, Complex p = {}) {
  ModelParams P;
  P.tau = tau;
  P.c = c;
  P.p = p;
  return P;
}

}  // namespace

TEST_CASE("post-critical certification") {
  const auto P = make(1.0 / 6.0, 1.0);
  const auto S = make_droplet(P, Coords::Symmetric);
  const auto eq = verify_equality(P, S, 20);
  CHECK(eq.interior_points > 50);
  CHECK(eq.interior_max_residual <= 1e-8);
  CHECK(eq.robin_spread <= 1e-8);
  const auto ineq = verify_inequality(P, S, 64);
  CHECK_FALSE(ineq.violated);
  CHECK(ineq.exterior_min_margin >= -1e-9);
  CHECK(ineq.min_exterior_gradient > 0.0);
  CHECK(ineq.far_field_margin > 0.0);
}

TEST_CASE("the squared post-critical region is checked in symmetric coordinates") {
  const auto P = make(0.1, 1.0);
  const auto eq = verify_equality(P, make_droplet(P, Coords::Squared), 16);
  CHECK(eq.coords == Coords::Symmetric);
  CHECK(eq.interior_max_residual <= 1e-8);
}

TEST_CASE("pre-critical certification") {
  const auto P = make(0.5, 1.0);
  for (Coords coords : {Coords::Squared, Coords::Symmetric}) {
    const auto S = make_droplet(P, coords);
    const auto eq = verify_equality(P, S, 20);
    CHECK(eq.coords == Coords::Squared);
    CHECK(eq.interior_points > 50);
    CHECK(eq.interior_max_residual <= 1e-8);
    CHECK(eq.robin_spread <= 1e-8);
    const auto ineq = verify_inequality(P, S, 64);
    CHECK_FALSE(ineq.violated);
    CHECK(ineq.exterior_min_margin >= -1e-9);
    CHECK(ineq.min_exterior_gradient > 0.0);
  }
}

TEST_CASE("off-centre certification") {
  const auto P = make(1.0 / 3.0, 1.0 / 7.0, Complex(3.0, 1.0) / 5.0);
  const auto S = make_droplet(P, Coords::Symmetric);
  const auto eq = verify_equality(P, S, 20);
  CHECK(eq.interior_max_residual <= 1e-8);
  const auto ineq = verify_inequality(P, S, 64);
  CHECK_FALSE(ineq.violated);
  CHECK(ineq.exterior_min_margin >= -1e-9);
}

TEST_CASE("results do not depend on the thread count") {
  const auto P = make(0.5, 1.0);
  const auto S = make_droplet(P, Coords::Squared);
  const auto a = verify_equality(P, S, 12, SweepOptions{1});
  const auto b = verify_equality(P, S, 12, SweepOptions{4});
  CHECK(a.interior_max_residual == b.interior_max_residual);
  CHECK(a.robin_spread == b.robin_spread);
  const auto c = verify_inequality(P, S, 16, SweepOptions{1});
  const auto d = verify_inequality(P, S, 16, SweepOptions{3});
  CHECK(c.exterior_min_margin == d.exterior_min_margin);
  CHECK(c.to_key_values() == d.to_key_values());
}

TEST_CASE("regions built for other parameters are rejected") {
  const auto pre = make(0.5, 1.0);
  const auto post = make(0.2, 1.0);
  CHECK_THROWS_AS(verify_equality(pre, make_droplet(post, Coords::Symmetric), 8), PhaseMismatch);
  CHECK_THROWS_AS(verify_equality(post, make_droplet(pre, Coords::Symmetric), 8), PhaseMismatch);
  CHECK_THROWS_AS(verify_inequality(make(0.25, 1.0), make_droplet(post, Coords::Symmetric), 8),
                  PhaseMismatch);
  CHECK_THROWS_AS(verify_equality(make(0.6, 1.0), make_droplet(pre, Coords::Squared), 8),
                  PhaseMismatch);
}

TEST_CASE("mass-one residue identities over a grid") {
  for (double c : {0.1, 0.5, 1.0, 3.0}) {
    const double tc = 1.0 / (1.0 + 2.0 * c);
    for (double s : {0.05, 0.4, 0.9}) {
      const auto P = make(tc + s * (0.95 - tc), c);
      const auto rep = mass_one_details(build_rational_map(P), P);
      CHECK(rep.contour_residual <= 1e-8);
      CHECK(rep.residue_zero_residual <= 1e-10);
      CHECK(rep.residue_a_residual <= 1e-10);
    }
  }
  const auto Pc = make(1.0 / 3.0, 1.0);
  CHECK_THROWS_AS(mass_one_check(build_rational_map(Pc), Pc), PhaseError);
}

TEST_CASE("report serialization") {
  VerificationReport r;
  CHECK(std::isnan(r.interior_max_residual));
  r.check = "equality";
  r.interior_max_residual = 0.1;
  const std::string s = r.to_key_values();
  CHECK(s.find("check = equality") != std::string::npos);
  CHECK(s.find("interior_max_residual = 0.10000000000000001") != std::string::npos);
}
