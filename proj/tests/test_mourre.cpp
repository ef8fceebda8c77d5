#include <doctest.h>

#include <cmath>

#include "psdo/errors.hpp"
#include "psdo/mourre.hpp"
#include "psdo/presets.hpp"

using namespace psdo;

TEST_CASE("min over a preimage") {
  auto g = [](double x) { return std::cos(kTwoPi * x); };
  auto h = [](double x) { return std::pow(kTwoPi * std::sin(kTwoPi * x), 2); };
  // On {|cos| < 0.8}, sin^2 > 0.36.
  CHECK(min_over_preimage(g, h, -0.8, 0.8) == doctest::Approx(4 * kPi * kPi * 0.36).epsilon(1e-9));
  CHECK(std::isinf(min_over_preimage(g, h, 2.0, 3.0)));
}

TEST_CASE("Mourre constant for the cosine and example13 limits") {
  const double want = 4 * kPi * kPi * (1 - 0.64);
  CHECK(mourre_constant(directional_limits(cosine_symbol()), {-0.8, 0.8}) == doctest::Approx(want).epsilon(1e-9));
  CHECK(mourre_constant(directional_limits(example13_symbol()), {-0.8, 0.8}) ==
        doctest::Approx(want).epsilon(1e-9));
  CHECK(mourre_constant(directional_limits(cosine_symbol()), {3.0, 4.0}) == 0.0);
}

TEST_CASE("self-adjoint Mourre check on the cosine preset") {
  const MourreReport r = mourre_check_selfadjoint(cosine_symbol(), {-0.5, 0.5}, {-0.8, 0.8}, 64);
  CHECK(r.pass);
  CHECK(r.C == doctest::Approx(4 * kPi * kPi * 0.36).epsilon(1e-6));
  REQUIRE(r.lambda_min.size() == 3);
  CHECK(r.lambda_min[0].n < r.lambda_min[2].n);
  CHECK(r.lambda_min_at(32) >= -0.05 * r.C);
  CHECK(r.residual < 1e-10);
  CHECK_FALSE(r.cutoff.empty());
}

TEST_CASE("Mourre check error paths") {
  // A constant symbol has N = {0.3}: every enclosing interval around it fails.
  const CircleSymbol constant({{0, XiProfile::constant(0.3)}});
  CHECK_THROWS_AS(mourre_check_selfadjoint(constant, {0.2, 0.4}, {0.1, 0.5}, 64), SymbolError);
  // The enclosing interval reaches the critical value -1 of the cosine.
  CHECK_THROWS_AS(mourre_check_selfadjoint(cosine_symbol(), {-0.5, 0.5}, {-1.2, 0.8}, 64), SymbolError);
  CHECK_THROWS_AS(mourre_check_selfadjoint(cosine_symbol(), {-0.5, 0.5}, {-0.8, 0.8}, 8), SymbolError);
}

TEST_CASE("commutator symbol residual is small for an x-only symbol") {
  const double r = commutator_symbol_residual(cosine_symbol(), 128);
  CHECK(r < 1e-10);
}

TEST_CASE("unitary critical angles of the scattering preset") {
  const CircleSymbol a = scattering_symbol(1.0).symbol;
  const auto angles = unitary_critical_angles(directional_limits(a));
  REQUIRE(angles.size() == 2);
  CHECK(angles[0] == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(angles[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("unitary Mourre check on a small section") {
  const CircleSymbol a = scattering_symbol(1.0).symbol;
  const MourreReport r = mourre_check_unitary(a, {-0.5, 0.5}, 128);
  REQUIRE(r.unitary.has_value());
  CHECK(r.C == doctest::Approx(4 * kPi * kPi * 0.75).epsilon(1e-6));
  CHECK(r.pass);
  CHECK(r.unitary->polar_circle_distance < 1e-10);
  CHECK(r.unitary->singular_max <= coefficient_sup_bound(a, 128));
  CHECK(r.unitary->singular_min > 0.0);
  CHECK_THROWS_AS(mourre_check_unitary(a, {0.5, 1.5}, 128), SymbolError);
  CHECK_THROWS_AS(mourre_check_unitary(a, {0.5, 0.4}, 128), SymbolError);
  CHECK_THROWS_AS(mourre_check_unitary(cosine_symbol(), {-0.5, 0.5}, 128), SymbolError);
}

TEST_CASE("unitarity defect shrinks away from the truncation edge") {
  const CircleSymbol a = scattering_symbol(1.0).symbol;
  const double d16 = unitarity_defect(a, 128, 16), d32 = unitarity_defect(a, 128, 32);
  CHECK(d16 < 1e-2);
  CHECK(d32 <= d16);
  CHECK_THROWS_AS(unitarity_defect(a, 64, 64), MatrixError);
}
