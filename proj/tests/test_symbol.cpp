#include <doctest.h>

#include <cmath>
#include <random>

#include "psdo/errors.hpp"
#include "psdo/presets.hpp"
#include "psdo/symbol.hpp"

using namespace psdo;

namespace {

// Bessel J_n by its power series; independent of the library's projection.
double bessel_series(int n, double x) {
  const int an = std::abs(n);
  double term = std::pow(0.5 * x, an) / std::tgamma(an + 1.0), sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    sum += term;
    term *= -(0.25 * x * x) / ((k + 1.0) * (k + 1.0 + an));
  }
  return (n < 0 && an % 2) ? -sum : sum;
}

TrigPoly random_trig(std::mt19937_64& rng, int L) {
  std::normal_distribution<double> g;
  std::map<int, cplx> c;
  for (int l = -L; l <= L; ++l) c[l] = {g(rng), g(rng)};
  return TrigPoly(c);
}

}  // namespace

TEST_CASE("TrigPoly evaluation, derivative and conjugation") {
  const TrigPoly s({{1, {0, -0.5}}, {-1, {0, 0.5}}});  // sin(2 pi x)
  for (double x : {0.0, 0.1, 0.25, 0.7}) {
    CHECK(s(x).real() == doctest::Approx(std::sin(kTwoPi * x)).scale(1.0));
    CHECK(std::abs(s(x).imag()) < 1e-15);
    CHECK(s.derivative()(x).real() == doctest::Approx(kTwoPi * std::cos(kTwoPi * x)).scale(1.0));
  }
  CHECK(s.bandwidth() == 1);
  CHECK(s.coeff(5) == cplx{});
  const TrigPoly e({{1, 1.0}});
  CHECK(std::abs(e.conjugate()(0.1) - std::conj(e(0.1))) < 1e-15);
}

TEST_CASE("TrigPoly symmetrization and pruning") {
  const TrigPoly p({{2, {1, 1}}, {-2, {1, -1 + 1e-13}}, {0, {3, 1e-14}}, {1, 1e-15}});
  const TrigPoly h = p.hermitian_symmetrized();
  for (const auto& [l, c] : h.coeffs()) CHECK(h.coeff(-l) == std::conj(c));
  CHECK(p.pruned(1e-12).coeffs().count(1) == 0);
  CHECK(p.pruned(1e-12).coeffs().count(2) == 1);
}

TEST_CASE("property: TrigPoly product is pointwise multiplication") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const TrigPoly a = random_trig(rng, 1 + trial % 4), b = random_trig(rng, trial % 3);
    const TrigPoly ab = a * b;
    CHECK(ab.bandwidth() <= a.bandwidth() + b.bandwidth());
    for (int k = 0; k < 5; ++k) {
      const double x = ux(rng);
      CHECK(std::abs(ab(x) - a(x) * b(x)) < 1e-12 * (1 + std::abs(a(x) * b(x))));
    }
    const auto samples = a.sample(16);
    for (int j = 0; j < 16; ++j) CHECK(std::abs(samples[j] - a(j / 16.0)) < 1e-12);
  }
}

TEST_CASE("CircleSymbol order and reality") {
  std::map<int, XiProfile> c{{1, XiProfile::constant({0, -0.5})}, {-1, XiProfile::constant({0, 0.5})}};
  const CircleSymbol s(c);
  CHECK(s.order() == 0.0);
  CHECK(s.bandwidth() == 1);
  CHECK(s.is_real());
  CHECK(s.coeff(0) == nullptr);
  CHECK(s(0.25, 3.0).real() == doctest::Approx(1.0));

  const CircleSymbol im({{0, XiProfile::constant({0, 1})}});
  CHECK_FALSE(im.is_real());
  CHECK(im.max_imag() == doctest::Approx(1.0));

  CHECK_THROWS_AS(CircleSymbol({{0, XiProfile::xi()}}, 0.0), SymbolError);
  CHECK(CircleSymbol({{0, XiProfile::xi()}}).order() == 1.0);
}

TEST_CASE("directional limits of the two-direction preset") {
  const DirectionalLimits lim = directional_limits(twodirection_symbol());
  for (double x : {0.0, 0.3, 0.5}) {
    CHECK(lim.plus(x).real() == doctest::Approx(std::cos(kTwoPi * x)).scale(1.0));
    CHECK(lim[-1](x).real() == doctest::Approx(3 + std::cos(kTwoPi * x)));
  }
  CHECK_THROWS_AS(directional_limits(CircleSymbol({{0, XiProfile::xi()}})), SymbolError);
}

TEST_CASE("fourier_project of sin gives -+i/2") {
  const Projection p = fourier_project([](double x) { return cplx{std::sin(kTwoPi * x)}; }, 3, 32, 1e-12);
  CHECK(std::abs(p.symbol.coeff(1) ? (*p.symbol.coeff(1))(0) - cplx{0, -0.5} : cplx{1}) < 1e-15);
  CHECK(std::abs((*p.symbol.coeff(-1))(0) - cplx{0, 0.5}) < 1e-15);
  CHECK(p.tail_bound < 1e-15);
}

TEST_CASE("fourier_project reproduces Jacobi-Anger Bessel coefficients") {
  std::vector<double> probes{-50, -3, -1, 0, 1, 3, 50};
  const double c = 1.5;
  auto f = [c](double x, double xi) { return std::polar(1.0, c * std::sin(kTwoPi * x) * xi / std::sqrt(1 + xi * xi)); };
  const Projection p = fourier_project(f, 12, 64, probes, 1e-9);
  CHECK(p.tail_bound < 1e-9);
  for (double xi : probes) {
    const double arg = c * xi / std::sqrt(1 + xi * xi);
    for (int l = -6; l <= 6; ++l) {
      const XiProfile* cl = p.symbol.coeff(l);
      REQUIRE(cl != nullptr);
      CHECK(std::abs((*cl)(xi) - bessel_series(l, arg)) < 1e-13);
    }
  }
}

TEST_CASE("fourier_project tail guard and argument checks") {
  auto f = [](double x) { return std::polar(1.0, 8.0 * std::sin(kTwoPi * x)); };
  CHECK_THROWS_AS(fourier_project(f, 3, 32, 1e-9), TailBoundError);
  try {
    fourier_project(f, 3, 32, 1e-9);
  } catch (const TailBoundError& e) {
    CHECK(e.bound() > 1e-9);
  }
  CHECK_THROWS_AS(fourier_project(f, 10, 16, 1e-9), SymbolError);
}

TEST_CASE("scattering preset coefficients are Bessel values at the probes") {
  const Projection p = scattering_symbol(1.5);
  CHECK(p.tail_bound < kScatteringTailTol);
  for (int m : {-4096, -7, -1, 0, 2, 100}) {
    const double xi = kPi * m;
    const double arg = 1.5 * xi / std::sqrt(1 + xi * xi);
    for (int l : {-3, 0, 1, 4}) CHECK(std::abs((*p.symbol.coeff(l))(xi) - bessel_series(l, arg)) < 1e-13);
  }
}

TEST_CASE("Mourre conjugate symbol of the cosine preset") {
  const CircleSymbol b = mourre_conjugate_symbol(cosine_symbol());
  CHECK(b.order() == 1.0);
  for (double xi : {-40.0, -2.0, 2.0, 40.0})
    for (double x : {0.1, 0.3, 0.8})
      CHECK(b(x, xi).real() == doctest::Approx(-kTwoPi * std::sin(kTwoPi * x) * xi).epsilon(1e-12));
  CHECK(std::abs(b(0.2, 0.3)) < 1e-15);  // killed by the low cutoff
  CHECK_THROWS_AS(mourre_conjugate_symbol(CircleSymbol({{0, XiProfile::constant({0, 1})}})), SymbolError);
}

TEST_CASE("unitary conjugate symbol of e^{2 pi i x}") {
  const CircleSymbol a({{1, XiProfile::constant(1.0)}});
  CHECK(unimodularity_defect(directional_limits(a)) < 1e-15);
  const CircleSymbol b = unitary_conjugate_symbol(a);
  for (double xi : {-10.0, 5.0, 100.0}) CHECK(b(0.37, xi).real() == doctest::Approx(kTwoPi * xi));
  CHECK(b.is_real());
  CHECK_THROWS_AS(unitary_conjugate_symbol(cosine_symbol()), SymbolError);
}

TEST_CASE("torus symbol bandwidths") {
  const TorusSymbol2D s = example14_symbol();
  CHECK(s.bandwidth1() == 1);
  CHECK(s.bandwidth2() == 0);
}
