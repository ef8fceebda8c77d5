#include <doctest.h>

#include <cmath>

#include "psdo/errors.hpp"
#include "psdo/functional.hpp"
#include "psdo/presets.hpp"

using namespace psdo;

namespace {

BandedMatrix scalar_matrix(int n, double c) {
  BandedMatrix m(n, 0);
  for (int i = 0; i < n; ++i) m.set(i, i, c);
  return m;
}

}  // namespace

TEST_CASE("smooth cutoff shape") {
  const SmoothCutoff chi = build_cutoff(-0.5, 0.5, -0.8, 0.8);
  CHECK(chi(0.0) == 1.0);
  CHECK(chi(0.5) == 1.0);
  CHECK(chi(-0.5) == 1.0);
  CHECK(chi(0.8) == 0.0);
  CHECK(chi(-0.9) == 0.0);
  CHECK(chi(0.65) == doctest::Approx(0.5));
  CHECK(chi.min_transition_width() == doctest::Approx(0.3));
  double prev = 1.0;
  for (double x = 0.5; x <= 0.8; x += 0.001) {
    CHECK(chi(x) <= prev + 1e-15);
    prev = chi(x);
  }
  // First derivative against a central difference.
  const double h = 1e-6;
  for (double x : {-0.7, -0.6, 0.55, 0.7})
    CHECK(chi.derivatives(x)[1] == doctest::Approx((chi(x + h) - chi(x - h)) / (2 * h)).epsilon(1e-6));
  CHECK_THROWS_AS(build_cutoff(0.5, -0.5, -0.8, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(build_cutoff(-0.5, 0.5, -0.4, 0.8), std::invalid_argument);
}

TEST_CASE("almost analytic extension") {
  const SmoothCutoff chi = build_cutoff(-0.5, 0.5, -0.8, 0.8);
  const AlmostAnalyticExtension ext = almost_analytic(chi, 5);
  CHECK(ext.Y0() == doctest::Approx(0.3 / 15));
  CHECK(ext.order() == 5);
  for (double x : {-0.7, 0.0, 0.6}) CHECK(ext(x, 0.0).real() == doctest::Approx(chi(x)));
  CHECK(ext(0.6, 3 * ext.Y0()) == cplx{});
  CHECK(ext.dbar(0.0, 0.001) == cplx{});  // chi is flat there
  CHECK(almost_analytic(chi, 2, 0.05).Y0() == 0.05);
  CHECK_THROWS_AS(almost_analytic(chi, 0), std::invalid_argument);
  CHECK_THROWS_AS(almost_analytic(chi, 9), std::invalid_argument);
}

TEST_CASE("dbar decays like y^N near the real axis") {
  const SmoothCutoff chi = build_cutoff(-0.5, 0.5, -0.8, 0.8);
  for (int N : {1, 2, 3, 5, 8}) CHECK(dbar_decay_exponent(almost_analytic(chi, N)) >= N - 0.5);
}

TEST_CASE("Helffer-Sjostrand on c I returns chi(c) I") {
  const SmoothCutoff chi = build_cutoff(-0.5, 0.5, -0.8, 0.8);
  const AlmostAnalyticExtension ext = almost_analytic(chi, 5);
  for (double c : {0.0, 0.3, 0.62, 0.7, 0.95}) {
    const Eigen::MatrixXcd f = hs_apply(scalar_matrix(3, c), ext);
    INFO("c = " << c);
    CHECK(std::abs(f(1, 1) - chi(c)) < 1e-6);
    CHECK(std::abs(f(0, 1)) == 0.0);
  }
}

TEST_CASE("Helffer-Sjostrand agrees with the eigenbasis calculus and commutes with H") {
  const OperatorMatrix H = quantize_circle(example13_symbol(), 24, 0.5);
  const SmoothCutoff chi = build_cutoff(-0.5, 0.5, -0.8, 0.8);
  const AlmostAnalyticExtension ext = almost_analytic(chi, 5);
  const Eigen::MatrixXcd hs = hs_apply(H, ext, {400, 200}, 2);
  const Eigen::MatrixXcd ev = eig_apply(eigendecompose(H), [&](double x) { return chi(x); });
  CHECK((hs - ev).cwiseAbs().maxCoeff() < 1e-6);
  const Eigen::MatrixXcd Hd = H.dense();
  CHECK((hs * Hd - Hd * hs).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((hs - hs.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  // Thread count only changes the summation order.
  const Eigen::MatrixXcd one = hs_apply(H, ext, {400, 200}, 1);
  CHECK((one - hs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hs_apply guards") {
  const AlmostAnalyticExtension ext = almost_analytic(build_cutoff(-0.5, 0.5, -0.8, 0.8), 3);
  CHECK_THROWS_AS(hs_apply(quantize_circle(example13_symbol(), 8, 0.0), ext), MatrixError);
  CHECK_THROWS_AS(hs_apply(scalar_matrix(3, 0.0), ext, {10, 3}), std::invalid_argument);
}

TEST_CASE("eig_apply reproduces polynomials of H") {
  const OperatorMatrix H = quantize_circle(cosine_symbol(), 10, 0.5);
  const Eigen::MatrixXcd Hd = H.dense();
  const Eigen::MatrixXcd p = eig_apply(eigendecompose(H), [](double x) { return x * x - 2 * x + 0.5; });
  const Eigen::MatrixXcd want = Hd * Hd - 2.0 * Hd + 0.5 * Eigen::MatrixXcd::Identity(H.dim(), H.dim());
  CHECK((p - want).cwiseAbs().maxCoeff() < 1e-13);
}
