#pragma once

#include <functional>

#include <Eigen/Dense>

#include "psdo/banded.hpp"
#include "psdo/smooth.hpp"
#include "psdo/spectral.hpp"

namespace psdo {

inline constexpr int kMaxCutoffDerivative = 8;

/// chi = 1 on [a, b], 0 outside (a', b'), exp(-1/s) bridges in between.
class SmoothCutoff {
 public:
  /// Throws std::invalid_argument unless a' < a < b < b'.
  SmoothCutoff(double a, double b, double a_outer, double b_outer);

  double operator()(double x) const;
  /// chi^(n)(x) for n = 0..kMaxJetOrder.
  Jet derivatives(double x) const;

  double a() const { return a_; }
  double b() const { return b_; }
  double a_outer() const { return ao_; }
  double b_outer() const { return bo_; }
  double min_transition_width() const { return std::min(a_ - ao_, bo_ - b_); }

 private:
  double a_, b_, ao_, bo_;
};

SmoothCutoff build_cutoff(double a, double b, double a_outer, double b_outer);

/// chi~(x + iy) = sigma(y) sum_{n <= N} chi^(n)(x) (iy)^n / n!, with sigma = 1
/// on |y| <= Y0 and 0 beyond 2 Y0.
class AlmostAnalyticExtension {
 public:
  /// Y0 <= 0 selects the default min transition width / 15. Throws
  /// std::invalid_argument unless 1 <= N <= 8.
  AlmostAnalyticExtension(SmoothCutoff base, int N, double Y0 = 0.0);

  cplx operator()(double x, double y) const;
  /// (d_x + i d_y) chi~ / 2.
  cplx dbar(double x, double y) const;

  const SmoothCutoff& base() const { return base_; }
  int order() const { return N_; }
  double Y0() const { return Y0_; }

 private:
  SmoothCutoff base_;
  int N_;
  double Y0_;
};

AlmostAnalyticExtension almost_analytic(const SmoothCutoff& chi, int N, double Y0 = 0.0);

/// Least-squares slope of log max_x |dbar chi~(x, y)| against log y over
/// log-spaced y in [y_lo, min(y_hi, Y0)].
double dbar_decay_exponent(const AlmostAnalyticExtension& ext, double y_lo = 1e-4, double y_hi = 1e-1,
                           int n_y = 25, int n_x = 801);

struct QuadratureGrid {
  int nx = 400;
  int ny = 200;  // even; midpoint rule never touches y = 0
};

/// Helffer-Sjostrand quadrature -(1/pi) sum w dbar chi~(z) (z - H)^{-1} over
/// [a', b'] x [-2 Y0, 2 Y0]. H must be Hermitian.
Eigen::MatrixXcd hs_apply(const BandedMatrix& H, const AlmostAnalyticExtension& ext, QuadratureGrid quad = {},
                          int jobs = 1);
Eigen::MatrixXcd hs_apply(const OperatorMatrix& H, const AlmostAnalyticExtension& ext, QuadratureGrid quad = {},
                          int jobs = 1);

/// sum_n f(lambda_n) v_n v_n^*.
Eigen::MatrixXcd eig_apply(const SpectralDecomposition& dec, const std::function<double(double)>& f);

}  // namespace psdo
