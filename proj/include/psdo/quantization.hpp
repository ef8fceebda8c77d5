#pragma once

#include <Eigen/Dense>

#include "psdo/banded.hpp"
#include "psdo/symbol.hpp"

namespace psdo {

enum class Geometry { circle, torus2 };

/// Tolerance on max |M - M^*| below which a matrix is flagged Hermitian.
inline constexpr double kHermitianTol = 1e-14;

/// Finite section of Op_t(a) on Fourier modes |k| <= K (per axis on T^2).
struct OperatorMatrix {
  Geometry geometry = Geometry::circle;
  int K = 0;
  double t = 0.5;
  int bandwidth = 0;  // symbol bandwidth L (max over axes on T^2)
  BandedMatrix entries;
  bool hermitian = false;

  int dim() const { return entries.size(); }
  /// Row/column of mode k on the circle.
  int index(int k) const { return k + K; }
  /// Row/column of lattice mode (k1, k2) on the torus.
  int index(int k1, int k2) const { return (k1 + K) * (2 * K + 1) + (k2 + K); }
  Eigen::MatrixXcd dense() const { return entries.to_dense(); }
};

/// M_jk = c_{j-k}(2 pi (t k + (1 - t) j)). Throws MatrixError if K < L or t
/// is outside [0, 1].
OperatorMatrix quantize_circle(const CircleSymbol& a, int K, double t);

/// M_jk = c_{j-k}(pi (j + k)) componentwise on [-K, K]^2.
OperatorMatrix quantize_torus2_weyl(const TorusSymbol2D& a2, int K);

/// i (A H - H A); Hermitian-flagged (and symmetrized) when both inputs are.
OperatorMatrix commutator_i(const OperatorMatrix& A, const OperatorMatrix& H);

/// Largest singular value (max |eigenvalue| for Hermitian-flagged input).
double op_norm(const OperatorMatrix& M);
double op_norm(const Eigen::MatrixXcd& m, bool hermitian);

/// || P_{>n} (Op_1(a) - Op_{1/2}(a)) P_{>n} || on modes |k| <= K.
double order_gap_norm(const CircleSymbol& a, int K, int n);

/// Central section |k| <= K of a circle matrix built on a larger window.
OperatorMatrix restrict_modes(const OperatorMatrix& M, int K);

/// Rows/columns n < |k| <= K of a dense matrix indexed by modes |k| <= K.
Eigen::MatrixXcd compress_high(const Eigen::MatrixXcd& m, int K, int n);

/// Sum over l of sup_xi |c_l(xi)|, the sup taken over the midpoint
/// frequencies pi m, |m| <= 2 K_probe, and the two limits when finite.
double coefficient_sup_bound(const CircleSymbol& a, int K_probe);

}  // namespace psdo
