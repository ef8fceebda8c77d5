#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psdo/essential.hpp"
#include "psdo/functional.hpp"
#include "psdo/quantization.hpp"
#include "psdo/symbol.hpp"

namespace psdo {

struct LambdaMin {
  int n = 0;
  double value = 0.0;
};

struct UnitaryExtras {
  double polar_circle_distance = 0.0;      // max ||mu| - 1| over polar-factor eigenvalues
  double truncated_circle_distance = 0.0;  // same for the eigenvalues of the truncated U
  double singular_min = 0.0;
  double singular_max = 0.0;
  double arc_coverage = 0.0;               // circular Hausdorff distance to the predicted ranges
  std::vector<double> critical_angles;
};

struct MourreReport {
  Interval interval;
  Interval enclosing;
  double C = 0.0;
  std::vector<LambdaMin> lambda_min;  // ascending n
  double residual = 0.0;              // commutator symbol residual at K (self-adjoint case)
  std::string cutoff;
  bool pass = false;
  std::optional<UnitaryExtras> unitary;

  double lambda_min_at(int n) const;
};

/// min of h(x) over {x in [0,1) : g(x) in (lo, hi)}, sampled on n points with
/// the boundary crossings refined by bisection. Infinity when the set is empty.
double min_over_preimage(const std::function<double(double)>& g, const std::function<double(double)>& h, double lo,
                         double hi, int n = 8192);

/// C = min |d_x a_0(x, +-1)|^2 over {x : a_0(x, +-1) in (a', b')}; 0 if that set is empty.
double mourre_constant(const DirectionalLimits& limits, Interval enclosing);

/// Throws SymbolError if [a', b'] meets the critical set or K is too small.
MourreReport mourre_check_selfadjoint(const CircleSymbol& a, Interval interval, Interval enclosing, int K,
                                      int cutoff_order = 5, LowCutoff low = {});

/// Max deviation of the band profile of i[A, H] over K/4 <= |k| <= K/2 from
/// the Fourier coefficients of |d_x a_0(x, sign k)|^2.
double commutator_symbol_residual(const CircleSymbol& a, int K, LowCutoff low = {});

/// || P_{>n} (U^* U - I) P_{>n} || with U = Op^w(a) on |k| <= K (exact section).
double unitarity_defect(const CircleSymbol& a, int K, int n);

/// Angles of a_0(x*, +-1) at the critical points of the phase.
std::vector<double> unitary_critical_angles(const DirectionalLimits& limits, int n_grid = 2048);

/// Arc (theta1, theta2) in radians with theta1 < theta2 < theta1 + 2 pi.
/// Throws SymbolError if the closed arc contains a critical angle.
MourreReport mourre_check_unitary(const CircleSymbol& a, Interval arc, int K, LowCutoff low = {});

}  // namespace psdo
