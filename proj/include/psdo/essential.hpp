#pragma once

#include <functional>
#include <span>
#include <vector>

#include "psdo/symbol.hpp"

namespace psdo {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
  double length() const { return hi - lo; }
};

struct CriticalPoint {
  double x = 0.0;
  double value = 0.0;
  bool flat = false;  // from a run of grid points with |f'| <= tol
};

/// Critical points of a smooth 1-periodic f: sign changes of df on an n-point
/// grid (wrapping around) refined by bisection to x_tol, plus flat runs where
/// |df| <= flat_tol (one entry per run).
std::vector<CriticalPoint> critical_points(const std::function<double(double)>& f,
                                           const std::function<double(double)>& df, int n_grid,
                                           double x_tol, double flat_tol);

struct EssentialSpectrumPrediction {
  Interval interval_plus;
  Interval interval_minus;
  std::vector<double> critical_set;  // ascending, deduplicated
  int grid_resolution = 0;

  bool in_bands(double v, double tol = 0.0) const {
    return interval_plus.contains(v, tol) || interval_minus.contains(v, tol);
  }
  /// Distance from v to interval_plus U interval_minus.
  double band_distance(double v) const;
};

/// Throws SymbolError for non-real or non-order-0 symbols and n_grid < 16.
EssentialSpectrumPrediction predict_essential_spectrum(const CircleSymbol& a, int n_grid = 2048,
                                                       double refine_tol = 1e-12);

struct SymbolClassTable {
  double m = 0.0;
  int alpha_max = 0;
  int beta_max = 0;
  std::vector<std::vector<double>> C;           // C[alpha][beta]
  std::vector<std::vector<bool>> unbounded;     // running max still growing
  bool bounded() const;
};

/// C_{alpha,beta} = max |d_x^alpha d_xi^beta a| (1+|xi|)^{beta-m} over the
/// x grid and the probes +-xi.
SymbolClassTable estimate_symbol_class(const CircleSymbol& a, double m, int alpha_max, int beta_max,
                                       int x_grid, std::span<const double> xi_probes);

/// n log-spaced probes over [lo, hi].
std::vector<double> log_probes(double lo, double hi, int n);

}  // namespace psdo
