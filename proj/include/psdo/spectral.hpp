#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psdo/essential.hpp"
#include "psdo/quantization.hpp"

namespace psdo {

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // orthonormal columns
  double residual = 0.0;          // max_n ||H v_n - lambda_n v_n||

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Throws MatrixError for input without the Hermitian flag. Modes decoupled
/// from every other mode are returned as exact unit eigenvectors.
SpectralDecomposition eigendecompose(const OperatorMatrix& H);
SpectralDecomposition eigendecompose_dense(const Eigen::MatrixXcd& H);

/// Fraction of |v|^2 on the top ceil(5% dim) entries.
double localization_score(const Eigen::VectorXcd& v);

enum class SpectrumLabel { band, discrete, embedded_candidate };
std::string to_string(SpectrumLabel label);

struct SpectrumReport {
  std::vector<SpectrumLabel> labels;
  std::vector<double> localization;
  std::vector<bool> persistent;
};

/// Labels against the predicted bands. Eigenvalues within match_tol of an
/// entry of `persistent_values` are flagged persistent; persistent band
/// members become embedded candidates.
SpectrumReport classify_spectrum(const SpectralDecomposition& dec, const EssentialSpectrumPrediction& pred,
                                 double band_tol, std::span<const double> persistent_values = {},
                                 double match_tol = 0.0);

struct PersistentEigenvalue {
  double value = 0.0;               // at K_max
  double localization = 0.0;        // at K_max
  std::vector<double> trajectory;   // matched value at each K
};

struct StabilityResult {
  std::vector<int> K_list;
  double match_tol = 0.0;
  std::vector<PersistentEigenvalue> persistent;
  std::vector<double> values() const;
};

/// Greedy one-to-one nearest matching of eigenvalues across the K list
/// (ties broken by localization). Throws std::invalid_argument if K_list is
/// not strictly ascending or has fewer than 3 entries.
StabilityResult truncation_stability(const CircleSymbol& a, double t, std::span<const int> K_list,
                                     double match_tol);
/// Same, on decompositions already computed for the ascending K list.
StabilityResult truncation_stability(std::span<const SpectralDecomposition> decs, std::span<const int> K_list,
                                     double match_tol);

struct DensityResult {
  std::vector<double> lambda;
  std::vector<double> rho;
  double epsilon = 0.0;
  double mean_spacing = 0.0;
  bool below_spacing_floor = false;  // epsilon < 2 x mean spacing
};

/// Lorentzian-smoothed spectral measure of u.
DensityResult spectral_density(const SpectralDecomposition& dec, const Eigen::VectorXcd& u,
                               std::span<const double> lambda_grid, double epsilon);

/// Interval length over the number of eigenvalues inside it (infinity if none).
double mean_level_spacing(const SpectralDecomposition& dec, double lo, double hi);

/// sum_n |<v_n, u>|^4.
double survival_average(const SpectralDecomposition& dec, const Eigen::VectorXcd& u);

/// Symmetric Hausdorff distance between a finite point set and a union of
/// closed intervals.
double hausdorff_to_intervals(std::span<const double> points, std::span<const Interval> intervals);

}  // namespace psdo
