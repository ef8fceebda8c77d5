#include "psdo/mourre.hpp"

#include <algorithm>
#include <cmath>

#include "psdo/errors.hpp"
#include "psdo/linalg.hpp"
#include "psdo/spectral.hpp"

namespace psdo {

double MourreReport::lambda_min_at(int n) const {
  for (const auto& e : lambda_min)
    if (e.n == n) return e.value;
  return NAN;
}

double min_over_preimage(const std::function<double(double)>& g, const std::function<double(double)>& h, double lo,
                         double hi, int n) {
  auto inside = [&](double x) {
    const double v = g(x);
    return v > lo && v < hi;
  };
  double best = INFINITY;
  std::vector<char> in(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    in[static_cast<std::size_t>(j)] = inside(x);
    if (in[static_cast<std::size_t>(j)]) best = std::min(best, h(x));
  }
  for (int j = 0; j < n; ++j) {
    const bool a = in[static_cast<std::size_t>(j)], b = in[static_cast<std::size_t>((j + 1) % n)];
    if (a == b) continue;
    double x_in = a ? static_cast<double>(j) / n : static_cast<double>(j + 1) / n;
    double x_out = a ? static_cast<double>(j + 1) / n : static_cast<double>(j) / n;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (x_in + x_out);
      (inside(mid) ? x_in : x_out) = mid;
    }
    best = std::min(best, h(0.5 * (x_in + x_out)));
  }
  return best;
}

double mourre_constant(const DirectionalLimits& limits, Interval enclosing) {
  double C = INFINITY;
  for (int sign : {+1, -1}) {
    const TrigPoly& p = limits[sign];
    const TrigPoly dp = p.derivative();
    C = std::min(C, min_over_preimage([&](double x) { return p(x).real(); },
                                      [&](double x) { return std::norm(dp(x)); }, enclosing.lo, enclosing.hi));
  }
  return std::isfinite(C) ? C : 0.0;
}

namespace {

OperatorMatrix weyl(const CircleSymbol& s, int K) { return quantize_circle(s, K, 0.5); }

// Rows of a window-Kw matrix that belong to n < |k| <= K.
std::vector<Eigen::Index> high_rows(int Kw, int K, int n) {
  std::vector<Eigen::Index> idx;
  for (int k = -K; k <= K; ++k)
    if (std::abs(k) > n) idx.push_back(k + Kw);
  return idx;
}

// lambda_min of W M W^* with W the high-mode rows of V.
double compressed_min(const Eigen::MatrixXcd& V, const Eigen::MatrixXcd& M, int Kw, int K, int n) {
  const auto rows = high_rows(Kw, K, n);
  if (V.cols() == 0) return 0.0;
  Eigen::MatrixXcd W(static_cast<Eigen::Index>(rows.size()), V.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) W.row(static_cast<Eigen::Index>(r)) = V.row(rows[r]);
  Eigen::MatrixXcd G = W * M * W.adjoint();
  G = 0.5 * (G + G.adjoint()).eval();
  return linalg::hermitian_eigenvalues(G).minCoeff();
}

std::vector<int> compression_levels(int K) { return {K / 8, K / 4, K / 2}; }

Eigen::MatrixXcd select_columns(const Eigen::MatrixXcd& V, const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXcd out(V.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = V.col(cols[c]);
  return out;
}

double wrap_angle(double t) { return std::remainder(t, 2.0 * kPi); }

}  // namespace

double commutator_symbol_residual(const CircleSymbol& a, int K, LowCutoff low) {
  const CircleSymbol b = mourre_conjugate_symbol(a, low);
  const int L = a.bandwidth(), m = std::max(a.bandwidth(), b.bandwidth());
  const OperatorMatrix Cm = restrict_modes(commutator_i(weyl(b, K + m), weyl(a, K + m)), K);
  const DirectionalLimits lim = directional_limits(a);
  const TrigPoly q_plus = lim.plus.derivative() * lim.plus.derivative().conjugate();
  const TrigPoly q_minus = lim.minus.derivative() * lim.minus.derivative().conjugate();
  double worst = 0.0;
  for (int k = -K / 2; k <= K / 2; ++k) {
    if (std::abs(k) < K / 4) continue;
    const TrigPoly& q = k > 0 ? q_plus : q_minus;
    for (int d = -2 * L; d <= 2 * L; ++d) {
      if (std::abs(k + d) > K) continue;
      worst = std::max(worst, std::abs(Cm.entries.get(Cm.index(k + d), Cm.index(k)) - q.coeff(d)));
    }
  }
  return worst;
}

MourreReport mourre_check_selfadjoint(const CircleSymbol& a, Interval interval, Interval enclosing, int K,
                                      int cutoff_order, LowCutoff low) {
  const EssentialSpectrumPrediction pred = predict_essential_spectrum(a);
  for (double v : pred.critical_set)
    if (enclosing.contains(v)) throw SymbolError("enclosing interval meets the critical set N at " + std::to_string(v));
  const SmoothCutoff chi = build_cutoff(interval.lo, interval.hi, enclosing.lo, enclosing.hi);
  const CircleSymbol b = mourre_conjugate_symbol(a, low);
  const int La = a.bandwidth(), Lb = b.bandwidth();
  if (K < 16 || K / 8 <= La + Lb) throw SymbolError("K too small for the commutator bandwidth");

  MourreReport r;
  r.interval = interval;
  r.enclosing = enclosing;
  r.C = mourre_constant(directional_limits(a), enclosing);
  r.cutoff = "chi = 1 on [" + std::to_string(interval.lo) + ", " + std::to_string(interval.hi) + "], supp in (" +
             std::to_string(enclosing.lo) + ", " + std::to_string(enclosing.hi) +
             "), order " + std::to_string(cutoff_order);

  const int Kw = K + K / 2, Kb = Kw + std::max(La, Lb);
  const OperatorMatrix H = weyl(a, Kb);
  const OperatorMatrix Cm = restrict_modes(commutator_i(weyl(b, Kb), H), Kw);
  const SpectralDecomposition dec = eigendecompose(restrict_modes(H, Kw));

  // chi(H) = V_s diag(f) V_s^*, restricted to eigenvalues where chi != 0.
  std::vector<Eigen::Index> support;
  for (int n = 0; n < dec.size(); ++n)
    if (chi(dec.eigenvalues(n)) != 0.0) support.push_back(n);
  const Eigen::MatrixXcd Vs = select_columns(dec.eigenvectors, support);
  Eigen::VectorXd f(static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) f(static_cast<Eigen::Index>(i)) = chi(dec.eigenvalues(support[i]));
  Eigen::MatrixXcd M = f.asDiagonal() * (Vs.adjoint() * (Cm.entries * Vs)) * f.asDiagonal();
  M.diagonal() -= (r.C * f.cwiseAbs2()).cast<cplx>();
  M = 0.5 * (M + M.adjoint()).eval();

  for (int n : compression_levels(K)) r.lambda_min.push_back({n, compressed_min(Vs, M, Kw, K, n)});
  r.residual = commutator_symbol_residual(a, K, low);
  r.pass = r.lambda_min.back().value >= -0.05 * r.C;
  return r;
}

double unitarity_defect(const CircleSymbol& a, int K, int n) {
  if (n >= K) throw MatrixError("unitarity_defect: need n < K");
  const DirectionalLimits lim = directional_limits(a);
  const double d = unimodularity_defect(lim);
  if (d > 1e-8) throw SymbolError("directional limits are not unimodular (defect " + std::to_string(d) + ")");
  const int L = a.bandwidth();
  const OperatorMatrix U = weyl(a, K + L);
  OperatorMatrix UU = U;
  UU.entries = U.entries.adjoint() * U.entries;
  UU.bandwidth = 2 * L;
  Eigen::MatrixXcd D = restrict_modes(UU, K).dense();
  D -= Eigen::MatrixXcd::Identity(D.rows(), D.cols());
  const Eigen::MatrixXcd Dc = compress_high(D, K, n);
  return op_norm(0.5 * (Dc + Dc.adjoint()), true);
}

std::vector<double> unitary_critical_angles(const DirectionalLimits& limits, int n_grid) {
  std::vector<double> out;
  for (int sign : {+1, -1}) {
    const TrigPoly& p = limits[sign];
    const TrigPoly dp = p.derivative();
    const auto cps = critical_points([&](double x) { return std::arg(p(x)); },
                                     [&](double x) { return (std::conj(p(x)) * dp(x)).imag(); }, n_grid, 1e-13,
                                     1e-12);
    for (const auto& c : cps) out.push_back(c.value);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) < 1e-10; }),
            out.end());
  return out;
}

MourreReport mourre_check_unitary(const CircleSymbol& a, Interval arc, int K, LowCutoff low) {
  if (!(arc.lo < arc.hi && arc.hi < arc.lo + 2.0 * kPi)) throw SymbolError("arc needs theta1 < theta2 < theta1 + 2 pi");
  const CircleSymbol b = unitary_conjugate_symbol(a, low);
  const DirectionalLimits lim = directional_limits(a);
  const double center = 0.5 * (arc.lo + arc.hi), half = 0.5 * (arc.hi - arc.lo);
  auto in_arc = [&](double theta) { return std::abs(wrap_angle(theta - center)) <= half; };

  MourreReport r;
  r.interval = arc;
  r.enclosing = arc;
  r.residual = NAN;
  r.cutoff = "sharp spectral projection of the polar factor on the arc";
  UnitaryExtras ex;
  ex.critical_angles = unitary_critical_angles(lim);
  for (double theta : ex.critical_angles)
    if (in_arc(theta)) throw SymbolError("arc meets the unitary critical set at angle " + std::to_string(theta));

  double C = INFINITY;
  for (int sign : {+1, -1}) {
    const TrigPoly& p = lim[sign];
    const TrigPoly dp = p.derivative();
    auto g = [&](double x) { return wrap_angle(std::arg(p(x)) - center); };
    C = std::min(C, min_over_preimage(g, [&](double x) { return std::norm(dp(x)); }, -half, half));
  }
  r.C = std::isfinite(C) ? C : 0.0;

  const int LU = a.bandwidth(), LA = b.bandwidth();
  const int Kw = K + K / 4, Kb = Kw + LU + std::max(LA, LU);
  const OperatorMatrix U = weyl(a, Kb), A = weyl(b, Kb);
  OperatorMatrix Cm = U;
  Cm.entries = U.entries.adjoint() * (A.entries * U.entries - U.entries * A.entries);
  Cm.bandwidth = 2 * LU + LA;
  Eigen::MatrixXcd Ch = restrict_modes(Cm, Kw).dense();
  Ch = 0.5 * (Ch + Ch.adjoint()).eval();

  const Eigen::MatrixXcd Uw = restrict_modes(U, Kw).dense();
  const linalg::Svd s = linalg::svd(Uw);
  ex.singular_min = s.s.minCoeff();
  ex.singular_max = s.s.maxCoeff();
  const linalg::Schur sch = linalg::schur(s.u * s.vh);
  std::vector<Eigen::Index> support;
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < sch.t.rows(); ++i) {
    const cplx mu = sch.t(i, i);
    ex.polar_circle_distance = std::max(ex.polar_circle_distance, std::abs(std::abs(mu) - 1.0));
    angles.push_back(std::arg(mu));
    if (in_arc(std::arg(mu))) support.push_back(i);
  }
  const Eigen::MatrixXcd Zs = select_columns(sch.z, support);
  Eigen::MatrixXcd M = Zs.adjoint() * Ch * Zs;
  M.diagonal().array() -= r.C;
  M = 0.5 * (M + M.adjoint()).eval();
  for (int n : compression_levels(K)) r.lambda_min.push_back({n, compressed_min(Zs, M, Kw, K, n)});
  r.pass = r.lambda_min.back().value >= -0.05 * r.C;

  for (const cplx mu : linalg::eigenvalues(restrict_modes(U, K).dense()))
    ex.truncated_circle_distance = std::max(ex.truncated_circle_distance, std::abs(std::abs(mu) - 1.0));

  // Circular Hausdorff distance between the polar eigen-angles and the
  // predicted ranges {arg a_0(x, +-1)}.
  std::vector<double> predicted;
  for (int sign : {+1, -1})
    for (int j = 0; j < 4096; ++j) predicted.push_back(std::arg(lim[sign](j / 4096.0)));
  auto set_distance = [](const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0.0;
    for (double u : from) {
      double best = INFINITY;
      for (double v : to) best = std::min(best, std::abs(wrap_angle(u - v)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  ex.arc_coverage = std::max(set_distance(angles, predicted), set_distance(predicted, angles));
  r.unitary = ex;
  return r;
}

}  // namespace psdo
