#include "psdo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "psdo/errors.hpp"
#include "psdo/linalg.hpp"

namespace psdo {

namespace {

double residual_of(const BandedMatrix& H, const Eigen::VectorXd& w, const Eigen::MatrixXcd& V) {
  const Eigen::MatrixXcd HV = H * V;
  double worst = 0.0;
  for (Eigen::Index n = 0; n < V.cols(); ++n) worst = std::max(worst, (HV.col(n) - w(n) * V.col(n)).norm());
  return worst;
}

}  // namespace

SpectralDecomposition eigendecompose(const OperatorMatrix& H) {
  if (!H.hermitian)
    throw MatrixError("eigendecompose needs a Hermitian matrix; use the polar factor or the unitary path");
  SpectralDecomposition dec;
  const int n = H.dim();
  const BandedMatrix& M = H.entries;
  const int bw = M.bandwidth();

  // Modes whose row and column vanish off the diagonal are exact eigenvectors;
  // split them off so their eigenvalues come out exactly.
  std::vector<int> isolated, coupled;
  for (int i = 0; i < n; ++i) {
    bool alone = true;
    for (int j = std::max(0, i - bw); alone && j <= std::min(n - 1, i + bw); ++j)
      alone = j == i || (M.get(i, j) == cplx{} && M.get(j, i) == cplx{});
    (alone ? isolated : coupled).push_back(i);
  }

  struct Pair {
    double value;
    int source;  // >= 0: isolated mode index; < 0: -(column of the coupled block) - 1
  };
  std::vector<Pair> pairs;
  for (int i : isolated) pairs.push_back({M.get(i, i).real(), i});
  linalg::HermitianEig eig;
  if (!coupled.empty()) {
    const auto m = static_cast<Eigen::Index>(coupled.size());
    Eigen::MatrixXcd sub(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = M.get(coupled[a], coupled[b]);
    eig = linalg::hermitian_eig(sub);
    for (Eigen::Index c = 0; c < m; ++c) pairs.push_back({eig.values(c), -static_cast<int>(c) - 1});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.value < b.value; });

  dec.eigenvalues.resize(n);
  dec.eigenvectors = Eigen::MatrixXcd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const Pair& p = pairs[static_cast<std::size_t>(c)];
    dec.eigenvalues(c) = p.value;
    if (p.source >= 0) {
      dec.eigenvectors(p.source, c) = 1.0;
    } else {
      const int col = -p.source - 1;
      for (std::size_t a = 0; a < coupled.size(); ++a) dec.eigenvectors(coupled[a], c) = eig.vectors(static_cast<Eigen::Index>(a), col);
    }
  }
  dec.residual = residual_of(H.entries, dec.eigenvalues, dec.eigenvectors);
  return dec;
}

SpectralDecomposition eigendecompose_dense(const Eigen::MatrixXcd& H) {
  SpectralDecomposition dec;
  auto eig = linalg::hermitian_eig(H);
  dec.eigenvalues = std::move(eig.values);
  dec.eigenvectors = std::move(eig.vectors);
  const Eigen::MatrixXcd R = H * dec.eigenvectors - dec.eigenvectors * dec.eigenvalues.asDiagonal();
  dec.residual = R.colwise().norm().maxCoeff();
  return dec;
}

double localization_score(const Eigen::VectorXcd& v) {
  const auto n = static_cast<std::size_t>(v.size());
  if (n == 0) return 0.0;
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) mass[i] = std::norm(v(static_cast<Eigen::Index>(i)));
  const auto top = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n)));
  std::partial_sort(mass.begin(), mass.begin() + static_cast<std::ptrdiff_t>(top), mass.end(), std::greater<>());
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  return std::accumulate(mass.begin(), mass.begin() + static_cast<std::ptrdiff_t>(top), 0.0) / total;
}

std::string to_string(SpectrumLabel label) {
  switch (label) {
    case SpectrumLabel::band: return "band";
    case SpectrumLabel::discrete: return "discrete";
    case SpectrumLabel::embedded_candidate: return "embedded-candidate";
  }
  return "?";
}

SpectrumReport classify_spectrum(const SpectralDecomposition& dec, const EssentialSpectrumPrediction& pred,
                                 double band_tol, std::span<const double> persistent_values, double match_tol) {
  SpectrumReport r;
  for (int n = 0; n < dec.size(); ++n) {
    const double lam = dec.eigenvalues(n);
    const bool persistent = std::any_of(persistent_values.begin(), persistent_values.end(),
                                        [&](double p) { return std::abs(p - lam) <= match_tol; });
    const bool in_band = pred.band_distance(lam) <= band_tol;
    r.labels.push_back(!in_band ? SpectrumLabel::discrete
                                : (persistent ? SpectrumLabel::embedded_candidate : SpectrumLabel::band));
    r.localization.push_back(localization_score(dec.eigenvectors.col(n)));
    r.persistent.push_back(persistent);
  }
  return r;
}

std::vector<double> StabilityResult::values() const {
  std::vector<double> out;
  for (const auto& p : persistent) out.push_back(p.value);
  return out;
}

StabilityResult truncation_stability(std::span<const SpectralDecomposition> decs, std::span<const int> K_list,
                                     double match_tol) {
  if (K_list.size() < 3) throw std::invalid_argument("truncation_stability needs at least 3 truncation sizes");
  for (std::size_t i = 1; i < K_list.size(); ++i)
    if (K_list[i] <= K_list[i - 1]) throw std::invalid_argument("truncation_stability: K_list must be ascending");
  if (decs.size() != K_list.size()) throw std::invalid_argument("truncation_stability: one decomposition per K");

  struct Chain {
    std::vector<double> values;
    int last = -1;  // eigen index in the latest decomposition
  };
  std::vector<Chain> chains;
  for (int n = 0; n < decs[0].size(); ++n) chains.push_back({{decs[0].eigenvalues(n)}, n});

  for (std::size_t s = 1; s < decs.size(); ++s) {
    const SpectralDecomposition& dec = decs[s];
    const Eigen::VectorXd& w = dec.eigenvalues;
    std::vector<double> loc(static_cast<std::size_t>(dec.size()), -1.0);
    auto localization = [&](int n) {
      double& v = loc[static_cast<std::size_t>(n)];
      if (v < 0) v = localization_score(dec.eigenvectors.col(n));
      return v;
    };
    struct Candidate {
      double dist, loc;
      std::size_t chain;
      int eig;
    };
    std::vector<Candidate> cands;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      const double v = chains[c].values.back();
      const double* first = std::lower_bound(w.data(), w.data() + w.size(), v - match_tol);
      for (const double* p = first; p != w.data() + w.size() && *p <= v + match_tol; ++p) {
        const int n = static_cast<int>(p - w.data());
        cands.push_back({std::abs(*p - v), localization(n), c, n});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      if (a.loc != b.loc) return a.loc > b.loc;
      if (a.chain != b.chain) return a.chain < b.chain;
      return a.eig < b.eig;
    });
    std::vector<bool> chain_used(chains.size(), false), eig_used(static_cast<std::size_t>(dec.size()), false);
    std::vector<Chain> next;
    for (const auto& c : cands) {
      if (chain_used[c.chain] || eig_used[static_cast<std::size_t>(c.eig)]) continue;
      chain_used[c.chain] = true;
      eig_used[static_cast<std::size_t>(c.eig)] = true;
      Chain ch = chains[c.chain];
      ch.values.push_back(w(c.eig));
      ch.last = c.eig;
      next.push_back(std::move(ch));
    }
    chains = std::move(next);
  }

  StabilityResult out;
  out.K_list.assign(K_list.begin(), K_list.end());
  out.match_tol = match_tol;
  const SpectralDecomposition& top = decs.back();
  for (const auto& ch : chains) {
    const double loc = localization_score(top.eigenvectors.col(ch.last));
    if (loc > 0.9) out.persistent.push_back({ch.values.back(), loc, ch.values});
  }
  std::sort(out.persistent.begin(), out.persistent.end(),
            [](const PersistentEigenvalue& a, const PersistentEigenvalue& b) { return a.value < b.value; });
  return out;
}

StabilityResult truncation_stability(const CircleSymbol& a, double t, std::span<const int> K_list,
                                     double match_tol) {
  for (std::size_t i = 1; i < K_list.size(); ++i)
    if (K_list[i] <= K_list[i - 1]) throw std::invalid_argument("truncation_stability: K_list must be ascending");
  std::vector<SpectralDecomposition> decs;
  for (int K : K_list) decs.push_back(eigendecompose(quantize_circle(a, K, t)));
  return truncation_stability(decs, K_list, match_tol);
}

double mean_level_spacing(const SpectralDecomposition& dec, double lo, double hi) {
  long count = 0;
  for (int n = 0; n < dec.size(); ++n)
    if (dec.eigenvalues(n) >= lo && dec.eigenvalues(n) <= hi) ++count;
  return count == 0 ? INFINITY : (hi - lo) / static_cast<double>(count);
}

DensityResult spectral_density(const SpectralDecomposition& dec, const Eigen::VectorXcd& u,
                               std::span<const double> lambda_grid, double epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("spectral_density: epsilon must be positive");
  DensityResult r;
  r.epsilon = epsilon;
  r.lambda.assign(lambda_grid.begin(), lambda_grid.end());
  const Eigen::VectorXd weights = (dec.eigenvectors.adjoint() * u).cwiseAbs2();
  for (double lam : r.lambda) {
    double acc = 0.0;
    for (int n = 0; n < dec.size(); ++n) {
      const double d = lam - dec.eigenvalues(n);
      acc += weights(n) * epsilon / (d * d + epsilon * epsilon);
    }
    r.rho.push_back(acc / kPi);
  }
  if (!r.lambda.empty()) {
    const auto [lo, hi] = std::minmax_element(r.lambda.begin(), r.lambda.end());
    r.mean_spacing = mean_level_spacing(dec, *lo, *hi);
    r.below_spacing_floor = epsilon < 2.0 * r.mean_spacing;
  }
  return r;
}

double survival_average(const SpectralDecomposition& dec, const Eigen::VectorXcd& u) {
  const Eigen::VectorXd p = (dec.eigenvectors.adjoint() * u).cwiseAbs2();
  return p.cwiseAbs2().sum();
}

double hausdorff_to_intervals(std::span<const double> points, std::span<const Interval> intervals) {
  if (points.empty() || intervals.empty()) return INFINITY;
  std::vector<double> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  double worst = 0.0;
  for (double p : pts) {
    double best = INFINITY;
    for (const auto& I : intervals) best = std::min(best, p < I.lo ? I.lo - p : (p > I.hi ? p - I.hi : 0.0));
    worst = std::max(worst, best);
  }
  auto nearest = [&](double y) {
    const auto it = std::lower_bound(pts.begin(), pts.end(), y);
    double best = INFINITY;
    if (it != pts.end()) best = *it - y;
    if (it != pts.begin()) best = std::min(best, y - *(it - 1));
    return best;
  };
  for (const auto& I : intervals) {
    worst = std::max({worst, nearest(I.lo), nearest(I.hi)});
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double mid = 0.5 * (pts[i - 1] + pts[i]);
      if (mid >= I.lo && mid <= I.hi) worst = std::max(worst, nearest(mid));
    }
  }
  return worst;
}

}  // namespace psdo
