#include "psdo/functional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "psdo/errors.hpp"

namespace psdo {

SmoothCutoff::SmoothCutoff(double a, double b, double a_outer, double b_outer)
    : a_(a), b_(b), ao_(a_outer), bo_(b_outer) {
  if (!(a_outer < a && a < b && b < b_outer))
    throw std::invalid_argument("cutoff needs a' < a < b < b'");
}

double SmoothCutoff::operator()(double x) const {
  if (x <= ao_ || x >= bo_) return 0.0;
  if (x < a_) return smooth_step((x - ao_) / (a_ - ao_));
  if (x > b_) return 1.0 - smooth_step((x - b_) / (bo_ - b_));
  return 1.0;
}

Jet SmoothCutoff::derivatives(double x) const {
  Jet out{};
  if (x <= ao_ || x >= bo_) return out;
  if (x >= a_ && x <= b_) {
    out[0] = 1.0;
    return out;
  }
  const bool left = x < a_;
  const double w = left ? a_ - ao_ : bo_ - b_;
  const Jet s = smooth_step_derivatives(left ? (x - ao_) / w : (x - b_) / w);
  double scale = 1.0;
  for (int n = 0; n <= kMaxJetOrder; ++n) {
    out[static_cast<std::size_t>(n)] = (left ? 1.0 : -1.0) * s[static_cast<std::size_t>(n)] * scale;
    scale /= w;
  }
  if (!left) out[0] = 1.0 + out[0];
  return out;
}

SmoothCutoff build_cutoff(double a, double b, double a_outer, double b_outer) {
  return SmoothCutoff(a, b, a_outer, b_outer);
}

AlmostAnalyticExtension::AlmostAnalyticExtension(SmoothCutoff base, int N, double Y0)
    : base_(base), N_(N), Y0_(Y0 > 0 ? Y0 : base.min_transition_width() / 15.0) {
  if (N < 1 || N > kMaxCutoffDerivative) throw std::invalid_argument("almost-analytic order must be in [1, 8]");
}

namespace {

// sigma(y) and sigma'(y) for the vertical cutoff.
std::pair<double, double> vertical_cutoff(double y, double Y0) {
  const double s = (std::abs(y) - Y0) / Y0;
  if (s <= 0) return {1.0, 0.0};
  if (s >= 1) return {0.0, 0.0};
  const Jet j = smooth_step_derivatives(s);
  return {1.0 - j[0], -(y > 0 ? 1.0 : -1.0) * j[1] / Y0};
}

}  // namespace

cplx AlmostAnalyticExtension::operator()(double x, double y) const {
  const auto [sigma, dsigma] = vertical_cutoff(y, Y0_);
  (void)dsigma;
  if (sigma == 0.0) return {};
  const Jet d = base_.derivatives(x);
  cplx acc{}, power{1.0, 0.0};
  double fact = 1.0;
  for (int n = 0; n <= N_; ++n) {
    if (n > 0) {
      power *= cplx{0.0, y};
      fact *= n;
    }
    acc += d[static_cast<std::size_t>(n)] * power / fact;
  }
  return sigma * acc;
}

cplx AlmostAnalyticExtension::dbar(double x, double y) const {
  const auto [sigma, dsigma] = vertical_cutoff(y, Y0_);
  if (sigma == 0.0 && dsigma == 0.0) return {};
  const Jet d = base_.derivatives(x);
  cplx sum{}, power{1.0, 0.0};
  double fact = 1.0;
  for (int n = 0; n <= N_; ++n) {
    if (n > 0) {
      power *= cplx{0.0, y};
      fact *= n;
    }
    sum += d[static_cast<std::size_t>(n)] * power / fact;
  }
  // After the telescoping sum only the top Taylor term and the sigma' term survive.
  const cplx top = sigma * d[static_cast<std::size_t>(N_ + 1)] * power / fact;
  return 0.5 * (top + cplx{0.0, dsigma} * sum);
}

AlmostAnalyticExtension almost_analytic(const SmoothCutoff& chi, int N, double Y0) {
  return AlmostAnalyticExtension(chi, N, Y0);
}

double dbar_decay_exponent(const AlmostAnalyticExtension& ext, double y_lo, double y_hi, int n_y, int n_x) {
  y_hi = std::min(y_hi, ext.Y0());
  if (!(y_lo < y_hi)) throw std::invalid_argument("dbar_decay_exponent: empty y window");
  const SmoothCutoff& chi = ext.base();
  std::vector<double> lx, ly;
  for (int k = 0; k < n_y; ++k) {
    const double y = y_lo * std::pow(y_hi / y_lo, static_cast<double>(k) / (n_y - 1));
    double best = 0.0;
    for (int i = 0; i < n_x; ++i) {
      const double x = chi.a_outer() + (chi.b_outer() - chi.a_outer()) * (i + 0.5) / n_x;
      best = std::max(best, std::abs(ext.dbar(x, y)));
    }
    if (best > 0) {
      lx.push_back(std::log(y));
      ly.push_back(std::log(best));
    }
  }
  const auto m = static_cast<double>(lx.size());
  if (m < 2) return INFINITY;  // identically zero
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// ---------------------------------------------------------------------------

namespace {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Pivot-free band LU of z - H (valid since Im z != 0 makes -i(z - H) have a
// positive definite Hermitian part).
class BandLu {
 public:
  BandLu(const BandedMatrix& H, cplx z) : n_(H.size()), b_(H.bandwidth()), w_(2 * b_ + 1) {
    lu_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(w_), cplx{});
    for (int i = 0; i < n_; ++i)
      for (int j = std::max(0, i - b_); j <= std::min(n_ - 1, i + b_); ++j) at(i, j) = (i == j ? z : cplx{}) - H.get(i, j);
    inv_diag_.resize(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) {
      const cplx inv = 1.0 / at(k, k);
      inv_diag_[static_cast<std::size_t>(k)] = inv;
      const int last = std::min(n_ - 1, k + b_);
      for (int i = k + 1; i <= last; ++i) {
        const cplx l = at(i, k) * inv;
        at(i, k) = l;
        for (int j = k + 1; j <= last; ++j) at(i, j) -= l * at(k, j);
      }
    }
  }

  // S += w * (z - H)^{-1}. G is row-major scratch: the forward sweep leaves
  // L^{-1} in it, the backward sweep overwrites each row with the inverse.
  void accumulate_inverse(cplx w, RowMatrix& S, RowMatrix& G) const {
    G.setZero(n_, n_);
    for (int i = 0; i < n_; ++i) {
      auto gi = G.row(i).head(i + 1);
      gi(i) = 1.0;
      for (int m = std::max(0, i - b_); m < i; ++m) gi.head(m + 1) -= at(i, m) * G.row(m).head(m + 1);
    }
    for (int i = n_ - 1; i >= 0; --i) {
      auto gi = G.row(i);
      const int last = std::min(n_ - 1, i + b_);
      for (int m = i + 1; m <= last; ++m) gi -= at(i, m) * G.row(m);
      gi *= inv_diag_[static_cast<std::size_t>(i)];
      S.row(i) += w * gi;
    }
  }

 private:
  cplx& at(int i, int j) { return lu_[static_cast<std::size_t>(i) * w_ + (j - i + b_)]; }
  const cplx& at(int i, int j) const { return lu_[static_cast<std::size_t>(i) * w_ + (j - i + b_)]; }

  int n_, b_, w_;
  std::vector<cplx> lu_;
  std::vector<cplx> inv_diag_;
};

}  // namespace

Eigen::MatrixXcd hs_apply(const BandedMatrix& H, const AlmostAnalyticExtension& ext, QuadratureGrid quad, int jobs) {
  if (H.hermitian_defect() > kHermitianTol) throw MatrixError("hs_apply needs a Hermitian matrix");
  if (quad.nx < 1 || quad.ny < 2 || quad.ny % 2 != 0) throw std::invalid_argument("quadrature grid needs ny even");
  const SmoothCutoff& chi = ext.base();
  const double x0 = chi.a_outer(), dx = (chi.b_outer() - chi.a_outer()) / quad.nx;
  const double Y0 = ext.Y0(), dy = 4.0 * Y0 / quad.ny;

  struct Node {
    cplx z, w;
  };
  std::vector<Node> nodes;
  for (int jy = quad.ny / 2; jy < quad.ny; ++jy) {
    const double y = -2.0 * Y0 + (jy + 0.5) * dy;
    for (int ix = 0; ix < quad.nx; ++ix) {
      const double x = x0 + (ix + 0.5) * dx;
      const cplx w = ext.dbar(x, y) * (dx * dy);
      if (w != cplx{}) nodes.push_back({cplx{x, y}, w});
    }
  }

  const int n = H.size();
  jobs = std::max(1, std::min(jobs, static_cast<int>(nodes.size())));
  std::vector<RowMatrix> partial(static_cast<std::size_t>(jobs), RowMatrix::Zero(n, n));
  auto work = [&](int id) {
    RowMatrix scratch;
    for (std::size_t k = static_cast<std::size_t>(id); k < nodes.size(); k += static_cast<std::size_t>(jobs))
      BandLu(H, nodes[k].z).accumulate_inverse(nodes[k].w, partial[static_cast<std::size_t>(id)], scratch);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < jobs; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }
  Eigen::MatrixXcd S = partial[0];
  for (std::size_t i = 1; i < partial.size(); ++i) S += partial[i];
  // The y < 0 half mirrors the y > 0 half: (zbar - H)^{-1} = ((z - H)^{-1})^*.
  return -(S + S.adjoint()) / kPi;
}

Eigen::MatrixXcd hs_apply(const OperatorMatrix& H, const AlmostAnalyticExtension& ext, QuadratureGrid quad,
                          int jobs) {
  if (!H.hermitian) throw MatrixError("hs_apply needs a Hermitian matrix");
  return hs_apply(H.entries, ext, quad, jobs);
}

Eigen::MatrixXcd eig_apply(const SpectralDecomposition& dec, const std::function<double(double)>& f) {
  Eigen::VectorXd fv(dec.size());
  for (int n = 0; n < dec.size(); ++n) fv(n) = f(dec.eigenvalues(n));
  return dec.eigenvectors * fv.asDiagonal() * dec.eigenvectors.adjoint();
}

}  // namespace psdo
