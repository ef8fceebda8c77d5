#include "psdo/quantization.hpp"

#include <algorithm>
#include <cmath>

#include "psdo/errors.hpp"
#include "psdo/linalg.hpp"

namespace psdo {

namespace {

void flag_hermitian(OperatorMatrix& m) { m.hermitian = m.entries.hermitian_defect() <= kHermitianTol; }

}  // namespace

OperatorMatrix quantize_circle(const CircleSymbol& a, int K, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw MatrixError("quantization parameter t must lie in [0, 1]");
  const int L = a.bandwidth();
  if (K < L) throw MatrixError("K = " + std::to_string(K) + " is below the symbol bandwidth " + std::to_string(L));
  OperatorMatrix out;
  out.geometry = Geometry::circle;
  out.K = K;
  out.t = t;
  out.bandwidth = L;
  out.entries = BandedMatrix(2 * K + 1, L);
  for (const auto& [l, profile] : a.coeffs()) {
    for (int k = -K; k <= K; ++k) {
      const int j = k + l;
      if (j < -K || j > K) continue;
      const double xi = t == 0.5 ? kPi * (j + k) : kTwoPi * (t * k + (1.0 - t) * j);
      out.entries.ref(out.index(j), out.index(k)) = profile(xi);
    }
  }
  flag_hermitian(out);
  return out;
}

OperatorMatrix quantize_torus2_weyl(const TorusSymbol2D& a2, int K) {
  const int L1 = a2.bandwidth1(), L2 = a2.bandwidth2();
  if (K < std::max(L1, L2)) throw MatrixError("torus symbol bandwidth exceeds K");
  OperatorMatrix out;
  out.geometry = Geometry::torus2;
  out.K = K;
  out.t = 0.5;
  out.bandwidth = std::max(L1, L2);
  const int side = 2 * K + 1;
  out.entries = BandedMatrix(side * side, L1 * side + L2);
  for (const auto& [l, profile] : a2.coeffs) {
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2) {
        const int j1 = k1 + l.first, j2 = k2 + l.second;
        if (std::abs(j1) > K || std::abs(j2) > K) continue;
        out.entries.ref(out.index(j1, j2), out.index(k1, k2)) = profile(kPi * (j1 + k1), kPi * (j2 + k2));
      }
  }
  flag_hermitian(out);
  return out;
}

OperatorMatrix commutator_i(const OperatorMatrix& A, const OperatorMatrix& H) {
  if (A.dim() != H.dim() || A.geometry != H.geometry || A.K != H.K)
    throw MatrixError("commutator_i: operators live on different mode windows");
  OperatorMatrix out;
  out.geometry = A.geometry;
  out.K = A.K;
  out.t = A.t;
  out.bandwidth = A.bandwidth + H.bandwidth;
  out.entries = cplx{0.0, 1.0} * (A.entries * H.entries - H.entries * A.entries);
  if (A.hermitian && H.hermitian) {
    out.entries = 0.5 * (out.entries + out.entries.adjoint());
    out.hermitian = true;
  }
  return out;
}

double op_norm(const Eigen::MatrixXcd& m, bool hermitian) {
  if (m.size() == 0) return 0.0;
  if (hermitian) return linalg::hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
  return linalg::singular_values(m).maxCoeff();
}

double op_norm(const OperatorMatrix& M) {
  if (M.dim() == 0) return 0.0;
  if (M.entries.is_diagonal()) {
    double worst = 0.0;
    for (int i = 0; i < M.dim(); ++i) worst = std::max(worst, std::abs(M.entries.get(i, i)));
    return worst;
  }
  return op_norm(M.dense(), M.hermitian);
}

OperatorMatrix restrict_modes(const OperatorMatrix& M, int K) {
  if (M.geometry != Geometry::circle) throw MatrixError("restrict_modes: circle matrices only");
  if (K > M.K || K < 0) throw MatrixError("restrict_modes: K outside the window");
  OperatorMatrix out = M;
  out.K = K;
  out.entries = M.entries.block(M.K - K, 2 * K + 1);
  flag_hermitian(out);
  return out;
}

Eigen::MatrixXcd compress_high(const Eigen::MatrixXcd& m, int K, int n) {
  if (m.rows() != 2 * K + 1 || m.cols() != 2 * K + 1) throw MatrixError("compress_high: dimension mismatch");
  if (n < 0 || n >= K) throw MatrixError("compress_high: need 0 <= n < K");
  std::vector<int> idx;
  for (int k = -K; k <= K; ++k)
    if (std::abs(k) > n) idx.push_back(k + K);
  const auto d = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) out(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  return out;
}

double order_gap_norm(const CircleSymbol& a, int K, int n) {
  if (n >= K) throw MatrixError("order_gap_norm: need n < K");
  const OperatorMatrix op1 = quantize_circle(a, K, 1.0);
  const OperatorMatrix opw = quantize_circle(a, K, 0.5);
  const Eigen::MatrixXcd d = compress_high((op1.entries - opw.entries).to_dense(), K, n);
  if (d.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  return op_norm(d, false);
}

double coefficient_sup_bound(const CircleSymbol& a, int K_probe) {
  double total = 0.0;
  for (const auto& [l, p] : a.coeffs()) {
    double best = 0.0;
    for (int m = -16 * K_probe; m <= 16 * K_probe; ++m) best = std::max(best, std::abs(p(kPi * m / 8.0)));
    for (int sign : {+1, -1}) {
      try {
        best = std::max(best, std::abs(p.limit(sign)));
      } catch (const SymbolError&) {
        return INFINITY;
      }
    }
    total += best;
  }
  return total;
}

}  // namespace psdo
