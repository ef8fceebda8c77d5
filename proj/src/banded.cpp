#include "psdo/banded.hpp"

#include <algorithm>
#include <cmath>

#include "psdo/errors.hpp"

namespace psdo {

BandedMatrix::BandedMatrix(int n, int bw)
    : n_(n), bw_(std::max(0, std::min(bw, std::max(0, n - 1)))),
      data_(static_cast<std::size_t>(2 * bw_ + 1) * static_cast<std::size_t>(n)) {
  if (n < 0) throw MatrixError("negative matrix size");
}

cplx BandedMatrix::get(int i, int j) const {
  if (!in_band(i, j)) return {};
  return data_[static_cast<std::size_t>(i - j + bw_) * n_ + j];
}

cplx& BandedMatrix::ref(int i, int j) {
  if (!in_band(i, j)) throw MatrixError("entry outside the band");
  return data_[static_cast<std::size_t>(i - j + bw_) * n_ + j];
}

void BandedMatrix::set(int i, int j, cplx v) { ref(i, j) = v; }

long BandedMatrix::nonzeros() const {
  long count = 0;
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i)
      if (get(i, j) != cplx{}) ++count;
  return count;
}

Eigen::MatrixXcd BandedMatrix::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i) m(i, j) = get(i, j);
  return m;
}

BandedMatrix BandedMatrix::from_dense(const Eigen::MatrixXcd& m, int bw) {
  if (m.rows() != m.cols()) throw MatrixError("from_dense: matrix is not square");
  const int n = static_cast<int>(m.rows());
  BandedMatrix out(n, bw);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (out.in_band(i, j))
        out.ref(i, j) = m(i, j);
      else if (m(i, j) != cplx{})
        throw MatrixError("from_dense: nonzero entry outside the band");
    }
  return out;
}

Eigen::VectorXcd BandedMatrix::operator*(const Eigen::VectorXcd& v) const {
  if (v.size() != n_) throw MatrixError("matvec: dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n_);
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i) out(i) += get(i, j) * v(j);
  return out;
}

Eigen::MatrixXcd BandedMatrix::operator*(const Eigen::MatrixXcd& m) const {
  if (m.rows() != n_) throw MatrixError("matmul: dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, m.cols());
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i) {
      const cplx v = get(i, j);
      if (v != cplx{}) out.row(i) += v * m.row(j);
    }
  return out;
}

BandedMatrix operator*(const BandedMatrix& a, const BandedMatrix& b) {
  if (a.n_ != b.n_) throw MatrixError("banded product: dimension mismatch");
  const int n = a.n_;
  BandedMatrix out(n, a.bw_ + b.bw_);
  for (int k = 0; k < n; ++k)
    for (int m = std::max(0, k - b.bw_); m <= std::min(n - 1, k + b.bw_); ++m) {
      const cplx bm = b.get(m, k);
      if (bm == cplx{}) continue;
      for (int i = std::max(0, m - a.bw_); i <= std::min(n - 1, m + a.bw_); ++i) out.ref(i, k) += a.get(i, m) * bm;
    }
  return out;
}

namespace {

BandedMatrix combine(const BandedMatrix& a, const BandedMatrix& b, double sb) {
  if (a.size() != b.size()) throw MatrixError("banded sum: dimension mismatch");
  const int n = a.size();
  BandedMatrix out(n, std::max(a.bandwidth(), b.bandwidth()));
  for (int j = 0; j < n; ++j)
    for (int i = std::max(0, j - out.bandwidth()); i <= std::min(n - 1, j + out.bandwidth()); ++i)
      out.ref(i, j) = a.get(i, j) + sb * b.get(i, j);
  return out;
}

}  // namespace

BandedMatrix operator+(const BandedMatrix& a, const BandedMatrix& b) { return combine(a, b, 1.0); }
BandedMatrix operator-(const BandedMatrix& a, const BandedMatrix& b) { return combine(a, b, -1.0); }

BandedMatrix operator*(cplx s, const BandedMatrix& a) {
  BandedMatrix out = a;
  for (auto& v : out.data_) v *= s;
  return out;
}

BandedMatrix BandedMatrix::adjoint() const {
  BandedMatrix out(n_, bw_);
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i) out.ref(j, i) = std::conj(get(i, j));
  return out;
}

BandedMatrix BandedMatrix::block(int offset, int m) const {
  if (offset < 0 || m < 0 || offset + m > n_) throw MatrixError("block outside the matrix");
  BandedMatrix out(m, bw_);
  for (int j = 0; j < m; ++j)
    for (int i = std::max(0, j - out.bw_); i <= std::min(m - 1, j + out.bw_); ++i)
      out.ref(i, j) = get(i + offset, j + offset);
  return out;
}

double BandedMatrix::hermitian_defect() const {
  double worst = 0.0;
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - bw_); i <= j; ++i) worst = std::max(worst, std::abs(get(i, j) - std::conj(get(j, i))));
  return worst;
}

double BandedMatrix::max_abs() const {
  double worst = 0.0;
  for (const cplx& v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

bool BandedMatrix::is_diagonal() const {
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i)
      if (i != j && get(i, j) != cplx{}) return false;
  return true;
}

}  // namespace psdo
