#pragma once

#include <vector>

#include <Eigen/Dense>

#include "psdo/profile.hpp"

namespace psdo {

/// Square n x n complex matrix whose entries vanish for |i - j| > bw, stored
/// diagonal by diagonal.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int n, int bw);

  int size() const { return n_; }
  int bandwidth() const { return bw_; }

  /// Zero outside the band.
  cplx get(int i, int j) const;
  /// Throws MatrixError outside the band.
  void set(int i, int j, cplx v);
  cplx& ref(int i, int j);

  bool in_band(int i, int j) const { return i - j <= bw_ && j - i <= bw_ && i >= 0 && j >= 0 && i < n_ && j < n_; }

  /// Number of in-range band positions holding a nonzero.
  long nonzeros() const;

  Eigen::MatrixXcd to_dense() const;
  /// Entries beyond bw must be zero; throws MatrixError otherwise.
  static BandedMatrix from_dense(const Eigen::MatrixXcd& m, int bw);

  Eigen::VectorXcd operator*(const Eigen::VectorXcd& v) const;
  Eigen::MatrixXcd operator*(const Eigen::MatrixXcd& m) const;
  friend BandedMatrix operator*(const BandedMatrix& a, const BandedMatrix& b);
  friend BandedMatrix operator+(const BandedMatrix& a, const BandedMatrix& b);
  friend BandedMatrix operator-(const BandedMatrix& a, const BandedMatrix& b);
  friend BandedMatrix operator*(cplx s, const BandedMatrix& a);

  BandedMatrix adjoint() const;
  /// Central block of rows/columns [offset, offset + m).
  BandedMatrix block(int offset, int m) const;
  /// max |M_ij - conj(M_ji)|.
  double hermitian_defect() const;
  double max_abs() const;
  bool is_diagonal() const;

 private:
  int n_ = 0;
  int bw_ = 0;
  std::vector<cplx> data_;  // (2 bw + 1) x n, element (i, j) at (i - j + bw) * n + j
};

}  // namespace psdo
