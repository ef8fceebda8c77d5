#include "psdo/linalg.hpp"

#include <complex>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "psdo/errors.hpp"

namespace psdo::linalg {

namespace {

void check(lapack_int info, const char* routine) {
  if (info != 0) throw MatrixError(std::string(routine) + " failed with info " + std::to_string(info));
}

void require_square(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols()) throw MatrixError(std::string(what) + ": matrix is not square");
}

}  // namespace

HermitianEig hermitian_eig(const Eigen::MatrixXcd& h) {
  require_square(h, "hermitian_eig");
  HermitianEig out;
  out.vectors = h;
  out.values.resize(h.rows());
  const auto n = static_cast<lapack_int>(h.rows());
  if (n == 0) return out;
  check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n, out.values.data()), "zheevd");
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
  require_square(h, "hermitian_eigenvalues");
  Eigen::MatrixXcd work = h;
  Eigen::VectorXd w(h.rows());
  const auto n = static_cast<lapack_int>(h.rows());
  if (n == 0) return w;
  check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data()), "zheevd");
  return w;
}

Svd svd(const Eigen::MatrixXcd& m) {
  require_square(m, "svd");
  const auto n = static_cast<lapack_int>(m.rows());
  Svd out;
  Eigen::MatrixXcd work = m;
  out.u.resize(n, n);
  out.vh.resize(n, n);
  out.s.resize(n);
  if (n == 0) return out;
  check(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'A', n, n, work.data(), n, out.s.data(), out.u.data(), n, out.vh.data(), n),
        "zgesdd");
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  const auto rows = static_cast<lapack_int>(m.rows()), cols = static_cast<lapack_int>(m.cols());
  Eigen::MatrixXcd work = m;
  Eigen::VectorXd s(std::min(rows, cols));
  if (s.size() == 0) return s;
  check(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, work.data(), rows, s.data(), nullptr, 1, nullptr, 1),
        "zgesdd");
  return s;
}

Schur schur(const Eigen::MatrixXcd& m) {
  require_square(m, "schur");
  const auto n = static_cast<lapack_int>(m.rows());
  Schur out;
  out.t = m;
  out.z.resize(n, n);
  if (n == 0) return out;
  Eigen::VectorXcd w(n);
  lapack_int sdim = 0;
  check(LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, n, out.t.data(), n, &sdim, w.data(), out.z.data(), n),
        "zgees");
  return out;
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& m) {
  require_square(m, "eigenvalues");
  const auto n = static_cast<lapack_int>(m.rows());
  Eigen::MatrixXcd work = m;
  Eigen::VectorXcd w(n);
  if (n == 0) return w;
  check(LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, w.data(), nullptr, 1, nullptr, 1), "zgeev");
  return w;
}

}  // namespace psdo::linalg
