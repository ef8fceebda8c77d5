#pragma once

#include <Eigen/Dense>

namespace psdo::linalg {

struct HermitianEig {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // orthonormal columns
};

/// Dense Hermitian eigensolve (lower triangle is read).
HermitianEig hermitian_eig(const Eigen::MatrixXcd& h);
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h);

struct Svd {
  Eigen::MatrixXcd u;
  Eigen::VectorXd s;  // descending
  Eigen::MatrixXcd vh;
};

Svd svd(const Eigen::MatrixXcd& m);
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

struct Schur {
  Eigen::MatrixXcd t;  // upper triangular
  Eigen::MatrixXcd z;  // unitary, m = z t z^*
};

Schur schur(const Eigen::MatrixXcd& m);
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& m);

}  // namespace psdo::linalg
