#include <doctest.h>

#include <cmath>
#include <random>

#include "psdo/banded.hpp"
#include "psdo/errors.hpp"
#include "psdo/presets.hpp"
#include "psdo/quantization.hpp"

using namespace psdo;

namespace {

BandedMatrix random_banded(std::mt19937_64& rng, int n, int bw) {
  std::normal_distribution<double> g;
  BandedMatrix m(n, bw);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - bw); j <= std::min(n - 1, i + bw); ++j) m.set(i, j, {g(rng), g(rng)});
  return m;
}

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("property: banded arithmetic agrees with dense arithmetic") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 17, bw = trial % 4, bw2 = (trial / 4) % 3;
    const BandedMatrix a = random_banded(rng, n, bw), b = random_banded(rng, n, bw2);
    const Eigen::MatrixXcd da = a.to_dense(), db = b.to_dense();
    CHECK(max_diff((a * b).to_dense(), da * db) < 1e-12);
    CHECK(max_diff((a + b).to_dense(), da + db) < 1e-15);
    CHECK(max_diff((a - b).to_dense(), da - db) < 1e-15);
    CHECK(max_diff((cplx{2, -1} * a).to_dense(), cplx{2, -1} * da) < 1e-14);
    CHECK(max_diff(a.adjoint().to_dense(), da.adjoint()) == 0.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
    CHECK((a * v - da * v).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_diff(a * db, da * db) < 1e-12);
    CHECK(max_diff(BandedMatrix::from_dense(da, bw).to_dense(), da) == 0.0);
    if (n > 4) CHECK(max_diff(a.block(1, n - 2).to_dense(), da.block(1, 1, n - 2, n - 2)) == 0.0);
  }
}

TEST_CASE("banded matrix guards") {
  BandedMatrix m(5, 1);
  CHECK_THROWS_AS(m.set(0, 3, 1.0), MatrixError);
  CHECK(m.get(0, 3) == cplx{});
  CHECK(m.is_diagonal());
  m.set(1, 0, 2.0);
  CHECK_FALSE(m.is_diagonal());
  CHECK(m.nonzeros() == 1);
  CHECK(m.hermitian_defect() == 2.0);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
  d(0, 3) = 1.0;
  CHECK_THROWS_AS(BandedMatrix::from_dense(d, 1), MatrixError);
  CHECK_THROWS_AS(BandedMatrix(3, 1) * BandedMatrix(4, 1), MatrixError);
}

TEST_CASE("quantize_circle entries follow the t-quantization formula") {
  const CircleSymbol a = example13_symbol();
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    const int K = 10;
    const OperatorMatrix M = quantize_circle(a, K, t);
    CHECK(M.dim() == 2 * K + 1);
    CHECK(M.bandwidth == 1);
    for (int j = -K; j <= K; ++j)
      for (int k = -K; k <= K; ++k) {
        const XiProfile* c = a.coeff(j - k);
        const cplx want = c ? (*c)(kTwoPi * (t * k + (1 - t) * j)) : cplx{};
        CHECK(std::abs(M.entries.get(M.index(j), M.index(k)) - want) < 1e-15);
      }
    if (t == 0.5) CHECK(M.hermitian);
    if (t == 0.0 || t == 1.0) CHECK_FALSE(M.hermitian);
  }
}

TEST_CASE("Weyl quantization of example13 annihilates e0 exactly") {
  for (int K : {4, 8, 64}) {
    const OperatorMatrix H = quantize_circle(example13_symbol(), K, 0.5);
    CHECK(H.hermitian);
    CHECK(H.entries.hermitian_defect() == 0.0);
    for (int k = -K; k <= K; ++k) {
      CHECK(H.entries.get(H.index(0), H.index(k)) == cplx{});
      CHECK(H.entries.get(H.index(k), H.index(0)) == cplx{});
    }
  }
}

TEST_CASE("quantization argument checks") {
  CHECK_THROWS_AS(quantize_circle(cosine_symbol(), 0, 0.5), MatrixError);
  CHECK_THROWS_AS(quantize_circle(cosine_symbol(), 4, 1.5), MatrixError);
}

TEST_CASE("torus Weyl quantization of example14") {
  const int K = 4;
  const OperatorMatrix H = quantize_torus2_weyl(example14_symbol(), K);
  CHECK(H.geometry == Geometry::torus2);
  CHECK(H.dim() == 81);
  CHECK(H.hermitian);
  CHECK(H.index(-K, -K) == 0);
  CHECK(H.index(K, K) == 80);
  const int c = H.index(0, 0);
  for (int i = 0; i < H.dim(); ++i) {
    CHECK(H.entries.get(i, c) == cplx{});
    CHECK(H.entries.get(c, i) == cplx{});
  }
  // Diagonal: xi2 / <xi> with xi = 2 pi k.
  const double x1 = kTwoPi * 1, x2 = kTwoPi * 2;
  CHECK(H.entries.get(H.index(1, 2), H.index(1, 2)).real() ==
        doctest::Approx(x2 / std::sqrt(1 + x1 * x1 + x2 * x2)));
}

TEST_CASE("commutator, norms and restrictions") {
  const OperatorMatrix H = quantize_circle(cosine_symbol(), 12, 0.5);
  const OperatorMatrix A = quantize_circle(mourre_conjugate_symbol(cosine_symbol()), 12, 0.5);
  const OperatorMatrix C = commutator_i(A, H);
  CHECK(C.hermitian);
  const Eigen::MatrixXcd want = cplx{0, 1} * (A.dense() * H.dense() - H.dense() * A.dense());
  CHECK(max_diff(C.dense(), want) < 1e-10);

  // Tridiagonal Toeplitz with 1/2 off the diagonal: norm cos(pi / (2K + 2)).
  CHECK(op_norm(H) == doctest::Approx(std::cos(kPi / 26.0)).epsilon(1e-13));
  CHECK(op_norm(H.dense(), false) == doctest::Approx(op_norm(H)).epsilon(1e-13));

  const OperatorMatrix R = restrict_modes(H, 5);
  CHECK(R.K == 5);
  CHECK(max_diff(R.dense(), quantize_circle(cosine_symbol(), 5, 0.5).dense()) == 0.0);
  const Eigen::MatrixXcd hi = compress_high(H.dense(), 12, 9);
  CHECK(hi.rows() == 6);
  CHECK(hi(0, 0) == H.dense()(0, 0));
  CHECK_THROWS_AS(restrict_modes(H, 20), MatrixError);
}

TEST_CASE("order gap vanishes for xi-independent symbols and not otherwise") {
  CHECK(order_gap_norm(cosine_symbol(), 64, 16) == 0.0);
  const CircleSymbol s({{1, XiProfile::dirstep(1, 0, 20)}, {-1, XiProfile::dirstep(1, 0, 20)}});
  CHECK(order_gap_norm(s, 64, 0) > 1e-3);
}

TEST_CASE("coefficient sup bound") {
  CHECK(coefficient_sup_bound(cosine_symbol(), 16) == doctest::Approx(1.0));
  CHECK(coefficient_sup_bound(example13_symbol(), 16) == doctest::Approx(1.0));
  CHECK(coefficient_sup_bound(dirstep_symbol(), 16) == doctest::Approx(2.0));
}
