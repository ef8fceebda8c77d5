#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "psdo/profile.hpp"

namespace psdo {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

/// Width of the dirstep used to blend the two directions of a homogeneous
/// symbol across xi in (-1, 1).
inline constexpr double kDirectionBlendWidth = 1.0;

/// A finite trigonometric polynomial sum_l c_l e^{2 pi i l x} on R/Z.
class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(std::map<int, cplx> coeffs);

  cplx operator()(double x) const;
  const std::map<int, cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int l) const;
  int bandwidth() const;

  TrigPoly derivative() const;
  TrigPoly conjugate() const;
  /// Drops coefficients with |c_l| <= rel_tol * max_l |c_l|.
  TrigPoly pruned(double rel_tol) const;
  /// Forces c_{-l} = conj(c_l) exactly (values for l >= 0 win).
  TrigPoly hermitian_symmetrized() const;

  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

  std::vector<cplx> sample(int n) const;

 private:
  std::map<int, cplx> coeffs_;
};

/// a(x, xi) = sum_l c_l(xi) e^{2 pi i l x} with finitely many l.
class CircleSymbol {
 public:
  CircleSymbol() = default;
  /// Throws SymbolError if a coefficient's profile order exceeds `order`.
  CircleSymbol(std::map<int, XiProfile> coeffs, double order);
  /// Order taken as the maximum coefficient order.
  explicit CircleSymbol(std::map<int, XiProfile> coeffs);

  cplx operator()(double x, double xi) const;

  const std::map<int, XiProfile>& coeffs() const { return coeffs_; }
  /// The profile for mode l, or nullptr when absent (identically zero).
  const XiProfile* coeff(int l) const;
  double order() const { return order_; }
  int bandwidth() const { return bandwidth_; }

  /// Max |Im a| over a 128 x 32 (x, xi) grid.
  double max_imag() const;
  /// True when the 128 x 32 reality check passes at `tol`.
  bool is_real(double tol = 1e-12) const;

 private:
  std::map<int, XiProfile> coeffs_;
  double order_ = 0.0;
  int bandwidth_ = 0;
};

/// The limits a(x, +1) and a(x, -1) of an order-0 symbol as xi -> +-infinity.
struct DirectionalLimits {
  TrigPoly plus;
  TrigPoly minus;
  const TrigPoly& operator[](int sign) const { return sign > 0 ? plus : minus; }
};

/// Coefficientwise limits. Throws SymbolError("order > 0 in direction") when
/// a coefficient has no finite limit.
DirectionalLimits directional_limits(const CircleSymbol& a);

struct Projection {
  CircleSymbol symbol;
  double tail_bound = 0.0;
};

using PhaseSpaceFunction = std::function<cplx(double x, double xi)>;

/// Trapezoid-rule Fourier coefficients on an n_grid-point x grid at each xi
/// probe, tabulated as profiles. Throws TailBoundError if
/// max_xi |c_L| + |c_-L| > tol.
Projection fourier_project(const PhaseSpaceFunction& f, int L, int n_grid,
                           std::span<const double> xi_probes, double tol, double order = 0.0);

/// xi-independent variant; coefficients become constant profiles.
Projection fourier_project(const std::function<cplx(double x)>& f, int L, int n_grid, double tol);

/// Low-frequency cutoff chi_0 = bump(0, r_in, r_out) used by conjugate symbols.
struct LowCutoff {
  double r_in = 0.5;
  double r_out = 1.5;
};

/// b = d_x a_0(x, sign xi) * xi * (1 - chi_0(xi)), the two directions blended
/// by dirstep across (-1, 1). Real-valued, order 1.
CircleSymbol mourre_conjugate_symbol(const CircleSymbol& a, LowCutoff cutoff = {});

/// b = i a_0 d_x conj(a_0) * xi * (1 - chi_0). Requires |a_0(x, +-1)| = 1
/// within `unimodular_tol` on a 512-point grid; throws SymbolError otherwise.
CircleSymbol unitary_conjugate_symbol(const CircleSymbol& a, LowCutoff cutoff = {},
                                      double unimodular_tol = 1e-8);

/// max_x ||a_0(x, +-1)| - 1| sampled on n points.
double unimodularity_defect(const DirectionalLimits& limits, int n = 512);

/// Symbol on T^2 = (R/Z)^2 as a finite Fourier series in (x1, x2) whose
/// coefficients are functions of (xi1, xi2).
struct TorusSymbol2D {
  using Profile = std::function<cplx(double xi1, double xi2)>;
  std::map<std::pair<int, int>, Profile> coeffs;

  int bandwidth1() const;
  int bandwidth2() const;
};

}  // namespace psdo
