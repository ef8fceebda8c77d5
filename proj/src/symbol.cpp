#include "psdo/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "psdo/errors.hpp"

namespace psdo {

// ---------------------------------------------------------------------------
// TrigPoly

TrigPoly::TrigPoly(std::map<int, cplx> coeffs) : coeffs_(std::move(coeffs)) {}

cplx TrigPoly::operator()(double x) const {
  cplx acc{};
  for (const auto& [l, c] : coeffs_) acc += c * std::polar(1.0, kTwoPi * l * x);
  return acc;
}

cplx TrigPoly::coeff(int l) const {
  const auto it = coeffs_.find(l);
  return it == coeffs_.end() ? cplx{} : it->second;
}

int TrigPoly::bandwidth() const {
  int L = 0;
  for (const auto& [l, c] : coeffs_) L = std::max(L, std::abs(l));
  return L;
}

TrigPoly TrigPoly::derivative() const {
  std::map<int, cplx> out;
  for (const auto& [l, c] : coeffs_)
    if (l != 0) out[l] = cplx{0.0, kTwoPi * l} * c;
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::conjugate() const {
  std::map<int, cplx> out;
  for (const auto& [l, c] : coeffs_) out[-l] = std::conj(c);
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::pruned(double rel_tol) const {
  double top = 0.0;
  for (const auto& [l, c] : coeffs_) top = std::max(top, std::abs(c));
  std::map<int, cplx> out;
  for (const auto& [l, c] : coeffs_)
    if (std::abs(c) > rel_tol * top) out[l] = c;
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::hermitian_symmetrized() const {
  std::map<int, cplx> out;
  for (const auto& [l, c] : coeffs_) {
    if (l > 0) {
      out[l] = c;
      out[-l] = std::conj(c);
    } else if (l == 0) {
      out[0] = c.real();
    } else if (!coeffs_.count(-l)) {
      out[-l] = std::conj(c);
      out[l] = c;
    }
  }
  return TrigPoly(std::move(out));
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  std::map<int, cplx> out;
  for (const auto& [p, cp] : a.coeffs_)
    for (const auto& [q, cq] : b.coeffs_) out[p + q] += cp * cq;
  return TrigPoly(std::move(out));
}

std::vector<cplx> TrigPoly::sample(int n) const {
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = (*this)(static_cast<double>(j) / n);
  return out;
}

// ---------------------------------------------------------------------------
// CircleSymbol

namespace {

int max_abs_key(const std::map<int, XiProfile>& m) {
  int L = 0;
  for (const auto& [l, p] : m) L = std::max(L, std::abs(l));
  return L;
}

std::vector<double> reality_xi_grid() {
  std::vector<double> xi;
  for (int k = 0; k < 16; ++k) {
    const double v = std::pow(10.0, -1.0 + 7.0 * k / 15.0);
    xi.push_back(v);
    xi.push_back(-v);
  }
  return xi;
}

}  // namespace

CircleSymbol::CircleSymbol(std::map<int, XiProfile> coeffs, double order)
    : coeffs_(std::move(coeffs)), order_(order), bandwidth_(max_abs_key(coeffs_)) {
  for (const auto& [l, p] : coeffs_)
    if (p.order() > order_ + 1e-12)
      throw SymbolError("coefficient " + std::to_string(l) + " has order " + std::to_string(p.order()) +
                        " above the declared order " + std::to_string(order_));
}

CircleSymbol::CircleSymbol(std::map<int, XiProfile> coeffs)
    : coeffs_(std::move(coeffs)), bandwidth_(max_abs_key(coeffs_)) {
  if (coeffs_.empty()) return;
  order_ = -INFINITY;
  for (const auto& [l, p] : coeffs_) order_ = std::max(order_, p.order());
}

cplx CircleSymbol::operator()(double x, double xi) const {
  cplx acc{};
  for (const auto& [l, p] : coeffs_) acc += p(xi) * std::polar(1.0, kTwoPi * l * x);
  return acc;
}

const XiProfile* CircleSymbol::coeff(int l) const {
  const auto it = coeffs_.find(l);
  return it == coeffs_.end() ? nullptr : &it->second;
}

double CircleSymbol::max_imag() const {
  double worst = 0.0;
  for (double xi : reality_xi_grid())
    for (int j = 0; j < 128; ++j) worst = std::max(worst, std::abs((*this)(j / 128.0, xi).imag()));
  return worst;
}

bool CircleSymbol::is_real(double tol) const { return max_imag() <= tol; }

// ---------------------------------------------------------------------------
// Limits and projection

DirectionalLimits directional_limits(const CircleSymbol& a) {
  std::map<int, cplx> plus, minus;
  for (const auto& [l, p] : a.coeffs()) {
    plus[l] = p.limit(+1);
    minus[l] = p.limit(-1);
  }
  return {TrigPoly(std::move(plus)), TrigPoly(std::move(minus))};
}

namespace {

struct DftTables {
  std::vector<double> cos_t, sin_t;  // cos/sin(2 pi m / n), m = 0..n-1
};

DftTables dft_tables(int n) {
  DftTables t;
  t.cos_t.resize(static_cast<std::size_t>(n));
  t.sin_t.resize(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    t.cos_t[static_cast<std::size_t>(m)] = std::cos(kTwoPi * m / n);
    t.sin_t[static_cast<std::size_t>(m)] = std::sin(kTwoPi * m / n);
  }
  return t;
}

// Coefficients c_l, |l| <= L, of the samples f_j = f(j / n). The l and -l sums
// share every product, so real samples give c_{-l} == conj(c_l) bit for bit.
std::map<int, cplx> trapezoid_coeffs(const std::vector<cplx>& f, int L, const DftTables& t) {
  const int n = static_cast<int>(f.size());
  std::map<int, cplx> out;
  for (int l = 0; l <= L; ++l) {
    double a = 0, b = 0, c = 0, d = 0;  // sum u cos, v sin, v cos, u sin
    for (int j = 0; j < n; ++j) {
      const auto m = static_cast<std::size_t>((static_cast<long>(l) * j) % n);
      const double u = f[static_cast<std::size_t>(j)].real();
      const double v = f[static_cast<std::size_t>(j)].imag();
      a += u * t.cos_t[m];
      b += v * t.sin_t[m];
      c += v * t.cos_t[m];
      d += u * t.sin_t[m];
    }
    out[l] = cplx{(a + b) / n, (c - d) / n};
    if (l > 0) out[-l] = cplx{(a - b) / n, (c + d) / n};
  }
  return out;
}

void check_projection_args(int L, int n_grid) {
  if (L < 0) throw SymbolError("fourier_project: L must be non-negative");
  if (n_grid < 4 * L || n_grid < 1) throw SymbolError("fourier_project: n_grid must be >= 4L");
}

}  // namespace

Projection fourier_project(const PhaseSpaceFunction& f, int L, int n_grid, std::span<const double> xi_probes,
                           double tol, double order) {
  check_projection_args(L, n_grid);
  if (xi_probes.empty()) throw SymbolError("fourier_project: empty probe set");
  std::vector<double> probes(xi_probes.begin(), xi_probes.end());
  std::sort(probes.begin(), probes.end());
  if (std::adjacent_find(probes.begin(), probes.end()) != probes.end())
    throw SymbolError("fourier_project: duplicate probes");

  const DftTables tables = dft_tables(n_grid);
  std::map<int, std::vector<cplx>> columns;
  double tail = 0.0;
  std::vector<cplx> samples(static_cast<std::size_t>(n_grid));
  for (double xi : probes) {
    for (int j = 0; j < n_grid; ++j) samples[static_cast<std::size_t>(j)] = f(static_cast<double>(j) / n_grid, xi);
    const auto c = trapezoid_coeffs(samples, L, tables);
    for (const auto& [l, v] : c) columns[l].push_back(v);
    tail = std::max(tail, L == 0 ? 0.0 : std::abs(c.at(L)) + std::abs(c.at(-L)));
  }
  if (tail > tol) throw TailBoundError(tail);

  std::map<int, XiProfile> coeffs;
  for (auto& [l, values] : columns) coeffs.emplace(l, XiProfile::table(probes, std::move(values)));
  return {CircleSymbol(std::move(coeffs), order), tail};
}

Projection fourier_project(const std::function<cplx(double x)>& f, int L, int n_grid, double tol) {
  check_projection_args(L, n_grid);
  std::vector<cplx> samples(static_cast<std::size_t>(n_grid));
  for (int j = 0; j < n_grid; ++j) samples[static_cast<std::size_t>(j)] = f(static_cast<double>(j) / n_grid);
  const auto c = trapezoid_coeffs(samples, L, dft_tables(n_grid));
  const double tail = L == 0 ? 0.0 : std::abs(c.at(L)) + std::abs(c.at(-L));
  if (tail > tol) throw TailBoundError(tail);
  std::map<int, XiProfile> coeffs;
  for (const auto& [l, v] : c) coeffs.emplace(l, XiProfile::constant(v));
  return {CircleSymbol(std::move(coeffs), 0.0), tail};
}

// ---------------------------------------------------------------------------
// Conjugate symbols

namespace {

constexpr double kPruneTol = 1e-12;

// Assemble sum_l [phi+_l D+(xi) + phi-_l D-(xi)] xi (1 - chi_0(xi)) e^{2 pi i l x}.
CircleSymbol blend_directions(const TrigPoly& plus, const TrigPoly& minus, LowCutoff cut) {
  const XiProfile tail = XiProfile::xi() * (XiProfile::constant(1.0) - XiProfile::bump(0.0, cut.r_in, cut.r_out));
  const XiProfile to_plus = XiProfile::dirstep(1.0, 0.0, kDirectionBlendWidth);
  const XiProfile to_minus = XiProfile::dirstep(0.0, 1.0, kDirectionBlendWidth);

  std::map<int, XiProfile> coeffs;
  std::map<int, bool> seen;
  for (const auto& [l, c] : plus.coeffs()) seen[l] = true;
  for (const auto& [l, c] : minus.coeffs()) seen[l] = true;
  for (const auto& [l, unused] : seen) {
    const cplx cp = plus.coeff(l);
    const cplx cm = minus.coeff(l);
    if (cp == cplx{} && cm == cplx{}) continue;
    if (cp == cm)
      coeffs.emplace(l, cp * tail);
    else
      coeffs.emplace(l, cp * (to_plus * tail) + cm * (to_minus * tail));
  }
  return CircleSymbol(std::move(coeffs), 1.0);
}

}  // namespace

CircleSymbol mourre_conjugate_symbol(const CircleSymbol& a, LowCutoff cutoff) {
  if (a.order() > 1e-12) throw SymbolError("conjugate symbol needs an order-0 symbol");
  if (!a.is_real()) throw SymbolError("conjugate symbol needs a real-valued symbol");
  const DirectionalLimits lim = directional_limits(a);
  const TrigPoly plus = lim.plus.derivative().hermitian_symmetrized().pruned(kPruneTol);
  const TrigPoly minus = lim.minus.derivative().hermitian_symmetrized().pruned(kPruneTol);
  return blend_directions(plus, minus, cutoff);
}

double unimodularity_defect(const DirectionalLimits& limits, int n) {
  double worst = 0.0;
  for (const TrigPoly* p : {&limits.plus, &limits.minus})
    for (const cplx v : p->sample(n)) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
  return worst;
}

CircleSymbol unitary_conjugate_symbol(const CircleSymbol& a, LowCutoff cutoff, double unimodular_tol) {
  const DirectionalLimits lim = directional_limits(a);
  const double defect = unimodularity_defect(lim);
  if (defect > unimodular_tol)
    throw SymbolError("directional limits are not unimodular (defect " + std::to_string(defect) + ")");
  // i a_0 d_x conj(a_0) is real up to rounding; enforce exact conjugate symmetry.
  auto phi = [](const TrigPoly& a0) {
    TrigPoly b = a0 * a0.conjugate().derivative();
    std::map<int, cplx> scaled;
    for (const auto& [l, c] : b.coeffs()) scaled[l] = cplx{0.0, 1.0} * c;
    return TrigPoly(std::move(scaled)).hermitian_symmetrized().pruned(kPruneTol);
  };
  return blend_directions(phi(lim.plus), phi(lim.minus), cutoff);
}

// ---------------------------------------------------------------------------

int TorusSymbol2D::bandwidth1() const {
  int L = 0;
  for (const auto& [l, p] : coeffs) L = std::max(L, std::abs(l.first));
  return L;
}

int TorusSymbol2D::bandwidth2() const {
  int L = 0;
  for (const auto& [l, p] : coeffs) L = std::max(L, std::abs(l.second));
  return L;
}

}  // namespace psdo
