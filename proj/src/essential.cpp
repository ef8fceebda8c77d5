#include "psdo/essential.hpp"

#include <algorithm>
#include <cmath>

#include "psdo/errors.hpp"

namespace psdo {

std::vector<CriticalPoint> critical_points(const std::function<double(double)>& f,
                                           const std::function<double(double)>& df, int n_grid,
                                           double x_tol, double flat_tol) {
  const int n = n_grid;
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j)] = df(static_cast<double>(j) / n);
  auto at = [&](int j) { return d[static_cast<std::size_t>(((j % n) + n) % n)]; };
  auto flat = [&](int j) { return std::abs(at(j)) <= flat_tol; };

  std::vector<CriticalPoint> out;
  if (std::all_of(d.begin(), d.end(), [&](double v) { return std::abs(v) <= flat_tol; })) {
    out.push_back({0.0, f(0.0), true});
    return out;
  }
  // Start scanning just after a non-flat point so flat runs never wrap the seam.
  int start = 0;
  while (flat(start)) ++start;
  for (int s = 0; s < n; ++s) {
    const int j = start + s;
    if (flat(j)) {
      if (!flat(j - 1)) {
        const double x = std::fmod(static_cast<double>(j) / n, 1.0);
        out.push_back({x, f(x), true});
      }
      continue;
    }
    if (flat(j + 1) || (at(j) > 0) == (at(j + 1) > 0)) continue;
    double lo = static_cast<double>(j) / n, hi = static_cast<double>(j + 1) / n;
    const bool lo_pos = at(j) > 0;
    while (hi - lo > x_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if ((df(mid) > 0) == lo_pos)
        lo = mid;
      else
        hi = mid;
    }
    const double x = std::fmod(0.5 * (lo + hi), 1.0);
    out.push_back({x, f(x), false});
  }
  return out;
}

double EssentialSpectrumPrediction::band_distance(double v) const {
  auto dist = [v](const Interval& I) { return v < I.lo ? I.lo - v : (v > I.hi ? v - I.hi : 0.0); };
  return std::min(dist(interval_plus), dist(interval_minus));
}

EssentialSpectrumPrediction predict_essential_spectrum(const CircleSymbol& a, int n_grid, double refine_tol) {
  if (n_grid < 16) throw SymbolError("predict_essential_spectrum: n_grid must be >= 16");
  if (a.order() > 1e-12) throw SymbolError("predict_essential_spectrum: symbol order must be 0");
  if (!a.is_real()) throw SymbolError("predict_essential_spectrum: symbol is not real-valued");

  const DirectionalLimits lim = directional_limits(a);
  EssentialSpectrumPrediction pred;
  pred.grid_resolution = n_grid;
  std::vector<double> values;
  for (int sign : {+1, -1}) {
    const TrigPoly& p = lim[sign];
    const TrigPoly dp = p.derivative();
    const auto cps = critical_points([&](double x) { return p(x).real(); }, [&](double x) { return dp(x).real(); },
                                     n_grid, refine_tol, refine_tol);
    Interval I{INFINITY, -INFINITY};
    for (const auto& c : cps) {
      I.lo = std::min(I.lo, c.value);
      I.hi = std::max(I.hi, c.value);
      values.push_back(c.value);
    }
    (sign > 0 ? pred.interval_plus : pred.interval_minus) = I;
  }
  std::sort(values.begin(), values.end());
  for (double v : values)
    if (pred.critical_set.empty() || v - pred.critical_set.back() > 1e-10 * std::max(1.0, std::abs(v)))
      pred.critical_set.push_back(v);
  return pred;
}

// ---------------------------------------------------------------------------

bool SymbolClassTable::bounded() const {
  for (const auto& row : unbounded)
    for (bool u : row)
      if (u) return false;
  return true;
}

std::vector<double> log_probes(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1)));
  return out;
}

namespace {

// Central difference of order beta (<= 3) with step h.
cplx central_difference(const XiProfile& p, double xi, double h, int beta) {
  switch (beta) {
    case 0: return p(xi);
    case 1: return (p(xi + h) - p(xi - h)) / (2 * h);
    case 2: return (p(xi + h) - 2.0 * p(xi) + p(xi - h)) / (h * h);
    default: return (p(xi + 2 * h) - 2.0 * p(xi + h) + 2.0 * p(xi - h) - p(xi - 2 * h)) / (2 * h * h * h);
  }
}

}  // namespace

SymbolClassTable estimate_symbol_class(const CircleSymbol& a, double m, int alpha_max, int beta_max, int x_grid,
                                       std::span<const double> xi_probes) {
  alpha_max = std::clamp(alpha_max, 0, 3);
  beta_max = std::clamp(beta_max, 0, 3);
  SymbolClassTable t;
  t.m = m;
  t.alpha_max = alpha_max;
  t.beta_max = beta_max;
  const auto A = static_cast<std::size_t>(alpha_max + 1), B = static_cast<std::size_t>(beta_max + 1);
  t.C.assign(A, std::vector<double>(B, 0.0));
  t.unbounded.assign(A, std::vector<bool>(B, false));

  std::vector<double> mags;
  for (double v : xi_probes) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
  if (mags.empty()) return t;
  const double decade_mark = mags.back() / 10.0;

  // before[alpha][beta]: running max over probes with |xi| <= decade_mark.
  std::vector<std::vector<double>> before(A, std::vector<double>(B, 0.0));
  for (double mag : mags) {
    for (double xi : {mag, -mag}) {
      const double h = std::max(1e-4, 1e-6 * std::abs(xi));
      for (std::size_t beta = 0; beta < B; ++beta) {
        std::map<int, cplx> dcoef;
        for (const auto& [l, p] : a.coeffs()) dcoef[l] = central_difference(p, xi, h, static_cast<int>(beta));
        const double weight = std::pow(1.0 + std::abs(xi), static_cast<double>(beta) - m);
        for (std::size_t alpha = 0; alpha < A; ++alpha) {
          double best = 0.0;
          for (int j = 0; j < x_grid; ++j) {
            const double x = static_cast<double>(j) / x_grid;
            cplx acc{};
            for (const auto& [l, c] : dcoef)
              acc += c * std::pow(cplx{0.0, kTwoPi * l}, static_cast<int>(alpha)) * std::polar(1.0, kTwoPi * l * x);
            best = std::max(best, std::abs(acc));
          }
          t.C[alpha][beta] = std::max(t.C[alpha][beta], best * weight);
          if (mag <= decade_mark) before[alpha][beta] = t.C[alpha][beta];
        }
      }
    }
  }
  for (std::size_t alpha = 0; alpha < A; ++alpha)
    for (std::size_t beta = 0; beta < B; ++beta)
      t.unbounded[alpha][beta] = mags.front() <= decade_mark && t.C[alpha][beta] > 1.01 * before[alpha][beta] &&
                                 t.C[alpha][beta] > 1e-12;
  return t;
}

}  // namespace psdo
