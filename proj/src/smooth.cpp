#include "psdo/smooth.hpp"

#include <cmath>

namespace psdo {
namespace {

// Below this argument exp(-1/s) and all its derivatives are under 1e-240.
constexpr double kFlat = 1.0 / 700.0;

// Taylor coefficients (coefficient of h^k, not derivatives).
using Taylor = std::array<double, kMaxJetOrder + 1>;

Taylor reciprocal(const Taylor& a) {
  Taylor b{};
  b[0] = 1.0 / a[0];
  for (int k = 1; k <= kMaxJetOrder; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += a[j] * b[k - j];
    b[k] = -acc * b[0];
  }
  return b;
}

Taylor exp_of(const Taylor& a) {
  Taylor e{};
  e[0] = std::exp(a[0]);
  for (int k = 1; k <= kMaxJetOrder; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a[j] * e[k - j];
    e[k] = acc / k;
  }
  return e;
}

Taylor product(const Taylor& a, const Taylor& b) {
  Taylor c{};
  for (int k = 0; k <= kMaxJetOrder; ++k)
    for (int j = 0; j <= k; ++j) c[k] += a[j] * b[k - j];
  return c;
}

// exp(-1/u) expanded around u0 where u = u0 + slope * h.
Taylor decay_jet(double u0, double slope) {
  Taylor u{};
  u[0] = u0;
  u[1] = slope;
  Taylor r = reciprocal(u);
  for (double& v : r) v = -v;
  return exp_of(r);
}

}  // namespace

double smooth_step(double s) {
  if (s <= kFlat) return 0.0;
  if (s >= 1.0 - kFlat) return 1.0;
  const double f = std::exp(-1.0 / s);
  const double g = std::exp(-1.0 / (1.0 - s));
  return f / (f + g);
}

Jet smooth_step_derivatives(double s) {
  Jet out{};
  if (s <= kFlat) return out;
  if (s >= 1.0 - kFlat) {
    out[0] = 1.0;
    return out;
  }
  const Taylor f = decay_jet(s, 1.0);
  const Taylor g = decay_jet(1.0 - s, -1.0);
  Taylor sum{};
  for (int k = 0; k <= kMaxJetOrder; ++k) sum[k] = f[k] + g[k];
  const Taylor q = product(f, reciprocal(sum));
  double factorial = 1.0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    if (k > 0) factorial *= k;
    out[k] = q[k] * factorial;
  }
  out[0] = smooth_step(s);
  return out;
}

}  // namespace psdo
