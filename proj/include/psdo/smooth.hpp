#pragma once

#include <array>

namespace psdo {

/// Highest derivative order available from the smooth transition.
inline constexpr int kMaxJetOrder = 9;

using Jet = std::array<double, kMaxJetOrder + 1>;

/// C-infinity transition: 0 for s <= 0, 1 for s >= 1, built from exp(-1/s).
double smooth_step(double s);

/// Derivatives S^(n)(s) for n = 0..kMaxJetOrder, computed by Taylor-jet
/// arithmetic (exact up to rounding, no finite differences).
Jet smooth_step_derivatives(double s);

}  // namespace psdo
