#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "psdo/symbol.hpp"

namespace psdo {

/// Radii of chi in the embedded-eigenvalue example: chi = 1 on |xi| <= 1.5 pi.
inline constexpr double kExample13InnerRadius = 1.5 * kPi;
inline constexpr double kExample13OuterRadius = 2.0 * kPi;
/// Radial cutoff of the torus example: chi = 1 on |xi| <= 4, 0 beyond 5.
inline constexpr double kExample14InnerRadius = 4.0;
inline constexpr double kExample14OuterRadius = 5.0;
/// Fourier projection of the scattering symbol.
inline constexpr int kScatteringModes = 12;
inline constexpr int kScatteringGrid = 64;
inline constexpr int kScatteringProbeRange = 4096;  // probes pi m, |m| <= this
inline constexpr double kScatteringTailTol = 1e-9;

/// sin(2 pi x)(1 - chi(xi)).
CircleSymbol example13_symbol();
/// xi_2 / <xi> + 2 sin(2 pi x_1)(1 - chi(|xi|)) on T^2.
TorusSymbol2D example14_symbol();
/// cos(2 pi x), independent of xi.
CircleSymbol cosine_symbol();
/// dirstep(2, -2, 10), independent of x.
CircleSymbol dirstep_symbol();
/// Limits cos(2 pi x) at +infinity and 3 + cos(2 pi x) at -infinity.
CircleSymbol twodirection_symbol();
/// exp(i c sin(2 pi x) xi / <xi>) projected onto |l| <= 12.
Projection scattering_symbol(double c);

using PresetSymbol = std::variant<CircleSymbol, TorusSymbol2D>;

struct PresetInfo {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, std::string>> pinned;  // parameter, value
  bool takes_c = false;
};

const std::vector<PresetInfo>& preset_catalog();
/// Throws std::invalid_argument for unknown names.
const PresetInfo& preset_info(const std::string& name);
PresetSymbol build_preset(const std::string& name, double c = 1.0);

}  // namespace psdo
