#include "psdo/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace psdo {

CircleSymbol example13_symbol() {
  const XiProfile tail = XiProfile::constant(1.0) - XiProfile::bump(0.0, kExample13InnerRadius, kExample13OuterRadius);
  return CircleSymbol({{1, cplx{0.0, -0.5} * tail}, {-1, cplx{0.0, 0.5} * tail}}, 0.0);
}

TorusSymbol2D example14_symbol() {
  const XiProfile chi = XiProfile::bump(0.0, kExample14InnerRadius, kExample14OuterRadius);
  TorusSymbol2D s;
  s.coeffs[{0, 0}] = [](double xi1, double xi2) { return cplx{xi2 / std::sqrt(1.0 + xi1 * xi1 + xi2 * xi2)}; };
  s.coeffs[{1, 0}] = [chi](double xi1, double xi2) {
    return cplx{0.0, -1.0} * (1.0 - chi(std::hypot(xi1, xi2)).real());
  };
  s.coeffs[{-1, 0}] = [chi](double xi1, double xi2) {
    return cplx{0.0, 1.0} * (1.0 - chi(std::hypot(xi1, xi2)).real());
  };
  return s;
}

CircleSymbol cosine_symbol() {
  return CircleSymbol({{1, XiProfile::constant(0.5)}, {-1, XiProfile::constant(0.5)}}, 0.0);
}

CircleSymbol dirstep_symbol() { return CircleSymbol({{0, XiProfile::dirstep(2.0, -2.0, 10.0)}}, 0.0); }

CircleSymbol twodirection_symbol() {
  return CircleSymbol({{0, XiProfile::dirstep(0.0, 3.0, kDirectionBlendWidth)},
                       {1, XiProfile::constant(0.5)},
                       {-1, XiProfile::constant(0.5)}},
                      0.0);
}

Projection scattering_symbol(double c) {
  std::vector<double> probes;
  for (int m = -kScatteringProbeRange; m <= kScatteringProbeRange; ++m) probes.push_back(kPi * m);
  auto f = [c](double x, double xi) {
    return std::polar(1.0, c * std::sin(kTwoPi * x) * xi / std::sqrt(1.0 + xi * xi));
  };
  return fourier_project(f, kScatteringModes, kScatteringGrid, probes, kScatteringTailTol);
}

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"example13",
       "a = sin(2 pi x)(1 - chi(xi)); Weyl quantization kills e_0, an embedded eigenvalue 0 inside [-1, 1]",
       {{"chi", "bump(0, 1.5 pi, 2 pi)"}, {"conjugate low cutoff", "bump(0, 0.5, 1.5)"}},
       false},
      {"example14",
       "H0 - b^w on T^2 with H0 = <D>^-1 D_x2 + 2 sin(2 pi x1); e_(0,0) is an eigenvector with eigenvalue 0",
       {{"chi", "radial bump, 1 on |xi| <= 4, 0 on |xi| >= 5"}, {"<xi>", "(1 + |xi|^2)^(1/2)"}},
       false},
      {"cosine", "a = cos(2 pi x), independent of xi; tridiagonal Toeplitz truncations", {}, false},
      {"dirstep", "a = dirstep(2, -2, 10), independent of x; diagonal truncations", {{"width", "10"}}, false},
      {"twodirection",
       "a(x, +1) = cos(2 pi x), a(x, -1) = 3 + cos(2 pi x); essential spectrum [-1, 1] U [2, 4]",
       {{"direction blend", "dirstep(0, 3, 1)"}},
       false},
      {"scattering",
       "a = exp(i c sin(2 pi x) xi / <xi>) projected to |l| <= 12; unitary with spectral arc |theta| <= c",
       {{"L", "12"}, {"x grid", "64"}, {"xi probes", "pi m, |m| <= 4096"}, {"tail tolerance", "1e-9"}},
       true},
  };
  return catalog;
}

const PresetInfo& preset_info(const std::string& name) {
  for (const auto& p : preset_catalog())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

PresetSymbol build_preset(const std::string& name, double c) {
  if (name == "example13") return example13_symbol();
  if (name == "example14") return example14_symbol();
  if (name == "cosine") return cosine_symbol();
  if (name == "dirstep") return dirstep_symbol();
  if (name == "twodirection") return twodirection_symbol();
  if (name == "scattering") return scattering_symbol(c).symbol;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace psdo
