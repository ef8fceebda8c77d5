#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "psdo/errors.hpp"
#include "psdo/essential.hpp"
#include "psdo/presets.hpp"

using namespace psdo;

namespace {

// Range of a trigonometric polynomial by brute-force sampling.
Interval sampled_range(const TrigPoly& p, int n) {
  Interval r{INFINITY, -INFINITY};
  for (int j = 0; j < n; ++j) {
    const double v = p(double(j) / n).real();
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  }
  return r;
}

CircleSymbol random_real_symbol(std::mt19937_64& rng, int L) {
  std::normal_distribution<double> g;
  std::map<int, XiProfile> c;
  c[0] = XiProfile::dirstep(g(rng), g(rng), 1.0);
  for (int l = 1; l <= L; ++l) {
    const cplx plus{g(rng), g(rng)}, minus{g(rng), g(rng)};
    // c_{-l} = conj(c_l) in each direction keeps the symbol real.
    c[l] = plus * XiProfile::dirstep(1, 0, 1) + minus * XiProfile::dirstep(0, 1, 1);
    c[-l] = std::conj(plus) * XiProfile::dirstep(1, 0, 1) + std::conj(minus) * XiProfile::dirstep(0, 1, 1);
  }
  return CircleSymbol(c);
}

}  // namespace

TEST_CASE("critical points of cos(2 pi x)") {
  auto f = [](double x) { return std::cos(kTwoPi * x); };
  auto df = [](double x) { return -kTwoPi * std::sin(kTwoPi * x); };
  const auto cps = critical_points(f, df, 64, 1e-13, 0.0);
  REQUIRE(cps.size() == 2);
  std::vector<double> vals{cps[0].value, cps[1].value};
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == doctest::Approx(-1.0));
  CHECK(vals[1] == doctest::Approx(1.0));
  for (const auto& c : cps) CHECK(std::min(std::abs(c.x), std::abs(c.x - 0.5)) < 1e-12);
}

TEST_CASE("flat runs count once") {
  auto f = [](double) { return 2.0; };
  auto df = [](double) { return 0.0; };
  const auto cps = critical_points(f, df, 128, 1e-12, 1e-12);
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].flat);
  CHECK(cps[0].value == 2.0);
}

TEST_CASE("prediction for the named presets") {
  const auto cos_pred = predict_essential_spectrum(cosine_symbol());
  CHECK(cos_pred.interval_plus.lo == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(cos_pred.interval_plus.hi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cos_pred.critical_set.size() == 2);
  CHECK(cos_pred.grid_resolution == 2048);

  const auto e13 = predict_essential_spectrum(example13_symbol());
  CHECK(e13.interval_plus.lo == doctest::Approx(-1.0));
  CHECK(e13.interval_minus.hi == doctest::Approx(1.0));
  CHECK(e13.in_bands(0.0));

  const auto two = predict_essential_spectrum(twodirection_symbol());
  CHECK(two.interval_plus.lo == doctest::Approx(-1.0));
  CHECK(two.interval_minus.lo == doctest::Approx(2.0));
  CHECK(two.interval_minus.hi == doctest::Approx(4.0));
  CHECK(two.critical_set.size() == 4);
  CHECK(two.band_distance(1.5) == doctest::Approx(0.5));
  CHECK(two.band_distance(3.0) == 0.0);
  CHECK_FALSE(two.in_bands(1.5));

  const auto ds = predict_essential_spectrum(dirstep_symbol());
  CHECK(ds.interval_plus.lo == 2.0);
  CHECK(ds.interval_plus.hi == 2.0);
  CHECK(ds.interval_minus.lo == -2.0);
  CHECK(ds.critical_set == std::vector<double>{-2.0, 2.0});
}

TEST_CASE("prediction rejects unsuitable symbols") {
  CHECK_THROWS_AS(predict_essential_spectrum(CircleSymbol({{0, XiProfile::constant({0, 1})}})), SymbolError);
  CHECK_THROWS_AS(predict_essential_spectrum(CircleSymbol({{0, XiProfile::xi()}})), SymbolError);
  CHECK_THROWS_AS(predict_essential_spectrum(cosine_symbol(), 8), SymbolError);
}

TEST_CASE("property: predicted bands match dense sampling of the limits") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const CircleSymbol a = random_real_symbol(rng, 1 + trial % 4);
    const auto pred = predict_essential_spectrum(a);
    const DirectionalLimits lim = directional_limits(a);
    for (int sign : {1, -1}) {
      const Interval want = sampled_range(lim[sign], 100000);
      const Interval got = sign > 0 ? pred.interval_plus : pred.interval_minus;
      // Sampling underestimates the range; exact extremes lie just outside.
      CHECK(got.lo <= want.lo + 1e-12);
      CHECK(got.hi >= want.hi - 1e-12);
      CHECK(want.lo - got.lo < 1e-6 * (1 + std::abs(got.lo)));
      CHECK(got.hi - want.hi < 1e-6 * (1 + std::abs(got.hi)));
    }
    CHECK(std::is_sorted(pred.critical_set.begin(), pred.critical_set.end()));
  }
}

TEST_CASE("symbol class estimates") {
  const auto probes = log_probes(1, 1e4, 20);
  CHECK(probes.front() == doctest::Approx(1.0));
  CHECK(probes.back() == doctest::Approx(1e4));

  const auto cos_tab = estimate_symbol_class(cosine_symbol(), 0.0, 2, 2, 64, probes);
  CHECK(cos_tab.bounded());
  CHECK(cos_tab.C[0][0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(cos_tab.C[1][0] == doctest::Approx(kTwoPi).epsilon(1e-2));
  CHECK(cos_tab.C[0][1] < 1e-12);

  const auto e13 = estimate_symbol_class(example13_symbol(), 0.0, 2, 3, 64, probes);
  CHECK(e13.bounded());

  // An order-1 coefficient is not in S^0.
  const CircleSymbol grow({{0, XiProfile::xi()}});
  const auto g = estimate_symbol_class(grow, 0.0, 1, 1, 16, probes);
  CHECK_FALSE(g.bounded());
  const auto g1 = estimate_symbol_class(grow, 1.0, 1, 1, 16, probes);
  CHECK(g1.bounded());
}
