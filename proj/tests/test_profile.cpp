#include <doctest.h>

#include <cmath>
#include <random>

#include "psdo/errors.hpp"
#include "psdo/profile.hpp"
#include "psdo/smooth.hpp"

using namespace psdo;

namespace {

// Independent reference for the transition: exp(-1/s) / (exp(-1/s) + exp(-1/(1-s))).
double ref_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double f = std::exp(-1.0 / s), g = std::exp(-1.0 / (1.0 - s));
  return f / (f + g);
}

// Random expression generator over the printable atoms.
struct ProfileGen {
  std::mt19937_64 rng;
  explicit ProfileGen(std::uint64_t seed) : rng(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  XiProfile atom() {
    switch (pick(5)) {
      case 0: return XiProfile::constant({real(-3, 3), pick(2) ? real(-3, 3) : 0.0});
      case 1: return XiProfile::dirstep(real(-2, 2), real(-2, 2), real(0.1, 5));
      case 2: {
        const double r = real(0, 4);
        return XiProfile::bump(real(-3, 3), r, r + real(0.1, 4));
      }
      case 3: return XiProfile::jbracket(-real(1, 2));
      default: return XiProfile::dirstep(1, -1, 1) * XiProfile::xi() * XiProfile::jbracket(-1);
    }
  }

  XiProfile expr(int depth) {
    if (depth == 0) return atom();
    switch (pick(3)) {
      case 0: return expr(depth - 1) + expr(depth - 1);
      case 1: return expr(depth - 1) * expr(depth - 1);
      default: return -expr(depth - 1);
    }
  }
};

}  // namespace

TEST_CASE("smooth step matches the closed form and is C-infinity flat at the ends") {
  for (double s = -0.5; s <= 1.5; s += 0.0137) CHECK(smooth_step(s) == doctest::Approx(ref_step(s)).epsilon(1e-14));
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  const Jet j0 = smooth_step_derivatives(-0.1);
  for (double v : j0) CHECK(v == 0.0);
}

TEST_CASE("smooth step derivatives agree with finite differences") {
  const double h = 1e-5;
  for (double s : {0.2, 0.37, 0.5, 0.81}) {
    const Jet j = smooth_step_derivatives(s);
    const Jet jp = smooth_step_derivatives(s + h);
    const Jet jm = smooth_step_derivatives(s - h);
    CHECK(j[0] == doctest::Approx(ref_step(s)).epsilon(1e-13));
    for (int n = 0; n < 6; ++n)
      CHECK(j[n + 1] == doctest::Approx((jp[n] - jm[n]) / (2 * h)).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("atoms evaluate to their definitions") {
  const XiProfile d = XiProfile::dirstep(2, -2, 10);
  CHECK(d(10).real() == 2.0);
  CHECK(d(-10).real() == -2.0);
  CHECK(d(0).real() == doctest::Approx(0.0).scale(1.0));
  CHECK(d(3).real() == doctest::Approx(-2 + 4 * ref_step(13.0 / 20.0)));

  const XiProfile b = XiProfile::bump(0, 1.5, 2.0);
  CHECK(b(0).real() == 1.0);
  CHECK(b(1.5).real() == 1.0);
  CHECK(b(2.0).real() == 0.0);
  CHECK(b(-1.75).real() == doctest::Approx(0.5));

  CHECK(XiProfile::jbracket(-1)(3).real() == doctest::Approx(1 / std::sqrt(10.0)));
  CHECK(XiProfile::xi()(-2.5).real() == -2.5);
  CHECK(XiProfile()(7.0) == cplx{});
}

TEST_CASE("limits and orders") {
  const XiProfile p = parse_profile("xi * jbracket(-1)");
  CHECK(p.order() == doctest::Approx(0.0));
  CHECK(p.limit(1).real() == doctest::Approx(1.0));
  CHECK(p.limit(-1).real() == doctest::Approx(-1.0));

  const XiProfile q = parse_profile("1 - bump(0, 1, 2)");
  CHECK(q.limit(1) == cplx{1.0});
  CHECK(q.limit(-1) == cplx{1.0});
  CHECK(parse_profile("bump(0, 1, 2)").limit(1) == cplx{});
  CHECK(parse_profile("dirstep(3, -1, 2)").limit(-1) == cplx{-1.0});
  CHECK(parse_profile("2i * jbracket(-1)").limit(1) == cplx{});

  CHECK(parse_profile("xi").order() == 1.0);
  CHECK_THROWS_AS(parse_profile("xi").limit(1), SymbolError);
  CHECK_THROWS_AS(parse_profile("xi - xi * bump(0, 1, 2)").limit(1), SymbolError);
}

TEST_CASE("parser accepts the documented grammar") {
  CHECK(parse_profile("0.5i")(0) == cplx{0, 0.5});
  CHECK(parse_profile("i")(0) == cplx{0, 1});
  CHECK(parse_profile(" -(1 + 2) * const(2) ")(0) == cplx{-6.0});
  CHECK(parse_profile("-0.5i*(1-bump(0,4.71238898038469,6.283185307179586))")(0) == cplx{});
  CHECK(parse_profile("dirstep(1, -1, 1e0)")(5).real() == 1.0);
  CHECK(parse_profile("bump(-1, 0, 1)")(-1).real() == 1.0);
}

TEST_CASE("parse errors carry byte offsets") {
  auto offset_of = [](const char* text) -> std::size_t {
    try {
      parse_profile(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::size_t(-1);
  };
  CHECK(offset_of("bump(0, 6, 4)") == 0);
  CHECK(offset_of("1 + bump(0, -1, 4)") == 4);
  CHECK(offset_of("dirstep(1, 2, 0)") == 0);
  CHECK(offset_of("1 + foo(2)") == 4);
  CHECK(offset_of("bump(1, 2)") == 0);
  CHECK(offset_of("(1 + 2") == 6);
  CHECK(offset_of("1 2") == 2);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("1 + $") == 4);
  CHECK_THROWS_WITH_AS(parse_profile("bump(0, 6, 4)"), doctest::Contains("r_in < r_out"), ParseError);
}

TEST_CASE("constructors validate arguments") {
  CHECK_THROWS_AS(XiProfile::bump(0, 2, 1), SymbolError);
  CHECK_THROWS_AS(XiProfile::dirstep(0, 1, 0), SymbolError);
  CHECK_THROWS_AS(XiProfile::table({1, 1}, {1, 2}), SymbolError);
  CHECK_THROWS_AS(XiProfile::table({}, {}), SymbolError);
}

TEST_CASE("tables interpolate monotonically and clamp") {
  const XiProfile t = XiProfile::table({0, 1, 2, 4}, {0, 1, 1.5, 1.6});
  CHECK(t(-5).real() == 0.0);
  CHECK(t(9).real() == 1.6);
  CHECK(t(1).real() == 1.0);
  double prev = -1;
  for (double x = 0; x <= 4; x += 0.01) {
    const double v = t(x).real();
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  CHECK(t.limit(1) == cplx{1.6});
  CHECK(t.limit(-1) == cplx{});
  CHECK_THROWS_AS(t.to_string(), SymbolError);
}

TEST_CASE("property: print/parse round trip preserves text and values") {
  ProfileGen gen(0x5eed);
  for (int trial = 0; trial < 300; ++trial) {
    const XiProfile p = gen.expr(trial % 4);
    const std::string s = p.to_string();
    const XiProfile q = parse_profile(s);
    INFO(s);
    CHECK(q.to_string() == s);
    CHECK(q.order() == doctest::Approx(p.order()));
    for (double x : {-7.3, -1.0, 0.0, 0.4, 2.2, 11.0}) {
      const cplx a = p(x), b = q(x);
      CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(a)));
    }
  }
}

TEST_CASE("property: limits agree with far evaluation for order-0 expressions") {
  ProfileGen gen(42);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const XiProfile p = gen.expr(trial % 3);
    if (p.order() > 0) continue;
    for (int sign : {1, -1}) {
      cplx lim;
      try {
        lim = p.limit(sign);
      } catch (const SymbolError&) {
        continue;
      }
      const cplx far = p(sign * 1e12);
      CHECK(std::abs(far - lim) <= 1e-6 * (1 + std::abs(lim)));
      ++checked;
    }
  }
  CHECK(checked > 100);
}
