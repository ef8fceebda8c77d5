#include "psdo/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "psdo/errors.hpp"
#include "psdo/smooth.hpp"

namespace psdo {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double node_order(const XiProfile::Node& node) {
  return std::visit(
      overloaded{
          [](const XiProfile::Xi&) { return 1.0; },
          [](const XiProfile::JBracket& j) { return j.power; },
          [](const XiProfile::Sum& s) {
            double m = -INFINITY;
            for (const auto& t : s.terms) m = std::max(m, t.order());
            return s.terms.empty() ? 0.0 : m;
          },
          [](const XiProfile::Product& p) {
            double m = 0.0;
            for (const auto& f : p.factors) m += f.order();
            return m;
          },
          [](const auto&) { return 0.0; },
      },
      node);
}

// Fritsch-Carlson endpoint slope, shape preserving.
double end_slope(double h0, double h1, double d0, double d1) {
  double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (std::signbit(s) != std::signbit(d0) || d0 == 0.0) return 0.0;
  if (std::signbit(d0) != std::signbit(d1) && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
  return s;
}

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

cplx eval_table(const XiProfile::Table& t, double xi) {
  const auto& x = t.probes;
  if (x.size() == 1 || xi <= x.front()) return t.values.front();
  if (xi >= x.back()) return t.values.back();
  const auto it = std::upper_bound(x.begin(), x.end(), xi);
  const std::size_t k = static_cast<std::size_t>(it - x.begin()) - 1;
  const double h = x[k + 1] - x[k];
  const double s = (xi - x[k]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * t.values[k] + h10 * h * t.slopes[k] + h01 * t.values[k + 1] + h11 * h * t.slopes[k + 1];
}

// Leading behaviour coef * |xi|^power as xi -> sign * infinity.
struct Asymptote {
  cplx coef{0.0, 0.0};
  double power = 0.0;
  bool zero = true;
};

constexpr double kPowerTol = 1e-12;

Asymptote asymptote(const XiProfile& p, int sign) {
  return std::visit(
      overloaded{
          [](const XiProfile::Const& c) { return Asymptote{c.value, 0.0, c.value == cplx{}}; },
          [sign](const XiProfile::DirStep& d) {
            const double v = sign > 0 ? d.v_plus : d.v_minus;
            return Asymptote{v, 0.0, v == 0.0};
          },
          [](const XiProfile::Bump&) { return Asymptote{}; },
          [sign](const XiProfile::Xi&) { return Asymptote{double(sign), 1.0, false}; },
          [](const XiProfile::JBracket& j) { return Asymptote{1.0, j.power, false}; },
          [sign](const XiProfile::Table& t) {
            const cplx v = sign > 0 ? t.values.back() : t.values.front();
            return Asymptote{v, 0.0, v == cplx{}};
          },
          [sign](const XiProfile::Sum& s) {
            std::vector<Asymptote> parts;
            double top = -INFINITY;
            for (const auto& term : s.terms) {
              Asymptote a = asymptote(term, sign);
              if (a.zero) continue;
              top = std::max(top, a.power);
              parts.push_back(a);
            }
            if (parts.empty()) return Asymptote{};
            cplx coef{};
            for (const auto& a : parts)
              if (std::abs(a.power - top) <= kPowerTol) coef += a.coef;
            if (coef == cplx{}) {
              if (top > kPowerTol)
                throw SymbolError("leading growth cancels in direction; limit undetermined");
              return Asymptote{};
            }
            return Asymptote{coef, top, false};
          },
          [sign](const XiProfile::Product& p) {
            Asymptote out{1.0, 0.0, false};
            for (const auto& f : p.factors) {
              Asymptote a = asymptote(f, sign);
              if (a.zero) return Asymptote{};
              out.coef *= a.coef;
              out.power += a.power;
            }
            return out;
          },
      },
      p.node());
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_const(cplx v) {
  if (v.imag() == 0.0) return fmt_real(v.real());
  if (v.real() == 0.0) return fmt_real(v.imag()) + "i";
  const char* op = std::signbit(v.imag()) ? " - " : " + ";
  return "(" + fmt_real(v.real()) + op + fmt_real(std::abs(v.imag())) + "i)";
}

// Real part of the leading constant is negative and there is no imaginary part.
bool has_negative_lead(const XiProfile& p) {
  const auto& n = p.node();
  if (const auto* c = std::get_if<XiProfile::Const>(&n))
    return c->value.imag() == 0.0 && c->value.real() < 0.0;
  if (const auto* prod = std::get_if<XiProfile::Product>(&n)) {
    const auto* c = std::get_if<XiProfile::Const>(&prod->factors.front().node());
    return c && c->value.imag() == 0.0 && c->value.real() < 0.0;
  }
  return false;
}

std::string print(const XiProfile& p);

std::string print_factor(const XiProfile& f) {
  if (std::holds_alternative<XiProfile::Sum>(f.node())) return "(" + print(f) + ")";
  return print(f);
}

std::string print(const XiProfile& p) {
  return std::visit(
      overloaded{
          [](const XiProfile::Const& c) { return fmt_const(c.value); },
          [](const XiProfile::DirStep& d) {
            return "dirstep(" + fmt_real(d.v_plus) + ", " + fmt_real(d.v_minus) + ", " + fmt_real(d.width) + ")";
          },
          [](const XiProfile::Bump& b) {
            return "bump(" + fmt_real(b.center) + ", " + fmt_real(b.r_in) + ", " + fmt_real(b.r_out) + ")";
          },
          [](const XiProfile::Xi&) { return std::string("xi"); },
          [](const XiProfile::JBracket& j) { return "jbracket(" + fmt_real(j.power) + ")"; },
          [](const XiProfile::Table&) -> std::string {
            throw SymbolError("tabulated profile has no textual form");
          },
          [](const XiProfile::Sum& s) {
            std::string out;
            for (std::size_t i = 0; i < s.terms.size(); ++i) {
              const auto& t = s.terms[i];
              if (i > 0 && has_negative_lead(t)) {
                out += " - " + print_factor(-t);
              } else {
                if (i > 0) out += " + ";
                out += print(t);
              }
            }
            return out;
          },
          [](const XiProfile::Product& p) {
            std::string out;
            std::size_t start = 0;
            if (const auto* c = std::get_if<XiProfile::Const>(&p.factors.front().node());
                c && c->value == cplx{-1.0, 0.0}) {
              out = "-";
              start = 1;
            }
            for (std::size_t i = start; i < p.factors.size(); ++i) {
              if (i > start) out += " * ";
              out += print_factor(p.factors[i]);
            }
            return out;
          },
      },
      p.node());
}

bool nodes_equal(const XiProfile& a, const XiProfile& b);

bool lists_equal(const std::vector<XiProfile>& a, const std::vector<XiProfile>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!nodes_equal(a[i], b[i])) return false;
  return true;
}

bool nodes_equal(const XiProfile& a, const XiProfile& b) {
  const auto& x = a.node();
  const auto& y = b.node();
  if (x.index() != y.index()) return false;
  return std::visit(
      overloaded{
          [&](const XiProfile::Const& c) { return c.value == std::get<XiProfile::Const>(y).value; },
          [&](const XiProfile::DirStep& d) {
            const auto& e = std::get<XiProfile::DirStep>(y);
            return d.v_plus == e.v_plus && d.v_minus == e.v_minus && d.width == e.width;
          },
          [&](const XiProfile::Bump& d) {
            const auto& e = std::get<XiProfile::Bump>(y);
            return d.center == e.center && d.r_in == e.r_in && d.r_out == e.r_out;
          },
          [](const XiProfile::Xi&) { return true; },
          [&](const XiProfile::JBracket& j) { return j.power == std::get<XiProfile::JBracket>(y).power; },
          [&](const XiProfile::Table& t) {
            const auto& u = std::get<XiProfile::Table>(y);
            return t.probes == u.probes && t.values == u.values;
          },
          [&](const XiProfile::Sum& s) { return lists_equal(s.terms, std::get<XiProfile::Sum>(y).terms); },
          [&](const XiProfile::Product& p) {
            return lists_equal(p.factors, std::get<XiProfile::Product>(y).factors);
          },
      },
      x);
}

const cplx* as_const(const XiProfile& p) {
  const auto* c = std::get_if<XiProfile::Const>(&p.node());
  return c ? &c->value : nullptr;
}

}  // namespace

XiProfile::XiProfile() : XiProfile(Node{Const{0.0}}) {}

XiProfile::XiProfile(Node node)
    : node_(std::make_shared<const Node>(std::move(node))), order_(node_order(*node_)) {}

XiProfile XiProfile::constant(cplx value) { return XiProfile(Node{Const{value}}); }

XiProfile XiProfile::dirstep(double v_plus, double v_minus, double width) {
  if (!(width > 0.0)) throw SymbolError("dirstep width must be positive");
  return XiProfile(Node{DirStep{v_plus, v_minus, width}});
}

XiProfile XiProfile::bump(double center, double r_in, double r_out) {
  if (!(r_in >= 0.0) || !(r_in < r_out)) throw SymbolError("bump requires 0 <= r_in < r_out");
  return XiProfile(Node{Bump{center, r_in, r_out}});
}

XiProfile XiProfile::xi() { return XiProfile(Node{Xi{}}); }

XiProfile XiProfile::jbracket(double power) { return XiProfile(Node{JBracket{power}}); }

XiProfile XiProfile::table(std::vector<double> probes, std::vector<cplx> values) {
  if (probes.empty() || probes.size() != values.size())
    throw SymbolError("table needs matching, non-empty probe and value lists");
  for (std::size_t k = 1; k < probes.size(); ++k)
    if (!(probes[k] > probes[k - 1])) throw SymbolError("table probes must be strictly increasing");
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    re[k] = values[k].real();
    im[k] = values[k].imag();
  }
  const auto dre = pchip_slopes(probes, re);
  const auto dim = pchip_slopes(probes, im);
  std::vector<cplx> slopes(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) slopes[k] = {dre[k], dim[k]};
  return XiProfile(Node{Table{std::move(probes), std::move(values), std::move(slopes)}});
}

cplx XiProfile::operator()(double x) const {
  return std::visit(
      overloaded{
          [](const Const& c) { return c.value; },
          [x](const DirStep& d) {
            return cplx{d.v_minus + (d.v_plus - d.v_minus) * smooth_step((x + d.width) / (2.0 * d.width))};
          },
          [x](const Bump& b) {
            return cplx{1.0 - smooth_step((std::abs(x - b.center) - b.r_in) / (b.r_out - b.r_in))};
          },
          [x](const Xi&) { return cplx{x}; },
          [x](const JBracket& j) { return cplx{std::pow(1.0 + x * x, 0.5 * j.power)}; },
          [x](const Table& t) { return eval_table(t, x); },
          [x](const Sum& s) {
            cplx acc{};
            for (const auto& t : s.terms) acc += t(x);
            return acc;
          },
          [x](const Product& p) {
            cplx acc{1.0};
            for (const auto& f : p.factors) acc *= f(x);
            return acc;
          },
      },
      *node_);
}

cplx XiProfile::limit(int sign) const {
  const Asymptote a = asymptote(*this, sign > 0 ? 1 : -1);
  if (a.zero || a.power < -kPowerTol) return {};
  if (a.power > kPowerTol) throw SymbolError("order > 0 in direction");
  return a.coef;
}

bool XiProfile::is_constant() const { return std::holds_alternative<Const>(*node_); }

std::string XiProfile::to_string() const { return print(*this); }

XiProfile operator+(const XiProfile& a, const XiProfile& b) {
  const cplx* ca = as_const(a);
  const cplx* cb = as_const(b);
  if (ca && cb) return XiProfile::constant(*ca + *cb);
  std::vector<XiProfile> terms;
  for (const XiProfile* p : {&a, &b}) {
    if (const auto* s = std::get_if<XiProfile::Sum>(&p->node()))
      terms.insert(terms.end(), s->terms.begin(), s->terms.end());
    else
      terms.push_back(*p);
  }
  return XiProfile(XiProfile::Node{XiProfile::Sum{std::move(terms)}});
}

XiProfile operator*(const XiProfile& a, const XiProfile& b) {
  cplx scale{1.0};
  bool any_const = false;
  std::vector<XiProfile> rest;
  for (const XiProfile* p : {&a, &b}) {
    const auto* prod = std::get_if<XiProfile::Product>(&p->node());
    const std::vector<XiProfile> single{*p};
    for (const auto& f : prod ? prod->factors : single) {
      if (const cplx* c = as_const(f)) {
        scale *= *c;
        any_const = true;
      } else {
        rest.push_back(f);
      }
    }
  }
  if (rest.empty()) return XiProfile::constant(scale);
  if (any_const && scale != cplx{1.0}) rest.insert(rest.begin(), XiProfile::constant(scale));
  if (rest.size() == 1) return rest.front();
  return XiProfile(XiProfile::Node{XiProfile::Product{std::move(rest)}});
}

XiProfile operator*(cplx s, const XiProfile& p) { return XiProfile::constant(s) * p; }

XiProfile operator-(const XiProfile& p) {
  if (const cplx* c = as_const(p)) return XiProfile::constant(-*c);
  if (const auto* prod = std::get_if<XiProfile::Product>(&p.node())) {
    if (const cplx* c = as_const(prod->factors.front())) {
      std::vector<XiProfile> rest(prod->factors.begin() + 1, prod->factors.end());
      const cplx neg = -*c;
      if (neg != cplx{1.0}) rest.insert(rest.begin(), XiProfile::constant(neg));
      if (rest.size() == 1) return rest.front();
      return XiProfile(XiProfile::Node{XiProfile::Product{std::move(rest)}});
    }
  }
  return XiProfile::constant(-1.0) * p;
}

XiProfile operator-(const XiProfile& a, const XiProfile& b) { return a + (-b); }

bool operator==(const XiProfile& a, const XiProfile& b) { return nodes_equal(a, b); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  XiProfile run() {
    XiProfile p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  XiProfile expr() {
    XiProfile acc = term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc + (-term());
      else
        return acc;
    }
  }

  XiProfile term() {
    XiProfile acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  static bool is_ident(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  XiProfile factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '(') {
      ++pos_;
      XiProfile inner = expr();
      expect(')');
      return inner;
    }
    if (is_digit(c) || c == '.') {
      const double v = number();
      if (pos_ < s_.size() && s_[pos_] == 'i' && !(pos_ + 1 < s_.size() && is_ident(s_[pos_ + 1]))) {
        ++pos_;
        return XiProfile::constant({0.0, v});
      }
      return XiProfile::constant(v);
    }
    if (is_ident(c)) return atom();
    fail(std::string("unexpected character '") + c + "'");
  }

  double number() {
    skip();
    const std::size_t start = pos_;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{} || ptr == s_.data() + pos_) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    if (!std::isfinite(v)) {
      pos_ = start;
      fail("non-finite number");
    }
    return v;
  }

  double signed_number() {
    skip();
    bool neg = false;
    while (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg ^= s_[pos_] == '-';
      ++pos_;
      skip();
    }
    const double v = number();
    return neg ? -v : v;
  }

  std::vector<double> args(std::size_t arity, std::string_view name, std::size_t at) {
    std::vector<double> out;
    expect('(');
    skip();
    if (!accept(')')) {
      do {
        out.push_back(signed_number());
      } while (accept(','));
      expect(')');
    }
    if (out.size() != arity) {
      pos_ = at;
      fail(std::string(name) + " takes " + std::to_string(arity) + " argument(s), got " +
           std::to_string(out.size()));
    }
    return out;
  }

  XiProfile atom() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_ident(s_[pos_])) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name == "i") return XiProfile::constant({0.0, 1.0});
    if (name == "xi") return XiProfile::xi();
    if (name == "const") return XiProfile::constant(args(1, name, start)[0]);
    if (name == "jbracket") return XiProfile::jbracket(args(1, name, start)[0]);
    if (name == "dirstep") {
      const auto a = args(3, name, start);
      if (!(a[2] > 0.0)) {
        pos_ = start;
        fail("dirstep width w must be > 0");
      }
      return XiProfile::dirstep(a[0], a[1], a[2]);
    }
    if (name == "bump") {
      const auto a = args(3, name, start);
      if (!(a[1] < a[2])) {
        pos_ = start;
        fail("bump requires r_in < r_out");
      }
      if (a[1] < 0.0) {
        pos_ = start;
        fail("bump requires r_in >= 0");
      }
      return XiProfile::bump(a[0], a[1], a[2]);
    }
    pos_ = start;
    fail("unknown atom '" + std::string(name) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

XiProfile parse_profile(std::string_view text) { return Parser(text).run(); }

}  // namespace psdo
