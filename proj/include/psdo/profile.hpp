#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace psdo {

using cplx = std::complex<double>;

/// The xi-dependence of one Fourier coefficient of a symbol: an immutable
/// expression tree over a small set of smooth atoms.
///
/// Grammar accepted by parse_profile (ASCII, whitespace-insensitive):
///
///     expr   := term (('+' | '-') term)*
///     term   := factor ('*' factor)*
///     factor := '-' factor | scalar | atom | '(' expr ')'
///     scalar := number | number 'i' | 'i'
///     atom   := const(v) | dirstep(v_plus, v_minus, w) | bump(c, r_in, r_out)
///             | xi | jbracket(p)
///
/// Tabulated profiles (monotone cubic interpolation between probes, constant
/// beyond the outermost probes) have no textual form and serialize as tables.
class XiProfile {
 public:
  struct Const { cplx value; };
  struct DirStep { double v_plus, v_minus, width; };
  struct Bump { double center, r_in, r_out; };
  struct Xi {};
  struct JBracket { double power; };
  struct Table {
    std::vector<double> probes;
    std::vector<cplx> values;
    std::vector<cplx> slopes;
  };
  struct Sum { std::vector<XiProfile> terms; };
  struct Product { std::vector<XiProfile> factors; };
  using Node = std::variant<Const, DirStep, Bump, Xi, JBracket, Table, Sum, Product>;

  /// The zero profile.
  XiProfile();

  static XiProfile constant(cplx value);
  static XiProfile dirstep(double v_plus, double v_minus, double width);
  static XiProfile bump(double center, double r_in, double r_out);
  static XiProfile xi();
  static XiProfile jbracket(double power);
  /// Probes must be strictly increasing; values.size() == probes.size().
  static XiProfile table(std::vector<double> probes, std::vector<cplx> values);

  cplx operator()(double xi) const;

  /// Growth order in xi: xi -> 1, jbracket(p) -> p, products add, sums take the max.
  double order() const { return order_; }

  /// lim of the profile as xi -> sign * infinity. Throws SymbolError when the
  /// profile grows in that direction.
  cplx limit(int sign) const;

  bool is_constant() const;
  bool is_table() const { return std::holds_alternative<Table>(node()); }
  const Node& node() const { return *node_; }

  /// Canonical text; parse_profile(p.to_string()) reproduces p. Throws for
  /// profiles that contain tables.
  std::string to_string() const;

  friend XiProfile operator+(const XiProfile& a, const XiProfile& b);
  friend XiProfile operator-(const XiProfile& a, const XiProfile& b);
  friend XiProfile operator*(const XiProfile& a, const XiProfile& b);
  friend XiProfile operator*(cplx s, const XiProfile& p);
  friend XiProfile operator-(const XiProfile& p);

  friend bool operator==(const XiProfile& a, const XiProfile& b);

 private:
  explicit XiProfile(Node node);

  std::shared_ptr<const Node> node_;
  double order_ = 0.0;
};

XiProfile parse_profile(std::string_view text);

}  // namespace psdo
