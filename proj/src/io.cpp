#include "psdo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace psdo {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json profile_to_json(const XiProfile& p) {
  if (const auto* t = std::get_if<XiProfile::Table>(&p.node())) {
    Json re = Json::array(), im = Json::array();
    for (const cplx& v : t->values) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    return Json{{"probes", t->probes}, {"re", re}, {"im", im}};
  }
  return p.to_string();
}

XiProfile profile_from_json(const Json& j) {
  if (j.is_string()) return parse_profile(j.get<std::string>());
  if (j.is_object() && j.contains("probes")) {
    const auto probes = j.at("probes").get<std::vector<double>>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.value("im", std::vector<double>(re.size(), 0.0));
    if (re.size() != probes.size() || im.size() != probes.size())
      throw std::invalid_argument("profile table: probes, re and im must have equal length");
    std::vector<cplx> values;
    for (std::size_t i = 0; i < re.size(); ++i) values.emplace_back(re[i], im[i]);
    return XiProfile::table(probes, std::move(values));
  }
  throw std::invalid_argument("profile must be a string or a {probes, re, im} table");
}

Json symbol_to_json(const CircleSymbol& a) {
  Json coeffs = Json::array();
  for (const auto& [l, p] : a.coeffs()) coeffs.push_back(Json{{"l", l}, {"profile", profile_to_json(p)}});
  return Json{{"order", a.order()}, {"coeffs", coeffs}};
}

CircleSymbol symbol_from_json(const Json& j) {
  std::map<int, XiProfile> coeffs;
  for (const auto& c : j.at("coeffs")) {
    const int l = c.at("l").get<int>();
    if (coeffs.count(l)) throw std::invalid_argument("duplicate coefficient l = " + std::to_string(l));
    coeffs.emplace(l, profile_from_json(c.at("profile")));
  }
  if (j.contains("order")) return CircleSymbol(std::move(coeffs), j.at("order").get<double>());
  return CircleSymbol(std::move(coeffs));
}

Json matrix_to_json(const OperatorMatrix& m) {
  Json bands = Json::array();
  const int bw = m.entries.bandwidth(), n = m.dim();
  for (int d = -bw; d <= bw; ++d) {
    Json values = Json::array();
    for (int j = std::max(0, -d); j < std::min(n, n - d); ++j) {
      const cplx v = m.entries.get(j + d, j);
      values.push_back(Json::array({v.real(), v.imag()}));
    }
    bands.push_back(Json{{"offset", d}, {"values", values}});
  }
  return Json{{"K", m.K},
              {"t", m.t},
              {"geometry", m.geometry == Geometry::circle ? "circle" : "torus2"},
              {"bandwidth", m.bandwidth},
              {"hermitian", m.hermitian},
              {"bands", bands}};
}

std::string matrix_to_csv(const OperatorMatrix& m) {
  std::ostringstream out;
  const Eigen::MatrixXcd d = m.dense();
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (j) out << ',';
      out << format_double(d(i, j).real()) << (d(i, j).imag() < 0 ? "" : "+") << format_double(d(i, j).imag())
          << 'i';
    }
    out << '\n';
  }
  return out.str();
}

Json to_json(const Interval& i) { return Json::array({number(i.lo), number(i.hi)}); }

Json to_json(const EssentialSpectrumPrediction& p) {
  return Json{{"interval_plus", to_json(p.interval_plus)},
              {"interval_minus", to_json(p.interval_minus)},
              {"critical_set", p.critical_set},
              {"grid_resolution", p.grid_resolution}};
}

Json to_json(const StabilityResult& s) {
  Json list = Json::array();
  for (const auto& p : s.persistent)
    list.push_back(Json{{"value", p.value}, {"localization", p.localization}, {"trajectory", p.trajectory}});
  return Json{{"K_list", s.K_list}, {"match_tol", s.match_tol}, {"persistent", list}};
}

Json to_json(const MourreReport& r) {
  Json lm = Json::array();
  for (const auto& e : r.lambda_min) lm.push_back(Json{{"n", e.n}, {"value", number(e.value)}});
  Json j{{"interval", to_json(r.interval)},
         {"enclosing", to_json(r.enclosing)},
         {"C", number(r.C)},
         {"lambda_min", lm},
         {"residual", number(r.residual)},
         {"cutoff", r.cutoff},
         {"verdict", r.pass ? "PASS" : "FAIL"}};
  if (r.unitary) {
    const UnitaryExtras& u = *r.unitary;
    j["unitary_extras"] = Json{{"polar_circle_distance", number(u.polar_circle_distance)},
                               {"truncated_circle_distance", number(u.truncated_circle_distance)},
                               {"singular_min", number(u.singular_min)},
                               {"singular_max", number(u.singular_max)},
                               {"arc_coverage", number(u.arc_coverage)},
                               {"critical_angles", u.critical_angles}};
  }
  return j;
}

Json to_json(const SymbolClassTable& t) {
  Json rows = Json::array();
  for (int a = 0; a <= t.alpha_max; ++a)
    for (int b = 0; b <= t.beta_max; ++b)
      rows.push_back(Json{{"alpha", a},
                          {"beta", b},
                          {"C", number(t.C[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])},
                          {"unbounded", static_cast<bool>(t.unbounded[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])}});
  return Json{{"m", t.m}, {"bounded", t.bounded()}, {"constants", rows}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace psdo
