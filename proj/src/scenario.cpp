#include "psdo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "psdo/errors.hpp"
#include "psdo/presets.hpp"

namespace psdo {

const std::vector<std::string>& scenario_tasks() {
  static const std::vector<std::string> names = {"essential", "spectrum", "stability", "density", "mourre",
                                                 "unitary",   "hscheck",  "classcheck", "ordergap"};
  return names;
}

ConfigError::ConfigError(std::vector<ValidationIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid scenario config:";
        for (const auto& i : issues) msg += "\n  " + i.pointer + ": " + i.message;
        return msg;
      }()),
      issues_(std::move(issues)) {}

int ScenarioResult::exit_code() const {
  return std::all_of(tasks.begin(), tasks.end(), [](const TaskOutcome& t) { return t.pass; }) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Checker {
 public:
  std::vector<ValidationIssue> issues;

  void fail(const std::string& ptr, const std::string& msg) { issues.push_back({ptr, msg}); }

  std::optional<double> number(const Json& obj, const std::string& ptr, const std::string& key, bool required,
                               bool positive = false) {
    if (!obj.contains(key)) {
      if (required) fail(ptr + "/" + key, "required parameter is missing");
      return std::nullopt;
    }
    const Json& v = obj.at(key);
    if (!v.is_number()) {
      fail(ptr + "/" + key, "must be a number");
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (positive && !(d > 0)) {
      fail(ptr + "/" + key, "must be positive");
      return std::nullopt;
    }
    return d;
  }

  std::optional<int> integer(const Json& obj, const std::string& ptr, const std::string& key, int lo, int hi) {
    if (!obj.contains(key)) return std::nullopt;
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(ptr + "/" + key, "must be an integer");
      return std::nullopt;
    }
    const int i = v.get<int>();
    if (i < lo || i > hi) {
      fail(ptr + "/" + key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return i;
  }

  std::optional<Interval> interval(const Json& obj, const std::string& ptr, const std::string& key, bool required) {
    if (!obj.contains(key)) {
      if (required) fail(ptr + "/" + key, "required parameter is missing");
      return std::nullopt;
    }
    const Json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(ptr + "/" + key, "must be a [lo, hi] pair of numbers");
      return std::nullopt;
    }
    Interval I{v[0].get<double>(), v[1].get<double>()};
    if (!(I.lo < I.hi)) {
      fail(ptr + "/" + key, "needs lo < hi");
      return std::nullopt;
    }
    return I;
  }
};

struct BuiltSymbol {
  std::optional<CircleSymbol> circle;
  std::optional<TorusSymbol2D> torus;
  int bandwidth = 0;
  bool real = false;
};

BuiltSymbol build_symbol(const ScenarioConfig& cfg) {
  BuiltSymbol s;
  if (!cfg.preset.empty()) {
    PresetSymbol p = build_preset(cfg.preset, cfg.preset_c);
    if (auto* c = std::get_if<CircleSymbol>(&p))
      s.circle = *c;
    else
      s.torus = std::get<TorusSymbol2D>(p);
  } else {
    s.circle = symbol_from_json(cfg.inline_symbol);
  }
  if (s.circle) {
    s.bandwidth = s.circle->bandwidth();
    s.real = s.circle->is_real();
  } else {
    s.bandwidth = std::max(s.torus->bandwidth1(), s.torus->bandwidth2());
    s.real = true;
  }
  return s;
}

void validate_symbol(const Json& j, ScenarioConfig& cfg, Checker& ck) {
  if (!j.contains("symbol")) return ck.fail("/symbol", "required");
  const Json& s = j.at("symbol");
  if (!s.is_object()) return ck.fail("/symbol", "must be an object");
  const bool has_preset = s.contains("preset"), has_coeffs = s.contains("coeffs");
  if (has_preset == has_coeffs) return ck.fail("/symbol", "give exactly one of preset or coeffs");
  if (has_preset) {
    if (!s.at("preset").is_string()) return ck.fail("/symbol/preset", "must be a string");
    cfg.preset = s.at("preset").get<std::string>();
    try {
      const PresetInfo& info = preset_info(cfg.preset);
      if (s.contains("c")) {
        if (!info.takes_c) ck.fail("/symbol/c", "preset '" + cfg.preset + "' takes no parameter c");
        if (auto c = ck.number(s, "/symbol", "c", false)) cfg.preset_c = *c;
      }
    } catch (const std::invalid_argument& e) {
      ck.fail("/symbol/preset", e.what());
    }
    return;
  }
  const Json& coeffs = s.at("coeffs");
  if (!coeffs.is_array() || coeffs.empty()) return ck.fail("/symbol/coeffs", "must be a non-empty array");
  std::map<int, bool> seen;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string ptr = "/symbol/coeffs/" + std::to_string(i);
    const Json& c = coeffs[i];
    if (!c.is_object() || !c.contains("l") || !c.at("l").is_number_integer()) {
      ck.fail(ptr + "/l", "integer mode index required");
      continue;
    }
    const int l = c.at("l").get<int>();
    if (seen[l]) ck.fail(ptr + "/l", "duplicate mode " + std::to_string(l));
    seen[l] = true;
    if (!c.contains("profile")) {
      ck.fail(ptr + "/profile", "required");
      continue;
    }
    try {
      (void)profile_from_json(c.at("profile"));
    } catch (const std::exception& e) {
      ck.fail(ptr + "/profile", e.what());
    }
  }
  if (s.contains("order") && !s.at("order").is_number()) ck.fail("/symbol/order", "must be a number");
  cfg.inline_symbol = s;
}

void validate_tasks(const Json& tasks, const ScenarioConfig& cfg, const BuiltSymbol* sym, Checker& ck) {
  const int K_max = cfg.K_list.empty() ? 0 : cfg.K_list.back();
  const bool torus = sym && sym->torus;
  for (const auto& [name, params] : tasks.items()) {
    const std::string ptr = "/tasks/" + name;
    if (std::find(scenario_tasks().begin(), scenario_tasks().end(), name) == scenario_tasks().end()) {
      ck.fail(ptr, "unknown task");
      continue;
    }
    if (!params.is_object()) {
      ck.fail(ptr, "task parameters must be an object");
      continue;
    }
    if (torus && name != "spectrum") ck.fail(ptr, "the torus symbol supports the spectrum task only");
    const bool needs_real = name != "unitary" && name != "classcheck" && name != "ordergap";
    if (sym && needs_real && !sym->real) ck.fail(ptr, "task requires a real-valued symbol");

    if (name == "spectrum") {
      ck.number(params, ptr, "band_tol", false, true);
    } else if (name == "essential") {
      ck.integer(params, ptr, "n_grid", 16, 1 << 22);
      ck.number(params, ptr, "refine_tol", false, true);
    } else if (name == "stability") {
      if (cfg.K_list.size() < 3) ck.fail("/K_list", "stability needs at least 3 truncation sizes");
      ck.number(params, ptr, "match_tol", false, true);
    } else if (name == "density") {
      if (!params.contains("grid")) {
        ck.fail(ptr + "/grid", "required parameter is missing");
      } else {
        const Json& g = params.at("grid");
        auto lo = ck.number(g, ptr + "/grid", "lo", true), hi = ck.number(g, ptr + "/grid", "hi", true);
        if (lo && hi && !(*lo < *hi)) ck.fail(ptr + "/grid", "needs lo < hi");
        ck.integer(g, ptr + "/grid", "n", 2, 1 << 20);
      }
      ck.number(params, ptr, "epsilon", false, true);
      ck.integer(params, ptr, "K", 1, 1 << 14);
      if (params.contains("probe")) {
        const Json& p = params.at("probe");
        if (!p.is_string() || (p != "e0" && p != "ones" && p != "random"))
          ck.fail(ptr + "/probe", "must be one of e0, ones, random");
      }
    } else if (name == "mourre" || name == "hscheck") {
      auto I = ck.interval(params, ptr, "interval", true);
      auto E = ck.interval(params, ptr, "enclosing", true);
      if (I && E && !(E->lo < I->lo && I->hi < E->hi))
        ck.fail(ptr + "/enclosing", "must strictly contain the interval");
      ck.integer(params, ptr, "K", 16, 1 << 14);
      if (name == "mourre") ck.integer(params, ptr, "cutoff_order", 1, 8);
      if (name == "hscheck") {
        ck.integer(params, ptr, "N", 1, 8);
        ck.integer(params, ptr, "nx", 1, 1 << 16);
        if (auto ny = ck.integer(params, ptr, "ny", 2, 1 << 16); ny && *ny % 2)
          ck.fail(ptr + "/ny", "must be even");
        ck.number(params, ptr, "Y0", false, true);
      }
    } else if (name == "unitary") {
      if (auto A = ck.interval(params, ptr, "arc", true); A && !(A->hi < A->lo + 2 * kPi))
        ck.fail(ptr + "/arc", "arc must be shorter than 2 pi");
      auto K = ck.integer(params, ptr, "K", 16, 1 << 14);
      if (params.contains("defect_n")) {
        const Json& n = params.at("defect_n");
        const int Kt = K.value_or(K_max);
        if (!n.is_array()) ck.fail(ptr + "/defect_n", "must be an array of integers");
        else
          for (std::size_t i = 0; i < n.size(); ++i)
            if (!n[i].is_number_integer() || n[i].get<int>() < 0 || n[i].get<int>() >= Kt)
              ck.fail(ptr + "/defect_n/" + std::to_string(i), "must be an integer in [0, K)");
      }
    } else if (name == "classcheck") {
      ck.number(params, ptr, "m", false);
      ck.integer(params, ptr, "alpha_max", 0, 3);
      ck.integer(params, ptr, "beta_max", 0, 3);
      ck.integer(params, ptr, "x_grid", 4, 1 << 14);
      ck.integer(params, ptr, "n_probes", 2, 10000);
    } else if (name == "ordergap") {
      auto K = ck.integer(params, ptr, "K", 2, 1 << 14);
      if (params.contains("n")) {
        const Json& n = params.at("n");
        const int Kt = K.value_or(K_max);
        if (!n.is_array()) ck.fail(ptr + "/n", "must be an array of integers");
        else
          for (std::size_t i = 0; i < n.size(); ++i)
            if (!n[i].is_number_integer() || n[i].get<int>() < 0 || n[i].get<int>() >= Kt)
              ck.fail(ptr + "/n/" + std::to_string(i), "must be an integer in [0, K)");
      }
    }
    if (sym && params.contains("K") && params.at("K").is_number_integer() &&
        params.at("K").get<int>() < sym->bandwidth)
      ck.fail(ptr + "/K", "K is below the symbol bandwidth");
  }
}

}  // namespace

ScenarioConfig validate_config(const Json& j) {
  Checker ck;
  ScenarioConfig cfg;
  if (!j.is_object()) throw ConfigError(std::vector<ValidationIssue>{{"", "config must be a JSON object"}});
  for (const auto& [key, unused] : j.items())
    if (key != "symbol" && key != "t" && key != "K_list" && key != "tasks" && key != "output" && key != "seed")
      ck.fail("/" + key, "unknown field");

  validate_symbol(j, cfg, ck);
  if (auto t = ck.number(j, "", "t", false)) {
    if (*t < 0 || *t > 1) ck.fail("/t", "must lie in [0, 1]");
    cfg.t = *t;
  }
  if (!j.contains("K_list") || !j.at("K_list").is_array() || j.at("K_list").empty()) {
    ck.fail("/K_list", "non-empty array of positive integers required");
  } else {
    const Json& ks = j.at("K_list");
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (!ks[i].is_number_integer() || ks[i].get<int>() < 1) {
        ck.fail("/K_list/" + std::to_string(i), "must be a positive integer");
        continue;
      }
      const int K = ks[i].get<int>();
      if (!cfg.K_list.empty() && K <= cfg.K_list.back()) ck.fail("/K_list/" + std::to_string(i), "must be ascending");
      cfg.K_list.push_back(K);
    }
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) ck.fail("/output", "must be a string");
    else cfg.output = j.at("output").get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) ck.fail("/seed", "must be a non-negative integer");
    else cfg.seed = j.at("seed").get<std::uint64_t>();
  }

  std::optional<BuiltSymbol> sym;
  if (ck.issues.empty()) {
    try {
      sym = build_symbol(cfg);
    } catch (const std::exception& e) {
      ck.fail("/symbol", e.what());
    }
  }
  if (sym) {
    for (std::size_t i = 0; i < cfg.K_list.size(); ++i)
      if (cfg.K_list[i] < sym->bandwidth)
        ck.fail("/K_list/" + std::to_string(i), "K is below the symbol bandwidth " + std::to_string(sym->bandwidth));
    if (sym->torus && cfg.t != 0.5) ck.fail("/t", "the torus symbol is Weyl-quantized only (t = 0.5)");
  }
  if (!j.contains("tasks") || !j.at("tasks").is_object()) {
    ck.fail("/tasks", "object of task name -> parameters required");
  } else {
    cfg.tasks = j.at("tasks");
    validate_tasks(cfg.tasks, cfg, sym ? &*sym : nullptr, ck);
  }
  if (!ck.issues.empty()) throw ConfigError(std::move(ck.issues));
  return cfg;
}

ScenarioConfig validate_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::vector<ValidationIssue>{{"", std::string("JSON syntax error: ") + e.what()}});
  }
  return validate_config(j);
}

// ---------------------------------------------------------------------------
// Running

namespace {

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::string fmt_interval(const Interval& I) { return "[" + fmt(I.lo) + ", " + fmt(I.hi) + "]"; }

template <class T>
T param(const Json& task, const std::string& key, T fallback) {
  return task.contains(key) ? task.at(key).get<T>() : fallback;
}

Interval interval_param(const Json& task, const std::string& key) {
  const Json& v = task.at(key);
  return {v[0].get<double>(), v[1].get<double>()};
}

class Runner {
 public:
  Runner(const ScenarioConfig& cfg, std::filesystem::path out, int jobs)
      : cfg_(cfg), out_(std::move(out)), jobs_(jobs), sym_(build_symbol(cfg)) {}

  ScenarioResult run() {
    std::filesystem::create_directories(out_);
    summary_ << "# Scenario summary\n\n";
    if (!cfg_.preset.empty()) {
      const PresetInfo& info = preset_info(cfg_.preset);
      summary_ << "Preset: `" << info.name << "`";
      if (info.takes_c) summary_ << " (c = " << fmt(cfg_.preset_c) << ")";
      summary_ << "\n\n" << info.description << "\n\n";
      if (!info.pinned.empty()) {
        summary_ << "Pinned choices:\n\n";
        for (const auto& [k, v] : info.pinned) summary_ << "- " << k << ": " << v << "\n";
        summary_ << "\n";
      }
    } else {
      summary_ << "Inline symbol.\n\n";
    }
    summary_ << "Quantization t = " << fmt(cfg_.t) << ", K list:";
    for (int K : cfg_.K_list) summary_ << " " << K;
    summary_ << ", seed " << cfg_.seed << ".\n\n";
    if (sym_.circle) write_json(out_ / "symbol.json", symbol_to_json(*sym_.circle));

    ScenarioResult result;
    for (const std::string& name : scenario_tasks()) {
      if (!cfg_.has_task(name)) continue;
      TaskOutcome o{name, true, ""};
      summary_ << "## " << name << "\n\n";
      try {
        dispatch(name, cfg_.tasks.at(name), o);
      } catch (const std::exception& e) {
        o.pass = false;
        o.note = std::string("error: ") + e.what();
        summary_ << "Task failed with an error: " << e.what() << "\n";
      }
      summary_ << "\nVerdict: " << (o.pass ? "PASS" : "FAIL") << "\n\n";
      result.tasks.push_back(o);
    }
    write_text(out_ / "summary.md", summary_.str());
    return result;
  }

 private:
  const ScenarioConfig& cfg_;
  std::filesystem::path out_;
  int jobs_;
  BuiltSymbol sym_;
  std::ostringstream summary_;
  std::optional<EssentialSpectrumPrediction> pred_;
  std::map<int, SpectralDecomposition> decs_;
  std::optional<StabilityResult> stability_;

  int K_max() const { return cfg_.K_list.back(); }

  const EssentialSpectrumPrediction& prediction() {
    if (!pred_) {
      const Json task = cfg_.has_task("essential") ? cfg_.tasks.at("essential") : Json::object();
      pred_ = predict_essential_spectrum(*sym_.circle, param(task, "n_grid", 2048), param(task, "refine_tol", 1e-12));
    }
    return *pred_;
  }

  OperatorMatrix matrix(int K) const {
    return sym_.circle ? quantize_circle(*sym_.circle, K, cfg_.t) : quantize_torus2_weyl(*sym_.torus, K);
  }

  const SpectralDecomposition& decomposition(int K) {
    auto it = decs_.find(K);
    if (it == decs_.end()) it = decs_.emplace(K, eigendecompose(matrix(K))).first;
    return it->second;
  }

  const StabilityResult& stability() {
    if (!stability_) {
      const Json task = cfg_.has_task("stability") ? cfg_.tasks.at("stability") : Json::object();
      std::vector<SpectralDecomposition> decs;
      for (int K : cfg_.K_list) decs.push_back(decomposition(K));
      stability_ = truncation_stability(decs, cfg_.K_list, param(task, "match_tol", 0.1 / K_max()));
    }
    return *stability_;
  }

  void dispatch(const std::string& name, const Json& task, TaskOutcome& o) {
    if (name == "essential") return essential(o);
    if (name == "spectrum") return spectrum(task, o);
    if (name == "stability") return stability_task(o);
    if (name == "density") return density(task, o);
    if (name == "mourre") return mourre(task, o);
    if (name == "unitary") return unitary(task, o);
    if (name == "hscheck") return hscheck(task, o);
    if (name == "classcheck") return classcheck(task, o);
    if (name == "ordergap") return ordergap(task, o);
  }

  void essential(TaskOutcome&) {
    const auto& p = prediction();
    write_json(out_ / "essential.json", to_json(p));
    summary_ << "Predicted essential spectrum: " << fmt_interval(p.interval_plus) << " (xi -> +inf) and "
             << fmt_interval(p.interval_minus) << " (xi -> -inf).\n\nCritical set N:";
    for (double v : p.critical_set) summary_ << " " << fmt(v);
    summary_ << "\n";
  }

  void spectrum(const Json& task, TaskOutcome& o) {
    std::ostringstream csv;
    csv << "lambda,label,localization,K\n";
    Json stats = Json::array();
    for (int K : cfg_.K_list) {
      const OperatorMatrix M = matrix(K);
      const SpectralDecomposition& dec = decomposition(K);
      const double norm = std::max(std::abs(dec.eigenvalues(0)), std::abs(dec.eigenvalues(dec.size() - 1)));
      const bool residual_ok = dec.residual <= 1e-10 * std::max(norm, 1e-300) || dec.residual == 0.0;
      o.pass = o.pass && residual_ok;
      Json st{{"K", K}, {"dimension", dec.size()}, {"residual", dec.residual}, {"min", dec.eigenvalues(0)},
              {"max", dec.eigenvalues(dec.size() - 1)}};
      if (sym_.circle) {
        const auto& pred = prediction();
        std::vector<double> persistent;
        double match_tol = 0.0;
        if (cfg_.K_list.size() >= 3) {
          persistent = stability().values();
          match_tol = stability().match_tol;
        }
        const SpectrumReport rep =
            classify_spectrum(dec, pred, param(task, "band_tol", 1e-8), persistent, match_tol);
        std::map<std::string, int> counts;
        for (int n = 0; n < dec.size(); ++n) {
          csv << format_double(dec.eigenvalues(n)) << "," << to_string(rep.labels[static_cast<std::size_t>(n)])
              << "," << format_double(rep.localization[static_cast<std::size_t>(n)]) << "," << K << "\n";
          ++counts[to_string(rep.labels[static_cast<std::size_t>(n)])];
        }
        std::vector<double> w(dec.eigenvalues.data(), dec.eigenvalues.data() + dec.size());
        const std::vector<Interval> bands = {pred.interval_plus, pred.interval_minus};
        const double hd = hausdorff_to_intervals(w, bands);
        st["hausdorff_to_bands"] = hd;
        st["labels"] = counts;
        summary_ << "- K = " << K << ": " << dec.size() << " eigenvalues in [" << fmt(dec.eigenvalues(0)) << ", "
                 << fmt(dec.eigenvalues(dec.size() - 1)) << "], Hausdorff distance to the predicted bands "
                 << fmt(hd) << ", labels:";
        for (const auto& [label, c] : counts) summary_ << " " << label << " " << c;
        summary_ << "\n";
      } else {
        for (int n = 0; n < dec.size(); ++n)
          csv << format_double(dec.eigenvalues(n)) << ",unclassified,"
              << format_double(localization_score(dec.eigenvectors.col(n))) << "," << K << "\n";
        // Eigenvector of the eigenvalue nearest 0 against e_(0,0).
        Eigen::Index best = 0;
        dec.eigenvalues.cwiseAbs().minCoeff(&best);
        const int origin = M.index(0, 0);
        const double overlap = std::abs(dec.eigenvectors(origin, best));
        const double column = M.dense().col(origin).cwiseAbs().maxCoeff();
        st["eigenvalue_nearest_zero"] = dec.eigenvalues(best);
        st["overlap_with_origin_mode"] = overlap;
        st["origin_column_max"] = column;
        summary_ << "- K = " << K << " (dimension " << dec.size() << "): eigenvalue nearest 0 is "
                 << fmt(dec.eigenvalues(best), 3) << ", overlap with e_(0,0) " << fmt(overlap, 12)
                 << ", max |entry| in column (0,0) " << fmt(column, 3) << "\n";
      }
      stats.push_back(st);
    }
    write_text(out_ / "spectrum.csv", csv.str());
    write_json(out_ / "spectrum.json", stats);
  }

  void stability_task(TaskOutcome&) {
    const StabilityResult& s = stability();
    write_json(out_ / "stability.json", to_json(s));
    const auto& pred = prediction();
    if (s.persistent.empty()) summary_ << "No persistent eigenvalues across the K list.\n";
    for (const auto& p : s.persistent)
      summary_ << "- persistent eigenvalue " << fmt(p.value) << " (localization " << fmt(p.localization, 4) << "), "
               << (pred.band_distance(p.value) <= 1e-8 ? "inside band " : "outside the bands ")
               << (pred.interval_plus.contains(p.value, 1e-8) ? fmt_interval(pred.interval_plus)
                                                               : fmt_interval(pred.interval_minus))
               << "\n";
  }

  Eigen::VectorXcd probe_vector(const std::string& kind, int K) const {
    const int n = 2 * K + 1;
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
    if (kind == "e0") {
      u(K) = 1.0;
    } else if (kind == "ones") {
      u.setOnes();
    } else {
      std::mt19937_64 rng(cfg_.seed);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      for (int i = 0; i < n; ++i) {
        const double re = unit(rng);
        u(i) = cplx{re, unit(rng)};
      }
    }
    return u / u.norm();
  }

  void density(const Json& task, TaskOutcome&) {
    const int K = param(task, "K", K_max());
    const Json& g = task.at("grid");
    const double lo = g.at("lo").get<double>(), hi = g.at("hi").get<double>();
    const int n = param(g, "n", 201);
    std::vector<double> grid;
    for (int i = 0; i < n; ++i) grid.push_back(lo + (hi - lo) * i / (n - 1));
    const SpectralDecomposition& dec = decomposition(K);
    const double spacing = mean_level_spacing(dec, lo, hi);
    const double eps = param(task, "epsilon", 10.0 * spacing);
    const std::string kind = param<std::string>(task, "probe", "ones");
    const Eigen::VectorXcd u = probe_vector(kind, K);
    const DensityResult d = spectral_density(dec, u, grid, eps);
    std::ostringstream csv;
    csv << "lambda,rho\n";
    for (std::size_t i = 0; i < d.lambda.size(); ++i) csv << format_double(d.lambda[i]) << "," << format_double(d.rho[i]) << "\n";
    write_text(out_ / "density.csv", csv.str());
    const double surv = survival_average(dec, u);
    write_json(out_ / "density.json", Json{{"K", K},
                                           {"probe", kind},
                                           {"epsilon", d.epsilon},
                                           {"mean_spacing", std::isfinite(d.mean_spacing) ? Json(d.mean_spacing) : Json()},
                                           {"below_spacing_floor", d.below_spacing_floor},
                                           {"survival_average", surv}});
    summary_ << "K = " << K << ", probe " << kind << ", epsilon " << fmt(eps) << ", survival average " << fmt(surv)
             << (d.below_spacing_floor ? " (warning: epsilon below twice the mean level spacing)" : "") << "\n";
  }

  void mourre(const Json& task, TaskOutcome& o) {
    const MourreReport r = mourre_check_selfadjoint(*sym_.circle, interval_param(task, "interval"),
                                                    interval_param(task, "enclosing"), param(task, "K", K_max()),
                                                    param(task, "cutoff_order", 5));
    write_json(out_ / "mourre.json", to_json(r));
    o.pass = r.pass;
    summary_ << "C = " << fmt(r.C) << ", commutator symbol residual " << fmt(r.residual, 3) << "\n\n";
    for (const auto& e : r.lambda_min) summary_ << "- lambda_min(n = " << e.n << ") = " << fmt(e.value, 4) << "\n";
  }

  void unitary(const Json& task, TaskOutcome& o) {
    const int K = param(task, "K", K_max());
    const MourreReport r = mourre_check_unitary(*sym_.circle, interval_param(task, "arc"), K);
    Json j = to_json(r);
    Json defects = Json::array();
    const std::vector<int> ns = param(task, "defect_n", std::vector<int>{K / 8, K / 4});
    for (int n : ns) defects.push_back(Json{{"n", n}, {"defect", unitarity_defect(*sym_.circle, K, n)}});
    j["unitarity_defect"] = defects;
    write_json(out_ / "unitary.json", j);
    o.pass = r.pass;
    const UnitaryExtras& u = *r.unitary;
    summary_ << "C = " << fmt(r.C) << ", polar eigenvalues within " << fmt(u.polar_circle_distance, 3)
             << " of the unit circle, truncated U within " << fmt(u.truncated_circle_distance, 3)
             << ", arc coverage distance " << fmt(u.arc_coverage, 3) << "\n\n";
    for (const auto& e : r.lambda_min) summary_ << "- lambda_min(n = " << e.n << ") = " << fmt(e.value, 4) << "\n";
    for (const auto& d : defects) summary_ << "- unitarity defect(n = " << d["n"] << ") = " << fmt(d["defect"].get<double>(), 4) << "\n";
  }

  void hscheck(const Json& task, TaskOutcome& o) {
    const int K = param(task, "K", cfg_.K_list.front());
    const Interval I = interval_param(task, "interval"), E = interval_param(task, "enclosing");
    const SmoothCutoff chi = build_cutoff(I.lo, I.hi, E.lo, E.hi);
    const AlmostAnalyticExtension ext = almost_analytic(chi, param(task, "N", 5), param(task, "Y0", 0.0));
    const QuadratureGrid quad{param(task, "nx", 400), param(task, "ny", 200)};
    const OperatorMatrix H = matrix(K);
    const Eigen::MatrixXcd hs = hs_apply(H, ext, quad, jobs_);
    const Eigen::MatrixXcd ev = eig_apply(decomposition(K), [&](double x) { return chi(x); });
    const double disc = (hs - ev).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd Hd = H.dense();
    const double comm = (Hd * hs - hs * Hd).cwiseAbs().maxCoeff();
    const double expo = dbar_decay_exponent(ext);
    write_json(out_ / "hscheck.json", Json{{"K", K},
                                           {"N", ext.order()},
                                           {"Y0", ext.Y0()},
                                           {"nx", quad.nx},
                                           {"ny", quad.ny},
                                           {"discrepancy", disc},
                                           {"commutator_with_H", comm},
                                           {"dbar_exponent", expo}});
    o.pass = disc <= 1e-6;
    summary_ << "max |hs_apply - eig_apply| = " << fmt(disc, 3) << " (K = " << K << ", N = " << ext.order() << ", "
             << quad.nx << " x " << quad.ny << " grid, Y0 = " << fmt(ext.Y0()) << "); ||[H, chi(H)]||_max = "
             << fmt(comm, 3) << "; fitted dbar exponent " << fmt(expo, 4) << "\n";
  }

  void classcheck(const Json& task, TaskOutcome& o) {
    const double m = param(task, "m", 0.0);
    const auto probes = log_probes(1.0, 1e6, param(task, "n_probes", 25));
    const SymbolClassTable t = estimate_symbol_class(*sym_.circle, m, param(task, "alpha_max", 2),
                                                     param(task, "beta_max", 2), param(task, "x_grid", 64), probes);
    write_json(out_ / "classcheck.json", to_json(t));
    o.pass = t.bounded();
    summary_ << "Symbol class estimate at m = " << fmt(m) << ": " << (t.bounded() ? "bounded" : "unbounded") << "\n";
  }

  void ordergap(const Json& task, TaskOutcome&) {
    const int K = param(task, "K", K_max());
    const std::vector<int> ns = param(task, "n", std::vector<int>{K / 8, K / 4});
    Json rows = Json::array();
    for (int n : ns) {
      const double g = order_gap_norm(*sym_.circle, K, n);
      rows.push_back(Json{{"n", n}, {"norm", g}, {"n_times_norm", n * g}});
      summary_ << "- ||P(Op_1 - Op_1/2)P|| at n = " << n << ": " << fmt(g, 4) << "\n";
    }
    write_json(out_ / "ordergap.json", Json{{"K", K}, {"values", rows}});
  }
};

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir, int jobs) {
  return Runner(cfg, out_dir, jobs).run();
}

}  // namespace psdo
