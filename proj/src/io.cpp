#include "sectorgraph/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace sg::io {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_object(const Json& j, const std::string& what) {
  if (!j.is_object()) fail(what + " must be a JSON object");
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) {
      std::string msg = "unknown key '" + key + "' in " + what + "; allowed:";
      for (const auto& a : allowed) msg += " " + a;
      fail(msg);
    }
  }
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) fail("'" + field + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail("'" + field + "' must be finite");
  return v;
}

std::uint64_t count(const Json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) fail("'" + field + "' must be nonnegative");
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0 && v == std::floor(v) && v < 1.8e19) return static_cast<std::uint64_t>(v);
  }
  fail("'" + field + "' must be a nonnegative integer");
}

std::uint32_t count32(const Json& j, const std::string& field) {
  const std::uint64_t v = count(j, field);
  if (v > 0xffffffffULL) fail("'" + field + "' is too large");
  return static_cast<std::uint32_t>(v);
}

double parse_decimal(const std::string& s, const std::string& field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail("'" + field + "' holds a malformed number '" + s + "'");
  return v;
}

std::vector<DegreeKind> parse_kinds(const Json& j, const std::string& field) {
  if (j.is_string() && j.get<std::string>() == "both") return {DegreeKind::Out, DegreeKind::In};
  if (j.is_string()) return {parse_kind(j, field)};
  if (j.is_array() && !j.empty()) {
    std::vector<DegreeKind> out;
    for (const auto& e : j) {
      const DegreeKind k = parse_kind(e, field);
      if (std::find(out.begin(), out.end(), k) != out.end()) fail("'" + field + "' lists a kind twice");
      out.push_back(k);
    }
    return out;
  }
  fail("'" + field + "' must be \"out\", \"in\", \"both\" or a list of kinds");
}

Json kinds_to_json(const std::vector<DegreeKind>& kinds) {
  Json a = Json::array();
  for (DegreeKind k : kinds) a.push_back(std::string(to_string(k)));
  return a;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string text_cell(const Json& v) {
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    return buf;
  }
  if (v.is_null()) return "-";
  return csv_cell(v);
}

const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> cols = {"criterion", "t",      "u",           "kind",      "k",
                                                "epsilon",   "empirical", "std_error", "theory",    "metric",
                                                "discrepancy", "tolerance", "pass"};
  return cols;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_angle(const Json& j, const std::string& field) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "pi") return kPi;
    if (s == "pi/2") return kPi / 2;
    if (s == "3pi/2") return 3 * kPi / 2;
    if (s == "2pi") return kTwoPi;
    fail("'" + field + "' must be radians or one of \"pi\", \"pi/2\", \"3pi/2\", \"2pi\"; got \"" + s + "\"");
  }
  return number(j, field);
}

double parse_scale(const Json& j, double alpha, const std::string& field) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "2/alpha") return 2.0 / alpha;
    if (s == "4/alpha") return 4.0 / alpha;
    fail("'" + field + "' must be a number, \"2/alpha\" or \"4/alpha\"; got \"" + s + "\"");
  }
  return number(j, field);
}

Point2 parse_point(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail("'" + field + "' must be a two-element array");
  return Point2(number(j[0], field), number(j[1], field));
}

DensityModel parse_density(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "uniform") return DensityModel::uniform();
    if (s == "gaussian") return DensityModel::gaussian();
    fail("unknown density '" + s + "'; valid: uniform, gaussian, {\"type\": \"grid\", ...}");
  }
  require_object(j, "density");
  reject_unknown_keys(j, {"type", "origin", "cell_size", "nx", "ny", "values"}, "density");
  if (!j.contains("type") || j["type"] != "grid") fail("object densities must have \"type\": \"grid\"");
  for (const char* key : {"cell_size", "nx", "ny", "values"})
    if (!j.contains(key)) fail(std::string("grid density needs '") + key + "'");
  PiecewiseConstantGrid g;
  if (j.contains("origin")) g.origin = parse_point(j["origin"], "density.origin");
  g.cell_size = number(j["cell_size"], "density.cell_size");
  g.nx = static_cast<int>(count32(j["nx"], "density.nx"));
  g.ny = static_cast<int>(count32(j["ny"], "density.ny"));
  if (!j["values"].is_array()) fail("'density.values' must be an array");
  for (const auto& v : j["values"])
    g.values.push_back(v.is_string() ? parse_decimal(v.get<std::string>(), "density.values")
                                     : number(v, "density.values"));
  try {
    return DensityModel::grid(std::move(g));
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid grid density: ") + e.what());
  }
}

Density3 parse_density3(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "uniform") return Density3::UniformCube;
    if (s == "gaussian") return Density3::Gaussian3;
  }
  fail("3-D density must be \"uniform\" or \"gaussian\"");
}

Region parse_region(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "plane") return WholePlane{};
    fail("region must be \"plane\" or an object with a type");
  }
  require_object(j, "region");
  if (!j.contains("type") || !j["type"].is_string()) fail("region needs a string 'type'");
  const std::string type = j["type"].get<std::string>();
  Region r;
  if (type == "plane") {
    reject_unknown_keys(j, {"type"}, "region");
    r = WholePlane{};
  } else if (type == "rect") {
    reject_unknown_keys(j, {"type", "lo", "hi"}, "region");
    if (!j.contains("lo") || !j.contains("hi")) fail("rect region needs 'lo' and 'hi'");
    r = Rect{parse_point(j["lo"], "region.lo"), parse_point(j["hi"], "region.hi")};
  } else if (type == "disk") {
    reject_unknown_keys(j, {"type", "center", "radius"}, "region");
    if (!j.contains("center") || !j.contains("radius")) fail("disk region needs 'center' and 'radius'");
    r = Disk{parse_point(j["center"], "region.center"), number(j["radius"], "region.radius")};
  } else if (type == "sector") {
    reject_unknown_keys(j, {"type", "apex", "inclination", "amplitude", "radius"}, "region");
    for (const char* key : {"apex", "inclination", "amplitude", "radius"})
      if (!j.contains(key)) fail(std::string("sector region needs '") + key + "'");
    r = SectorSpec{parse_point(j["apex"], "region.apex"), parse_angle(j["inclination"], "region.inclination"),
                   parse_angle(j["amplitude"], "region.amplitude"), number(j["radius"], "region.radius")};
  } else {
    fail("unknown region type '" + type + "'; valid: plane, rect, disk, sector");
  }
  try {
    validate_region(r);
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid region: ") + e.what());
  }
  return r;
}

Norm parse_norm(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "l2") return Norm::l2();
    if (s == "linf") return Norm::linf();
  } else if (j.is_object() && j.size() == 1 && j.contains("lp")) {
    try {
      return Norm::lp(number(j["lp"], "norm.lp"));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  fail("norm must be \"l2\", \"linf\" or {\"lp\": p}");
}

DegreeKind parse_kind(const Json& j, const std::string& field) {
  if (j.is_string()) {
    if (j == "out") return DegreeKind::Out;
    if (j == "in") return DegreeKind::In;
  }
  fail("'" + field + "' must be \"out\" or \"in\"");
}

std::vector<double> parse_number_list(const Json& j, const std::string& field) {
  if (j.is_number()) return {number(j, field)};
  if (!j.is_array() || j.empty()) fail("'" + field + "' must be a number or a nonempty array of numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number(e, field));
  return out;
}

Json density_to_json(const DensityModel& d) {
  if (d.is_uniform()) return "uniform";
  if (d.is_gaussian()) return "gaussian";
  const auto& g = std::get<PiecewiseConstantGrid>(d.variant());
  Json j;
  j["type"] = "grid";
  j["origin"] = {g.origin.x(), g.origin.y()};
  j["cell_size"] = g.cell_size;
  j["nx"] = g.nx;
  j["ny"] = g.ny;
  j["values"] = g.values;
  return j;
}

Json region_to_json(const Region& r) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        Json j;
        if constexpr (std::is_same_v<T, WholePlane>) {
          j["type"] = "plane";
        } else if constexpr (std::is_same_v<T, Rect>) {
          j["type"] = "rect";
          j["lo"] = {v.lo.x(), v.lo.y()};
          j["hi"] = {v.hi.x(), v.hi.y()};
        } else if constexpr (std::is_same_v<T, Disk>) {
          j["type"] = "disk";
          j["center"] = {v.center.x(), v.center.y()};
          j["radius"] = v.radius;
        } else {
          j["type"] = "sector";
          j["apex"] = {v.apex.x(), v.apex.y()};
          j["inclination"] = v.inclination;
          j["amplitude"] = v.amplitude;
          j["radius"] = v.radius;
        }
        return j;
      },
      r);
}

Json norm_to_json(const Norm& n) {
  switch (n.kind) {
    case Norm::Kind::L2:
      return "l2";
    case Norm::Kind::Linf:
      return "linf";
    case Norm::Kind::Lp:
      return Json{{"lp", n.p}};
  }
  return "l2";
}

ExperimentConfig parse_experiment_config(const Json& j, ExperimentConfig cfg) {
  require_object(j, "experiment config");
  reject_unknown_keys(j,
                      {"experiment", "density", "alpha", "regime", "n", "replicates", "t", "region", "seed",
                       "poissonized", "kind", "threads", "k_max", "epsilon", "tolerances", "variance_kind",
                       "theory_trials"},
                      "experiment config");
  if (j.contains("density")) cfg.density = parse_density(j["density"]);
  if (j.contains("alpha")) cfg.alpha = parse_angle(j["alpha"], "alpha");
  if (j.contains("regime")) {
    const Json& r = j["regime"];
    require_object(r, "regime");
    if (!r.contains("type") || !r["type"].is_string()) fail("regime needs a string 'type'");
    const std::string type = r["type"].get<std::string>();
    if (type == "fixed_k") {
      reject_unknown_keys(r, {"type", "k"}, "regime");
      cfg.regime = RegimeKind::FixedK;
      if (r.contains("k")) cfg.k = count32(r["k"], "regime.k");
    } else if (type == "growing_k") {
      reject_unknown_keys(r, {"type", "s", "gamma"}, "regime");
      cfg.regime = RegimeKind::GrowingK;
      if (r.contains("s")) cfg.s = parse_scale(r["s"], cfg.alpha, "regime.s");
      if (r.contains("gamma")) cfg.gamma = number(r["gamma"], "regime.gamma");
    } else {
      fail("unknown regime type '" + type + "'; valid: fixed_k, growing_k");
    }
  }
  if (j.contains("n")) cfg.n = count(j["n"], "n");
  if (j.contains("replicates")) cfg.replicates = count(j["replicates"], "replicates");
  if (j.contains("t")) cfg.t_list = parse_number_list(j["t"], "t");
  if (j.contains("region")) cfg.region = parse_region(j["region"]);
  if (j.contains("seed")) cfg.seed = count(j["seed"], "seed");
  if (j.contains("poissonized")) {
    const Json& p = j["poissonized"];
    if (p == "none") {
      cfg.coupled = false;
    } else if (p == "coupled") {
      cfg.coupled = true;
    } else {
      fail("'poissonized' must be \"none\" or \"coupled\"");
    }
  }
  if (j.contains("kind")) cfg.kinds = parse_kinds(j["kind"], "kind");
  if (j.contains("variance_kind")) cfg.variance_kinds = parse_kinds(j["variance_kind"], "variance_kind");
  if (j.contains("threads")) cfg.threads = count32(j["threads"], "threads");
  if (j.contains("k_max")) cfg.k_max = count32(j["k_max"], "k_max");
  if (j.contains("epsilon")) cfg.epsilons = parse_number_list(j["epsilon"], "epsilon");
  if (j.contains("theory_trials")) cfg.theory_trials = count(j["theory_trials"], "theory_trials");
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    require_object(t, "tolerances");
    const std::vector<std::pair<std::string, double*>> fields = {
        {"tv", &cfg.tv_tolerance},
        {"p0", &cfg.p0_tolerance},
        {"pooled_se_multiplier", &cfg.pooled_se_multiplier},
        {"se_multiplier", &cfg.se_multiplier},
        {"bias", &cfg.bias_allowance},
        {"ks", &cfg.ks_tolerance},
        {"variance_rel", &cfg.variance_rel_tolerance},
        {"correction_rel", &cfg.correction_rel_tolerance},
    };
    std::set<std::string> allowed;
    for (const auto& f : fields) allowed.insert(f.first);
    reject_unknown_keys(t, allowed, "tolerances");
    for (const auto& [key, target] : fields)
      if (t.contains(key)) *target = number(t[key], "tolerances." + key);
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return cfg;
}

ExperimentConfig experiment_config_from_json(const Json& j, const std::string& preset_override) {
  require_object(j, "experiment config");
  std::string name = preset_override;
  if (name.empty()) {
    if (!j.contains("experiment") || !j["experiment"].is_string())
      fail("no experiment preset given; set \"experiment\" or pass --preset");
    name = j["experiment"].get<std::string>();
  }
  Preset preset;
  try {
    preset = preset_from_string(name);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return parse_experiment_config(j, preset_config(preset));
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["experiment"] = to_string(cfg.preset);
  j["density"] = density_to_json(cfg.density);
  j["alpha"] = cfg.alpha;
  Json regime;
  if (cfg.regime == RegimeKind::FixedK) {
    regime["type"] = "fixed_k";
    regime["k"] = cfg.k;
  } else {
    regime["type"] = "growing_k";
    regime["s"] = cfg.s;
    regime["gamma"] = cfg.gamma;
  }
  j["regime"] = regime;
  j["n"] = cfg.n;
  j["replicates"] = cfg.replicates;
  j["t"] = cfg.t_list;
  j["region"] = region_to_json(cfg.region);
  j["seed"] = cfg.seed;
  j["poissonized"] = cfg.coupled ? "coupled" : "none";
  j["kind"] = kinds_to_json(cfg.kinds);
  j["variance_kind"] = kinds_to_json(cfg.variance_kinds);
  j["k_max"] = cfg.k_max;
  j["epsilon"] = cfg.epsilons;
  j["theory_trials"] = cfg.theory_trials;
  j["tolerances"] = {
      {"tv", cfg.tv_tolerance},
      {"p0", cfg.p0_tolerance},
      {"pooled_se_multiplier", cfg.pooled_se_multiplier},
      {"se_multiplier", cfg.se_multiplier},
      {"bias", cfg.bias_allowance},
      {"ks", cfg.ks_tolerance},
      {"variance_rel", cfg.variance_rel_tolerance},
      {"correction_rel", cfg.correction_rel_tolerance},
  };
  return j;
}

Json row_to_json(const ReportRow& row) {
  Json j;
  j["criterion"] = row.criterion;
  j["t"] = optional_number(row.t);
  j["u"] = optional_number(row.u);
  j["kind"] = row.kind ? Json(*row.kind) : Json(nullptr);
  j["k"] = row.k ? Json(*row.k) : Json(nullptr);
  j["epsilon"] = optional_number(row.epsilon);
  j["empirical"] = row.empirical;
  j["std_error"] = optional_number(row.std_error);
  j["theory"] = optional_number(row.theory);
  j["theory_std_error"] = optional_number(row.theory_std_error);
  j["metric"] = row.metric;
  j["discrepancy"] = row.discrepancy;
  j["tolerance"] = optional_number(row.tolerance);
  j["pass"] = row.pass;
  return j;
}

Json report_to_json(const ExperimentReport& report) {
  Json j;
  j["schema_version"] = ExperimentReport::kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["experiment"] = to_string(report.config.preset);
  j["all_pass"] = report.all_pass();
  j["config"] = config_to_json(report.config);
  j["replicate_count"] = report.replicates.size();
  j["warnings"] = report.warnings;
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(row_to_json(r));
  j["rows"] = rows;
  return j;
}

void write_replicates_csv(std::ostream& os, const ExperimentReport& report) {
  const ExperimentConfig& cfg = report.config;
  os << "replicate,t,kind,xi,xi_poisson,N\n";
  for (const auto& rec : report.replicates)
    for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti)
      for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki) {
        os << rec.replicate << ',' << format_double(cfg.t_list[ti]) << ',' << to_string(cfg.kinds[ki]) << ','
           << rec.xi[ki][ti] << ',';
        if (!rec.xi_poisson.empty()) os << rec.xi_poisson[ki][ti];
        os << ',';
        if (rec.N) os << *rec.N;
        os << '\n';
      }
}

std::vector<SummaryRow> merge_reports(const std::vector<Json>& reports) {
  if (reports.empty()) fail("report needs at least one input");
  std::set<std::int64_t> versions;
  for (const auto& r : reports) {
    if (!r.is_object() || !r.contains("schema_version") || !r["schema_version"].is_number_integer())
      fail("input is not a report: missing integer schema_version");
    versions.insert(r["schema_version"].get<std::int64_t>());
  }
  versions.insert(ExperimentReport::kSchemaVersion);
  if (versions.size() > 1) {
    std::string msg = "schema_version conflict:";
    for (auto v : versions) msg += " " + std::to_string(v);
    msg += " (this tool reads version " + std::to_string(ExperimentReport::kSchemaVersion) + ")";
    fail(msg);
  }
  std::vector<SummaryRow> rows;
  for (const auto& r : reports) {
    if (!r.contains("experiment") || !r["experiment"].is_string() || !r.contains("rows") || !r["rows"].is_array())
      fail("report is missing 'experiment' or 'rows'");
    for (const auto& row : r["rows"]) {
      if (!row.is_object() || !row.contains("pass")) fail("malformed report row");
      rows.push_back({r["experiment"].get<std::string>(), row});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    if (a.experiment != b.experiment) return a.experiment < b.experiment;
    const Json& ta = a.row.contains("t") ? a.row["t"] : Json(nullptr);
    const Json& tb = b.row.contains("t") ? b.row["t"] : Json(nullptr);
    if (ta.is_number() != tb.is_number()) return !ta.is_number();
    return ta.is_number() && ta.get<double>() < tb.get<double>();
  });
  return rows;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "experiment";
  for (const auto& c : summary_columns()) os << ',' << c;
  os << '\n';
  for (const auto& r : rows) {
    os << r.experiment;
    for (const auto& c : summary_columns()) os << ',' << csv_cell(r.row.contains(c) ? r.row[c] : Json(nullptr));
    os << '\n';
  }
}

void write_summary_text(std::ostream& os, const std::vector<SummaryRow>& rows) {
  const std::vector<std::string> cols = {"criterion", "t",      "kind",      "k",         "epsilon",
                                         "empirical", "theory", "discrepancy", "tolerance", "pass"};
  std::vector<std::vector<std::string>> table;
  table.push_back({"experiment"});
  table.back().insert(table.back().end(), cols.begin(), cols.end());
  std::size_t failed = 0;
  for (const auto& r : rows) {
    std::vector<std::string> line = {r.experiment};
    for (const auto& c : cols) {
      const Json v = r.row.contains(c) ? r.row[c] : Json(nullptr);
      if (c == "pass") {
        line.push_back(r.row.value("metric", "") == "info" ? "info" : (v == true ? "PASS" : "FAIL"));
      } else {
        line.push_back(text_cell(v));
      }
    }
    if (r.row["pass"] != true) ++failed;
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& line : table)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
    }
    os << '\n';
  }
  os << rows.size() << " rows, " << failed << " failed\n";
}

void write_points_csv(std::ostream& os, const MarkedPointCloud& cloud) {
  os << "index,x,y,inclination\n";
  for (std::size_t i = 0; i < cloud.size(); ++i)
    os << i << ',' << format_double(cloud.positions[i].x()) << ',' << format_double(cloud.positions[i].y()) << ','
       << format_double(cloud.inclinations[i]) << '\n';
}

void write_points3_csv(std::ostream& os, const MarkedPointCloud3& cloud) {
  os << "index,x,y,z,azimuth,elevation\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3& p = cloud.positions[i];
    os << i << ',' << format_double(p.x()) << ',' << format_double(p.y()) << ',' << format_double(p.z()) << ','
       << format_double(cloud.azimuths[i]) << ',' << format_double(cloud.elevations[i]) << '\n';
  }
}

void write_degrees_csv(std::ostream& os, const GeometricDigraph& g) {
  os << "index,out_deg,in_deg\n";
  for (std::size_t i = 0; i < g.n; ++i) os << i << ',' << g.out_deg[i] << ',' << g.in_deg[i] << '\n';
}

void write_arcs_csv(std::ostream& os, const std::vector<DirectedArc>& arcs) {
  os << "source,target\n";
  for (const auto& a : arcs) os << a.source << ',' << a.target << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path, ec)) throw IoError("cannot create directory '" + path + "'");
}

Json manifest(const std::string& command, std::uint64_t seed, const Json& config, const Json& extra) {
  Json j;
  j["schema_version"] = ExperimentReport::kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["config"] = config;
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

}  // namespace sg::io
