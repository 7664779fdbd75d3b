#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sectorgraph/digraph.hpp"
#include "sectorgraph/geometry.hpp"
#include "sectorgraph/io.hpp"
#include "sectorgraph/montecarlo.hpp"
#include "sectorgraph/rng.hpp"
#include "sectorgraph/sampling.hpp"
#include "sectorgraph/theory.hpp"

namespace sg::cli {
namespace {

using io::ConfigError;
using io::Json;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

template <class Fn>
auto config_guard(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

int cmd_generate(const std::string& config_path, const std::string& out_dir, const Overrides& ov,
                 std::ostream& out) {
  const Json cfg = io::read_json_file(config_path);
  if (!cfg.is_object()) throw ConfigError("generate config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    (void)value;
    static const std::set<std::string> allowed = {"density", "alpha", "regime", "t",      "n",      "seed",
                                                  "norm",    "arcs",  "dimension", "method", "threads"};
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in generate config");
  }
  for (const char* key : {"n", "t", "regime"})
    if (!cfg.contains(key)) throw ConfigError(std::string("generate config needs '") + key + "'");

  const double alpha = cfg.contains("alpha") ? io::parse_angle(cfg["alpha"], "alpha") : kPi;
  if (!(alpha > 0 && alpha <= kTwoPi)) throw ConfigError("alpha must lie in (0, 2pi]");
  if (!cfg["n"].is_number_integer() || cfg["n"].get<std::int64_t>() < 0)
    throw ConfigError("'n' must be a nonnegative integer");
  const auto n = cfg["n"].get<std::uint64_t>();
  if (!cfg["t"].is_number()) throw ConfigError("'t' must be a number");
  const double t = cfg["t"].get<double>();
  const int dimension = cfg.value("dimension", 2);
  if (dimension != 2 && dimension != 3) throw ConfigError("'dimension' must be 2 or 3");
  std::uint64_t seed = cfg.contains("seed") ? cfg["seed"].get<std::uint64_t>() : 1;
  if (ov.seed) seed = *ov.seed;

  const Json& rj = cfg["regime"];
  if (!rj.is_object() || !rj.contains("type")) throw ConfigError("regime needs a 'type'");
  RadiusRegime regime;
  if (rj["type"] == "fixed_k") {
    regime = FixedK{rj.contains("k") ? rj["k"].get<std::uint32_t>() : 1, t};
  } else if (rj["type"] == "growing_k") {
    const double s = rj.contains("s") ? io::parse_scale(rj["s"], alpha, "regime.s") : 2.0 / alpha;
    const KnSchedule sched{rj.contains("gamma") ? rj["gamma"].get<double>() : 0.3};
    config_guard([&] {
      sched.validate();
      return 0;
    });
    regime = GrowingK{s, t, n > 0 ? sched.kn(n) : 1};
  } else {
    throw ConfigError("unknown regime type; valid: fixed_k, growing_k");
  }
  config_guard([&] {
    validate_regime(regime);
    return 0;
  });

  BuildOptions opts;
  opts.store_arcs = cfg.value("arcs", false);
  opts.threads = ov.threads.value_or(cfg.value("threads", 1u));
  if (opts.threads < 1) throw ConfigError("threads must be at least 1");
  if (cfg.contains("norm")) opts.norm = io::parse_norm(cfg["norm"]);
  if (cfg.contains("method")) {
    if (cfg["method"] == "grid") {
      opts.method = BuildMethod::Grid;
    } else if (cfg["method"] == "brute") {
      opts.method = BuildMethod::Brute;
    } else {
      throw ConfigError("'method' must be \"grid\" or \"brute\"");
    }
  }
  if (dimension == 3 && opts.norm.kind != Norm::Kind::L2) throw ConfigError("3-D digraphs use the Euclidean norm");

  io::ensure_directory(out_dir);
  SeededRng rng(seed, 0);
  std::optional<double> r_n;
  std::ostringstream points, degrees, arcs;
  GeometricDigraph g;
  if (dimension == 2) {
    const DensityModel density = cfg.contains("density") ? io::parse_density(cfg["density"]) : DensityModel::uniform();
    const MarkedPointCloud cloud = sample_marked(density, n, rng);
    if (n > 0) {
      r_n = radius(regime, n);
      g = build_digraph(cloud, alpha, *r_n, opts);
    }
    io::write_points_csv(points, cloud);
  } else {
    const Density3 density = cfg.contains("density") ? io::parse_density3(cfg["density"]) : Density3::UniformCube;
    const MarkedPointCloud3 cloud = sample_marked_3d(density, n, rng);
    if (n > 0) {
      r_n = radius_3d(regime, n);
      g = build_digraph_3d(cloud, alpha, *r_n, opts);
    }
    io::write_points3_csv(points, cloud);
  }
  io::write_degrees_csv(degrees, g);
  io::write_text_file(join_path(out_dir, "points.csv"), points.str());
  io::write_text_file(join_path(out_dir, "degrees.csv"), degrees.str());
  Json files = {"points.csv", "degrees.csv"};
  if (opts.store_arcs) {
    io::write_arcs_csv(arcs, g.arcs.value_or(std::vector<DirectedArc>{}));
    io::write_text_file(join_path(out_dir, "arcs.csv"), arcs.str());
    files.push_back("arcs.csv");
  }
  Json echo = cfg;
  echo.erase("threads");
  echo["seed"] = seed;
  Json extra;
  extra["r_n"] = r_n ? Json(*r_n) : Json(nullptr);
  extra["degree_threshold"] = threshold(regime);
  extra["arc_count"] = g.arc_count();
  extra["files"] = files;
  io::write_text_file(join_path(out_dir, "manifest.json"), io::dump(io::manifest("generate", seed, echo, extra)));
  out << "wrote " << n << " points and " << g.arc_count() << " arcs to " << out_dir << "\n";
  return kPass;
}

// ---------------------------------------------------------------------------
// theory
// ---------------------------------------------------------------------------

// One fully expanded request with scalar parameters.
class Params {
 public:
  explicit Params(Json j) : j_(std::move(j)) {}

  const Json& json() const { return j_; }
  bool has(const char* key) const { return j_.contains(key); }

  const Json& at(const std::string& formula, const char* key) const {
    if (!j_.contains(key)) throw ConfigError("formula '" + formula + "' needs '" + key + "'");
    return j_[key];
  }
  double alpha() const { return has("alpha") ? io::parse_angle(j_["alpha"], "alpha") : kPi; }
  DensityModel density() const { return has("density") ? io::parse_density(j_["density"]) : DensityModel::uniform(); }
  Density3 density3() const { return has("density") ? io::parse_density3(j_["density"]) : Density3::UniformCube; }
  Region region() const { return has("region") ? io::parse_region(j_["region"]) : Region{WholePlane{}}; }
  double num(const std::string& f, const char* key) const {
    const Json& v = at(f, key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
  }
  double num_or(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return j_[key].get<double>();
  }
  std::uint64_t count(const std::string& f, const char* key) const {
    const Json& v = at(f, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw ConfigError(std::string("'") + key + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
  }
  std::uint32_t k(const std::string& f) const { return static_cast<std::uint32_t>(count(f, "k")); }
  double s(const std::string& f) const { return io::parse_scale(at(f, "s"), alpha(), "s"); }
  double u(const std::string& f) const { return has("u") ? num(f, "u") : num(f, "t"); }
  DegreeKind kind(const std::string& f) const { return io::parse_kind(at(f, "kind"), "kind"); }
  McOptions mc() const {
    McOptions m;
    if (has("trials")) m.trials = count("", "trials");
    if (has("seed")) m.seed = count("", "seed");
    return m;
  }
  // FixedK when 'k' is given, GrowingK when 's' is given; kn comes from 'kn' or the gamma schedule at n.
  RadiusRegime regime(const std::string& f) const {
    const double t = num(f, "t");
    if (has("k") && has("s")) throw ConfigError("give either 'k' (fixed) or 's' (growing), not both");
    if (has("k")) return FixedK{k(f), t};
    if (!has("s")) throw ConfigError("formula '" + f + "' needs 'k' or 's'");
    std::uint32_t kn;
    if (has("kn")) {
      kn = static_cast<std::uint32_t>(count(f, "kn"));
    } else {
      kn = config_guard([&] { return KnSchedule{num_or("gamma", 0.3)}.kn(count(f, "n")); });
    }
    return GrowingK{s(f), t, kn};
  }

 private:
  Json j_;
};

struct TheoryResult {
  double value = 0.0;
  std::optional<double> std_error;
  Json components;
};

using TheoryFn = std::function<TheoryResult(const std::string&, const Params&)>;

TheoryResult exact(double v) { return {v, std::nullopt, nullptr}; }
TheoryResult estimate(const Estimate& e) { return {e.value, e.std_error, nullptr}; }
TheoryResult quadrature(const QuadResult& q) { return {q.value, q.abs_error, nullptr}; }

const std::vector<std::pair<std::string, TheoryFn>>& formulas() {
  static const std::vector<std::pair<std::string, TheoryFn>> table = [] {
    std::vector<std::pair<std::string, TheoryFn>> t;
    const TheoryFn h = [](const std::string& f, const Params& p) {
      return exact(h_correction(p.density(), p.alpha(), p.num(f, "t"), p.k(f)));
    };
    const TheoryFn mean_fixed = [](const std::string& f, const Params& p) {
      return exact(limit_mean_fixed_k(p.density(), p.alpha(), p.num(f, "t"), p.k(f), p.region()));
    };
    const TheoryFn mean_growing = [](const std::string& f, const Params& p) {
      const LimitMean m = limit_mean_growing(p.density(), p.alpha(), p.s(f), p.num(f, "t"), p.region());
      return TheoryResult{m.value, std::nullopt,
                          Json{{"level_plus_mass", m.level_plus_mass}, {"level_mass", m.level_mass}}};
    };
    const TheoryFn pmf = [](const std::string& f, const Params& p) {
      return exact(degree_distribution(p.density(), p.alpha(), p.num(f, "t"), p.k(f)));
    };
    t.emplace_back("eq13", h);
    t.emplace_back("h_correction", h);
    t.emplace_back("eq15", mean_fixed);
    t.emplace_back("limit_mean_fixed_k", mean_fixed);
    t.emplace_back("eq16", mean_growing);
    t.emplace_back("limit_mean_growing", mean_growing);
    t.emplace_back("eq62", pmf);
    t.emplace_back("degree_distribution", pmf);
    t.emplace_back("degree_distribution_quadrature", [](const std::string& f, const Params& p) {
      return quadrature(degree_distribution_quadrature(p.density(), p.alpha(), p.num(f, "t"), p.k(f)));
    });
    t.emplace_back("degree_tail_bound", [](const std::string& f, const Params& p) {
      return exact(degree_tail_bound(p.alpha(), p.num(f, "t"), p.density().f_max(), p.k(f)));
    });
    t.emplace_back("finite_n_mean", [](const std::string& f, const Params& p) {
      return estimate(
          finite_n_mean(p.density(), p.alpha(), p.count(f, "n"), p.regime(f), p.kind(f), p.region(), p.mc()));
    });
    t.emplace_back("poissonized_cov_in", [](const std::string& f, const Params& p) {
      return quadrature(
          poissonized_cov_in_fixed_k(p.density(), p.alpha(), p.num(f, "t"), p.u(f), p.k(f), p.region()));
    });
    t.emplace_back("poissonized_cov_out", [](const std::string& f, const Params& p) {
      return estimate(
          estimate_cov_out_fixed_k(p.density(), p.alpha(), p.num(f, "t"), p.u(f), p.k(f), p.mc(), p.region()));
    });
    t.emplace_back("growing_cov_in", [](const std::string& f, const Params& p) {
      return estimate(limit_cov_growing(p.density(), p.alpha(), p.s(f), p.num(f, "t"), p.u(f), DegreeKind::In,
                                        p.region(), p.mc()));
    });
    t.emplace_back("growing_cov_out", [](const std::string& f, const Params& p) {
      return estimate(limit_cov_growing(p.density(), p.alpha(), p.s(f), p.num(f, "t"), p.u(f), DegreeKind::Out,
                                        p.region(), p.mc()));
    });
    t.emplace_back("variance_fixed_k", [](const std::string& f, const Params& p) {
      return estimate(
          variance_fixed_k(p.density(), p.alpha(), p.num(f, "t"), p.u(f), p.k(f), p.kind(f), p.mc()));
    });
    t.emplace_back("variance_growing", [](const std::string& f, const Params& p) {
      return estimate(variance_growing(p.density(), p.alpha(), p.s(f), p.num(f, "t"), p.u(f), p.kind(f), p.mc()));
    });
    t.emplace_back("radius", [](const std::string& f, const Params& p) {
      const auto dim = p.has("dimension") ? p.count(f, "dimension") : 2;
      if (dim != 2 && dim != 3) throw ConfigError("'dimension' must be 2 or 3");
      const RadiusRegime regime = p.regime(f);
      const std::uint64_t n = p.count(f, "n");
      return exact(config_guard([&] { return dim == 2 ? radius(regime, n) : radius_3d(regime, n); }));
    });
    t.emplace_back("level_set", [](const std::string& f, const Params& p) {
      const DensityModel d = p.density();
      const LevelSetMass m = level_set_mass(d, p.s(f), p.alpha(), p.region());
      return TheoryResult{m.mass_on_level, std::nullopt,
                          Json{{"mass_on_level", m.mass_on_level},
                               {"mass_above", m.mass_above},
                               {"area_on_level", level_set_area(d, p.s(f), p.alpha(), p.region())}}};
    });
    t.emplace_back("azuma_bound", [](const std::string& f, const Params& p) {
      const auto kn = p.has("kn") ? p.count(f, "kn") : p.count(f, "k");
      return exact(azuma_bound(p.num(f, "eps"), p.count(f, "n"), static_cast<std::uint32_t>(kn)));
    });
    t.emplace_back("scaled_binomial", [](const std::string& f, const Params& p) {
      return exact(scaled_binomial_at_level(p.count(f, "n"), p.count(f, "j"), p.num(f, "t")));
    });
    t.emplace_back("sector_fraction_3d", [](const std::string&, const Params& p) {
      return exact(spherical_sector_solid_fraction(p.alpha()));
    });
    t.emplace_back("limit_mean_3d", [](const std::string& f, const Params& p) {
      return exact(limit_mean_fixed_k_3d(p.density3(), p.alpha(), p.num(f, "t"), p.k(f)));
    });
    t.emplace_back("finite_n_mean_3d", [](const std::string& f, const Params& p) {
      return estimate(finite_n_mean_3d(p.density3(), p.alpha(), p.count(f, "n"), p.regime(f), p.kind(f), p.mc()));
    });
    return t;
  }();
  return table;
}

std::string formula_list() {
  std::string s;
  for (const auto& [name, fn] : formulas()) {
    (void)fn;
    s += (s.empty() ? "" : ", ") + name;
  }
  return s;
}

const TheoryFn& find_formula(const std::string& name) {
  for (const auto& [n, fn] : formulas())
    if (n == name) return fn;
  throw ConfigError("unknown formula '" + name + "'; valid formulas: " + formula_list());
}

// Cartesian expansion of array-valued parameters, in key order.
std::vector<Json> expand(const Json& request) {
  static const std::set<std::string> listable = {"t", "u", "k", "alpha", "s", "n", "eps", "j", "kn", "kind"};
  std::vector<Json> out = {Json::object()};
  for (const auto& [key, value] : request.items()) {
    std::vector<Json> next;
    const bool list = value.is_array() && listable.count(key);
    if (list && value.empty()) throw ConfigError("'" + key + "' must not be an empty list");
    for (const auto& partial : out) {
      if (list) {
        for (const auto& v : value) {
          Json p = partial;
          p[key] = v;
          next.push_back(std::move(p));
        }
      } else {
        Json p = partial;
        p[key] = value;
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

int cmd_theory(const std::string& config_path, const std::string& out_dir, std::ostream& out) {
  static const std::set<std::string> allowed = {"formula", "density", "alpha", "t",      "u",    "k",    "s",
                                                "gamma",   "kn",      "n",     "kind",   "region", "trials", "seed",
                                                "eps",     "j",       "dimension"};
  const Json doc = io::read_json_file(config_path);
  std::vector<Json> requests;
  if (doc.is_array()) {
    requests.assign(doc.begin(), doc.end());
  } else if (doc.is_object() && doc.contains("requests")) {
    if (!doc["requests"].is_array()) throw ConfigError("'requests' must be an array");
    requests.assign(doc["requests"].begin(), doc["requests"].end());
  } else {
    requests.push_back(doc);
  }
  // Resolve every name and key before evaluating anything.
  std::vector<std::vector<std::string>> plan;
  for (const auto& r : requests) {
    if (!r.is_object() || !r.contains("formula")) throw ConfigError("each theory request needs a 'formula'");
    for (const auto& [key, value] : r.items()) {
      (void)value;
      if (!allowed.count(key)) throw ConfigError("unknown theory parameter '" + key + "'");
    }
    std::vector<std::string> names;
    if (r["formula"].is_array()) {
      for (const auto& f : r["formula"]) names.push_back(f.get<std::string>());
    } else if (r["formula"].is_string()) {
      names.push_back(r["formula"].get<std::string>());
    } else {
      throw ConfigError("'formula' must be a name or a list of names");
    }
    for (const auto& n : names) find_formula(n);
    plan.push_back(names);
  }
  Json records = Json::array();
  for (std::size_t i = 0; i < requests.size(); ++i) {
    Json base = requests[i];
    base.erase("formula");
    for (const auto& name : plan[i]) {
      const TheoryFn& fn = find_formula(name);
      for (const Json& params : expand(base)) {
        const TheoryResult res = config_guard([&] { return fn(name, Params(params)); });
        Json rec;
        rec["formula"] = name;
        rec["params"] = params;
        rec["value"] = res.value;
        if (res.std_error) rec["std_error"] = *res.std_error;
        if (!res.components.is_null()) rec["components"] = res.components;
        records.push_back(rec);
      }
    }
  }
  out << io::dump(records);
  if (!out_dir.empty()) {
    io::ensure_directory(out_dir);
    io::write_text_file(join_path(out_dir, "theory.json"), io::dump(records));
    const std::uint64_t seed = doc.is_object() && doc.contains("seed") ? doc["seed"].get<std::uint64_t>() : 1;
    io::write_text_file(join_path(out_dir, "manifest.json"),
                        io::dump(io::manifest("theory", seed, doc, Json{{"files", {"theory.json"}}})));
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

int cmd_experiment(const std::string& config_path, const std::string& preset, const std::string& out_dir,
                   const Overrides& ov, std::ostream& out) {
  const Json doc = config_path.empty() ? Json::object() : io::read_json_file(config_path);
  ExperimentConfig cfg = io::experiment_config_from_json(doc, preset);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.threads) {
    if (*ov.threads < 1) throw ConfigError("threads must be at least 1");
    cfg.threads = *ov.threads;
  }
  io::ensure_directory(out_dir);
  const ExperimentReport report = config_guard([&] { return run_experiment(cfg); });
  std::ostringstream reps;
  io::write_replicates_csv(reps, report);
  io::write_text_file(join_path(out_dir, "replicates.csv"), reps.str());
  const Json rj = io::report_to_json(report);
  io::write_text_file(join_path(out_dir, "report.json"), io::dump(rj));
  io::write_text_file(join_path(out_dir, "manifest.json"),
                      io::dump(io::manifest("experiment", cfg.seed, io::config_to_json(cfg),
                                            Json{{"files", {"replicates.csv", "report.json"}}})));
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  io::write_summary_text(out, io::merge_reports({rj}));
  return report.all_pass() ? kPass : kCriteriaFailed;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const std::vector<std::string>& inputs, const std::string& out_dir, std::ostream& out) {
  std::vector<Json> reports;
  for (const auto& in : inputs) {
    std::error_code ec;
    const std::string path = std::filesystem::is_directory(in, ec) ? join_path(in, "report.json") : in;
    reports.push_back(io::read_json_file(path));
  }
  const std::vector<io::SummaryRow> rows = io::merge_reports(reports);
  std::ostringstream csv, text;
  io::write_summary_csv(csv, rows);
  io::write_summary_text(text, rows);
  io::ensure_directory(out_dir);
  io::write_text_file(join_path(out_dir, "summary.csv"), csv.str());
  io::write_text_file(join_path(out_dir, "summary.txt"), text.str());
  Json sources = Json::array();
  for (const auto& r : reports) sources.push_back(r.value("experiment", ""));
  io::write_text_file(
      join_path(out_dir, "manifest.json"),
      io::dump(io::manifest("report", 0, Json{{"inputs", inputs}},
                            Json{{"experiments", sources}, {"files", {"summary.csv", "summary.txt"}}})));
  out << text.str();
  const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const io::SummaryRow& r) { return r.row["pass"] == true; });
  return all_pass ? kPass : kCriteriaFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random scaled sector digraphs: generation, theory values and Monte Carlo experiments", "sectorgraph"};
  app.set_version_flag("--version", io::kToolVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir, preset;
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;

  auto* gen = app.add_subcommand("generate", "Sample one digraph and write points, degrees and arcs");
  gen->add_option("--config", config_path, "Generation config (JSON)")->required();
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--seed", seed, "Override the config seed");
  gen->add_option("--threads", threads, "Worker threads");

  auto* theory = app.add_subcommand("theory", "Evaluate closed-form and quadrature oracles");
  theory->add_option("--config", config_path, "Theory request (JSON)")->required();
  theory->add_option("--out", out_dir, "Also write theory.json and manifest.json here");

  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment preset");
  exp->add_option("--preset", preset, "One of: mean, degree-dist, clt-fixed, clt-growing, depoisson, concentration");
  exp->add_option("--config", config_path, "Experiment config overrides (JSON)");
  exp->add_option("--out", out_dir, "Output directory")->required();
  exp->add_option("--seed", seed, "Override the master seed");
  exp->add_option("--threads", threads, "Worker threads (results do not depend on it)");

  auto* rep = app.add_subcommand("report", "Merge report JSON files into one summary");
  rep->add_option("inputs", inputs, "report.json files or experiment output directories")->required();
  rep->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  const Overrides ov{seed, threads};
  try {
    if (gen->parsed()) return cmd_generate(config_path, out_dir, ov, out);
    if (theory->parsed()) return cmd_theory(config_path, out_dir, out);
    if (exp->parsed()) return cmd_experiment(config_path, preset, out_dir, ov, out);
    if (rep->parsed()) return cmd_report(inputs, out_dir, out);
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const io::Json::exception& e) {
    err << "error: malformed config value: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace sg::cli
