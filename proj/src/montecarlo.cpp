#include "sectorgraph/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sectorgraph/digraph.hpp"
#include "sectorgraph/kernels.hpp"
#include "sectorgraph/parallel.hpp"
#include "sectorgraph/rng.hpp"
#include "sectorgraph/sampling.hpp"

namespace sg {
namespace {

const std::vector<std::pair<Preset, std::string>>& preset_table() {
  static const std::vector<std::pair<Preset, std::string>> table = {
      {Preset::Mean, "mean"},           {Preset::DegreeDist, "degree-dist"}, {Preset::CltFixed, "clt-fixed"},
      {Preset::CltGrowing, "clt-growing"}, {Preset::Depoisson, "depoisson"}, {Preset::Concentration, "concentration"},
  };
  return table;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string kind_name(DegreeKind kind) { return std::string(to_string(kind)); }

std::vector<double> column(const std::vector<ReplicateRecord>& reps, std::size_t kind, std::size_t ti,
                           bool poisson, double scale) {
  std::vector<double> out;
  out.reserve(reps.size());
  for (const auto& r : reps) out.push_back(static_cast<double>(poisson ? r.xi_poisson[kind][ti] : r.xi[kind][ti]) * scale);
  return out;
}

ReportRow compare_abs(std::string criterion, double empirical, std::optional<double> se, double theory,
                      double tolerance) {
  ReportRow row;
  row.criterion = std::move(criterion);
  row.empirical = empirical;
  row.std_error = se;
  row.theory = theory;
  row.metric = "abs_error";
  row.discrepancy = std::abs(empirical - theory);
  row.tolerance = tolerance;
  row.pass = row.discrepancy <= tolerance;
  return row;
}

ReportRow compare_rel(std::string criterion, double empirical, std::optional<double> se, double theory,
                      std::optional<double> theory_se, double tolerance) {
  ReportRow row;
  row.criterion = std::move(criterion);
  row.empirical = empirical;
  row.std_error = se;
  row.theory = theory;
  row.theory_std_error = theory_se;
  row.metric = "rel_error";
  row.discrepancy = theory != 0.0 ? std::abs(empirical - theory) / std::abs(theory)
                                  : (empirical == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  row.tolerance = tolerance;
  row.pass = row.discrepancy <= tolerance;
  return row;
}

ReportRow info_row(std::string criterion, double empirical, std::optional<double> se) {
  ReportRow row;
  row.criterion = std::move(criterion);
  row.empirical = empirical;
  row.std_error = se;
  row.metric = "info";
  return row;
}

// Variance of the coupled difference: mean of (x'_r - m')^2 - (x_r - m)^2.
SampleMoments variance_difference(const std::vector<double>& poisson, const std::vector<double>& binomial) {
  const std::size_t r = binomial.size();
  const SampleMoments mp = sample_moments(poisson), mb = sample_moments(binomial);
  SampleMoments out;
  out.mean = mp.variance - mb.variance;
  if (r < 2) return out;
  std::vector<double> diff(r);
  const double bessel = static_cast<double>(r) / static_cast<double>(r - 1);
  for (std::size_t i = 0; i < r; ++i) {
    const double a = poisson[i] - mp.mean, b = binomial[i] - mb.mean;
    diff[i] = bessel * (a * a - b * b);
  }
  out.mean_se = sample_moments(diff).mean_se;
  return out;
}

void add_azuma_rows(const ExperimentConfig& cfg, const std::vector<ReplicateRecord>& reps, ExperimentReport& report) {
  const double n = static_cast<double>(cfg.n);
  const std::uint32_t kn = std::max<std::uint32_t>(1, cfg.degree_threshold());
  for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki)
    for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
      const std::vector<double> x = column(reps, ki, ti, false, 1.0);
      const double mean = sample_moments(x).mean;
      for (double eps : cfg.epsilons) {
        const auto exceed = std::count_if(x.begin(), x.end(), [&](double v) { return std::abs(v - mean) > eps * n; });
        ReportRow row;
        row.criterion = "azuma";
        row.t = cfg.t_list[ti];
        row.kind = kind_name(cfg.kinds[ki]);
        row.epsilon = eps;
        row.empirical = static_cast<double>(exceed) / static_cast<double>(x.size());
        row.theory = azuma_bound(eps, cfg.n, kn);
        row.metric = "exceedance";
        row.discrepancy = std::max(0.0, row.empirical - *row.theory);
        row.tolerance = 0.0;
        row.pass = row.empirical <= *row.theory;
        report.rows.push_back(row);
      }
    }
}

void add_ks_rows(const ExperimentConfig& cfg, const std::vector<ReplicateRecord>& reps, ExperimentReport& report) {
  for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki)
    for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
      const std::vector<double> x = column(reps, ki, ti, false, 1.0);
      ReportRow row;
      row.criterion = "ks";
      row.t = cfg.t_list[ti];
      row.kind = kind_name(cfg.kinds[ki]);
      row.empirical = ks_statistic_standardized(x);
      row.metric = "ks";
      row.discrepancy = row.empirical;
      row.tolerance = cfg.ks_tolerance;
      row.pass = row.empirical <= cfg.ks_tolerance;
      report.rows.push_back(row);
    }
}

// Binomial correlations are recorded only: the -h(t)h(u) term can make them
// negative. The Poissonized statistics are increasing functionals of a marked
// Poisson process, so Harris-FKG puts their correlation in (0, 1).
void add_correlation_rows(const ExperimentConfig& cfg, const std::vector<ReplicateRecord>& reps,
                          ExperimentReport& report) {
  if (reps.size() < 3) return;
  for (int view = 0; view < (cfg.coupled ? 2 : 1); ++view) {
    const bool poisson = view == 1;
    for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki)
      for (std::size_t a = 0; a < cfg.t_list.size(); ++a)
        for (std::size_t b = a + 1; b < cfg.t_list.size(); ++b) {
          if (cfg.t_list[a] == cfg.t_list[b]) continue;
          const double c = correlation(column(reps, ki, a, poisson, 1.0), column(reps, ki, b, poisson, 1.0));
          ReportRow row;
          if (poisson) {
            row.criterion = "correlation_poissonized";
            row.metric = "range";
            // distance outside the open interval (0, 1)
            row.discrepancy = c <= 0.0 ? -c : (c >= 1.0 ? c - 1.0 : 0.0);
            row.pass = c > 0.0 && c < 1.0;
          } else {
            row = info_row("correlation", c, std::nullopt);
          }
          row.empirical = c;
          // large-sample SE of a Pearson correlation
          row.std_error = (1.0 - c * c) / std::sqrt(static_cast<double>(reps.size()) - 3.0);
          row.t = cfg.t_list[a];
          row.u = cfg.t_list[b];
          row.kind = kind_name(cfg.kinds[ki]);
          report.rows.push_back(row);
        }
  }
}

// Scale that turns a raw count variance into the limit-theorem normalization.
double variance_scale(const ExperimentConfig& cfg) {
  double scale = static_cast<double>(cfg.n);
  if (cfg.regime == RegimeKind::GrowingK) scale *= cfg.degree_threshold();
  return 1.0 / scale;
}

void add_variance_info(const ExperimentConfig& cfg, const std::vector<ReplicateRecord>& reps,
                       ExperimentReport& report) {
  const double scale = variance_scale(cfg);
  for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki)
    for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
      const SampleMoments m = sample_moments(column(reps, ki, ti, false, 1.0));
      ReportRow row = info_row("variance", m.variance * scale,
                               m.variance_se ? std::optional<double>(*m.variance_se * scale) : std::nullopt);
      row.t = cfg.t_list[ti];
      row.kind = kind_name(cfg.kinds[ki]);
      report.rows.push_back(row);
    }
}

void add_correction_rows(const ExperimentConfig& cfg, const std::vector<ReplicateRecord>& reps,
                         ExperimentReport& report) {
  const double scale = variance_scale(cfg);
  for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki)
    for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
      const double t = cfg.t_list[ti];
      double theory;
      if (cfg.regime == RegimeKind::FixedK) {
        const double h = h_correction(cfg.density, cfg.alpha, t, cfg.k);
        theory = h * h;
      } else {
        const double level = level_set_mass(cfg.density, cfg.s, cfg.alpha).mass_on_level;
        theory = std::pow(normal_pdf(t) * level, 2);
      }
      const SampleMoments d = variance_difference(column(reps, ki, ti, true, 1.0), column(reps, ki, ti, false, 1.0));
      ReportRow row = compare_rel("depoisson_correction", d.mean * scale,
                                  d.mean_se ? std::optional<double>(*d.mean_se * scale) : std::nullopt, theory,
                                  std::nullopt, cfg.correction_rel_tolerance);
      row.t = t;
      row.kind = kind_name(cfg.kinds[ki]);
      report.rows.push_back(row);
    }
}

std::vector<double> limit_pmf(const ExperimentConfig& cfg, double t) {
  std::vector<double> p(cfg.k_max + 2, 0.0);
  const double c = 0.5 * cfg.alpha * t;
  for (std::uint32_t d = 0; d <= cfg.k_max; ++d) {
    if (std::holds_alternative<WholePlane>(cfg.region)) {
      p[d] = degree_distribution(cfg.density, cfg.alpha, t, d);
    } else {
      p[d] = cfg.density.functional(cfg.region, [c, d](double v) { return poisson_pmf(c * v, d) * v; }).value;
    }
  }
  const double mass = cfg.density.mass(cfg.region).value;
  p.back() = std::max(0.0, mass - std::accumulate(p.begin(), p.end() - 1, 0.0));
  return p;
}

ExperimentReport start_report(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  report.config = cfg;
  return report;
}

}  // namespace

std::string to_string(Preset p) {
  for (const auto& [preset, name] : preset_table())
    if (preset == p) return name;
  return "unknown";
}

Preset preset_from_string(const std::string& name) {
  for (const auto& [preset, pname] : preset_table())
    if (pname == name) return preset;
  std::ostringstream msg;
  msg << "unknown experiment preset '" << name << "'; valid presets:";
  for (const auto& n : preset_names()) msg << ' ' << n;
  throw std::invalid_argument(msg.str());
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : preset_table()) out.push_back(entry.second);
    return out;
  }();
  return names;
}

std::uint32_t ExperimentConfig::degree_threshold() const {
  return regime == RegimeKind::FixedK ? k : KnSchedule{gamma}.kn(n);
}

RadiusRegime ExperimentConfig::regime_at(double t) const {
  if (regime == RegimeKind::FixedK) return FixedK{k, t};
  return GrowingK{s, t, degree_threshold()};
}

void ExperimentConfig::validate() const {
  if (!(alpha > 0 && alpha <= kTwoPi)) throw std::invalid_argument("alpha must lie in (0, 2pi]");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (t_list.empty()) throw std::invalid_argument("t list must be nonempty");
  if (kinds.empty()) throw std::invalid_argument("at least one degree kind is required");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (regime == RegimeKind::GrowingK) KnSchedule{gamma}.validate();
  validate_region(region);
  for (double t : t_list) validate_regime(regime_at(t));
  for (double e : epsilons)
    if (!(e > 0)) throw std::invalid_argument("concentration epsilons must be positive");
  switch (preset) {
    case Preset::CltFixed:
      if (regime != RegimeKind::FixedK) throw std::invalid_argument("clt-fixed needs the fixed-k regime");
      break;
    case Preset::CltGrowing:
      if (regime != RegimeKind::GrowingK) throw std::invalid_argument("clt-growing needs the growing-k regime");
      if (level_set_mass(density, s, alpha).mass_on_level <= 0.0)
        throw std::invalid_argument("clt-growing needs F(L_s) > 0; this density and s give F(L_s) = 0");
      break;
    case Preset::Depoisson:
      if (!coupled) throw std::invalid_argument("depoisson needs coupled sampling");
      break;
    default:
      break;
  }
}

ExperimentConfig preset_config(Preset p) {
  ExperimentConfig c;
  c.preset = p;
  switch (p) {
    case Preset::Mean:
      break;
    case Preset::DegreeDist:
      c.k = 1;
      c.n = 20000;
      c.replicates = 10;
      break;
    case Preset::CltFixed:
      c.k = 2;
      c.t_list = {1.0, 2.0, 4.0};
      c.n = 20000;
      c.replicates = 2000;
      c.coupled = true;
      break;
    case Preset::CltGrowing:
      c.regime = RegimeKind::GrowingK;
      c.s = 2.0 / c.alpha;
      c.gamma = 0.3;
      c.t_list = {0.0};
      c.n = 100000;
      c.replicates = 1000;
      c.coupled = true;
      c.ks_tolerance = 0.06;
      c.correction_rel_tolerance = 0.25;
      break;
    case Preset::Depoisson:
      c.k = 1;
      c.n = 20000;
      c.replicates = 5000;
      c.coupled = true;
      break;
    case Preset::Concentration:
      c.k = 2;
      c.n = 10000;
      c.replicates = 500;
      c.epsilons = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
      break;
  }
  return c;
}

bool ExperimentReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

std::vector<ReplicateRecord> simulate_replicates(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<double> radii;
  for (double t : cfg.t_list) radii.push_back(radius(cfg.regime_at(t), cfg.n));
  const std::uint32_t k = cfg.degree_threshold();
  const bool want_eta = cfg.preset == Preset::DegreeDist;
  std::vector<ReplicateRecord> reps(cfg.replicates);
  auto statistics = [&](const MarkedPointCloud& cloud, std::vector<std::vector<std::uint64_t>>& xi,
                        std::vector<std::vector<std::uint64_t>>* eta) {
    const DegreeProfile prof = degree_profile(cloud, cfg.alpha, radii);
    xi.assign(cfg.kinds.size(), std::vector<std::uint64_t>(radii.size(), 0));
    if (eta) eta->assign(cfg.kinds.size(), std::vector<std::uint64_t>(cfg.k_max + 2, 0));
    for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki) {
      const auto& by_radius = cfg.kinds[ki] == DegreeKind::Out ? prof.out_deg : prof.in_deg;
      for (std::size_t ti = 0; ti < radii.size(); ++ti)
        xi[ki][ti] = count_deg_at_least(by_radius[ti], cloud, k, cfg.region);
      if (eta) {
        const bool everywhere = std::holds_alternative<WholePlane>(cfg.region);
        for (std::size_t i = 0; i < cloud.size(); ++i) {
          if (!everywhere && !region_contains(cfg.region, cloud.positions[i])) continue;
          ++(*eta)[ki][std::min<std::uint32_t>(by_radius[0][i], cfg.k_max + 1)];
        }
      }
    }
  };
  parallel_chunks(cfg.replicates, cfg.threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto start = std::chrono::steady_clock::now();
      ReplicateRecord& rec = reps[r];
      rec.replicate = r;
      SeededRng rng(cfg.seed, r);
      if (cfg.coupled) {
        const CoupledSample cs = sample_coupled(cfg.density, cfg.n, rng);
        rec.N = cs.N;
        statistics(cs.binomial_view(), rec.xi, want_eta ? &rec.eta : nullptr);
        statistics(cs.poisson_view(), rec.xi_poisson, nullptr);
      } else {
        statistics(sample_marked(cfg.density, cfg.n, rng), rec.xi, want_eta ? &rec.eta : nullptr);
      }
      rec.wall_seconds = seconds_since(start);
    }
  });
  return reps;
}

ExperimentReport run_mean_convergence(const ExperimentConfig& cfg) {
  ExperimentReport report = start_report(cfg);
  const auto start = std::chrono::steady_clock::now();
  report.replicates = simulate_replicates(cfg);
  const double inv_n = 1.0 / static_cast<double>(cfg.n);
  for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki)
    for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
      const double t = cfg.t_list[ti];
      const SampleMoments m = sample_moments(column(report.replicates, ki, ti, false, inv_n));
      const double theory = cfg.regime == RegimeKind::FixedK
                                ? limit_mean_fixed_k(cfg.density, cfg.alpha, t, cfg.k, cfg.region)
                                : limit_mean_growing(cfg.density, cfg.alpha, cfg.s, t, cfg.region).value;
      const double tolerance = cfg.se_multiplier * m.mean_se.value_or(0.0) + cfg.bias_allowance;
      ReportRow row = compare_abs("mean", m.mean, m.mean_se, theory, tolerance);
      row.t = t;
      row.kind = kind_name(cfg.kinds[ki]);
      row.k = cfg.degree_threshold();
      report.rows.push_back(row);
    }
  report.wall_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_degree_distribution(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.preset = Preset::DegreeDist;
  ExperimentReport report = start_report(c);
  const auto start = std::chrono::steady_clock::now();
  if (c.alpha < kPi) report.warnings.push_back("alpha < pi: the degree-distribution limit is only claimed for alpha >= pi");
  report.replicates = simulate_replicates(c);
  const double t = c.t_list.front();
  const std::vector<double> theory = limit_pmf(c, t);
  const std::size_t bins = c.k_max + 2, reps = report.replicates.size();
  const double denom = static_cast<double>(c.n);
  std::vector<std::vector<double>> pooled(c.kinds.size(), std::vector<double>(bins, 0.0));
  std::vector<std::vector<std::optional<double>>> se(c.kinds.size(), std::vector<std::optional<double>>(bins));
  for (std::size_t ki = 0; ki < c.kinds.size(); ++ki) {
    for (std::size_t d = 0; d < bins; ++d) {
      std::vector<double> per;
      per.reserve(reps);
      for (const auto& r : report.replicates) per.push_back(static_cast<double>(r.eta[ki][d]) / denom);
      const SampleMoments m = sample_moments(per);
      pooled[ki][d] = m.mean;
      se[ki][d] = m.mean_se;
      ReportRow row = info_row("pmf", m.mean, m.mean_se);
      row.t = t;
      row.kind = kind_name(c.kinds[ki]);
      row.k = static_cast<std::uint32_t>(d);
      row.theory = theory[d];
      row.discrepancy = std::abs(m.mean - theory[d]);
      report.rows.push_back(row);
    }
    ReportRow tv;
    tv.criterion = "tv";
    tv.t = t;
    tv.kind = kind_name(c.kinds[ki]);
    tv.empirical = total_variation(pooled[ki], theory);
    tv.metric = "tv";
    tv.discrepancy = tv.empirical;
    tv.tolerance = c.tv_tolerance;
    tv.pass = tv.empirical <= c.tv_tolerance;
    report.rows.push_back(tv);
    ReportRow p0 = compare_abs("p0", pooled[ki][0], se[ki][0], theory[0], c.p0_tolerance);
    p0.t = t;
    p0.kind = kind_name(c.kinds[ki]);
    p0.k = 0;
    report.rows.push_back(p0);
  }
  const auto out_it = std::find(c.kinds.begin(), c.kinds.end(), DegreeKind::Out);
  const auto in_it = std::find(c.kinds.begin(), c.kinds.end(), DegreeKind::In);
  if (out_it != c.kinds.end() && in_it != c.kinds.end() && reps >= 2) {
    const std::size_t a = static_cast<std::size_t>(out_it - c.kinds.begin());
    const std::size_t b = static_cast<std::size_t>(in_it - c.kinds.begin());
    // Out and in degrees share each replicate's points, so the SE is taken from paired differences.
    double worst = 0.0;
    for (std::size_t d = 0; d < bins; ++d) {
      std::vector<double> diff;
      diff.reserve(reps);
      for (const auto& r : report.replicates)
        diff.push_back((static_cast<double>(r.eta[a][d]) - static_cast<double>(r.eta[b][d])) / denom);
      const SampleMoments m = sample_moments(diff);
      if (m.mean == 0.0) continue;
      const double se_d = m.mean_se.value_or(0.0);
      worst = std::max(worst, se_d > 0 ? std::abs(m.mean) / se_d : std::numeric_limits<double>::infinity());
    }
    ReportRow row;
    row.criterion = "out_in_agreement";
    row.t = t;
    row.empirical = worst;
    row.metric = "max_z";
    row.discrepancy = worst;
    row.tolerance = c.pooled_se_multiplier;
    row.pass = worst <= c.pooled_se_multiplier;
    report.rows.push_back(row);
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_clt_fixed_k(const ExperimentConfig& cfg) {
  ExperimentReport report = start_report(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.replicates < 500) report.warnings.push_back("fewer than 500 replicates: KS statistics are noisy");
  report.replicates = simulate_replicates(cfg);
  add_ks_rows(cfg, report.replicates, report);
  add_correlation_rows(cfg, report.replicates, report);
  add_variance_info(cfg, report.replicates, report);
  add_azuma_rows(cfg, report.replicates, report);
  report.wall_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_clt_growing(const ExperimentConfig& cfg) {
  ExperimentReport report = start_report(cfg);
  const auto start = std::chrono::steady_clock::now();
  report.replicates = simulate_replicates(cfg);
  add_ks_rows(cfg, report.replicates, report);
  add_correlation_rows(cfg, report.replicates, report);
  const double scale = variance_scale(cfg);
  for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki) {
    const DegreeKind kind = cfg.kinds[ki];
    const bool gated = std::find(cfg.variance_kinds.begin(), cfg.variance_kinds.end(), kind) != cfg.variance_kinds.end();
    for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
      const double t = cfg.t_list[ti];
      const SampleMoments m = sample_moments(column(report.replicates, ki, ti, false, 1.0));
      const std::optional<double> se = m.variance_se ? std::optional<double>(*m.variance_se * scale) : std::nullopt;
      ReportRow row;
      if (gated) {
        const Estimate th =
            variance_growing(cfg.density, cfg.alpha, cfg.s, t, t, kind, McOptions{cfg.theory_trials, cfg.seed});
        row = compare_rel("variance", m.variance * scale, se, th.value,
                          kind == DegreeKind::Out ? std::optional<double>(th.std_error) : std::nullopt,
                          cfg.variance_rel_tolerance);
      } else {
        row = info_row("variance", m.variance * scale, se);
      }
      row.t = t;
      row.kind = kind_name(kind);
      report.rows.push_back(row);
    }
  }
  if (cfg.coupled) add_correction_rows(cfg, report.replicates, report);
  add_azuma_rows(cfg, report.replicates, report);
  report.wall_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_depoisson(const ExperimentConfig& cfg) {
  ExperimentReport report = start_report(cfg);
  const auto start = std::chrono::steady_clock::now();
  report.replicates = simulate_replicates(cfg);
  const ExperimentConfig& c = report.config;
  add_correction_rows(c, report.replicates, report);
  add_variance_info(c, report.replicates, report);
  // The coupled Poisson view with N = n reproduces the binomial statistic.
  for (const auto& r : report.replicates)
    if (r.N && *r.N == c.n && r.xi != r.xi_poisson) {
      ReportRow row = info_row("coupling_identity", static_cast<double>(r.replicate), std::nullopt);
      row.metric = "identity";
      row.pass = false;
      report.rows.push_back(row);
    }
  add_azuma_rows(c, report.replicates, report);
  report.wall_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_concentration(const ExperimentConfig& cfg) {
  ExperimentReport report = start_report(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.alpha < kPi) report.warnings.push_back("alpha < pi: the concentration argument assumes alpha >= pi");
  report.replicates = simulate_replicates(cfg);
  add_azuma_rows(cfg, report.replicates, report);
  report.wall_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.preset) {
    case Preset::Mean:
      return run_mean_convergence(cfg);
    case Preset::DegreeDist:
      return run_degree_distribution(cfg);
    case Preset::CltFixed:
      return run_clt_fixed_k(cfg);
    case Preset::CltGrowing:
      return run_clt_growing(cfg);
    case Preset::Depoisson:
      return run_depoisson(cfg);
    case Preset::Concentration:
      return run_concentration(cfg);
  }
  throw std::invalid_argument("unknown preset");
}

SampleMoments sample_moments(const std::vector<double>& x) {
  SampleMoments m;
  const std::size_t n = x.size();
  if (n == 0) return m;
  m.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  if (n < 2) return m;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - m.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double nd = static_cast<double>(n);
  m.variance = m2 / (nd - 1.0);
  m.mean_se = std::sqrt(m.variance / nd);
  // Large-sample SE of the sample variance: sqrt((mu4 - sigma^4) / n).
  const double sigma2 = m2 / nd, mu4 = m4 / nd;
  m.variance_se = std::sqrt(std::max(0.0, mu4 - sigma2 * sigma2) / nd);
  return m;
}

double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) return 0.0;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;  // ties form one jump
    const double f = cdf(x[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(j) / n - f});
    i = j;
  }
  return d;
}

double ks_statistic_standardized(const std::vector<double>& x) {
  const SampleMoments m = sample_moments(x);
  if (!(m.variance > 0)) return 1.0;
  const double sd = std::sqrt(m.variance);
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - m.mean) / sd;
  return ks_statistic(std::move(z), normal_cdf);
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0, b = i < q.size() ? q[i] : 0.0;
    total += std::abs(a - b);
  }
  return 0.5 * total;
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("correlation needs equal-length samples");
  const SampleMoments mx = sample_moments(x), my = sample_moments(y);
  if (!(mx.variance > 0 && my.variance > 0)) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx.mean) * (y[i] - my.mean);
  return s / (static_cast<double>(x.size()) - 1.0) / std::sqrt(mx.variance * my.variance);
}

}  // namespace sg
