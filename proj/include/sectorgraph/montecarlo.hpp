#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sectorgraph/common.hpp"
#include "sectorgraph/density.hpp"
#include "sectorgraph/theory.hpp"

namespace sg {

enum class Preset { Mean, DegreeDist, CltFixed, CltGrowing, Depoisson, Concentration };

std::string to_string(Preset p);
/// Throws std::invalid_argument for unknown names.
Preset preset_from_string(const std::string& name);
const std::vector<std::string>& preset_names();

enum class RegimeKind { FixedK, GrowingK };

struct ExperimentConfig {
  Preset preset = Preset::Mean;
  DensityModel density = DensityModel::uniform();
  double alpha = kPi;
  RegimeKind regime = RegimeKind::FixedK;
  std::uint32_t k = 3;   // FixedK threshold
  double s = 2.0 / kPi;  // GrowingK scale
  double gamma = 0.3;    // GrowingK schedule kn = ceil(n^gamma)
  std::uint64_t n = 50000;
  std::size_t replicates = 200;
  std::vector<double> t_list = {2.0};
  Region region = WholePlane{};
  std::uint64_t seed = 1;
  bool coupled = false;
  std::vector<DegreeKind> kinds = {DegreeKind::Out, DegreeKind::In};
  unsigned threads = 1;

  // degree-dist
  std::uint32_t k_max = 30;
  double tv_tolerance = 0.02;
  double p0_tolerance = 0.02;
  double pooled_se_multiplier = 2.0;

  // mean: |empirical - limit| <= se_multiplier * SE + bias_allowance
  double se_multiplier = 3.0;
  double bias_allowance = 0.01;

  // clt-fixed, clt-growing
  double ks_tolerance = 0.05;
  std::vector<DegreeKind> variance_kinds = {DegreeKind::In};
  double variance_rel_tolerance = 0.25;
  std::size_t theory_trials = 20000;

  // depoisson, clt-growing correction
  double correction_rel_tolerance = 0.2;

  // concentration (also appended to the CLT and de-Poissonization runs)
  std::vector<double> epsilons = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05};

  void validate() const;
  std::uint32_t degree_threshold() const;
  RadiusRegime regime_at(double t) const;
};

/// Built-in configuration for a preset, matching the acceptance parameters.
ExperimentConfig preset_config(Preset p);

struct ReplicateRecord {
  std::size_t replicate = 0;
  // xi[kind][t index]; xi_poisson likewise when the run is coupled
  std::vector<std::vector<std::uint64_t>> xi;
  std::vector<std::vector<std::uint64_t>> xi_poisson;
  std::optional<std::uint64_t> N;
  // eta[kind][degree] for degree <= k_max at the first t (degree-dist only)
  std::vector<std::vector<std::uint64_t>> eta;
  double wall_seconds = 0.0;
};

struct ReportRow {
  std::string criterion;
  std::optional<double> t;
  std::optional<double> u;  // second time for pairwise rows
  std::optional<std::string> kind;
  std::optional<std::uint32_t> k;
  std::optional<double> epsilon;
  double empirical = 0.0;
  std::optional<double> std_error;
  std::optional<double> theory;
  std::optional<double> theory_std_error;
  std::string metric;  // abs_error, rel_error, tv, ks, exceedance, range, info
  double discrepancy = 0.0;
  std::optional<double> tolerance;
  bool pass = true;
};

struct ExperimentReport {
  static constexpr int kSchemaVersion = 1;
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::vector<ReplicateRecord> replicates;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;

  bool all_pass() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_mean_convergence(const ExperimentConfig& cfg);
ExperimentReport run_degree_distribution(const ExperimentConfig& cfg);
ExperimentReport run_clt_fixed_k(const ExperimentConfig& cfg);
ExperimentReport run_clt_growing(const ExperimentConfig& cfg);
ExperimentReport run_depoisson(const ExperimentConfig& cfg);
ExperimentReport run_concentration(const ExperimentConfig& cfg);

/// Replicates for cfg, one RNG stream per replicate id, computed in parallel
/// over replicates and returned in replicate order.
std::vector<ReplicateRecord> simulate_replicates(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 for a single value
  std::optional<double> mean_se;
  std::optional<double> variance_se;
};

SampleMoments sample_moments(const std::vector<double>& x);
/// sup |F_emp - Phi| after standardizing by the sample mean and sd.
double ks_statistic_standardized(const std::vector<double>& x);
/// KS distance of x to a given continuous CDF.
double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf);
double total_variation(const std::vector<double>& p, const std::vector<double>& q);
/// Pearson correlation; 0 when either sample is constant.
double correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sg
