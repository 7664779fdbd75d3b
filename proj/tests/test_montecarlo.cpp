#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "sectorgraph/montecarlo.hpp"

namespace sg {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig c = preset_config(Preset::Mean);
  c.n = 2000;
  c.replicates = 12;
  c.t_list = {1.0, 2.0, 4.0};
  c.k = 2;
  return c;
}

TEST(Config, PresetsValidate) {
  for (const auto& name : preset_names()) EXPECT_NO_THROW(preset_config(preset_from_string(name)).validate()) << name;
  EXPECT_THROW(preset_from_string("nope"), std::invalid_argument);
}

TEST(Config, RejectsInvalidFields) {
  auto c = small_config();
  c.alpha = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.t_list.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.replicates = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = preset_config(Preset::Depoisson);
  c.coupled = false;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, GaussianGrowingCltRejected) {
  auto c = preset_config(Preset::CltGrowing);
  c.density = DensityModel::gaussian();
  try {
    c.validate();
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("F(L_s) = 0"), std::string::npos);
  }
}

TEST(Simulate, DeterministicAcrossThreadCounts) {
  auto c = small_config();
  c.coupled = true;
  const auto a = simulate_replicates(c);
  c.threads = 3;
  const auto b = simulate_replicates(c);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].replicate, i);
    EXPECT_EQ(a[i].xi, b[i].xi);
    EXPECT_EQ(a[i].xi_poisson, b[i].xi_poisson);
    EXPECT_EQ(a[i].N, b[i].N);
  }
}

TEST(Simulate, XiMonotoneInT) {
  const auto c = small_config();
  for (const auto& r : simulate_replicates(c))
    for (const auto& per_kind : r.xi)
      for (std::size_t i = 1; i < per_kind.size(); ++i) EXPECT_LE(per_kind[i - 1], per_kind[i]);
}

TEST(Simulate, XiNonincreasingInK) {
  auto c = small_config();
  std::vector<std::vector<ReplicateRecord>> runs;
  for (std::uint32_t k : {1u, 2u, 3u}) {
    c.k = k;
    runs.push_back(simulate_replicates(c));
  }
  for (std::size_t r = 0; r < c.replicates; ++r)
    for (std::size_t kind = 0; kind < 2; ++kind)
      for (std::size_t ti = 0; ti < c.t_list.size(); ++ti) {
        EXPECT_GE(runs[0][r].xi[kind][ti], runs[1][r].xi[kind][ti]);
        EXPECT_GE(runs[1][r].xi[kind][ti], runs[2][r].xi[kind][ti]);
      }
}

TEST(Simulate, ZeroThresholdCountsRegion) {
  auto c = small_config();
  c.k = 0;
  c.region = Rect{{0, 0}, {0.5, 1}};
  c.replicates = 200;
  double total = 0;
  for (const auto& r : simulate_replicates(c)) total += static_cast<double>(r.xi[0][0]);
  const double mean = total / (200.0 * c.n);
  EXPECT_NEAR(mean, 0.5, 4 * std::sqrt(0.25 / (200.0 * c.n)));
}

TEST(Simulate, EtaSumsToN) {
  auto c = preset_config(Preset::DegreeDist);
  c.n = 3000;
  c.replicates = 3;
  for (const auto& r : simulate_replicates(c))
    for (const auto& eta : r.eta) {
      std::uint64_t s = 0;
      for (auto v : eta) s += v;
      EXPECT_EQ(s, c.n);
      EXPECT_EQ(eta.size(), c.k_max + 2);
    }
}

TEST(Simulate, CoupledViewIdentityWhenCountsMatch) {
  auto c = small_config();
  c.coupled = true;
  c.replicates = 60;
  c.n = 50;
  bool seen = false;
  for (const auto& r : simulate_replicates(c)) {
    ASSERT_TRUE(r.N);
    if (*r.N == c.n) {
      seen = true;
      EXPECT_EQ(r.xi, r.xi_poisson);
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Reports, SingleReplicateHasNoStandardError) {
  auto c = small_config();
  c.replicates = 1;
  const auto rep = run_mean_convergence(c);
  ASSERT_FALSE(rep.rows.empty());
  for (const auto& row : rep.rows) EXPECT_FALSE(row.std_error.has_value());
}

TEST(Reports, MeanRowsCarryTheory) {
  auto c = small_config();
  c.n = 20000;
  c.replicates = 20;
  c.t_list = {2.0};
  c.k = 3;
  const auto rep = run_mean_convergence(c);
  ASSERT_EQ(rep.rows.size(), 2u);
  for (const auto& row : rep.rows) {
    ASSERT_TRUE(row.theory);
    EXPECT_NEAR(*row.theory, 0.607773, 1e-6);
    EXPECT_TRUE(row.pass) << row.discrepancy;
  }
}

TEST(Reports, ConcentrationRowsObeyBound) {
  auto c = preset_config(Preset::Concentration);
  c.n = 3000;
  c.replicates = 40;
  const auto rep = run_concentration(c);
  ASSERT_FALSE(rep.rows.empty());
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.criterion, "azuma");
    EXPECT_GE(row.empirical, 0.0);
    EXPECT_LE(row.empirical, 1.0);
  }
}

TEST(Statistics, Moments) {
  const auto m = sample_moments({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_DOUBLE_EQ(m.variance, 5.0 / 3);
  ASSERT_TRUE(m.mean_se);
  EXPECT_NEAR(*m.mean_se, std::sqrt(5.0 / 3 / 4), 1e-15);
  const auto one = sample_moments({7});
  EXPECT_EQ(one.variance, 0.0);
  EXPECT_FALSE(one.mean_se);
}

TEST(Statistics, KsAndTv) {
  EXPECT_NEAR(total_variation({0.5, 0.5}, {1, 0}), 0.5, 1e-15);
  EXPECT_EQ(total_variation({0.2, 0.8}, {0.2, 0.8}), 0.0);
  // one sample at 0: sup |F - Phi| = 0.5
  EXPECT_NEAR(ks_statistic({0.0}, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }), 0.5, 1e-15);
  std::mt19937_64 eng(5);
  std::normal_distribution<double> z;
  std::vector<double> x(20000);
  for (auto& v : x) v = 3 + 2 * z(eng);
  EXPECT_LT(ks_statistic_standardized(x), 0.015);
  // ties: half the mass at one point
  EXPECT_NEAR(ks_statistic({0, 0, 1, 1}, [](double v) { return std::clamp(v, 0.0, 1.0); }), 0.5, 1e-15);
}

TEST(Statistics, Correlation) {
  EXPECT_NEAR(correlation({1, 2, 3}, {2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(correlation({1, 2, 3}, {3, 2, 1}), -1.0, 1e-15);
  EXPECT_EQ(correlation({1, 1, 1}, {1, 2, 3}), 0.0);
}

}  // namespace
}  // namespace sg
