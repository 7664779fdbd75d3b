#include "sectorgraph/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

#include "sectorgraph/kernels.hpp"
#include "sectorgraph/rng.hpp"

namespace sg {
namespace {

constexpr double kGaussianReach = 12.0;

Point2 sample_in_region(const DensityModel& d, const Region& region, SeededRng& rng) {
  if (std::holds_alternative<WholePlane>(region)) return d.sample(rng);
  for (int attempt = 0; attempt < 10'000'000; ++attempt) {
    const Point2 x = d.sample(rng);
    if (region_contains(region, x)) return x;
  }
  throw std::runtime_error("region has too little mass to sample from");
}

Estimate mean_and_error(double sum, double sum_sq, std::size_t trials, double scale) {
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {scale * mean, scale * std::sqrt(var / n)};
}

// Joint exceedance P(N0 >= k, N1 >= k) where N0 = A0 + L + e0 and N1 = A1 + L + e1
// for independent Poisson A0, A1, L with the given means.
double joint_exceedance(double mean_only0, double mean_only1, double mean_shared, int e0, int e1, std::uint32_t k) {
  const auto kk = static_cast<std::int64_t>(k);
  double joint = poisson_tail(mean_shared, kk);
  for (std::int64_t m = 0; m < kk; ++m)
    joint += poisson_pmf(mean_shared, m) * poisson_tail(mean_only0, kk - m - e0) *
             poisson_tail(mean_only1, kk - m - e1);
  return joint;
}

void check_trials(const McOptions& mc) {
  if (mc.trials < 1) throw std::invalid_argument("Monte Carlo estimate needs at least one trial");
}

}  // namespace

void KnSchedule::validate() const {
  if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("kn exponent gamma must lie in (0, 1/2)");
}

std::uint32_t KnSchedule::kn(std::uint64_t n) const {
  validate();
  return static_cast<std::uint32_t>(std::ceil(std::pow(static_cast<double>(n), gamma)));
}

void validate_regime(const RadiusRegime& regime) {
  if (const auto* f = std::get_if<FixedK>(&regime)) {
    if (!(f->t > 0)) throw std::invalid_argument("fixed-k regime needs t > 0");
    return;
  }
  const auto& g = std::get<GrowingK>(regime);
  if (!(g.s > 0)) throw std::invalid_argument("growing-k regime needs s > 0");
  if (g.kn < 1) throw std::invalid_argument("growing-k regime needs kn >= 1");
  const double kn = static_cast<double>(g.kn);
  if (!(kn + g.t * std::sqrt(kn) > 0)) throw std::invalid_argument("growing-k regime needs kn + t sqrt(kn) > 0");
}

std::uint32_t threshold(const RadiusRegime& regime) {
  if (const auto* f = std::get_if<FixedK>(&regime)) return f->k;
  return std::get<GrowingK>(regime).kn;
}

namespace {

double scaled_volume(const RadiusRegime& regime) {
  validate_regime(regime);
  if (const auto* f = std::get_if<FixedK>(&regime)) return f->t;
  const auto& g = std::get<GrowingK>(regime);
  const double kn = static_cast<double>(g.kn);
  return g.s * (kn + g.t * std::sqrt(kn));
}

}  // namespace

double radius(const RadiusRegime& regime, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("radius needs n >= 1");
  return std::sqrt(scaled_volume(regime) / static_cast<double>(n));
}

double radius_3d(const RadiusRegime& regime, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("radius needs n >= 1");
  return std::cbrt(scaled_volume(regime) / static_cast<double>(n));
}

double limit_mean_fixed_k(const DensityModel& d, double alpha, double t, std::uint32_t k, const Region& region,
                          bool force_cubature) {
  const double c = 0.5 * alpha * t;
  auto phi = [c, k](double v) { return poisson_tail(c * v, k) * v; };
  return d.functional(region, phi, force_cubature).value;
}

LimitMean limit_mean_growing(const DensityModel& d, double alpha, double s, double t, const Region& region) {
  const LevelSetMass m = level_set_mass(d, s, alpha, region);
  return {m.mass_above + normal_cdf(t) * m.mass_on_level, m.mass_above, m.mass_on_level};
}

double degree_distribution(const DensityModel& d, double alpha, double t, std::uint32_t k) {
  if (d.is_uniform()) return poisson_pmf(0.5 * alpha * t, k);
  if (d.is_gaussian()) {
    // Polar substitution u = f(x) gives (1/c) P(Poi(c) >= k + 1), c = alpha t / 4pi.
    const double c = alpha * t / (4.0 * kPi);
    if (c == 0.0) return k == 0 ? 1.0 : 0.0;
    return poisson_tail(c, static_cast<std::int64_t>(k) + 1) / c;
  }
  const double c = 0.5 * alpha * t;
  return d.functional(WholePlane{}, [c, k](double v) { return poisson_pmf(c * v, k) * v; }).value;
}

QuadResult degree_distribution_quadrature(const DensityModel& d, double alpha, double t, std::uint32_t k,
                                          const QuadOptions& opts) {
  const double c = 0.5 * alpha * t;
  return d.functional(WholePlane{}, [c, k](double v) { return poisson_pmf(c * v, k) * v; }, true, opts);
}

double degree_tail_bound(double alpha, double t, double f_max, std::uint32_t k) {
  if (k == 0) return 1.0;
  const double x = 0.5 * alpha * t * f_max;
  if (x <= 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(x) - std::lgamma(kd + 1.0));
}

double h_correction(const DensityModel& d, double alpha, double t, std::uint32_t k, bool force_cubature) {
  if (k < 1) throw std::invalid_argument("h correction needs k >= 1");
  const double c = 0.5 * alpha * t;
  auto phi = [c, k](double v) {
    const double lambda = c * v;
    return (poisson_pmf(lambda, k - 1) * lambda + poisson_tail(lambda, k)) * v;
  };
  return d.functional(WholePlane{}, phi, force_cubature).value;
}

double psi_in(double rho, double lambda, double t, double u, std::uint32_t k) {
  const double rt = std::sqrt(t), ru = std::sqrt(u);
  const double shared = disk_intersection_area(rho, rt, ru);
  const double only0 = std::max(0.0, kPi * t - shared);
  const double only1 = std::max(0.0, kPi * u - shared);
  // H^z adds z to the first disk's count, H^0 adds the origin to the second.
  const int e0 = rho < rt ? 1 : 0;
  const int e1 = rho < ru ? 1 : 0;
  const double joint = joint_exceedance(lambda * only0, lambda * only1, lambda * shared, e0, e1, k);
  return joint - poisson_tail(lambda * kPi * t, k) * poisson_tail(lambda * kPi * u, k);
}

QuadResult poissonized_cov_in_fixed_k(const DensityModel& d, double alpha, double t, double u, std::uint32_t k,
                                      const Region& region) {
  if (!(t > 0 && u > 0)) throw std::invalid_argument("covariance needs t, u > 0");
  if (k < 1) throw std::invalid_argument("covariance needs k >= 1");
  const double first = limit_mean_fixed_k(d, alpha, std::min(t, u), k, region);
  const double rt = std::sqrt(t), ru = std::sqrt(u);
  std::vector<double> breaks = {0.0, std::abs(rt - ru), std::min(rt, ru), std::max(rt, ru), rt + ru};
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double inner_error = 0.0;
  bool converged = true;
  // Psi(lambda) = integral over z of psi_in, radially symmetric in z.
  auto big_psi = [&](double lambda) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const QuadResult q = integrate_1d(
          [&](double rho) { return kTwoPi * rho * psi_in(rho, lambda, t, u, k); }, breaks[i], breaks[i + 1]);
      total += q.value;
      inner_error = std::max(inner_error, q.abs_error);
      converged = converged && q.converged;
    }
    return total;
  };
  const double thin = alpha / kTwoPi;
  const QuadResult second = d.functional(region, [&](double v) { return v * v * big_psi(thin * v); });
  QuadResult out;
  out.value = first + second.value;
  out.abs_error = second.abs_error + inner_error * d.f_max();
  out.converged = converged && second.converged;
  out.evaluations = second.evaluations;
  return out;
}

Estimate estimate_cov_out_fixed_k(const DensityModel& d, double alpha, double t, double u, std::uint32_t k,
                                  const McOptions& mc, const Region& region) {
  if (!(t > 0 && u > 0)) throw std::invalid_argument("covariance needs t, u > 0");
  if (k < 1) throw std::invalid_argument("covariance needs k >= 1");
  check_trials(mc);
  const double first = limit_mean_fixed_k(d, alpha, std::min(t, u), k, region);
  const double mass = d.mass(region).value;
  const double rt = std::sqrt(t), ru = std::sqrt(u), reach = rt + ru;
  SeededRng rng(mc.seed, 0);
  // Rotation invariance fixes the first inclination at 0.
  const SectorSpec s0{Point2::Zero(), 0.0, alpha, rt};
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t trial = 0; trial < mc.trials; ++trial) {
    const Point2 x1 = sample_in_region(d, region, rng);
    const double lambda = d.eval(x1);
    const double y2 = rng.angle();
    const double rad = reach * std::sqrt(rng.uniform());
    const double ang = rng.angle();
    const Point2 z = rad * Point2(std::cos(ang), std::sin(ang));
    const SectorSpec s1{z, y2, alpha, ru};
    const double shared = sector_intersection_area(s0, s1);
    const double only0 = std::max(0.0, sector_area(alpha, rt) - shared);
    const double only1 = std::max(0.0, sector_area(alpha, ru) - shared);
    const int e0 = sector_contains(s0, z) ? 1 : 0;
    const int e1 = sector_contains(s1, Point2(Point2::Zero())) ? 1 : 0;
    const double joint = joint_exceedance(lambda * only0, lambda * only1, lambda * shared, e0, e1, k);
    const double psi = joint - poisson_tail(lambda * sector_area(alpha, rt), k) *
                                   poisson_tail(lambda * sector_area(alpha, ru), k);
    const double w = lambda * psi;
    sum += w;
    sum_sq += w * w;
  }
  Estimate est = mean_and_error(sum, sum_sq, mc.trials, mass * kPi * reach * reach);
  est.value += first;
  return est;
}

Estimate variance_fixed_k(const DensityModel& d, double alpha, double t, double u, std::uint32_t k, DegreeKind kind,
                          const McOptions& mc) {
  const double hh = h_correction(d, alpha, t, k) * h_correction(d, alpha, u, k);
  if (kind == DegreeKind::In) return {poissonized_cov_in_fixed_k(d, alpha, t, u, k).value - hh, 0.0};
  Estimate e = estimate_cov_out_fixed_k(d, alpha, t, u, k, mc);
  e.value -= hh;
  return e;
}

bool growing_cov_degenerate(const DensityModel& d, double alpha, double s, const Region& region) {
  return level_set_area(d, s, alpha, region) == 0.0;
}

double white_noise_cov_in(double rho, double t, double u) {
  const double c = std::clamp(disk_intersection_area(rho, 1.0, 1.0) / kPi, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  return bivariate_normal_cdf(t, u, c) - normal_cdf(t) * normal_cdf(u);
}

Estimate limit_cov_growing(const DensityModel& d, double alpha, double s, double t, double u, DegreeKind kind,
                           const Region& region, const McOptions& mc) {
  const double area = level_set_area(d, s, alpha, region);
  if (area == 0.0) return {0.0, 0.0};
  const double prefactor = 4.0 * area / (s * alpha * alpha);
  if (kind == DegreeKind::In) {
    QuadOptions opts;
    opts.rel_tol = 1e-10;
    const QuadResult q =
        integrate_1d([&](double rho) { return kTwoPi * rho * white_noise_cov_in(rho, t, u); }, 0.0, 2.0, opts);
    return {prefactor * q.value, 0.0};
  }
  check_trials(mc);
  SeededRng rng(mc.seed, 1);
  const SectorSpec s0{Point2::Zero(), 0.0, alpha, 1.0};
  const double base = normal_cdf(t) * normal_cdf(u);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t trial = 0; trial < mc.trials; ++trial) {
    const double y2 = rng.angle();
    const double rad = 2.0 * std::sqrt(rng.uniform());
    const double ang = rng.angle();
    const SectorSpec s1{Point2(rad * std::cos(ang), rad * std::sin(ang)), y2, alpha, 1.0};
    // Var W'(S) = (2/alpha)(alpha/2) = 1, so the correlation is (2/alpha)|S0 S1|.
    const double c = std::clamp(2.0 / alpha * sector_intersection_area(s0, s1), 0.0, 1.0);
    const double w = c == 0.0 ? 0.0 : bivariate_normal_cdf(t, u, c) - base;
    sum += w;
    sum_sq += w * w;
  }
  return mean_and_error(sum, sum_sq, mc.trials, prefactor * 4.0 * kPi);
}

Estimate variance_growing(const DensityModel& d, double alpha, double s, double t, double u, DegreeKind kind,
                          const McOptions& mc) {
  Estimate e = limit_cov_growing(d, alpha, s, t, u, kind, WholePlane{}, mc);
  const double level = level_set_mass(d, s, alpha).mass_on_level;
  e.value -= normal_pdf(t) * normal_pdf(u) * level * level;
  return e;
}

double mean_integrand_finite_n(const DensityModel& d, double alpha, std::uint64_t n, const RadiusRegime& regime,
                               const Point2& x, double y, DegreeKind kind) {
  const double r = radius(regime, n);
  const std::uint32_t k = threshold(regime);
  double p;
  if (kind == DegreeKind::Out) {
    p = d.sector_mass(SectorSpec{x, normalize_angle(y), alpha, r});
  } else {
    p = alpha / kTwoPi * d.mass(Disk{x, r}).value;
  }
  return binomial_tail(static_cast<std::int64_t>(n) - 1, std::clamp(p, 0.0, 1.0), k);
}

Estimate finite_n_mean(const DensityModel& d, double alpha, std::uint64_t n, const RadiusRegime& regime,
                       DegreeKind kind, const Region& region, const McOptions& mc) {
  check_trials(mc);
  const double mass = d.mass(region).value;
  SeededRng rng(mc.seed, 2);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t trial = 0; trial < mc.trials; ++trial) {
    const Point2 x = sample_in_region(d, region, rng);
    const double y = rng.angle();
    const double w = mean_integrand_finite_n(d, alpha, n, regime, x, y, kind);
    sum += w;
    sum_sq += w * w;
  }
  return mean_and_error(sum, sum_sq, mc.trials, mass);
}

double spherical_sector_mass(Density3 d, const SphericalSectorSpec& ss) {
  const double r = ss.radius;
  const Point3& x = ss.apex;
  const double frac = spherical_sector_solid_fraction(ss.amplitude);
  if (d == Density3::UniformCube && (x.array() - r >= 0).all() && (x.array() + r <= 1).all())
    return frac * 4.0 / 3.0 * kPi * r * r * r;
  const Point3 axis = cone_axis(ss.azimuth, ss.elevation, ss.amplitude);
  const Point3 helper = std::abs(axis.x()) < 0.9 ? Point3::UnitX() : Point3::UnitY();
  const Point3 e1 = axis.cross(helper).normalized();
  const Point3 e2 = axis.cross(e1);
  QuadOptions radial_opts;
  radial_opts.rel_tol = 1e-9;
  auto radial = [&](const Point3& dir) {
    if (d == Density3::UniformCube) {
      if ((x.array() < 0).any() || (x.array() > 1).any()) {
        return integrate_1d([&](double rho) { return rho * rho * density3_eval(d, Point3(x + rho * dir)); }, 0.0, r,
                            radial_opts)
            .value;
      }
      double reach = r;
      for (int a = 0; a < 3; ++a) {
        if (dir[a] > 0) reach = std::min(reach, (1.0 - x[a]) / dir[a]);
        if (dir[a] < 0) reach = std::min(reach, -x[a] / dir[a]);
      }
      return reach * reach * reach / 3.0;
    }
    return integrate_1d([&](double rho) { return rho * rho * density3_eval(d, Point3(x + rho * dir)); }, 0.0, r,
                        radial_opts)
        .value;
  };
  auto integrand = [&](double theta, double phi) {
    const Point3 dir = std::cos(theta) * axis + std::sin(theta) * (std::cos(phi) * e1 + std::sin(phi) * e2);
    return std::sin(theta) * radial(dir);
  };
  QuadOptions opts;
  opts.rel_tol = 1e-7;
  return integrate_2d(integrand, Box2{{0.0, 0.0}, {std::min(0.5 * ss.amplitude, kPi), kTwoPi}}, opts).value;
}

Estimate finite_n_mean_3d(Density3 d, double alpha, std::uint64_t n, const RadiusRegime& regime, DegreeKind kind,
                          const McOptions& mc) {
  check_trials(mc);
  const double r = radius_3d(regime, n);
  const std::uint32_t k = threshold(regime);
  SeededRng rng(mc.seed, 3);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t trial = 0; trial < mc.trials; ++trial) {
    const MarkedPointCloud3 one = sample_marked_3d(d, 1, rng);
    double p;
    if (kind == DegreeKind::Out) {
      p = spherical_sector_mass(d, {one.positions[0], one.azimuths[0], one.elevations[0], alpha, r});
    } else {
      p = spherical_sector_solid_fraction(alpha) * density3_ball_mass(d, one.positions[0], r);
    }
    const double w = binomial_tail(static_cast<std::int64_t>(n) - 1, std::clamp(p, 0.0, 1.0), k);
    sum += w;
    sum_sq += w * w;
  }
  return mean_and_error(sum, sum_sq, mc.trials, 1.0);
}

double limit_mean_fixed_k_3d(Density3 d, double alpha, double t, std::uint32_t k) {
  const double c = spherical_sector_solid_fraction(alpha) * 4.0 / 3.0 * kPi * t;
  if (d == Density3::UniformCube) return poisson_tail(c, k);
  auto radial = [&](double rho) {
    const double f = std::exp(-0.5 * rho * rho) / std::pow(kTwoPi, 1.5);
    return 4.0 * kPi * rho * rho * poisson_tail(c * f, k) * f;
  };
  QuadOptions opts;
  opts.rel_tol = 1e-10;
  return integrate_1d(radial, 0.0, kGaussianReach, opts).value;
}

double azuma_bound(double eps, std::uint64_t n, std::uint32_t kn) {
  if (kn < 1) throw std::invalid_argument("azuma bound needs kn >= 1");
  const double k = static_cast<double>(kn);
  return 2.0 * std::exp(-eps * eps * static_cast<double>(n) / (648.0 * k * k));
}

double scaled_binomial_at_level(std::uint64_t n, std::uint64_t j, double t) {
  const double jd = static_cast<double>(j);
  const double root_mu = 0.5 * (-t + std::sqrt(t * t + 4.0 * jd));
  const double p = root_mu * root_mu / static_cast<double>(n);
  return std::sqrt(jd) * binomial_pmf(static_cast<std::int64_t>(n), p, static_cast<std::int64_t>(j));
}

}  // namespace sg
