#pragma once

#include <cstdint>
#include <variant>

#include "sectorgraph/common.hpp"
#include "sectorgraph/density.hpp"
#include "sectorgraph/quadrature.hpp"
#include "sectorgraph/sampling.hpp"

namespace sg {

// ---------------------------------------------------------------------------
// Radius regimes
// ---------------------------------------------------------------------------

/// n r^2 = t with a fixed degree threshold k.
struct FixedK {
  std::uint32_t k = 1;
  double t = 1.0;
};

/// n r^2 = s (kn + t sqrt(kn)) with a growing threshold kn.
struct GrowingK {
  double s = 1.0;
  double t = 0.0;
  std::uint32_t kn = 1;
};

using RadiusRegime = std::variant<FixedK, GrowingK>;

/// kn(n) = ceil(n^gamma), gamma in (0, 1/2).
struct KnSchedule {
  double gamma = 0.3;

  void validate() const;
  std::uint32_t kn(std::uint64_t n) const;
};

void validate_regime(const RadiusRegime& regime);
/// Degree threshold: k for FixedK, kn for GrowingK.
std::uint32_t threshold(const RadiusRegime& regime);
/// r_n: sqrt(t / n) or sqrt(s (kn + t sqrt(kn)) / n). Throws on a negative radicand.
double radius(const RadiusRegime& regime, std::uint64_t n);
/// The 3-D analogue with n r^3 in place of n r^2.
double radius_3d(const RadiusRegime& regime, std::uint64_t n);

// ---------------------------------------------------------------------------
// Limit means and the degree distribution
// ---------------------------------------------------------------------------

/// lim n^-1 E xi(t, A) for fixed k: integral over A of P(Poi((alpha/2) t f) >= k) f.
double limit_mean_fixed_k(const DensityModel& d, double alpha, double t, std::uint32_t k,
                          const Region& region = WholePlane{}, bool force_cubature = false);

struct LimitMean {
  double value = 0.0;
  double level_plus_mass = 0.0;  // F(L_s^+ intersected with A)
  double level_mass = 0.0;       // F(L_s intersected with A)
};

/// lim n^-1 E xi(t, A) for growing kn: F(L_s^+ A) + Phi(t) F(L_s A).
LimitMean limit_mean_growing(const DensityModel& d, double alpha, double s, double t,
                             const Region& region = WholePlane{});

/// Limit degree distribution p(k) = integral of P(Poi((alpha/2) t f) = k) f.
/// Closed forms for the uniform and Gaussian densities.
double degree_distribution(const DensityModel& d, double alpha, double t, std::uint32_t k);
/// The same integral evaluated directly by cubature, bypassing closed forms.
QuadResult degree_distribution_quadrature(const DensityModel& d, double alpha, double t, std::uint32_t k,
                                          const QuadOptions& opts = {});

/// (alpha t f_max / 2)^k / k!, an upper bound on p(k).
double degree_tail_bound(double alpha, double t, double f_max, std::uint32_t k);

/// h(t) = integral of {P(Poi(lambda) = k-1) lambda + P(Poi(lambda) >= k)} f,
/// lambda = (alpha/2) t f(x). Requires k >= 1.
double h_correction(const DensityModel& d, double alpha, double t, std::uint32_t k, bool force_cubature = false);

// ---------------------------------------------------------------------------
// Fixed-k covariance of the Poissonized statistics
// ---------------------------------------------------------------------------

/// psi for the in-degree: joint exceedance of the two inserted-point disk counts
/// minus the product of the plain exceedances, at separation |z| = rho.
double psi_in(double rho, double lambda, double t, double u, std::uint32_t k);

/// Limit E[xi'_in(t) xi'_in(u)] for fixed k. The diagonal term uses min(t, u)
/// (nested disks). abs_error carries the achieved quadrature error.
QuadResult poissonized_cov_in_fixed_k(const DensityModel& d, double alpha, double t, double u, std::uint32_t k,
                                      const Region& region = WholePlane{});

struct McOptions {
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
};

/// Monte Carlo estimate of the out-degree analogue, with exact sector overlap
/// areas and exact Poisson probabilities per sample.
Estimate estimate_cov_out_fixed_k(const DensityModel& d, double alpha, double t, double u, std::uint32_t k,
                                  const McOptions& mc = {}, const Region& region = WholePlane{});

/// Poissonized covariance minus h(t) h(u).
Estimate variance_fixed_k(const DensityModel& d, double alpha, double t, double u, std::uint32_t k, DegreeKind kind,
                          const McOptions& mc = {});

// ---------------------------------------------------------------------------
// Growing-k covariance
// ---------------------------------------------------------------------------

/// True when |L_s intersected with A| = 0, where the growing-k covariance vanishes.
bool growing_cov_degenerate(const DensityModel& d, double alpha, double s, const Region& region = WholePlane{});

/// Cov of the white-noise indicators at separation rho for unit disks.
double white_noise_cov_in(double rho, double t, double u);

/// Limit (n kn)^-1 covariance of xi'(t, A), xi'(u, A). The in-degree value is
/// a quadrature (std_error 0); the out-degree value is Monte Carlo over the
/// relative orientation and offset. Returns 0 for degenerate level sets.
Estimate limit_cov_growing(const DensityModel& d, double alpha, double s, double t, double u, DegreeKind kind,
                           const Region& region = WholePlane{}, const McOptions& mc = {});

/// limit_cov_growing minus phi(t) phi(u) F(L_s)^2.
Estimate variance_growing(const DensityModel& d, double alpha, double s, double t, double u, DegreeKind kind,
                          const McOptions& mc = {});

// ---------------------------------------------------------------------------
// Finite-n means
// ---------------------------------------------------------------------------

/// P[Bin(n-1, p) >= k] where p = F(S(x, y, r_n)) (out) or (alpha/2pi) F(B(x, r_n)) (in).
double mean_integrand_finite_n(const DensityModel& d, double alpha, std::uint64_t n, const RadiusRegime& regime,
                               const Point2& x, double y, DegreeKind kind);

/// Exact finite-n n^-1 E xi(t, A) estimated by Monte Carlo over (x, y).
Estimate finite_n_mean(const DensityModel& d, double alpha, std::uint64_t n, const RadiusRegime& regime,
                       DegreeKind kind, const Region& region = WholePlane{}, const McOptions& mc = {});

// ---------------------------------------------------------------------------
// 3-D
// ---------------------------------------------------------------------------

/// F(SS(apex, Y, Z, r)) for a 3-D density.
double spherical_sector_mass(Density3 d, const SphericalSectorSpec& ss);

/// Finite-n n^-1 E xi in 3-D, by Monte Carlo over (x, Y, Z).
Estimate finite_n_mean_3d(Density3 d, double alpha, std::uint64_t n, const RadiusRegime& regime, DegreeKind kind,
                          const McOptions& mc = {});

/// Fixed-k limit in 3-D with n r^3 = t: integral of P(Poi(c t f) >= k) f,
/// c = (4/3) pi (1 - cos(alpha/2)) / 2.
double limit_mean_fixed_k_3d(Density3 d, double alpha, double t, std::uint32_t k);

// ---------------------------------------------------------------------------
// Concentration and binomial local limits
// ---------------------------------------------------------------------------

/// 2 exp(-eps^2 n / (648 kn^2)).
double azuma_bound(double eps, std::uint64_t n, std::uint32_t kn);

/// sqrt(j) P(Bin(n, p) = j) where p = mu / n and (j - mu) / sqrt(mu) = t.
double scaled_binomial_at_level(std::uint64_t n, std::uint64_t j, double t);

}  // namespace sg
