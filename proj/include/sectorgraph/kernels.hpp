#pragma once

#include <cstdint>

namespace sg {

/// P(Poi(lambda) = k), evaluated in log space. lambda = 0 gives the point mass at 0.
double poisson_pmf(double lambda, std::int64_t k);
/// P(Poi(lambda) >= k), clamped to [0, 1].
double poisson_tail(double lambda, std::int64_t k);
/// Smallest m with P(Poi(lambda) <= m) >= 1 - tail_prob.
std::int64_t poisson_quantile(double lambda, double tail_prob = 1e-12);

double binomial_pmf(std::int64_t n, double p, std::int64_t k);
/// P(Bin(n, p) >= k).
double binomial_tail(std::int64_t n, double p, std::int64_t k);

double normal_pdf(double t);
double normal_cdf(double t);

/// P(X <= h, Y <= k) for a standard bivariate normal with correlation rho.
/// One-dimensional integral over the arcsine of the correlation.
double bivariate_normal_cdf(double h, double k, double rho);

}  // namespace sg
