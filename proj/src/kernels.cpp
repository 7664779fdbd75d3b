#include "sectorgraph/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sectorgraph/quadrature.hpp"

namespace sg {

double poisson_pmf(double lambda, std::int64_t k) {
  if (lambda < 0) throw std::invalid_argument("poisson rate must be >= 0");
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(-lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0));
}

double poisson_tail(double lambda, std::int64_t k) {
  if (lambda < 0) throw std::invalid_argument("poisson rate must be >= 0");
  if (k <= 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  double sum = 0.0;
  if (static_cast<double>(k) <= lambda) {
    for (std::int64_t i = 0; i < k; ++i) sum += poisson_pmf(lambda, i);
    return std::clamp(1.0 - sum, 0.0, 1.0);
  }
  // Above the mean the terms decrease geometrically; sum them directly.
  double term = poisson_pmf(lambda, k);
  for (std::int64_t i = k; term > 0.0; ++i) {
    sum += term;
    if (term < 1e-17 * sum) break;
    term *= lambda / static_cast<double>(i + 1);
  }
  return std::clamp(sum, 0.0, 1.0);
}

std::int64_t poisson_quantile(double lambda, double tail_prob) {
  std::int64_t m = static_cast<std::int64_t>(std::floor(lambda));
  while (poisson_tail(lambda, m + 1) > tail_prob) ++m;
  return m;
}

double binomial_pmf(std::int64_t n, double p, std::int64_t k) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial p must lie in [0, 1]");
  if (k < 0 || k > n) return 0.0;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  const double log_choose = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
  return std::exp(log_choose + kd * std::log(p) + (nd - kd) * std::log1p(-p));
}

double binomial_tail(std::int64_t n, double p, std::int64_t k) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  const double mean = static_cast<double>(n) * p;
  double sum = 0.0;
  if (static_cast<double>(k) <= mean) {
    for (std::int64_t i = 0; i < k; ++i) sum += binomial_pmf(n, p, i);
    return std::clamp(1.0 - sum, 0.0, 1.0);
  }
  double term = binomial_pmf(n, p, k);
  const double odds = p / (1.0 - p);
  for (std::int64_t i = k; i <= n && term > 0.0; ++i) {
    sum += term;
    if (term < 1e-17 * sum) break;
    term *= odds * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double normal_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double bivariate_normal_cdf(double h, double k, double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("correlation must lie in [-1, 1]");
  if (rho == 1.0) return normal_cdf(std::min(h, k));
  if (rho == -1.0) return std::max(0.0, normal_cdf(h) - normal_cdf(-k));
  const double base = normal_cdf(h) * normal_cdf(k);
  if (rho == 0.0) return base;
  // d/d rho of the CDF is the bivariate density at (h, k); substitute rho = sin(theta).
  auto integrand = [h, k](double theta) {
    const double s = std::sin(theta);
    const double c2 = 1.0 - s * s;
    if (c2 <= 0.0) return h == k ? std::exp(-0.5 * h * h) : 0.0;
    return std::exp(-(h * h + k * k - 2.0 * h * k * s) / (2.0 * c2));
  };
  QuadOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-14;
  const QuadResult q = integrate_1d(integrand, 0.0, std::asin(rho), opts);
  return std::clamp(base + q.value / (2.0 * std::numbers::pi), 0.0, 1.0);
}

}  // namespace sg
