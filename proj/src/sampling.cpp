#include "sectorgraph/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sectorgraph/kernels.hpp"
#include "sectorgraph/quadrature.hpp"
#include "sectorgraph/rng.hpp"

namespace sg {

MarkedPointCloud MarkedPointCloud::prefix(std::size_t m) const {
  if (m > size()) throw std::out_of_range("prefix longer than the cloud");
  MarkedPointCloud out;
  out.positions.assign(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(m));
  out.inclinations.assign(inclinations.begin(), inclinations.begin() + static_cast<std::ptrdiff_t>(m));
  return out;
}

MarkedPointCloud sample_marked(const DensityModel& d, std::size_t n, SeededRng& rng) {
  MarkedPointCloud cloud;
  cloud.positions.reserve(n);
  cloud.inclinations.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cloud.positions.push_back(d.sample(rng));
    cloud.inclinations.push_back(rng.angle());
  }
  return cloud;
}

CoupledSample sample_coupled(const DensityModel& d, std::size_t n, SeededRng& rng) {
  if (n < 1) throw std::invalid_argument("coupled sampling needs n >= 1");
  CoupledSample out;
  out.n = n;
  out.N = static_cast<std::size_t>(rng.poisson(static_cast<double>(n)));
  out.stream = sample_marked(d, std::max(out.n, out.N), rng);
  return out;
}

std::string to_string(Density3 d) { return d == Density3::UniformCube ? "uniform" : "gaussian"; }

double density3_eval(Density3 d, const Point3& x) {
  if (d == Density3::UniformCube) return (x.array() >= 0).all() && (x.array() <= 1).all() ? 1.0 : 0.0;
  return std::exp(-0.5 * x.squaredNorm()) / std::pow(kTwoPi, 1.5);
}

double density3_ball_mass(Density3 d, const Point3& x, double r) {
  if (!(r > 0)) return 0.0;
  if (d == Density3::Gaussian3) {
    // Non-central chi distribution with three degrees of freedom.
    const double a = x.norm();
    if (a < 1e-8) return std::clamp(2.0 * normal_cdf(r) - 1.0 - 2.0 * r * normal_pdf(r), 0.0, 1.0);
    const double v = normal_cdf(r - a) + normal_cdf(r + a) - 1.0 + (normal_pdf(r + a) - normal_pdf(r - a)) / a;
    return std::clamp(v, 0.0, 1.0);
  }
  const bool interior = (x.array() - r >= 0).all() && (x.array() + r <= 1).all();
  if (interior) return 4.0 / 3.0 * kPi * r * r * r;
  // Integrate the chord length in z over the disk's (x, y) footprint.
  const Box2 box{{std::max(0.0, x.x() - r), std::max(0.0, x.y() - r)},
                 {std::min(1.0, x.x() + r), std::min(1.0, x.y() + r)}};
  auto chord = [&](double px, double py) {
    const double h2 = r * r - (px - x.x()) * (px - x.x()) - (py - x.y()) * (py - x.y());
    if (h2 <= 0) return 0.0;
    const double h = std::sqrt(h2);
    return std::max(0.0, std::min(1.0, x.z() + h) - std::max(0.0, x.z() - h));
  };
  QuadOptions opts;
  opts.rel_tol = 1e-7;
  return integrate_2d(chord, box, opts).value;
}

MarkedPointCloud3 sample_marked_3d(Density3 d, std::size_t n, SeededRng& rng) {
  MarkedPointCloud3 cloud;
  cloud.positions.reserve(n);
  cloud.azimuths.reserve(n);
  cloud.elevations.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point3 p;
    if (d == Density3::UniformCube) {
      const double a = rng.uniform();
      const double b = rng.uniform();
      p = Point3(a, b, rng.uniform());
    } else {
      const auto [a, b] = rng.normal_pair();
      p = Point3(a, b, rng.normal());
    }
    cloud.positions.push_back(p);
    cloud.azimuths.push_back(rng.angle());
    cloud.elevations.push_back(rng.angle());
  }
  return cloud;
}

}  // namespace sg
