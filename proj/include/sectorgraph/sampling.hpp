#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sectorgraph/density.hpp"
#include "sectorgraph/geometry.hpp"

namespace sg {

class SeededRng;

/// Positions with one sector inclination per point.
struct MarkedPointCloud {
  std::vector<Point2> positions;
  std::vector<double> inclinations;

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
  /// The first m points (m <= size()).
  MarkedPointCloud prefix(std::size_t m) const;
};

/// Binomial and Poissonized views of one i.i.d. stream: the stream holds
/// max(n, N) points and the views are its first n and first N points.
struct CoupledSample {
  MarkedPointCloud stream;
  std::size_t n = 0;
  std::size_t N = 0;

  MarkedPointCloud binomial_view() const { return stream.prefix(n); }
  MarkedPointCloud poisson_view() const { return stream.prefix(N); }
};

/// n i.i.d. positions from d, each followed by its U[0, 2pi) inclination. The
/// draw order is per point so every prefix of a longer sample is itself a sample.
MarkedPointCloud sample_marked(const DensityModel& d, std::size_t n, SeededRng& rng);

/// Draws N ~ Poisson(n), then one marked stream of length max(n, N).
CoupledSample sample_coupled(const DensityModel& d, std::size_t n, SeededRng& rng);

// ---------------------------------------------------------------------------
// 3-D
// ---------------------------------------------------------------------------

enum class Density3 { UniformCube, Gaussian3 };

std::string to_string(Density3 d);
/// Density value; the uniform cube is [0, 1]^3.
double density3_eval(Density3 d, const Point3& x);
/// F(B(x, r)) for the 3-D density.
double density3_ball_mass(Density3 d, const Point3& x, double r);

struct MarkedPointCloud3 {
  std::vector<Point3> positions;
  std::vector<double> azimuths;    // Y
  std::vector<double> elevations;  // Z

  std::size_t size() const { return positions.size(); }
};

MarkedPointCloud3 sample_marked_3d(Density3 d, std::size_t n, SeededRng& rng);

}  // namespace sg
