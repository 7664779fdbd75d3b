#include "sectorgraph/geometry.hpp"

#include <algorithm>

#include "sectorgraph/clip.hpp"
#include "sectorgraph/rng.hpp"

namespace sg {

std::array<Point2, 2> sector_bounding_box(const SectorSpec& s) {
  if (s.amplitude >= kTwoPi) {
    const Point2 d(s.radius, s.radius);
    return {Point2(s.apex - d), Point2(s.apex + d)};
  }
  Point2 lo = s.apex;
  Point2 hi = s.apex;
  auto extend = [&](double phi) {
    const Point2 p = s.apex + s.radius * Point2(std::cos(phi), std::sin(phi));
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  extend(s.inclination);
  extend(s.inclination + s.amplitude);
  // axis extremes at multiples of pi/2 inside the arc
  for (int q = 0; q < 8; ++q) {
    const double phi = q * (kPi / 2);
    if (phi > s.inclination && phi < s.inclination + s.amplitude) extend(phi);
  }
  return {lo, hi};
}

double sector_intersection_area(const SectorSpec& a, const SectorSpec& b) {
  const auto box_a = sector_bounding_box(a);
  const auto box_b = sector_bounding_box(b);
  if ((box_a[1].array() <= box_b[0].array()).any() || (box_b[1].array() <= box_a[0].array()).any())
    return 0.0;
  return intersection_area(CurvedRegion::sector(a), CurvedRegion::sector(b));
}

Estimate sector_intersection_area_mc(const SectorSpec& a, const SectorSpec& b, std::size_t samples,
                                     SeededRng& rng) {
  if (samples == 0) throw std::invalid_argument("monte-carlo area needs at least one sample");
  const auto box = sector_bounding_box(a);
  const Point2 extent = box[1] - box[0];
  const double box_area = extent.x() * extent.y();
  const ArcFrame<double> fa(a.inclination, a.amplitude);
  const ArcFrame<double> fb(b.inclination, b.amplitude);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point2 z(box[0].x() + extent.x() * rng.uniform(), box[0].y() + extent.y() * rng.uniform());
    if (sector_contains(a, fa, z) && sector_contains(b, fb, z)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {box_area * p, box_area * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

}  // namespace sg
