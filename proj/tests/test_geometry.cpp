#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Geometry>

#include "gen.hpp"
#include "sectorgraph/clip.hpp"
#include "sectorgraph/geometry.hpp"
#include "sectorgraph/rng.hpp"

namespace sg {
namespace {

using testing::Gen;

// Independent angular oracle: atan2 polar angle against [incl, incl + alpha).
bool contains_by_angle(const SectorSpec& s, const Point2& z) {
  const Point2 v = z - s.apex;
  if (v.isZero(0)) return true;
  if (!(v.norm() < s.radius)) return false;
  double phi = std::atan2(v.y(), v.x()) - s.inclination;
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  return phi < s.amplitude;
}

TEST(SectorContains, FullDiskContainsInteriorPoint) {
  EXPECT_TRUE(sector_contains(SectorSpec{{0, 0}, 0, kTwoPi, 1}, Point2(0.5, 0)));
}

TEST(SectorContains, ApexAlwaysContained) {
  EXPECT_TRUE(sector_contains(SectorSpec{{0, 0}, 0, kPi / 2, 1}, Point2(0, 0)));
  EXPECT_TRUE(sector_contains(SectorSpec{{3, -1}, 5.0, 1e-6, 1e-3}, Point2(3, -1)));
}

TEST(SectorContains, PointOutsideQuarterArc) {
  const Point2 z(-0.5, -0.1);
  const SectorSpec s{{0, 0}, 0, kPi / 2, 1};
  EXPECT_FALSE(sector_contains(s, z));
  const double deg = std::atan2(z.y(), z.x()) * 180 / kPi + 360;
  EXPECT_NEAR(deg, 191.31, 0.01);
  EXPECT_FALSE(contains_by_angle(s, z));
}

TEST(SectorContains, HalfOpenArcBoundaries) {
  const SectorSpec s{{0, 0}, 0, kPi / 2, 1};
  EXPECT_TRUE(sector_contains(s, Point2(0.5, 0)));   // start ray included
  EXPECT_FALSE(sector_contains(s, Point2(0, 0.5)));  // end ray excluded
  const SectorSpec half{{0, 0}, 0, kPi, 1};
  EXPECT_TRUE(sector_contains(half, Point2(0.5, 0)));
  EXPECT_FALSE(sector_contains(half, Point2(-0.5, 0)));
}

TEST(BallContains, StrictBoundary) {
  EXPECT_FALSE(ball_contains(Point2(0, 0), 1.0, Point2(1, 0)));
  EXPECT_TRUE(ball_contains(Point2(0, 0), 1.0, Point2(0, 0)));
  EXPECT_FALSE(ball_contains(Point2(0, 0), 1.0, Point2(0.6, 0.8)));
}

TEST(SectorArea, ClosedForm) {
  EXPECT_DOUBLE_EQ(sector_area(kTwoPi, 1.0), kPi);
  EXPECT_DOUBLE_EQ(sector_area(kPi, 1.0), kPi / 2);
  EXPECT_NEAR(sector_area(kPi / 3, 2.0), 2 * kPi / 3, 1e-15);
}

TEST(DiskIntersection, Examples) {
  EXPECT_NEAR(disk_intersection_area(0.0, 1.0, 1.0), kPi, 1e-15);
  EXPECT_EQ(disk_intersection_area(3.0, 1.0, 1.0), 0.0);
  const double lens = 2 * kPi / 3 - std::sqrt(3.0) / 2;
  EXPECT_NEAR(disk_intersection_area(1.0, 1.0, 1.0), lens, 1e-12);
  EXPECT_NEAR(lens, 1.2284, 1e-4);
}

TEST(DiskIntersection, LensMatchesHitCounting) {
  Gen g(11);
  const std::size_t trials = 1000000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Point2 p(g.uniform(-1, 1), g.uniform(-1, 1));
    if (p.squaredNorm() < 1 && (p - Point2(1, 0)).squaredNorm() < 1) ++hits;
  }
  EXPECT_NEAR(4.0 * hits / trials, disk_intersection_area(1.0, 1.0, 1.0), 1e-3 * 4);
}

TEST(SectorIntersection, Examples) {
  const SectorSpec s{{0, 0}, 0.3, kPi, 1};
  EXPECT_NEAR(sector_intersection_area(s, s), kPi / 2, 1e-12);
  const SectorSpec far{{3, 0}, 0.3, kPi, 1};
  EXPECT_EQ(sector_intersection_area(s, far), 0.0);
  const SectorSpec a{{0, 0}, 0, kTwoPi, 1}, b{{1, 0}, 0, kTwoPi, 1};
  EXPECT_NEAR(sector_intersection_area(a, b), 2 * kPi / 3 - std::sqrt(3.0) / 2, 1e-12);
}

TEST(SectorIntersection, MonteCarloRejectsZeroSamples) {
  SeededRng rng(1, 0);
  const SectorSpec s{{0, 0}, 0, kPi, 1};
  EXPECT_THROW(sector_intersection_area_mc(s, s, 0, rng), std::invalid_argument);
}

TEST(SectorIntersectionProperty, ExactClipAgreesWithMonteCarlo) {
  Gen g(2024);
  SeededRng rng(7, 0);
  for (int c = 0; c < 60; ++c) {
    SCOPED_TRACE(testing::case_label(2024, c));
    SectorSpec a{g.point(-0.5, 0.5), g.angle(), g.amplitude(), g.uniform(0.3, 1.5)};
    SectorSpec b{g.point(-0.5, 0.5), g.angle(), g.amplitude(), g.uniform(0.3, 1.5)};
    const double exact = sector_intersection_area(a, b);
    const Estimate mc = sector_intersection_area_mc(a, b, 200000, rng);
    EXPECT_NEAR(exact, mc.value, 4 * mc.std_error + 1e-9);
    EXPECT_NEAR(exact, sector_intersection_area(b, a), 1e-10);
    EXPECT_LE(exact, std::min(sector_area(a.amplitude, a.radius), sector_area(b.amplitude, b.radius)) + 1e-12);
  }
}

TEST(ClipProperty, SectorWholeAreaMatchesFormula) {
  Gen g(5);
  for (int c = 0; c < 100; ++c) {
    const SectorSpec s = g.sector();
    EXPECT_NEAR(CurvedRegion::sector(s).area(), sector_area(s.amplitude, s.radius), 1e-12 * (1 + s.radius));
  }
}

TEST(ClipProperty, DiskPairsMatchLensFormula) {
  Gen g(6);
  for (int c = 0; c < 100; ++c) {
    const double r1 = g.uniform(0.1, 2), r2 = g.uniform(0.1, 2), d = g.uniform(0, 4.5);
    const double clipped = intersection_area(CurvedRegion::disk({0, 0}, r1), CurvedRegion::disk({d, 0}, r2));
    EXPECT_NEAR(clipped, disk_intersection_area(d, r1, r2), 1e-10);
  }
}

TEST(GeometryProperty, ContainmentMatchesAngleOracle) {
  Gen g(99);
  for (int c = 0; c < 20000; ++c) {
    const SectorSpec s = g.sector();
    const Point2 z = s.apex + Point2(g.uniform(-2.5, 2.5), g.uniform(-2.5, 2.5));
    // skip points within 1e-12 of a boundary ray, where atan2 rounding differs
    const Point2 v = z - s.apex;
    const double phi = normalize_angle(std::atan2(v.y(), v.x()) - s.inclination);
    if (std::abs(phi) < 1e-12 || std::abs(phi - s.amplitude) < 1e-12 || std::abs(phi - kTwoPi) < 1e-12) continue;
    EXPECT_EQ(sector_contains(s, z), contains_by_angle(s, z));
  }
}

TEST(GeometryProperty, RotationInvariance) {
  Gen g(3);
  int checked = 0;
  for (int c = 0; c < 20000; ++c) {
    const SectorSpec s = g.sector();
    const Point2 z = s.apex + Point2(g.uniform(-2, 2), g.uniform(-2, 2));
    const double theta = g.angle();
    const Eigen::Rotation2Dd rot(theta);
    const SectorSpec rs{rot * s.apex, normalize_angle(s.inclination + theta), s.amplitude, s.radius};
    const Point2 rz = rot * z;
    const Point2 v = z - s.apex;
    const double phi = normalize_angle(std::atan2(v.y(), v.x()) - s.inclination);
    const double dist = v.norm();
    if (std::min({phi, std::abs(phi - s.amplitude), kTwoPi - phi}) < 1e-9 || std::abs(dist - s.radius) < 1e-9) continue;
    EXPECT_EQ(sector_contains(s, z), sector_contains(rs, rz));
    ++checked;
  }
  EXPECT_GT(checked, 19000);
}

TEST(GeometryProperty, MonotoneInRadiusAndAmplitude) {
  Gen g(4);
  for (int c = 0; c < 20000; ++c) {
    const SectorSpec s = g.sector(1e-3, kPi);
    const Point2 z = s.apex + Point2(g.uniform(-2, 2), g.uniform(-2, 2));
    if (!sector_contains(s, z)) continue;
    SectorSpec wider = s;
    wider.radius *= g.uniform(1.0, 2.0);
    EXPECT_TRUE(sector_contains(wider, z));
    wider.amplitude = g.uniform(s.amplitude, kTwoPi);
    EXPECT_TRUE(sector_contains(wider, z));
  }
}

TEST(GeometryProperty, SectorAreaByHitFraction) {
  Gen g(8);
  const SectorSpec s{{0, 0}, 0.4, 2.2, 1.0};
  const auto box = sector_bounding_box(s);
  const double box_area = (box[1] - box[0]).prod();
  const std::size_t trials = 1000000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Point2 z(g.uniform(box[0].x(), box[1].x()), g.uniform(box[0].y(), box[1].y()));
    if (sector_contains(s, z)) ++hits;
  }
  const double p = static_cast<double>(hits) / trials;
  const double se = box_area * std::sqrt(p * (1 - p) / trials);
  EXPECT_NEAR(p * box_area, sector_area(s.amplitude, s.radius), 3 * se);
}

TEST(GeometryProperty, BoundingBoxCoversSector) {
  Gen g(12);
  for (int c = 0; c < 2000; ++c) {
    const SectorSpec s = g.sector();
    const auto box = sector_bounding_box(s);
    for (int i = 0; i < 50; ++i) {
      const Point2 z = s.apex + s.radius * Point2(g.uniform(-1, 1), g.uniform(-1, 1));
      if (!sector_contains(s, z)) continue;
      EXPECT_TRUE((z.array() >= box[0].array() - 1e-12).all() && (z.array() <= box[1].array() + 1e-12).all());
    }
  }
}

TEST(GeometryProperty, DiskIntersectionSymmetricContinuousNested) {
  Gen g(13);
  for (int c = 0; c < 2000; ++c) {
    const double r1 = g.uniform(0.1, 2), r2 = g.uniform(0.1, 2), d = g.uniform(0, 4);
    EXPECT_NEAR(disk_intersection_area(d, r1, r2), disk_intersection_area(d, r2, r1), 1e-12);
    EXPECT_NEAR(disk_intersection_area(d, r1, r2), disk_intersection_area(d + 1e-9, r1, r2), 1e-7);
    if (d + std::min(r1, r2) <= std::max(r1, r2)) {
      EXPECT_DOUBLE_EQ(disk_intersection_area(d, r1, r2), kPi * std::pow(std::min(r1, r2), 2));
    }
  }
}

// Under an l^p norm with an axis-aligned start ray and alpha a multiple of
// pi/2, the sector is a union of quadrants of the l^p ball.
TEST(GeometryProperty, LpAxisAlignedSectorMeasure) {
  Gen g(14);
  for (double p : {1.0, 1.5, 3.0}) {
    // area of the unit l^p ball: 4 Gamma(1 + 1/p)^2 / Gamma(1 + 2/p)
    const double ball = 4 * std::pow(std::tgamma(1 + 1 / p), 2) / std::tgamma(1 + 2 / p);
    for (double alpha : {kPi / 2, kPi, 3 * kPi / 2, kTwoPi}) {
      const SectorSpec s{{0, 0}, kPi / 2 * g.integer(0, 3), alpha, 1.0};
      const std::size_t trials = 400000;
      std::size_t hits = 0;
      for (std::size_t i = 0; i < trials; ++i)
        if (sector_contains(s, Point2(g.uniform(-1, 1), g.uniform(-1, 1)), Norm::lp(p))) ++hits;
      const double q = static_cast<double>(hits) / trials;
      EXPECT_NEAR(4 * q, alpha / kTwoPi * ball, 3 * 4 * std::sqrt(q * (1 - q) / trials) + 1e-12)
          << "p=" << p << " alpha=" << alpha;
    }
  }
}

TEST(Norms, LinfAndLpValues) {
  EXPECT_TRUE(within_radius(Point2(0.9, -0.9), 1.0, Norm::linf()));
  EXPECT_FALSE(within_radius(Point2(0.9, -0.9), 1.0, Norm::l2()));
  EXPECT_FALSE(within_radius(Point2(0.5, 0.5), 1.0, Norm::lp(1.0)));
  EXPECT_THROW(Norm::lp(0.5), std::invalid_argument);
}

TEST(SphericalSector, Examples) {
  const SphericalSectorSpec ss{{0, 0, 0}, 0.7, 0.2, kPi / 2, 1.0};
  EXPECT_TRUE(spherical_sector_contains(ss, ss.apex));
  const Point3 axis = cone_axis(ss.azimuth, ss.elevation, ss.amplitude);
  EXPECT_NEAR(axis.norm(), 1.0, 1e-15);
  EXPECT_TRUE(spherical_sector_contains(ss, Point3(0.5 * axis)));
  EXPECT_FALSE(spherical_sector_contains(ss, Point3(-0.5 * axis)));
  EXPECT_FALSE(spherical_sector_contains(ss, Point3(1.0 * axis)));  // strict radius
}

TEST(SphericalSector, AxisFollowsLiteralReading) {
  // axis projection has azimuth Y; the axis rises Z + alpha/2 above it
  const Point3 a = cone_axis(0.5, 0.1, 0.6);
  EXPECT_NEAR(std::atan2(a.y(), a.x()), 0.5, 1e-14);
  EXPECT_NEAR(std::asin(a.z()), 0.4, 1e-14);
}

TEST(SphericalSector, SolidFraction) {
  EXPECT_NEAR(spherical_sector_solid_fraction(kTwoPi), 1.0, 1e-15);
  EXPECT_NEAR(spherical_sector_solid_fraction(kPi), 0.5, 1e-15);
  EXPECT_NEAR(spherical_sector_solid_fraction(kPi / 2), (1 - std::sqrt(2.0) / 2) / 2, 1e-15);
  EXPECT_NEAR(spherical_sector_solid_fraction(kPi / 2), 0.14645, 1e-5);
}

TEST(SphericalSectorProperty, VolumeFractionByHitCounting) {
  Gen g(15);
  for (double alpha : {kPi / 3, kPi, 5.0}) {
    const SphericalSectorSpec ss{{0, 0, 0}, g.angle(), g.angle(), alpha, 1.0};
    const std::size_t trials = 400000;
    std::size_t in_ball = 0, in_sector = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      const Point3 z = g.point3(-1, 1);
      if (z.squaredNorm() >= 1) continue;
      ++in_ball;
      if (spherical_sector_contains(ss, z)) ++in_sector;
    }
    const double q = static_cast<double>(in_sector) / in_ball;
    EXPECT_NEAR(q, spherical_sector_solid_fraction(alpha), 4 * std::sqrt(q * (1 - q) / in_ball));
  }
}

TEST(Angles, NormalizeWrapsIntoRange) {
  EXPECT_EQ(normalize_angle(0.0), 0.0);
  EXPECT_NEAR(normalize_angle(-kPi / 2), 3 * kPi / 2, 1e-15);
  EXPECT_NEAR(normalize_angle(5 * kPi), kPi, 1e-14);
  EXPECT_LT(normalize_angle(std::nextafter(kTwoPi, 0.0)), kTwoPi);
  EXPECT_EQ(normalize_angle(kTwoPi), 0.0);
}

TEST(SectorSpecValidation, RejectsBadFields) {
  EXPECT_THROW((SectorSpec{{0, 0}, kTwoPi, 1, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((SectorSpec{{0, 0}, 0, 0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((SectorSpec{{0, 0}, 0, 1, 0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((SectorSpec{{0, 0}, 0, kTwoPi, 1}.validate()));
}

}  // namespace
}  // namespace sg
