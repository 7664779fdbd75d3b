#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

#include "sectorgraph/common.hpp"

namespace sg {

using Point2 = Eigen::Vector2d;
using Point3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2pi).
template <typename Scalar>
Scalar normalize_angle(Scalar theta) {
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar r = std::fmod(theta, two_pi);
  if (r < Scalar(0)) r += two_pi;
  if (r >= two_pi) r = Scalar(0);
  return r;
}

/// Plane norm used for all distance tests. Lp requires p >= 1.
struct Norm {
  enum class Kind { L2, Lp, Linf };
  Kind kind = Kind::L2;
  double p = 2.0;

  static Norm l2() { return {}; }
  static Norm linf() { return {Kind::Linf, 0.0}; }
  static Norm lp(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("Lp norm requires p >= 1");
    return {Kind::Lp, p};
  }

  friend bool operator==(const Norm&, const Norm&) = default;
};

/// ||v||_norm for any fixed-size Eigen vector.
template <typename Derived>
typename Derived::Scalar norm_value(const Eigen::MatrixBase<Derived>& v, const Norm& norm) {
  using Scalar = typename Derived::Scalar;
  switch (norm.kind) {
    case Norm::Kind::L2:
      return v.norm();
    case Norm::Kind::Linf:
      return v.cwiseAbs().maxCoeff();
    case Norm::Kind::Lp:
      return std::pow(v.cwiseAbs().array().pow(Scalar(norm.p)).sum(), Scalar(1) / Scalar(norm.p));
  }
  return v.norm();
}

/// Strict test ||v||_norm < r. The L2 branch compares squared lengths so every
/// caller (grid, brute force, multi-radius) evaluates the identical expression.
template <typename Derived>
bool within_radius(const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar r, const Norm& norm) {
  using Scalar = typename Derived::Scalar;
  switch (norm.kind) {
    case Norm::Kind::L2:
      return v.squaredNorm() < r * r;
    case Norm::Kind::Linf:
      return v.cwiseAbs().maxCoeff() < r;
    case Norm::Kind::Lp:
      return v.cwiseAbs().array().pow(Scalar(norm.p)).sum() < std::pow(r, Scalar(norm.p));
  }
  return false;
}

template <typename Scalar>
struct Sector {
  Eigen::Matrix<Scalar, 2, 1> apex = Eigen::Matrix<Scalar, 2, 1>::Zero();
  Scalar inclination = 0;  // start ray, [0, 2pi)
  Scalar amplitude = 2 * std::numbers::pi_v<Scalar>;  // (0, 2pi]
  Scalar radius = 1;

  void validate() const {
    if (!(inclination >= 0 && inclination < 2 * std::numbers::pi_v<Scalar>))
      throw std::invalid_argument("sector inclination must lie in [0, 2pi)");
    if (!(amplitude > 0 && amplitude <= 2 * std::numbers::pi_v<Scalar>))
      throw std::invalid_argument("sector amplitude must lie in (0, 2pi]");
    if (!(radius > 0)) throw std::invalid_argument("sector radius must be positive");
  }
};
using SectorSpec = Sector<double>;

/// Precomputed boundary rays of the arc [theta, theta + alpha). The angular test
/// uses cross products against these unit vectors; no trigonometry per query.
template <typename Scalar>
class ArcFrame {
 public:
  using Vec = Eigen::Matrix<Scalar, 2, 1>;

  ArcFrame() = default;
  ArcFrame(Scalar inclination, Scalar amplitude) : amplitude_(amplitude) {
    start_ = Vec(std::cos(inclination), std::sin(inclination));
    const Scalar end_angle = inclination + amplitude;
    end_ = Vec(std::cos(end_angle), std::sin(end_angle));
    const Scalar pi = std::numbers::pi_v<Scalar>;
    if (amplitude >= 2 * pi) mode_ = Mode::Full;
    else if (amplitude == pi) mode_ = Mode::Half;
    else if (amplitude < pi) mode_ = Mode::Narrow;
    else mode_ = Mode::Wide;
  }

  /// True iff the polar angle of v (v != 0) lies in the half-open arc.
  bool contains_direction(const Vec& v) const {
    switch (mode_) {
      case Mode::Full:
        return true;
      case Mode::Half:
        return from_start(v);
      case Mode::Narrow:
        return from_start(v) && cross(end_, v) < 0;
      case Mode::Wide:
        // complement [theta + alpha, theta + 2pi) is narrow
        return !(on_or_left(end_, v) && cross(start_, v) < 0);
    }
    return false;
  }

  const Vec& start() const { return start_; }
  const Vec& end() const { return end_; }
  Scalar amplitude() const { return amplitude_; }

 private:
  enum class Mode { Narrow, Half, Wide, Full };

  static Scalar cross(const Vec& a, const Vec& b) { return a.x() * b.y() - a.y() * b.x(); }
  static bool on_or_left(const Vec& ray, const Vec& v) {
    const Scalar c = cross(ray, v);
    return c > 0 || (c == 0 && ray.dot(v) > 0);
  }
  bool from_start(const Vec& v) const { return on_or_left(start_, v); }

  Vec start_ = Vec(1, 0);
  Vec end_ = Vec(1, 0);
  Scalar amplitude_ = 2 * std::numbers::pi_v<Scalar>;
  Mode mode_ = Mode::Full;
};

template <typename Scalar>
bool ball_contains(const Eigen::Matrix<Scalar, 2, 1>& center, Scalar r,
                   const Eigen::Matrix<Scalar, 2, 1>& z, const Norm& norm = Norm::l2()) {
  return within_radius(Eigen::Matrix<Scalar, 2, 1>(z - center), r, norm);
}

/// Membership in the sector: ||z - apex|| < r and (z == apex or the polar angle of
/// z - apex lies in [inclination, inclination + amplitude) mod 2pi).
template <typename Scalar>
bool sector_contains(const Sector<Scalar>& s, const ArcFrame<Scalar>& frame,
                     const Eigen::Matrix<Scalar, 2, 1>& z, const Norm& norm = Norm::l2()) {
  const Eigen::Matrix<Scalar, 2, 1> v = z - s.apex;
  if (v.x() == 0 && v.y() == 0) return true;
  if (!within_radius(v, s.radius, norm)) return false;
  return frame.contains_direction(v);
}

template <typename Scalar>
bool sector_contains(const Sector<Scalar>& s, const Eigen::Matrix<Scalar, 2, 1>& z,
                     const Norm& norm = Norm::l2()) {
  return sector_contains(s, ArcFrame<Scalar>(s.inclination, s.amplitude), z, norm);
}

/// Euclidean sector measure alpha r^2 / 2.
template <typename Scalar>
Scalar sector_area(Scalar amplitude, Scalar r) {
  return amplitude * r * r / Scalar(2);
}

/// Area of B(0, r1) intersected with B((d, 0), r2).
template <typename Scalar>
Scalar disk_intersection_area(Scalar d, Scalar r1, Scalar r2) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (d >= r1 + r2) return Scalar(0);
  const Scalar rmin = std::min(r1, r2);
  const Scalar rmax = std::max(r1, r2);
  if (d + rmin <= rmax) return pi * rmin * rmin;
  auto clamp1 = [](Scalar c) { return std::max(Scalar(-1), std::min(Scalar(1), c)); };
  const Scalar a1 = std::acos(clamp1((d * d + r1 * r1 - r2 * r2) / (2 * d * r1)));
  const Scalar a2 = std::acos(clamp1((d * d + r2 * r2 - r1 * r1) / (2 * d * r2)));
  const Scalar k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * a1 + r2 * r2 * a2 - Scalar(0.5) * std::sqrt(std::max(Scalar(0), k));
}

/// Axis-aligned bounding box of a Euclidean sector: {min, max}.
std::array<Point2, 2> sector_bounding_box(const SectorSpec& s);

class SeededRng;

/// Exact area of the intersection of two Euclidean sectors (boundary clipping).
double sector_intersection_area(const SectorSpec& a, const SectorSpec& b);

/// Unbiased hit-count estimate over the bounding box of `a`. Throws for samples == 0.
Estimate sector_intersection_area_mc(const SectorSpec& a, const SectorSpec& b, std::size_t samples,
                                     SeededRng& rng);

// ---------------------------------------------------------------------------
// 3-D spherical sectors
// ---------------------------------------------------------------------------

template <typename Scalar>
struct SphericalSector {
  Eigen::Matrix<Scalar, 3, 1> apex = Eigen::Matrix<Scalar, 3, 1>::Zero();
  Scalar azimuth = 0;    // Y: angle of the axis projection from the positive x axis
  Scalar elevation = 0;  // Z: the axis rises Z + alpha/2 above its projection
  Scalar amplitude = 2 * std::numbers::pi_v<Scalar>;  // full cone angle
  Scalar radius = 1;
};
using SphericalSectorSpec = SphericalSector<double>;

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> cone_axis(Scalar azimuth, Scalar elevation, Scalar amplitude) {
  const Scalar lift = elevation + amplitude / Scalar(2);
  return {std::cos(lift) * std::cos(azimuth), std::cos(lift) * std::sin(azimuth), std::sin(lift)};
}

/// Cone membership against a precomputed unit axis: angle(v, axis) < alpha/2.
template <typename Scalar>
class ConeFrame {
 public:
  using Vec = Eigen::Matrix<Scalar, 3, 1>;
  ConeFrame() = default;
  ConeFrame(const Vec& axis, Scalar amplitude)
      : axis_(axis),
        cos_half_(std::cos(amplitude / Scalar(2))),
        full_(amplitude >= 2 * std::numbers::pi_v<Scalar>) {}

  bool contains_direction(const Vec& v) const {
    if (full_) return true;
    return axis_.dot(v) > cos_half_ * v.norm();
  }

 private:
  Vec axis_ = Vec::UnitX();
  Scalar cos_half_ = -1;
  bool full_ = true;
};

template <typename Scalar>
ConeFrame<Scalar> make_cone_frame(const SphericalSector<Scalar>& ss) {
  return ConeFrame<Scalar>(cone_axis(ss.azimuth, ss.elevation, ss.amplitude), ss.amplitude);
}

template <typename Scalar>
bool spherical_sector_contains(const SphericalSector<Scalar>& ss, const ConeFrame<Scalar>& frame,
                               const Eigen::Matrix<Scalar, 3, 1>& z) {
  const Eigen::Matrix<Scalar, 3, 1> v = z - ss.apex;
  if (v.isZero(0)) return true;
  if (!(v.squaredNorm() < ss.radius * ss.radius)) return false;
  return frame.contains_direction(v);
}

template <typename Scalar>
bool spherical_sector_contains(const SphericalSector<Scalar>& ss, const Eigen::Matrix<Scalar, 3, 1>& z) {
  return spherical_sector_contains(ss, make_cone_frame(ss), z);
}

/// Fraction of the ball occupied by a spherical sector of full cone angle alpha.
template <typename Scalar>
Scalar spherical_sector_solid_fraction(Scalar amplitude) {
  return (Scalar(1) - std::cos(amplitude / Scalar(2))) / Scalar(2);
}

}  // namespace sg
