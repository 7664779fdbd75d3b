#pragma once

#include <variant>
#include <vector>

#include "sectorgraph/geometry.hpp"

namespace sg {

/// Directed line segment a -> b.
struct Segment {
  Point2 a;
  Point2 b;
};

/// Counter-clockwise circular arc from angle `from` to `to` (to > from).
struct Arc {
  Point2 center;
  double radius;
  double from;
  double to;
};

using BoundaryPiece = std::variant<Segment, Arc>;

/// A closed planar region bounded by a counter-clockwise curve made of segments
/// and circular arcs. Supports sectors (any amplitude), disks and rectangles.
class CurvedRegion {
 public:
  enum class Side { Inside, Boundary, Outside };

  static CurvedRegion sector(const SectorSpec& s);
  static CurvedRegion disk(const Point2& center, double radius);
  static CurvedRegion rectangle(const Point2& lo, const Point2& hi);

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }

  Side classify(const Point2& q) const;
  /// Unit tangent of the oriented boundary at a point known to lie on it.
  Point2 boundary_tangent(const Point2& q) const;
  double area() const;
  double scale() const { return scale_; }

 private:
  enum class Shape { Sector, Disk, Rectangle };

  Shape shape_ = Shape::Disk;
  SectorSpec sector_;
  Point2 lo_ = Point2::Zero();
  Point2 hi_ = Point2::Zero();
  double scale_ = 1.0;
  std::vector<BoundaryPiece> pieces_;
};

/// Exact area of the intersection of two curved regions, by integrating
/// x dy - y dx over the boundary pieces of each region that lie inside the other.
double intersection_area(const CurvedRegion& a, const CurvedRegion& b);

}  // namespace sg
