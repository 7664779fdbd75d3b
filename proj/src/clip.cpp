#include "sectorgraph/clip.hpp"

#include <algorithm>
#include <cmath>

namespace sg {
namespace {

double cross2(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

Point2 on_circle(const Point2& c, double r, double phi) {
  return c + r * Point2(std::cos(phi), std::sin(phi));
}

double segment_distance(const Segment& s, const Point2& q) {
  const Point2 d = s.b - s.a;
  const double len2 = d.squaredNorm();
  double u = len2 > 0 ? (q - s.a).dot(d) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return (s.a + u * d - q).norm();
}

// Angle of q around c mapped into [from, from + 2pi).
double angle_from(const Point2& c, const Point2& q, double from) {
  const double phi = std::atan2(q.y() - c.y(), q.x() - c.x());
  return from + normalize_angle(phi - from);
}

double arc_distance(const Arc& a, const Point2& q) {
  const double phi = angle_from(a.center, q, a.from);
  if (phi <= a.to) return std::abs((q - a.center).norm() - a.radius);
  return std::min((on_circle(a.center, a.radius, a.from) - q).norm(),
                  (on_circle(a.center, a.radius, a.to) - q).norm());
}

double piece_distance(const BoundaryPiece& p, const Point2& q) {
  if (const auto* s = std::get_if<Segment>(&p)) return segment_distance(*s, q);
  return arc_distance(std::get<Arc>(p), q);
}

Point2 piece_tangent(const BoundaryPiece& p, const Point2& q) {
  if (const auto* s = std::get_if<Segment>(&p)) return (s->b - s->a).normalized();
  const Arc& a = std::get<Arc>(p);
  const double phi = std::atan2(q.y() - a.center.y(), q.x() - a.center.x());
  return Point2(-std::sin(phi), std::cos(phi));
}

// Roots s of |a + s (b - a) - c|^2 = r^2.
void line_circle_params(const Point2& a, const Point2& b, const Point2& c, double r,
                        std::vector<double>& out) {
  const Point2 d = b - a;
  const Point2 f = a - c;
  const double qa = d.squaredNorm();
  if (qa == 0) return;
  const double qb = 2 * f.dot(d);
  const double qc = f.squaredNorm() - r * r;
  const double disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return;
  const double sq = std::sqrt(disc);
  out.push_back((-qb - sq) / (2 * qa));
  out.push_back((-qb + sq) / (2 * qa));
}

void circle_circle_points(const Point2& c1, double r1, const Point2& c2, double r2,
                          std::vector<Point2>& out) {
  const Point2 d = c2 - c1;
  const double dist = d.norm();
  if (dist == 0 || dist > r1 + r2 || dist < std::abs(r1 - r2)) return;
  const double a = (dist * dist + r1 * r1 - r2 * r2) / (2 * dist);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const Point2 mid = c1 + a * d / dist;
  const Point2 perp(-d.y() / dist, d.x() / dist);
  out.push_back(mid + h * perp);
  out.push_back(mid - h * perp);
}

// Split parameters of piece `p` induced by piece `q` of the other region.
// Extra parameters are harmless: they only refine the subdivision.
void split_params(const BoundaryPiece& p, const BoundaryPiece& q, double eps, std::vector<double>& out) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    const Point2 d = s->b - s->a;
    if (const auto* t = std::get_if<Segment>(&q)) {
      const Point2 e = t->b - t->a;
      const double denom = cross2(d, e);
      const double scale = d.norm() * e.norm();
      if (std::abs(denom) > 1e-14 * scale) {
        out.push_back(cross2(t->a - s->a, e) / denom);
      } else if (d.squaredNorm() > 0) {
        const double off = std::abs(cross2(d, t->a - s->a)) / d.norm();
        if (off <= eps) {
          out.push_back((t->a - s->a).dot(d) / d.squaredNorm());
          out.push_back((t->b - s->a).dot(d) / d.squaredNorm());
        }
      }
    } else {
      const Arc& a = std::get<Arc>(q);
      line_circle_params(s->a, s->b, a.center, a.radius, out);
      // Arc endpoints lying on the segment (tangential contact)
      for (double phi : {a.from, a.to}) {
        const Point2 e = on_circle(a.center, a.radius, phi);
        if (segment_distance(*s, e) <= eps && d.squaredNorm() > 0)
          out.push_back((e - s->a).dot(d) / d.squaredNorm());
      }
    }
    return;
  }
  const Arc& a = std::get<Arc>(p);
  std::vector<Point2> pts;
  if (const auto* t = std::get_if<Segment>(&q)) {
    std::vector<double> ss;
    line_circle_params(t->a, t->b, a.center, a.radius, ss);
    for (double u : ss) pts.push_back(t->a + u * (t->b - t->a));
    pts.push_back(t->a);
    pts.push_back(t->b);
  } else {
    const Arc& b = std::get<Arc>(q);
    if ((a.center - b.center).norm() <= eps && std::abs(a.radius - b.radius) <= eps) {
      pts.push_back(on_circle(b.center, b.radius, b.from));
      pts.push_back(on_circle(b.center, b.radius, b.to));
    } else {
      circle_circle_points(a.center, a.radius, b.center, b.radius, pts);
      pts.push_back(on_circle(b.center, b.radius, b.from));
      pts.push_back(on_circle(b.center, b.radius, b.to));
    }
  }
  for (const Point2& pt : pts) {
    if (std::abs((pt - a.center).norm() - a.radius) > eps * 1e3) continue;
    out.push_back(angle_from(a.center, pt, a.from));
  }
}

struct SubPiece {
  BoundaryPiece piece;
  Point2 mid;
};

std::vector<SubPiece> subdivide(const BoundaryPiece& p, std::vector<double> params) {
  double lo = 0.0;
  double hi = 1.0;
  if (const auto* a = std::get_if<Arc>(&p)) {
    lo = a->from;
    hi = a->to;
  }
  const double span = hi - lo;
  std::vector<double> ts{lo, hi};
  for (double t : params)
    if (t > lo + 1e-13 * span && t < hi - 1e-13 * span) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  std::vector<SubPiece> out;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double t0 = ts[i];
    const double t1 = ts[i + 1];
    if (t1 - t0 <= 1e-13 * span) continue;
    const double tm = 0.5 * (t0 + t1);
    if (const auto* s = std::get_if<Segment>(&p)) {
      const Point2 d = s->b - s->a;
      // Reuse exact endpoints where possible so consecutive pieces chain exactly.
      const Point2 pa = i == 0 ? s->a : Point2(s->a + t0 * d);
      const Point2 pb = i + 2 == ts.size() ? s->b : Point2(s->a + t1 * d);
      out.push_back({Segment{pa, pb}, s->a + tm * d});
    } else {
      const Arc& a = std::get<Arc>(p);
      out.push_back({Arc{a.center, a.radius, t0, t1}, on_circle(a.center, a.radius, tm)});
    }
  }
  return out;
}

// Contribution of one oriented piece to (1/2) closed-integral of (x dy - y dx),
// measured relative to `origin`.
double green_term(const BoundaryPiece& p, const Point2& origin) {
  if (const auto* s = std::get_if<Segment>(&p)) return 0.5 * cross2(s->a - origin, s->b - origin);
  const Arc& a = std::get<Arc>(p);
  const Point2 c = a.center - origin;
  const double r = a.radius;
  return 0.5 * (r * r * (a.to - a.from) +
                r * (c.x() * (std::sin(a.to) - std::sin(a.from)) - c.y() * (std::cos(a.to) - std::cos(a.from))));
}

}  // namespace

CurvedRegion CurvedRegion::sector(const SectorSpec& s) {
  s.validate();
  CurvedRegion region;
  region.shape_ = Shape::Sector;
  region.sector_ = s;
  region.scale_ = s.radius + s.apex.cwiseAbs().maxCoeff();
  if (s.amplitude >= kTwoPi) {
    region.pieces_.push_back(Arc{s.apex, s.radius, s.inclination, s.inclination + kTwoPi});
    return region;
  }
  const double from = s.inclination;
  const double to = s.inclination + s.amplitude;
  const Point2 p0 = on_circle(s.apex, s.radius, from);
  const Point2 p1 = on_circle(s.apex, s.radius, to);
  region.pieces_.push_back(Segment{s.apex, p0});
  region.pieces_.push_back(Arc{s.apex, s.radius, from, to});
  region.pieces_.push_back(Segment{p1, s.apex});
  return region;
}

CurvedRegion CurvedRegion::disk(const Point2& center, double radius) {
  SectorSpec s;
  s.apex = center;
  s.inclination = 0;
  s.amplitude = kTwoPi;
  s.radius = radius;
  CurvedRegion region = sector(s);
  region.shape_ = Shape::Disk;
  return region;
}

CurvedRegion CurvedRegion::rectangle(const Point2& lo, const Point2& hi) {
  if (!(hi.x() > lo.x() && hi.y() > lo.y())) throw std::invalid_argument("degenerate rectangle");
  CurvedRegion region;
  region.shape_ = Shape::Rectangle;
  region.lo_ = lo;
  region.hi_ = hi;
  region.scale_ = std::max(lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff()) + (hi - lo).maxCoeff();
  const Point2 a = lo;
  const Point2 b(hi.x(), lo.y());
  const Point2 c = hi;
  const Point2 d(lo.x(), hi.y());
  region.pieces_ = {Segment{a, b}, Segment{b, c}, Segment{c, d}, Segment{d, a}};
  return region;
}

CurvedRegion::Side CurvedRegion::classify(const Point2& q) const {
  const double eps = 1e-11 * scale_;
  for (const auto& p : pieces_)
    if (piece_distance(p, q) <= eps) return Side::Boundary;
  if (shape_ == Shape::Rectangle) {
    const bool in = q.x() > lo_.x() && q.x() < hi_.x() && q.y() > lo_.y() && q.y() < hi_.y();
    return in ? Side::Inside : Side::Outside;
  }
  const Point2 v = q - sector_.apex;
  if (!(v.norm() < sector_.radius)) return Side::Outside;
  if (sector_.amplitude >= kTwoPi) return Side::Inside;
  const double rel = normalize_angle(std::atan2(v.y(), v.x()) - sector_.inclination);
  return rel > 0 && rel < sector_.amplitude ? Side::Inside : Side::Outside;
}

Point2 CurvedRegion::boundary_tangent(const Point2& q) const {
  std::size_t best = 0;
  double best_d = piece_distance(pieces_[0], q);
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double d = piece_distance(pieces_[i], q);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return piece_tangent(pieces_[best], q);
}

double CurvedRegion::area() const {
  switch (shape_) {
    case Shape::Rectangle:
      return (hi_.x() - lo_.x()) * (hi_.y() - lo_.y());
    case Shape::Disk:
    case Shape::Sector:
      return sector_area(sector_.amplitude, sector_.radius);
  }
  return 0.0;
}

double intersection_area(const CurvedRegion& a, const CurvedRegion& b) {
  const double eps = 1e-11 * std::max(a.scale(), b.scale());
  const Point2 origin = std::visit(
      [](const auto& piece) -> Point2 {
        if constexpr (std::is_same_v<std::decay_t<decltype(piece)>, Segment>) return piece.a;
        else return piece.center;
      },
      a.pieces().front());

  double total = 0.0;
  auto accumulate = [&](const CurvedRegion& self, const CurvedRegion& other, bool keep_shared) {
    for (const auto& piece : self.pieces()) {
      std::vector<double> params;
      for (const auto& q : other.pieces()) split_params(piece, q, eps, params);
      for (const auto& sub : subdivide(piece, params)) {
        const auto side = other.classify(sub.mid);
        if (side == CurvedRegion::Side::Inside) {
          total += green_term(sub.piece, origin);
        } else if (side == CurvedRegion::Side::Boundary && keep_shared) {
          // Shared boundary counts once, and only where both curves run the same way.
          if (piece_tangent(sub.piece, sub.mid).dot(other.boundary_tangent(sub.mid)) > 0)
            total += green_term(sub.piece, origin);
        }
      }
    }
  };
  accumulate(a, b, true);
  accumulate(b, a, false);
  return std::max(0.0, total);
}

}  // namespace sg
