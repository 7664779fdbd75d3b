#include "sectorgraph/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <numeric>
#include <sstream>

#include "sectorgraph/clip.hpp"
#include "sectorgraph/kernels.hpp"
#include "sectorgraph/rng.hpp"

namespace sg {
namespace {

constexpr double kGaussianReach = 12.0;  // radius beyond which the Gaussian mass is < 1e-31

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double box_overlap(const Point2& alo, const Point2& ahi, const Point2& blo, const Point2& bhi) {
  const double w = std::min(ahi.x(), bhi.x()) - std::max(alo.x(), blo.x());
  const double h = std::min(ahi.y(), bhi.y()) - std::max(alo.y(), blo.y());
  return w > 0 && h > 0 ? w * h : 0.0;
}

std::array<Point2, 2> region_box(const Region& region) {
  return std::visit(overloaded{
                        [](const WholePlane&) {
                          const double inf = std::numeric_limits<double>::infinity();
                          return std::array<Point2, 2>{Point2(-inf, -inf), Point2(inf, inf)};
                        },
                        [](const Rect& r) { return std::array<Point2, 2>{r.lo, r.hi}; },
                        [](const Disk& d) {
                          const Point2 e(d.radius, d.radius);
                          return std::array<Point2, 2>{Point2(d.center - e), Point2(d.center + e)};
                        },
                        [](const SectorSpec& s) { return sector_bounding_box(s); },
                    },
                    region);
}

/// Lebesgue area of region intersected with the box [lo, hi).
double area_in_box(const Region& region, const Point2& lo, const Point2& hi) {
  const auto rb = region_box(region);
  const double coarse = box_overlap(rb[0], rb[1], lo, hi);
  if (coarse == 0.0) return 0.0;
  return std::visit(overloaded{
                        [&](const WholePlane&) { return (hi - lo).prod(); },
                        [&](const Rect&) { return coarse; },
                        [&](const Disk& d) {
                          return intersection_area(CurvedRegion::disk(d.center, d.radius),
                                                   CurvedRegion::rectangle(lo, hi));
                        },
                        [&](const SectorSpec& s) {
                          return intersection_area(CurvedRegion::sector(s), CurvedRegion::rectangle(lo, hi));
                        },
                    },
                    region);
}

struct Cellwise {
  Point2 lo, hi;
  double value;
};

std::vector<Cellwise> grid_cells(const PiecewiseConstantGrid& g) {
  std::vector<Cellwise> cells;
  cells.reserve(g.values.size());
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const Point2 lo = g.origin + g.cell_size * Point2(ix, iy);
      cells.push_back({lo, Point2(lo + Point2(g.cell_size, g.cell_size)), g.values[iy * g.nx + ix]});
    }
  return cells;
}

// Cubature of phi(f(x)) over region intersected with the box [lo, hi].
QuadResult cubature(const DensityModel& d, const Region& region, const Point2& lo, const Point2& hi,
                    const std::function<double(double)>& phi, const QuadOptions& opts) {
  return std::visit(
      overloaded{
          [&](const WholePlane&) {
            return integrate_2d([&](double x, double y) { return phi(d.eval(Point2(x, y))); },
                                Box2{{lo.x(), lo.y()}, {hi.x(), hi.y()}}, opts);
          },
          [&](const Rect& r) {
            const Box2 b{{std::max(lo.x(), r.lo.x()), std::max(lo.y(), r.lo.y())},
                         {std::min(hi.x(), r.hi.x()), std::min(hi.y(), r.hi.y())}};
            return integrate_2d([&](double x, double y) { return phi(d.eval(Point2(x, y))); }, b, opts);
          },
          [&](const Disk& disk) {
            const Point2 c = disk.center;
            auto f = [&](double ang, double rad) {
              const Point2 x = c + rad * Point2(std::cos(ang), std::sin(ang));
              if ((x.array() < lo.array()).any() || (x.array() > hi.array()).any()) return 0.0;
              return phi(d.eval(x)) * rad;
            };
            return integrate_2d(f, Box2{{0.0, 0.0}, {kTwoPi, disk.radius}}, opts);
          },
          [&](const SectorSpec& s) {
            auto f = [&](double ang, double rad) {
              const Point2 x = s.apex + rad * Point2(std::cos(ang), std::sin(ang));
              if ((x.array() < lo.array()).any() || (x.array() > hi.array()).any()) return 0.0;
              return phi(d.eval(x)) * rad;
            };
            return integrate_2d(f, Box2{{s.inclination, 0.0}, {s.inclination + s.amplitude, s.radius}}, opts);
          },
      },
      region);
}

QuadResult exact(double v) { return QuadResult{v, 0.0, true, 0}; }

}  // namespace

bool region_contains(const Region& region, const Point2& x) {
  return std::visit(overloaded{
                        [](const WholePlane&) { return true; },
                        [&](const Rect& r) {
                          return x.x() >= r.lo.x() && x.x() < r.hi.x() && x.y() >= r.lo.y() && x.y() < r.hi.y();
                        },
                        [&](const Disk& d) { return (x - d.center).squaredNorm() < d.radius * d.radius; },
                        [&](const SectorSpec& s) { return sector_contains(s, x); },
                    },
                    region);
}

void validate_region(const Region& region) {
  std::visit(overloaded{
                 [](const WholePlane&) {},
                 [](const Rect& r) {
                   if (!(r.hi.x() > r.lo.x() && r.hi.y() > r.lo.y()))
                     throw std::invalid_argument("rectangle region needs lo < hi");
                 },
                 [](const Disk& d) {
                   if (!(d.radius > 0)) throw std::invalid_argument("disk region needs a positive radius");
                 },
                 [](const SectorSpec& s) { s.validate(); },
             },
             region);
}

std::string region_name(const Region& region) {
  return std::visit(overloaded{
                        [](const WholePlane&) { return std::string("plane"); },
                        [](const Rect&) { return std::string("rect"); },
                        [](const Disk&) { return std::string("disk"); },
                        [](const SectorSpec&) { return std::string("sector"); },
                    },
                    region);
}

DensityModel::DensityModel(Variant v) : variant_(std::move(v)) {}

DensityModel DensityModel::grid(PiecewiseConstantGrid grid) {
  if (grid.nx < 1 || grid.ny < 1) throw std::invalid_argument("grid density needs nx, ny >= 1");
  if (!(grid.cell_size > 0)) throw std::invalid_argument("grid density needs a positive cell size");
  if (grid.values.size() != static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny))
    throw std::invalid_argument("grid density needs nx * ny cell values");
  for (double v : grid.values)
    if (!(v >= 0) || !std::isfinite(v)) throw std::invalid_argument("grid density values must be finite and >= 0");
  const double cell_area = grid.cell_size * grid.cell_size;
  const double mass = std::accumulate(grid.values.begin(), grid.values.end(), 0.0) * cell_area;
  if (std::abs(mass - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "grid density has total mass " << mass << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
  DensityModel d{Variant(std::move(grid))};
  const auto& g = std::get<PiecewiseConstantGrid>(d.variant_);
  d.grid_cdf_.resize(g.values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    acc += g.values[i] * cell_area;
    d.grid_cdf_[i] = acc;
  }
  return d;
}

std::string DensityModel::name() const {
  return std::visit(overloaded{
                        [](const UniformUnitSquare&) { return std::string("uniform"); },
                        [](const StdGaussian2&) { return std::string("gaussian"); },
                        [](const PiecewiseConstantGrid&) { return std::string("grid"); },
                    },
                    variant_);
}

double DensityModel::eval(const Point2& x) const {
  return std::visit(overloaded{
                        [&](const UniformUnitSquare&) {
                          return x.x() >= 0 && x.x() <= 1 && x.y() >= 0 && x.y() <= 1 ? 1.0 : 0.0;
                        },
                        [&](const StdGaussian2&) { return std::exp(-0.5 * x.squaredNorm()) / kTwoPi; },
                        [&](const PiecewiseConstantGrid& g) {
                          const Point2 u = (x - g.origin) / g.cell_size;
                          const double fx = std::floor(u.x()), fy = std::floor(u.y());
                          if (fx < 0 || fy < 0 || fx >= g.nx || fy >= g.ny) return 0.0;
                          return g.values[static_cast<std::size_t>(fy) * g.nx + static_cast<std::size_t>(fx)];
                        },
                    },
                    variant_);
}

double DensityModel::f_max() const {
  return std::visit(overloaded{
                        [](const UniformUnitSquare&) { return 1.0; },
                        [](const StdGaussian2&) { return 1.0 / kTwoPi; },
                        [](const PiecewiseConstantGrid& g) { return *std::max_element(g.values.begin(), g.values.end()); },
                    },
                    variant_);
}

QuadResult DensityModel::mass(const Region& region) const {
  validate_region(region);
  QuadOptions opts;
  return std::visit(
      overloaded{
          [&](const UniformUnitSquare&) { return exact(area_in_box(region, Point2(0, 0), Point2(1, 1))); },
          [&](const StdGaussian2&) {
            if (std::holds_alternative<WholePlane>(region)) return exact(1.0);
            if (const auto* r = std::get_if<Rect>(&region))
              return exact((normal_cdf(r->hi.x()) - normal_cdf(r->lo.x())) *
                           (normal_cdf(r->hi.y()) - normal_cdf(r->lo.y())));
            if (const auto* disk = std::get_if<Disk>(&region); disk && disk->center.isZero(0))
              return exact(-std::expm1(-0.5 * disk->radius * disk->radius));
            const Point2 big(kGaussianReach, kGaussianReach);
            return cubature(*this, region, -big, big, [](double u) { return u; }, opts);
          },
          [&](const PiecewiseConstantGrid& g) {
            double total = 0.0;
            for (const auto& c : grid_cells(g))
              if (c.value > 0) total += c.value * area_in_box(region, c.lo, c.hi);
            return exact(total);
          },
      },
      variant_);
}

double DensityModel::sector_mass(const SectorSpec& s) const { return mass(Region{s}).value; }

QuadResult DensityModel::functional(const Region& region, const std::function<double(double)>& phi,
                                    bool force_cubature, const QuadOptions& opts) const {
  validate_region(region);
  return std::visit(
      overloaded{
          [&](const UniformUnitSquare&) {
            if (!force_cubature) return exact(phi(1.0) * area_in_box(region, Point2(0, 0), Point2(1, 1)));
            return cubature(*this, region, Point2(0, 0), Point2(1, 1), phi, opts);
          },
          [&](const StdGaussian2&) {
            double reach = -1.0;
            if (std::holds_alternative<WholePlane>(region)) reach = kGaussianReach;
            if (const auto* disk = std::get_if<Disk>(&region); disk && disk->center.isZero(0))
              reach = std::min(disk->radius, kGaussianReach);
            if (!force_cubature && reach > 0) {
              auto radial = [&](double rho) { return kTwoPi * rho * phi(std::exp(-0.5 * rho * rho) / kTwoPi); };
              return integrate_1d(radial, 0.0, reach, opts);
            }
            const Point2 big(kGaussianReach, kGaussianReach);
            return cubature(*this, region, -big, big, phi, opts);
          },
          [&](const PiecewiseConstantGrid& g) {
            QuadResult total;
            for (const auto& c : grid_cells(g)) {
              if (c.value <= 0) continue;
              if (!force_cubature) {
                total.value += phi(c.value) * area_in_box(region, c.lo, c.hi);
                continue;
              }
              // Shrink by a hair so the constant cell value is seen at every node.
              const Point2 pad = Point2::Constant(1e-12 * g.cell_size);
              Region cell_region = region;
              if (std::holds_alternative<WholePlane>(region)) cell_region = Rect{c.lo, c.hi};
              const QuadResult q = cubature(*this, cell_region, c.lo + pad, c.hi - pad, phi, opts);
              total.value += q.value;
              total.abs_error += q.abs_error;
              total.evaluations += q.evaluations;
              total.converged = total.converged && q.converged;
            }
            return total;
          },
      },
      variant_);
}

Point2 DensityModel::sample(SeededRng& rng) const {
  return std::visit(overloaded{
                        [&](const UniformUnitSquare&) {
                          const double x = rng.uniform();
                          return Point2(x, rng.uniform());
                        },
                        [&](const StdGaussian2&) {
                          const auto [a, b] = rng.normal_pair();
                          return Point2(a, b);
                        },
                        [&](const PiecewiseConstantGrid& g) {
                          const double u = rng.uniform() * grid_cdf_.back();
                          auto it = std::upper_bound(grid_cdf_.begin(), grid_cdf_.end(), u);
                          // skip zero-mass cells that share the cumulative value
                          std::size_t idx = static_cast<std::size_t>(std::distance(grid_cdf_.begin(), it));
                          idx = std::min(idx, grid_cdf_.size() - 1);
                          while (g.values[idx] <= 0 && idx + 1 < grid_cdf_.size()) ++idx;
                          const int ix = static_cast<int>(idx % g.nx), iy = static_cast<int>(idx / g.nx);
                          const double x = rng.uniform();
                          const double y = rng.uniform();
                          return Point2(g.origin + g.cell_size * Point2(ix + x, iy + y));
                        },
                    },
                    variant_);
}

namespace {

bool level_match(double v, double target) { return std::abs(v - target) <= kLevelSetTolerance * target; }

}  // namespace

LevelSetMass level_set_mass(const DensityModel& d, double s, double alpha, const Region& region) {
  if (!(s > 0)) throw std::invalid_argument("level set needs s > 0");
  if (!(alpha > 0 && alpha <= kTwoPi)) throw std::invalid_argument("level set needs alpha in (0, 2pi]");
  const double target = 2.0 / (s * alpha);
  LevelSetMass out;
  if (d.is_uniform()) {
    const double fa = d.mass(region).value;
    if (level_match(1.0, target)) out.mass_on_level = fa;
    else if (1.0 > target) out.mass_above = fa;
    return out;
  }
  if (d.is_gaussian()) {
    const double peak = 1.0 / kTwoPi;
    if (!(peak > target) || level_match(peak, target)) return out;
    // L_s^+ is the centred disk where the density exceeds the target
    const double radius = std::sqrt(2.0 * std::log(peak / target));
    if (std::holds_alternative<WholePlane>(region)) {
      out.mass_above = 1.0 - kTwoPi * target;
      return out;
    }
    if (const auto* disk = std::get_if<Disk>(&region); disk && disk->center.isZero(0)) {
      out.mass_above = d.mass(Disk{Point2::Zero(), std::min(radius, disk->radius)}).value;
      return out;
    }
    out.mass_above = d.functional(region, [target](double u) { return u > target ? u : 0.0; }).value;
    return out;
  }
  const auto& g = std::get<PiecewiseConstantGrid>(d.variant());
  for (const auto& c : grid_cells(g)) {
    if (c.value <= 0) continue;
    const double m = c.value * area_in_box(region, c.lo, c.hi);
    if (level_match(c.value, target)) out.mass_on_level += m;
    else if (c.value > target) out.mass_above += m;
  }
  return out;
}

double level_set_area(const DensityModel& d, double s, double alpha, const Region& region) {
  const double target = 2.0 / (s * alpha);
  if (d.is_uniform()) return level_match(1.0, target) ? area_in_box(region, Point2(0, 0), Point2(1, 1)) : 0.0;
  if (d.is_gaussian()) return 0.0;
  double area = 0.0;
  for (const auto& c : grid_cells(std::get<PiecewiseConstantGrid>(d.variant())))
    if (c.value > 0 && level_match(c.value, target)) area += area_in_box(region, c.lo, c.hi);
  return area;
}

}  // namespace sg
