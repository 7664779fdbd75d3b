#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "sectorgraph/geometry.hpp"
#include "sectorgraph/quadrature.hpp"

namespace sg {

class SeededRng;

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

struct WholePlane {};
struct Rect {
  Point2 lo;
  Point2 hi;
};
struct Disk {
  Point2 center;
  double radius;
};

/// Region descriptor used for F-masses and for the vertex filter A.
using Region = std::variant<WholePlane, Rect, Disk, SectorSpec>;

bool region_contains(const Region& region, const Point2& x);
void validate_region(const Region& region);
std::string region_name(const Region& region);

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

struct UniformUnitSquare {};
struct StdGaussian2 {};
struct PiecewiseConstantGrid {
  Point2 origin = Point2::Zero();
  double cell_size = 1.0;
  int nx = 1;
  int ny = 1;
  std::vector<double> values;  // row-major, index = iy * nx + ix
};

/// Bounded planar probability density with mass, level-set and sampling queries.
class DensityModel {
 public:
  using Variant = std::variant<UniformUnitSquare, StdGaussian2, PiecewiseConstantGrid>;

  static DensityModel uniform() { return DensityModel(UniformUnitSquare{}); }
  static DensityModel gaussian() { return DensityModel(StdGaussian2{}); }
  /// Throws std::invalid_argument unless sum(values) * cell_size^2 == 1 within 1e-12.
  static DensityModel grid(PiecewiseConstantGrid grid);

  const Variant& variant() const { return variant_; }
  std::string name() const;
  bool is_uniform() const { return std::holds_alternative<UniformUnitSquare>(variant_); }
  bool is_gaussian() const { return std::holds_alternative<StdGaussian2>(variant_); }
  bool is_grid() const { return std::holds_alternative<PiecewiseConstantGrid>(variant_); }

  double eval(const Point2& x) const;
  double f_max() const;

  /// F(A). Analytic wherever a closed form exists; adaptive cubature otherwise.
  QuadResult mass(const Region& region) const;
  /// F(sector) for the given Euclidean sector.
  double sector_mass(const SectorSpec& s) const;

  /// Integral over A of phi(f(x)) dx. phi must vanish at 0. `force_cubature`
  /// bypasses the closed-form paths and integrates the definition directly.
  QuadResult functional(const Region& region, const std::function<double(double)>& phi,
                        bool force_cubature = false, const QuadOptions& opts = {}) const;

  Point2 sample(SeededRng& rng) const;

 private:
  explicit DensityModel(Variant v);

  Variant variant_;
  std::vector<double> grid_cdf_;
};

struct LevelSetMass {
  double mass_on_level = 0.0;  // F(L_s), L_s = {s f = 2/alpha}
  double mass_above = 0.0;     // F(L_s^+), L_s^+ = {s f > 2/alpha}
};

/// Relative matching tolerance for the equality set L_s.
inline constexpr double kLevelSetTolerance = 1e-9;

LevelSetMass level_set_mass(const DensityModel& d, double s, double alpha, const Region& region = WholePlane{});
/// Lebesgue measure |L_s intersected with A|.
double level_set_area(const DensityModel& d, double s, double alpha, const Region& region = WholePlane{});

}  // namespace sg
