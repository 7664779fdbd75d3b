#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace sg {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-13;
  std::size_t max_subdivisions = 2000;
};

/// Global adaptive Gauss-Kronrod (7/15) on [a, b]. Failures report the achieved
/// error instead of throwing.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        const QuadOptions& opts = {});

struct Box2 {
  std::array<double, 2> lo;
  std::array<double, 2> hi;
};

/// Global adaptive tensor Gauss-Kronrod cubature on a rectangle. Each cell is
/// split along the axis whose embedded Gauss rule disagrees most with Kronrod.
QuadResult integrate_2d(const std::function<double(double, double)>& f, const Box2& box,
                        const QuadOptions& opts = {});

}  // namespace sg
