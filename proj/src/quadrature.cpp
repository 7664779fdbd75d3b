#include "sectorgraph/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace sg {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule15 {
  std::array<double, 15> x{};
  std::array<double, 15> wk{};
  std::array<double, 15> wg{};
};

Rule15 make_rule() {
  Rule15 r;
  for (int i = 0; i < 7; ++i) {
    r.x[i] = -kKronrodNodes[i];
    r.x[14 - i] = kKronrodNodes[i];
    r.wk[i] = r.wk[14 - i] = kKronrodWeights[i];
    if (i % 2 == 1) r.wg[i] = r.wg[14 - i] = kGaussWeights[i / 2];
  }
  r.x[7] = 0.0;
  r.wk[7] = kKronrodWeights[7];
  r.wg[7] = kGaussWeights[3];
  return r;
}

const Rule15& rule() {
  static const Rule15 r = make_rule();
  return r;
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const auto& r = rule();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double fx = f(c + h * r.x[i]);
    k += r.wk[i] * fx;
    g += r.wg[i] * fx;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

struct Cell {
  Box2 box;
  double value, error;
  int split_axis;
  bool operator<(const Cell& o) const { return error < o.error; }
};

Cell gk15x15(const std::function<double(double, double)>& f, const Box2& box) {
  const auto& r = rule();
  const double cx = 0.5 * (box.lo[0] + box.hi[0]), hx = 0.5 * (box.hi[0] - box.lo[0]);
  const double cy = 0.5 * (box.lo[1] + box.hi[1]), hy = 0.5 * (box.hi[1] - box.lo[1]);
  double kk = 0.0, gk = 0.0, kg = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double x = cx + hx * r.x[i];
    double row_k = 0.0, row_g = 0.0;
    for (int j = 0; j < 15; ++j) {
      const double fx = f(x, cy + hy * r.x[j]);
      row_k += r.wk[j] * fx;
      row_g += r.wg[j] * fx;
    }
    kk += r.wk[i] * row_k;
    gk += r.wg[i] * row_k;
    kg += r.wk[i] * row_g;
  }
  const double area = hx * hy;
  const double ex = std::abs(kk - gk) * area;
  const double ey = std::abs(kk - kg) * area;
  return {box, kk * area, ex + ey, ex >= ey ? 0 : 1};
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadOptions& opts) {
  QuadResult res;
  if (a == b) return res;
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);
  std::priority_queue<Interval> heap;
  Interval first = gk15(f, a, b);
  heap.push(first);
  double total = first.value, err = first.error;
  res.evaluations = 15;
  std::size_t splits = 0;
  while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (splits >= opts.max_subdivisions) {
      res.converged = false;
      break;
    }
    const Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Interval left = gk15(f, worst.a, mid);
    const Interval right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    res.evaluations += 30;
    ++splits;
  }
  // Re-sum to shed accumulated rounding from incremental updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = sign * total;
  res.abs_error = err;
  return res;
}

QuadResult integrate_2d(const std::function<double(double, double)>& f, const Box2& box,
                        const QuadOptions& opts) {
  QuadResult res;
  if (!(box.hi[0] > box.lo[0]) || !(box.hi[1] > box.lo[1])) return res;
  std::priority_queue<Cell> heap;
  Cell first = gk15x15(f, box);
  heap.push(first);
  double total = first.value, err = first.error;
  res.evaluations = 225;
  std::size_t splits = 0;
  while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (splits >= opts.max_subdivisions) {
      res.converged = false;
      break;
    }
    const Cell worst = heap.top();
    heap.pop();
    const int ax = worst.split_axis;
    const double mid = 0.5 * (worst.box.lo[ax] + worst.box.hi[ax]);
    Box2 lower = worst.box, upper = worst.box;
    lower.hi[ax] = mid;
    upper.lo[ax] = mid;
    const Cell a = gk15x15(f, lower);
    const Cell b = gk15x15(f, upper);
    total += a.value + b.value - worst.value;
    err += a.error + b.error - worst.error;
    heap.push(a);
    heap.push(b);
    res.evaluations += 450;
    ++splits;
  }
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.abs_error = err;
  return res;
}

}  // namespace sg
