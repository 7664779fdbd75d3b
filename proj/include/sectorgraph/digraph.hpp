#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sectorgraph/common.hpp"
#include "sectorgraph/density.hpp"
#include "sectorgraph/geometry.hpp"
#include "sectorgraph/sampling.hpp"

namespace sg {

/// Uniform cell index over a fixed point set. Small bounding boxes use a dense
/// CSR layout; sparse ones (unbounded densities) hash their occupied cells.
template <int Dim>
class GridIndex {
 public:
  using Vec = Eigen::Matrix<double, Dim, 1>;
  using Cell = std::array<std::int64_t, Dim>;

  GridIndex(const std::vector<Vec>& points, double cell_size) : cell_size_(cell_size) {
    if (!(cell_size > 0)) throw std::invalid_argument("grid cell size must be positive");
    const std::size_t n = points.size();
    std::vector<Cell> cells(n);
    lo_.fill(0);
    ext_.fill(1);
    for (std::size_t i = 0; i < n; ++i) cells[i] = cell_of(points[i]);
    if (n > 0) {
      Cell hi = cells[0];
      lo_ = cells[0];
      for (const Cell& c : cells)
        for (int a = 0; a < Dim; ++a) {
          lo_[a] = std::min(lo_[a], c[a]);
          hi[a] = std::max(hi[a], c[a]);
        }
      double volume = 1.0;
      for (int a = 0; a < Dim; ++a) {
        ext_[a] = hi[a] - lo_[a] + 1;
        volume *= static_cast<double>(ext_[a]);
      }
      dense_ = volume <= static_cast<double>(std::max<std::size_t>(64, 4 * n));
    }
    if (dense_) {
      std::size_t total = 1;
      for (int a = 0; a < Dim; ++a) total *= static_cast<std::size_t>(ext_[a]);
      start_.assign(total + 1, 0);
      for (const Cell& c : cells) ++start_[dense_slot(c) + 1];
      for (std::size_t s = 0; s < total; ++s) start_[s + 1] += start_[s];
      std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
      order_.resize(n);
      for (std::size_t i = 0; i < n; ++i) order_[fill[dense_slot(cells[i])]++] = static_cast<std::uint32_t>(i);
    } else {
      order_.resize(n);
      for (std::size_t i = 0; i < n; ++i) order_[i] = static_cast<std::uint32_t>(i);
      std::stable_sort(order_.begin(), order_.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return cells[a] < cells[b]; });
      for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && cells[order_[j]] == cells[order_[i]]) ++j;
        buckets_.emplace(cells[order_[i]], std::pair<std::uint32_t, std::uint32_t>(i, j));
        i = j;
      }
    }
  }

  double cell_size() const { return cell_size_; }
  bool dense() const { return dense_; }

  Cell cell_of(const Vec& p) const {
    Cell c;
    for (int a = 0; a < Dim; ++a) c[a] = static_cast<std::int64_t>(std::floor(p[a] / cell_size_));
    return c;
  }

  std::span<const std::uint32_t> bucket(const Cell& c) const {
    if (dense_) {
      for (int a = 0; a < Dim; ++a)
        if (c[a] < lo_[a] || c[a] >= lo_[a] + ext_[a]) return {};
      const std::size_t s = dense_slot(c);
      return {order_.data() + start_[s], order_.data() + start_[s + 1]};
    }
    const auto it = buckets_.find(c);
    if (it == buckets_.end()) return {};
    return {order_.data() + it->second.first, order_.data() + it->second.second};
  }

  /// Calls fn(index) for every point whose cell overlaps the box [lo, hi].
  template <class Fn>
  void for_each_in_box(const Vec& lo, const Vec& hi, Fn&& fn) const {
    Cell a = cell_of(lo), b = cell_of(hi);
    if (dense_)
      for (int d = 0; d < Dim; ++d) {
        a[d] = std::max(a[d], lo_[d]);
        b[d] = std::min(b[d], lo_[d] + ext_[d] - 1);
        if (a[d] > b[d]) return;
      }
    Cell c = a;
    while (true) {
      for (std::uint32_t idx : bucket(c)) fn(idx);
      int d = 0;
      for (; d < Dim; ++d) {
        if (c[d] < b[d]) {
          ++c[d];
          break;
        }
        c[d] = a[d];
      }
      if (d == Dim) return;
    }
  }

 private:
  struct CellHash {
    std::size_t operator()(const Cell& c) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (std::int64_t v : c) h = (h ^ static_cast<std::uint64_t>(v)) * 0xbf58476d1ce4e5b9ull;
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };

  std::size_t dense_slot(const Cell& c) const {
    std::size_t s = 0;
    for (int a = Dim - 1; a >= 0; --a) s = s * static_cast<std::size_t>(ext_[a]) + static_cast<std::size_t>(c[a] - lo_[a]);
    return s;
  }

  double cell_size_;
  bool dense_ = true;
  Cell lo_{};
  Cell ext_{};
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<Cell, std::pair<std::uint32_t, std::uint32_t>, CellHash> buckets_;
};

using GridIndex2 = GridIndex<2>;
using GridIndex3 = GridIndex<3>;

enum class BuildMethod { Grid, Brute };

struct BuildOptions {
  BuildMethod method = BuildMethod::Grid;
  Norm norm = Norm::l2();
  bool store_arcs = false;
  unsigned threads = 1;
};

struct DirectedArc {
  std::uint32_t source;
  std::uint32_t target;
  friend bool operator==(const DirectedArc&, const DirectedArc&) = default;
};

struct GeometricDigraph {
  std::size_t n = 0;
  double alpha = kTwoPi;
  double radius = 0.0;
  Norm norm;
  std::vector<std::uint32_t> out_deg;
  std::vector<std::uint32_t> in_deg;
  std::optional<std::vector<DirectedArc>> arcs;  // sorted by (source, target)

  std::uint64_t arc_count() const;
  const std::vector<std::uint32_t>& degrees(DegreeKind kind) const { return kind == DegreeKind::Out ? out_deg : in_deg; }
};

/// Arc i -> j (i != j) iff X_j lies in S(X_i, Y_i, r).
GeometricDigraph build_digraph(const MarkedPointCloud& cloud, double alpha, double r, const BuildOptions& opts = {});

/// Arc i -> j iff X_j lies in SS(X_i, Y_i, Z_i, r). Euclidean only.
GeometricDigraph build_digraph_3d(const MarkedPointCloud3& cloud, double alpha, double r,
                                  const BuildOptions& opts = {});

/// Degree arrays at several radii from one pass at the largest. Entry m of
/// out_deg/in_deg equals build_digraph(cloud, alpha, radii[m]).out_deg/in_deg.
struct DegreeProfile {
  std::vector<double> radii;
  std::vector<std::vector<std::uint32_t>> out_deg;
  std::vector<std::vector<std::uint32_t>> in_deg;
};

DegreeProfile degree_profile(const MarkedPointCloud& cloud, double alpha, const std::vector<double>& radii,
                             const BuildOptions& opts = {});

/// Number of vertices in A whose degree is at least k.
std::uint64_t count_deg_at_least(const std::vector<std::uint32_t>& deg, const MarkedPointCloud& cloud,
                                 std::uint32_t k, const Region& region = WholePlane{});
std::uint64_t count_deg_at_least(const GeometricDigraph& g, const MarkedPointCloud& cloud, std::uint32_t k,
                                 const Region& region, DegreeKind kind);

/// Number of vertices in A whose degree is exactly k.
std::uint64_t count_deg_exact(const std::vector<std::uint32_t>& deg, const MarkedPointCloud& cloud,
                              std::uint32_t k, const Region& region = WholePlane{});
std::uint64_t count_deg_exact(const GeometricDigraph& g, const MarkedPointCloud& cloud, std::uint32_t k,
                              const Region& region, DegreeKind kind);

/// hist[d] = number of vertices with degree d.
std::vector<std::uint64_t> degree_histogram(const std::vector<std::uint32_t>& deg);
inline std::vector<std::uint64_t> degree_histogram(const GeometricDigraph& g, DegreeKind kind) {
  return degree_histogram(g.degrees(kind));
}

}  // namespace sg
