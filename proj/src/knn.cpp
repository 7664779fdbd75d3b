#include "sectorgraph/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sg {
namespace {

using Candidate = std::pair<double, std::uint32_t>;

void check_k(std::size_t n, std::size_t k) {
  if (k < 1 || k + 1 > n) throw std::invalid_argument("knn needs 1 <= k <= n - 1");
}

std::vector<Candidate> brute_query(const std::vector<Point2>& pts, std::size_t i, std::size_t k, const Norm& norm) {
  std::vector<Candidate> all;
  all.reserve(pts.size() - 1);
  for (std::uint32_t j = 0; j < pts.size(); ++j)
    if (j != i) all.emplace_back(norm_value(Point2(pts[j] - pts[i]), norm), j);
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
  all.resize(k);
  return all;
}

class RingSearch {
 public:
  RingSearch(const std::vector<Point2>& pts, std::size_t k)
      : pts_(pts), index_(pts, cell_for(pts, k)) {
    Point2 lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    lo_ = index_.cell_of(lo);
    hi_ = index_.cell_of(hi);
  }

  std::vector<Candidate> query(std::size_t i, std::size_t k, const Norm& norm) const {
    const double h = index_.cell_size();
    const auto home = index_.cell_of(pts_[i]);
    const std::int64_t max_ring =
        std::max({home[0] - lo_[0], hi_[0] - home[0], home[1] - lo_[1], hi_[1] - home[1]});
    std::vector<Candidate> found;
    for (std::int64_t ring = 0;; ++ring) {
      visit_ring(home, ring, [&](std::uint32_t j) {
        if (j != i) found.emplace_back(norm_value(Point2(pts_[j] - pts_[i]), norm), j);
      });
      if (found.size() >= k) {
        std::nth_element(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(k - 1), found.end());
        // Points beyond this ring are at sup-distance >= ring * h, and every
        // supported norm dominates the sup norm.
        if (found[k - 1].first < static_cast<double>(ring) * h) break;
      }
      if (ring >= max_ring) break;
    }
    std::partial_sort(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(k), found.end());
    found.resize(k);
    return found;
  }

 private:
  static double cell_for(const std::vector<Point2>& pts, std::size_t k) {
    Point2 lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const double n = static_cast<double>(pts.size());
    const double span = std::max((hi - lo).maxCoeff(), 1e-300);
    // Near-collinear clouds have a vanishing box area; floor it so the cell
    // count stays O(n) along the long side.
    const double area = std::max((hi - lo).prod(), span * span / n);
    const double h = std::sqrt(area * static_cast<double>(k + 1) / n);
    return std::clamp(h, span * 1e-6, span);
  }

  template <class Fn>
  void visit_ring(const GridIndex2::Cell& home, std::int64_t ring, Fn&& fn) const {
    if (ring == 0) {
      for (std::uint32_t j : index_.bucket(home)) fn(j);
      return;
    }
    for (std::int64_t dx = -ring; dx <= ring; ++dx) {
      const bool edge = dx == -ring || dx == ring;
      for (std::int64_t dy = -ring; dy <= ring; dy += edge ? 1 : 2 * ring)
        for (std::uint32_t j : index_.bucket({home[0] + dx, home[1] + dy})) fn(j);
    }
  }

  const std::vector<Point2>& pts_;
  GridIndex2 index_;
  GridIndex2::Cell lo_{}, hi_{};
};

}  // namespace

std::vector<std::vector<std::uint32_t>> knn_lists(const std::vector<Point2>& points, std::size_t k, const Norm& norm,
                                                  BuildMethod method) {
  check_k(points.size(), k);
  std::vector<std::vector<std::uint32_t>> out(points.size());
  std::optional<RingSearch> rings;
  if (method == BuildMethod::Grid) rings.emplace(points, k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto best = rings ? rings->query(i, k, norm) : brute_query(points, i, k, norm);
    out[i].reserve(k);
    for (const auto& c : best) out[i].push_back(c.second);
  }
  return out;
}

std::vector<double> knn_distances(const std::vector<Point2>& points, std::size_t k, const Norm& norm,
                                  BuildMethod method) {
  check_k(points.size(), k);
  std::vector<double> out(points.size());
  std::optional<RingSearch> rings;
  if (method == BuildMethod::Grid) rings.emplace(points, k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto best = rings ? rings->query(i, k, norm) : brute_query(points, i, k, norm);
    out[i] = best.back().first;
  }
  return out;
}

std::size_t max_reverse_knn_count(const std::vector<Point2>& points, std::size_t k, const Norm& norm,
                                  BuildMethod method) {
  const auto lists = knn_lists(points, k, norm, method);
  std::vector<std::size_t> hits(points.size(), 0);
  for (const auto& list : lists)
    for (std::uint32_t x : list) ++hits[x];
  return *std::max_element(hits.begin(), hits.end());
}

}  // namespace sg
