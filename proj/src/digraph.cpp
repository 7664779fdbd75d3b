#include "sectorgraph/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sectorgraph/parallel.hpp"

namespace sg {
namespace {

void check_build_args(double alpha, double r) {
  if (!(r > 0)) throw std::invalid_argument("digraph radius must be positive");
  if (!(alpha > 0 && alpha <= kTwoPi)) throw std::invalid_argument("sector amplitude must lie in (0, 2pi]");
}

// Calls hit(i, j, v) for every j != i inside S(X_i, Y_i, r), i in [begin, end).
template <class Hit>
void scan_sources_2d(const MarkedPointCloud& cloud, const GridIndex2* index, double alpha, double r,
                     const Norm& norm, std::size_t begin, std::size_t end, Hit&& hit) {
  const auto& pts = cloud.positions;
  const std::size_t n = pts.size();
  for (std::size_t i = begin; i < end; ++i) {
    SectorSpec s{pts[i], cloud.inclinations[i], alpha, r};
    const ArcFrame<double> frame(s.inclination, alpha);
    auto test = [&](std::uint32_t j) {
      if (j == i) return;
      if (sector_contains(s, frame, pts[j], norm)) hit(i, j, Point2(pts[j] - pts[i]));
    };
    if (!index) {
      for (std::uint32_t j = 0; j < n; ++j) test(j);
      continue;
    }
    // Pad so rounding in the box never drops a point the predicate accepts.
    const double pad = 1e-9 * r + 1e-15 * pts[i].cwiseAbs().maxCoeff();
    std::array<Point2, 2> box;
    if (norm.kind == Norm::Kind::L2) {
      box = sector_bounding_box(s);
    } else {
      box = {Point2(pts[i].array() - r), Point2(pts[i].array() + r)};
    }
    index->for_each_in_box(Point2(box[0].array() - pad), Point2(box[1].array() + pad), test);
  }
}

template <class Hit>
void scan_sources_3d(const MarkedPointCloud3& cloud, const GridIndex3* index, double alpha, double r,
                     std::size_t begin, std::size_t end, Hit&& hit) {
  const auto& pts = cloud.positions;
  const std::size_t n = pts.size();
  for (std::size_t i = begin; i < end; ++i) {
    SphericalSectorSpec ss{pts[i], cloud.azimuths[i], cloud.elevations[i], alpha, r};
    const ConeFrame<double> frame = make_cone_frame(ss);
    auto test = [&](std::uint32_t j) {
      if (j == i) return;
      if (spherical_sector_contains(ss, frame, pts[j])) hit(i, j);
    };
    if (!index) {
      for (std::uint32_t j = 0; j < n; ++j) test(j);
      continue;
    }
    const double pad = 1e-9 * r + 1e-15 * pts[i].cwiseAbs().maxCoeff();
    index->for_each_in_box(Point3(pts[i].array() - r - pad), Point3(pts[i].array() + r + pad), test);
  }
}

// Per-chunk accumulation shared by the 2-D and 3-D builders.
struct ChunkResult {
  std::vector<std::uint32_t> in_deg;
  std::vector<DirectedArc> arcs;
};

template <class ScanChunk>
GeometricDigraph assemble(std::size_t n, double alpha, double r, const BuildOptions& opts, ScanChunk&& scan) {
  GeometricDigraph g;
  g.n = n;
  g.alpha = alpha;
  g.radius = r;
  g.norm = opts.norm;
  g.out_deg.assign(n, 0);
  g.in_deg.assign(n, 0);
  const std::size_t chunks = chunk_count(n, opts.threads);
  std::vector<ChunkResult> parts(chunks);
  parallel_chunks(n, opts.threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
    ChunkResult& part = parts[c];
    part.in_deg.assign(n, 0);
    std::vector<std::uint32_t> targets;
    std::size_t current = begin;
    auto flush = [&](std::size_t src) {
      if (!opts.store_arcs) return;
      std::sort(targets.begin(), targets.end());
      for (std::uint32_t t : targets) part.arcs.push_back({static_cast<std::uint32_t>(src), t});
      targets.clear();
    };
    scan(begin, end, [&](std::size_t i, std::uint32_t j) {
      if (i != current) {
        flush(current);
        current = i;
      }
      ++g.out_deg[i];
      ++part.in_deg[j];
      if (opts.store_arcs) targets.push_back(j);
    });
    flush(current);
  });
  for (const auto& part : parts)
    for (std::size_t j = 0; j < n; ++j) g.in_deg[j] += part.in_deg[j];
  if (opts.store_arcs) {
    std::vector<DirectedArc> arcs;
    for (auto& part : parts) arcs.insert(arcs.end(), part.arcs.begin(), part.arcs.end());
    g.arcs = std::move(arcs);
  }
  return g;
}

}  // namespace

std::uint64_t GeometricDigraph::arc_count() const {
  return std::accumulate(out_deg.begin(), out_deg.end(), std::uint64_t{0});
}

GeometricDigraph build_digraph(const MarkedPointCloud& cloud, double alpha, double r, const BuildOptions& opts) {
  check_build_args(alpha, r);
  if (cloud.inclinations.size() != cloud.size()) throw std::invalid_argument("cloud needs one inclination per point");
  std::optional<GridIndex2> index;
  if (opts.method == BuildMethod::Grid) index.emplace(cloud.positions, r);
  const GridIndex2* ip = index ? &*index : nullptr;
  return assemble(cloud.size(), alpha, r, opts, [&](std::size_t begin, std::size_t end, auto&& emit) {
    scan_sources_2d(cloud, ip, alpha, r, opts.norm, begin, end,
                    [&](std::size_t i, std::uint32_t j, const Point2&) { emit(i, j); });
  });
}

GeometricDigraph build_digraph_3d(const MarkedPointCloud3& cloud, double alpha, double r, const BuildOptions& opts) {
  check_build_args(alpha, r);
  if (opts.norm.kind != Norm::Kind::L2) throw std::invalid_argument("3-D digraphs support the Euclidean norm only");
  if (cloud.azimuths.size() != cloud.size() || cloud.elevations.size() != cloud.size())
    throw std::invalid_argument("3-D cloud needs two angles per point");
  std::optional<GridIndex3> index;
  if (opts.method == BuildMethod::Grid) index.emplace(cloud.positions, r);
  const GridIndex3* ip = index ? &*index : nullptr;
  return assemble(cloud.size(), alpha, r, opts, [&](std::size_t begin, std::size_t end, auto&& emit) {
    scan_sources_3d(cloud, ip, alpha, r, begin, end, emit);
  });
}

DegreeProfile degree_profile(const MarkedPointCloud& cloud, double alpha, const std::vector<double>& radii,
                             const BuildOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("degree profile needs at least one radius");
  const double rmax = *std::max_element(radii.begin(), radii.end());
  for (double r : radii) check_build_args(alpha, r);
  const std::size_t n = cloud.size(), m = radii.size();
  DegreeProfile prof;
  prof.radii = radii;
  prof.out_deg.assign(m, std::vector<std::uint32_t>(n, 0));
  prof.in_deg.assign(m, std::vector<std::uint32_t>(n, 0));
  std::optional<GridIndex2> index;
  if (opts.method == BuildMethod::Grid) index.emplace(cloud.positions, rmax);
  const GridIndex2* ip = index ? &*index : nullptr;
  const std::size_t chunks = chunk_count(n, opts.threads);
  std::vector<std::vector<std::uint32_t>> in_parts(chunks);
  parallel_chunks(n, opts.threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
    auto& in = in_parts[c];
    in.assign(m * n, 0);
    scan_sources_2d(cloud, ip, alpha, rmax, opts.norm, begin, end, [&](std::size_t i, std::uint32_t j, const Point2& v) {
      for (std::size_t q = 0; q < m; ++q) {
        if (!within_radius(v, radii[q], opts.norm)) continue;
        ++prof.out_deg[q][i];
        ++in[q * n + j];
      }
    });
  });
  for (const auto& in : in_parts)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t j = 0; j < n; ++j) prof.in_deg[q][j] += in[q * n + j];
  return prof;
}

namespace {

void check_sizes(const std::vector<std::uint32_t>& deg, const MarkedPointCloud& cloud) {
  if (deg.size() != cloud.size()) throw std::invalid_argument("degree array and cloud differ in size");
}

}  // namespace

std::uint64_t count_deg_at_least(const std::vector<std::uint32_t>& deg, const MarkedPointCloud& cloud,
                                 std::uint32_t k, const Region& region) {
  check_sizes(deg, cloud);
  const bool everywhere = std::holds_alternative<WholePlane>(region);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < deg.size(); ++i)
    if (deg[i] >= k && (everywhere || region_contains(region, cloud.positions[i]))) ++count;
  return count;
}

std::uint64_t count_deg_at_least(const GeometricDigraph& g, const MarkedPointCloud& cloud, std::uint32_t k,
                                 const Region& region, DegreeKind kind) {
  return count_deg_at_least(g.degrees(kind), cloud, k, region);
}

std::uint64_t count_deg_exact(const std::vector<std::uint32_t>& deg, const MarkedPointCloud& cloud,
                              std::uint32_t k, const Region& region) {
  check_sizes(deg, cloud);
  const bool everywhere = std::holds_alternative<WholePlane>(region);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < deg.size(); ++i)
    if (deg[i] == k && (everywhere || region_contains(region, cloud.positions[i]))) ++count;
  return count;
}

std::uint64_t count_deg_exact(const GeometricDigraph& g, const MarkedPointCloud& cloud, std::uint32_t k,
                              const Region& region, DegreeKind kind) {
  return count_deg_exact(g.degrees(kind), cloud, k, region);
}

std::vector<std::uint64_t> degree_histogram(const std::vector<std::uint32_t>& deg) {
  std::uint32_t top = 0;
  for (std::uint32_t d : deg) top = std::max(top, d);
  std::vector<std::uint64_t> hist(deg.empty() ? 0 : top + 1, 0);
  for (std::uint32_t d : deg) ++hist[d];
  return hist;
}

}  // namespace sg
