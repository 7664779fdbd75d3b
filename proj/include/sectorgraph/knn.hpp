#pragma once

#include <cstdint>
#include <vector>

#include "sectorgraph/digraph.hpp"
#include "sectorgraph/geometry.hpp"

namespace sg {

/// k nearest neighbours of every point, ordered by (distance, index). Equal
/// distances are broken by the smaller index so grid and brute force agree
/// exactly. Throws unless 1 <= k <= n - 1.
std::vector<std::vector<std::uint32_t>> knn_lists(const std::vector<Point2>& points, std::size_t k,
                                                  const Norm& norm = Norm::l2(),
                                                  BuildMethod method = BuildMethod::Grid);

/// Distance from each point to its k-th nearest neighbour.
std::vector<double> knn_distances(const std::vector<Point2>& points, std::size_t k, const Norm& norm = Norm::l2(),
                                  BuildMethod method = BuildMethod::Grid);

/// max over x of #{z : x is among the k nearest neighbours of z}.
std::size_t max_reverse_knn_count(const std::vector<Point2>& points, std::size_t k, const Norm& norm = Norm::l2(),
                                  BuildMethod method = BuildMethod::Brute);

}  // namespace sg
