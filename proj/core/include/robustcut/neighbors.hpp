#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "robustcut/dataset.hpp"
#include "robustcut/metric.hpp"

namespace robustcut {

/// Point count at or below which fixed-radius queries scan all pairs.
inline constexpr std::size_t kAllPairsThreshold = 2000;

/// All index pairs (i < j) with d(x_i, x_j) < radius, sorted
/// lexicographically. radius == 0 returns coincident pairs (d == 0).
/// Uses a uniform spatial hash with cell side `radius` above
/// kAllPairsThreshold points.
std::vector<std::pair<std::size_t, std::size_t>> pairs_within(const EmpiricalDataset& ds,
                                                              double radius,
                                                              const Metric& metric);

/// Pairs (i < j) with opposite labels and d(x_i, x_j) < radius, sorted. Only
/// label-1 points are hashed, so same-label pairs are never enumerated.
std::vector<std::pair<std::size_t, std::size_t>> opposite_label_pairs(const EmpiricalDataset& ds,
                                                                      double radius,
                                                                      const Metric& metric);

/// Forces one of the two strategies; exposed for cross-checking.
std::vector<std::pair<std::size_t, std::size_t>> pairs_within_all_pairs(
    const EmpiricalDataset& ds, double radius, const Metric& metric);
std::vector<std::pair<std::size_t, std::size_t>> pairs_within_hashed(
    const EmpiricalDataset& ds, double radius, const Metric& metric);

}  // namespace robustcut
