#pragma once

#include <cstddef>
#include <cstdint>

#include "robustcut/dataset.hpp"
#include "robustcut/grid.hpp"

namespace robustcut {

/// rho = 1/2 delta_{-1} + 1/2 delta_{1} on the line, label 0 at -1 and 1 at 1.
EmpiricalDataset two_deltas();

/// Uniform measure on [-1,1]^2 rasterised to cells x cells, label 1 on
/// {xy > 0}. Axis 0 is x. Cell centres never lie on an axis, so every cell
/// carries a single label.
GridMeasure four_squares(std::size_t cells);

/// n points in two Gaussian clusters at (-1, 0) (label 0) and (1, 0)
/// (label 1) with standard deviation `spread`, uniform masses. The normal
/// draws use Box-Muller on raw mt19937_64 output, so a seed reproduces the
/// same file on every platform.
EmpiricalDataset two_clusters(std::size_t n, std::uint64_t seed, double spread = 0.5);

}  // namespace robustcut
