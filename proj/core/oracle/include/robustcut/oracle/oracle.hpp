#pragma once

// Brute-force references. Nothing here reuses the solver code paths: balls,
// distances, conflicts and risks are recomputed from their definitions.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "robustcut/alt_models.hpp"
#include "robustcut/dataset.hpp"
#include "robustcut/grid.hpp"
#include "robustcut/mask.hpp"
#include "robustcut/metric.hpp"

namespace robustcut::oracle {

inline constexpr std::size_t kMaxGridCells = 22;
inline constexpr std::size_t kMaxEmpiricalPoints = 20;
inline constexpr std::size_t kMaxCouplingUnits = 10;
inline constexpr std::size_t kMaxDecisionPoints = 20;

/// Bit c of the code is cell c.
std::uint32_t encode(const CellMask& mask);
CellMask decode(std::uint32_t code, const GridGeometry& geometry);

/// Risk of a mask by the definition: for each cell x scan every cell y of
/// the grid and test d(x, y) < eps on index displacements.
double direct_risk_grid(const CellMask& mask, const GridMeasure& gm, double epsilon,
                        const Metric& metric);

// Brute-force searches compare integer costs. Masses are rewritten as
// units / denominator with the smallest denominator <= 10^6 that makes them
// all integral (exact for rational inputs), falling back to 10^12 units.

struct GridOptimum {
    std::int64_t value_units = 0;
    std::int64_t denominator = 1;
    double value = 0.0;  // value_units / denominator
    std::vector<std::uint32_t> optimal_masks;  // ascending codes
};

/// Exhaustive search over all 2^cells masks. Uses only the eps and metric of
/// the stencil. Refuses grids above kMaxGridCells.
GridOptimum brute_force_grid(const GridMeasure& gm, const BallStencil& stencil);

struct EmpiricalOptimum {
    double value = 0.0;
    std::int64_t value_units = 0;
    std::int64_t denominator = 1;
    /// Every minimum-mass set of sacrificed points hitting all conflicts.
    std::vector<std::uint32_t> optimal_sets;
};

EmpiricalOptimum brute_force_empirical(const EmpiricalDataset& ds, double epsilon, const Metric& metric);

/// 1/2 - 1/2 min over couplings of mu and its label swap, enumerating the
/// vertices of the transportation polytope as permutations of unit atoms.
/// Masses must be multiples of 1/D for some D <= kMaxCouplingUnits.
double brute_force_coupling(const EmpiricalDataset& ds, double epsilon, const Metric& metric);

struct DecisionOptimum {
    double value = 0.0;
    std::vector<std::uint32_t> optimal_labelings;
};

/// Minimises the random-proposal adversarial model over all 2^N labelings,
/// evaluating expected losses directly.
DecisionOptimum brute_force_decision(const EmpiricalDataset& ds, const KernelSpec& k);

}  // namespace robustcut::oracle
