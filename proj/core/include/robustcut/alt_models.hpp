#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "robustcut/dataset.hpp"
#include "robustcut/grid.hpp"
#include "robustcut/mask.hpp"
#include "robustcut/metric.hpp"

namespace robustcut {

enum class KernelKind : std::uint8_t { IndicatorBall, Gaussian };

/// eta_eps(z): 1 if d(z, 0) < eps (indicator) or exp(-(d/eps)^2) (Gaussian).
struct KernelSpec {
    KernelKind kind = KernelKind::IndicatorBall;
    double epsilon = 1.0;
    Metric metric;

    KernelSpec() = default;
    KernelSpec(KernelKind kind, double epsilon, Metric metric = {});

    double operator()(double dist) const noexcept;
    /// Distance beyond which the kernel is treated as zero on grids.
    double support_radius() const noexcept;
};

KernelKind parse_kernel_kind(std::string_view name);

/// (1/eps) sum_{i,j} eta(x_i - x_j) |u_i - u_j| over ordered pairs.
double graph_tv(std::span<const double> u, const EmpiricalDataset& ds, const KernelSpec& k);

/// Proposal distribution nu_{x_i} restricted to the other data points:
/// P_ij = eta(x_i - x_j) / sum_{k != i} eta(x_i - x_k), P_ii = 0. Rows with
/// zero kernel mass stay zero and are listed in `isolated`.
struct TransitionWeights {
    std::size_t n = 0;
    std::vector<double> p;  // n * n, row-major
    std::vector<std::size_t> isolated;

    double operator()(std::size_t i, std::size_t j) const { return p[i * n + j]; }
};

TransitionWeights transition_weights(const EmpiricalDataset& ds, const KernelSpec& k);

struct DecisionTvReport {
    double value = 0.0;
    std::vector<std::size_t> skipped_rows;
};

/// (1/eps) [sum_{y_i=0} m_i sum_j P_ij (u_j - u_i)_+ + sum_{y_i=1} m_i sum_j P_ij (u_i - u_j)_+]
DecisionTvReport decision_tv(std::span<const double> u, const EmpiricalDataset& ds,
                             const KernelSpec& k);

/// Expected loss when nature proposes xi ~ nu_{x} and the adversary keeps
/// whichever of {x, xi} is worse. Labels are the classifier's values at the
/// data points (1 = in A).
double decision_model_risk(std::span<const std::uint8_t> labels, const EmpiricalDataset& ds,
                           const KernelSpec& k);

/// The risk above as an integer-scaled pairwise energy in u (1 = in A):
/// unary_in/unary_out per point and directed terms (i, j, w) charging w iff
/// u_i = 1 and u_j = 0. With the indicator kernel and rational masses the
/// units are exact (scale = mass denominator * lcm of the row degrees);
/// otherwise weights are llround(w * 10^scale_exponent).
struct PairwiseEnergy {
    std::vector<std::int64_t> unary_in;
    std::vector<std::int64_t> unary_out;
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> pairs;
    double scale = 1.0;
    bool exact = false;

    std::int64_t evaluate(std::span<const std::uint8_t> labels) const;
};

PairwiseEnergy decision_energy(const EmpiricalDataset& ds, const KernelSpec& k,
                               int scale_exponent = 12);

struct DecisionSolution {
    std::vector<std::uint8_t> labels;
    /// decision_model_risk at `labels`.
    double value = 0.0;
    std::int64_t flow_value = 0;
    double scale = 1.0;
    bool exact = false;
    std::vector<std::size_t> skipped_rows;
    std::string normalization = "row-normalized over other data points";
};

/// Exact minimiser over binary labels via pairwise min-cut.
DecisionSolution solve_decision_model(const EmpiricalDataset& ds, const KernelSpec& k,
                                      int scale_exponent = 12);

/// nu * rho on the grid: each cell's mass is spread over the in-domain cells
/// of its kernel support with weights renormalised to sum 1.
GridMeasure smooth_measure(const GridMeasure& gm, const KernelSpec& k);

/// {dens1 * nu > dens0 * nu}; ties go to A^c.
CellMask smooth_bayes(const GridMeasure& gm, const KernelSpec& k);

/// E_{(x,y)~mu} E_{x~ ~ nu_x} |1_A(x~) - y|, evaluated directly.
double random_perturbation_risk(const CellMask& mask, const GridMeasure& gm, const KernelSpec& k);

}  // namespace robustcut
