#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "robustcut/grid.hpp"
#include "robustcut/mask.hpp"

namespace robustcut {

/// A coverage clause charges its weight when any of its cells is in A
/// (AnyIn) or when any of its cells is outside A (AnyOut).
enum class Polarity : std::uint8_t { AnyIn, AnyOut };

/// Submodular set energy: a list of coverage clauses. A unary term is a
/// clause over a single cell (AnyIn = cost if in A, AnyOut = cost if out).
///
/// assemble_energy() produces, for every cell x in row-major order, the
/// clause (dens0(x), B(x), AnyIn) followed by (dens1(x), B(x), AnyOut);
/// zero-weight clauses are dropped. evaluate() sums charged clauses in
/// insertion order, so it reproduces adversarial_risk_grid() bit for bit.
/// With eps = 0 every ball is the cell itself and all clauses are unary.
class CutEnergy {
public:
    explicit CutEnergy(GridGeometry geometry);

    const GridGeometry& geometry() const noexcept { return geometry_; }
    std::size_t cell_count() const noexcept { return geometry_.cell_count(); }

    void add_unary(std::size_t cell, double cost_if_in, double cost_if_out);
    void add_clause(double weight, Polarity polarity, std::span<const std::uint32_t> cells);

    std::size_t clause_count() const noexcept { return weights_.size(); }
    double clause_weight(std::size_t k) const { return weights_[k]; }
    Polarity clause_polarity(std::size_t k) const { return polarity_[k]; }
    std::span<const std::uint32_t> clause_cells(std::size_t k) const {
        return {cells_.data() + start_[k], start_[k + 1] - start_[k]};
    }
    bool is_unary(std::size_t k) const { return start_[k + 1] - start_[k] == 1; }

    double evaluate(const CellMask& mask) const;
    /// Same energy with every weight replaced by llround(w * 10^exponent).
    std::int64_t evaluate_scaled(const CellMask& mask, int exponent) const;
    /// Same energy with clause k weighing units[k].
    std::int64_t evaluate_units(const CellMask& mask, std::span<const std::int64_t> units) const;

    /// Arcs of the min-cut network this energy assembles to.
    std::size_t network_arc_count() const noexcept;

private:
    GridGeometry geometry_;
    std::vector<double> weights_;
    std::vector<Polarity> polarity_;
    std::vector<std::size_t> start_{0};
    std::vector<std::uint32_t> cells_;
};

CutEnergy assemble_energy(const GridMeasure& gm, const BallStencil& stencil);

/// Largest common denominator tried for exact rational capacities.
inline constexpr std::int64_t kMaxExactDenominator = 1'000'000;

struct CutOptions {
    /// Capacities are llround(weight * 10^scale_exponent) unless the weights
    /// are rationals with a common denominator D <= min(kMaxExactDenominator,
    /// 10^scale_exponent), in which case they are the exact multiples of 1/D.
    int scale_exponent = 12;
    bool exact_rationals = true;
    /// Instances whose network would exceed this many arcs are refused.
    std::size_t arc_budget = 50'000'000;
};

struct ExtremeSolutions {
    CellMask a_min;
    CellMask a_max;
};

/// s-t network for a CutEnergy. Source side = in A. A positive clause
/// (w, S) becomes an auxiliary node a with infinite arcs s -> a for s in S
/// and a -> sink of capacity w; a negative clause gets source -> b of
/// capacity w and infinite arcs b -> s.
class CutNetwork {
public:
    CutNetwork(const CutEnergy& energy, const CutOptions& options = {});
    ~CutNetwork();
    CutNetwork(CutNetwork&&) noexcept;
    CutNetwork& operator=(CutNetwork&&) noexcept;

    /// Runs max-flow once; later calls return the cached value.
    std::int64_t solve();
    std::int64_t flow_value() const;
    /// Capacity units per unit of weight.
    double scale() const noexcept { return scale_; }
    /// Capacities are exact multiples of 1/scale.
    bool exact() const noexcept;
    std::span<const std::int64_t> capacities() const noexcept;
    std::size_t arc_count() const;

    /// Needs solve().
    ExtremeSolutions extreme_solutions() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    double scale_ = 1.0;
};

/// A_min = cells reachable from the source in the residual network,
/// A_max = cells that cannot reach the sink.
ExtremeSolutions extreme_solutions(const CutNetwork& solved);

struct CutSolution {
    /// Canonical minimiser; equals a_min, so eps = 0 Bayes ties go to A^c.
    CellMask mask;
    CellMask a_min;
    CellMask a_max;
    /// flow_value / scale.
    double value = 0.0;
    std::int64_t flow_value = 0;
    double scale = 1.0;
    bool exact = false;
    /// Upper bound on |value - true optimum| caused by capacity rounding.
    double value_error_bound = 0.0;
};

CutSolution solve_mincut(const CutEnergy& energy, const CutOptions& options = {});
/// Convenience: assemble_energy + solve_mincut.
CutSolution solve_grid(const GridMeasure& gm, const BallStencil& stencil,
                       const CutOptions& options = {});

struct ThresholdGapReport {
    /// J(u) = E|u - y| + eps * pre_tv(u).
    double relaxed_value = 0.0;
    /// min over t in (0, 1] of J(1_{u >= t}): every distinct positive level,
    /// plus the empty set when max u < 1.
    double best_binary_value = 0.0;
    double best_threshold = 0.0;
    CellMask best_mask;
    /// relaxed_value - best_binary_value; never negative up to rounding.
    double gap = 0.0;
    bool holds = true;
};

/// Throws InputError if some u(x) lies outside [0, 1].
ThresholdGapReport threshold_gap_check(const ScalarField& u, const GridMeasure& gm,
                                       const BallStencil& stencil);

struct GridSweepRow {
    double epsilon = 0.0;
    double value = 0.0;
    double perimeter_part = 0.0;  // eps * Per(A)
    double empirical_part = 0.0;  // R(A)
};

std::vector<GridSweepRow> sweep_grid(const GridMeasure& gm, std::span<const double> epsilons,
                                     const Metric& metric, const CutOptions& options = {});
/// CSV "epsilon,value,perimeter_part,empirical_part".
void write_grid_sweep(std::ostream& out, std::span<const GridSweepRow> rows);

}  // namespace robustcut
