#include "robustcut/graphcut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "robustcut/errors.hpp"
#include "robustcut/functionals.hpp"
#include "robustcut/maxflow.hpp"
#include "robustcut/records.hpp"
#include "robustcut/scaling.hpp"

namespace robustcut {

CutEnergy::CutEnergy(GridGeometry geometry) : geometry_(std::move(geometry)) {}

void CutEnergy::add_unary(std::size_t cell, double cost_if_in, double cost_if_out) {
    const std::uint32_t c[1] = {static_cast<std::uint32_t>(cell)};
    add_clause(cost_if_in, Polarity::AnyIn, c);
    add_clause(cost_if_out, Polarity::AnyOut, c);
}

void CutEnergy::add_clause(double weight, Polarity polarity, std::span<const std::uint32_t> cells) {
    if (!(weight >= 0.0) || !std::isfinite(weight)) throw InputError("clause weight must be finite and >= 0");
    if (cells.empty()) throw InputError("clause needs at least one cell");
    for (auto c : cells)
        if (c >= cell_count()) throw InputError("clause cell out of range");
    if (weight == 0.0) return;
    weights_.push_back(weight);
    polarity_.push_back(polarity);
    cells_.insert(cells_.end(), cells.begin(), cells.end());
    start_.push_back(cells_.size());
}

namespace {

bool charged(Polarity pol, std::span<const std::uint32_t> cells, const CellMask& mask) {
    for (auto c : cells)
        if (mask[c] == (pol == Polarity::AnyIn)) return true;
    return false;
}

}  // namespace

double CutEnergy::evaluate(const CellMask& mask) const {
    if (mask.size() != cell_count()) throw InputError("mask does not match energy grid");
    double total = 0.0;
    for (std::size_t k = 0; k < clause_count(); ++k)
        if (charged(polarity_[k], clause_cells(k), mask)) total += weights_[k];
    return total;
}

std::int64_t CutEnergy::evaluate_scaled(const CellMask& mask, int exponent) const {
    if (mask.size() != cell_count()) throw InputError("mask does not match energy grid");
    std::int64_t total = 0;
    for (std::size_t k = 0; k < clause_count(); ++k)
        if (charged(polarity_[k], clause_cells(k), mask)) total += scale_to_integer(weights_[k], exponent);
    return total;
}

std::int64_t CutEnergy::evaluate_units(const CellMask& mask, std::span<const std::int64_t> units) const {
    if (mask.size() != cell_count()) throw InputError("mask does not match energy grid");
    if (units.size() != clause_count()) throw InputError("need one unit weight per clause");
    std::int64_t total = 0;
    for (std::size_t k = 0; k < clause_count(); ++k)
        if (charged(polarity_[k], clause_cells(k), mask)) total += units[k];
    return total;
}

std::size_t CutEnergy::network_arc_count() const noexcept {
    std::size_t arcs = 0;
    for (std::size_t k = 0; k < clause_count(); ++k) {
        const std::size_t len = start_[k + 1] - start_[k];
        arcs += len == 1 ? 1 : len + 1;
    }
    return arcs;
}

CutEnergy assemble_energy(const GridMeasure& gm, const BallStencil& stencil) {
    const BallNeighborhoods balls(gm.geometry(), stencil);
    CutEnergy e(gm.geometry());
    for (std::size_t x = 0; x < gm.cell_count(); ++x) {
        e.add_clause(gm.dens0()[x], Polarity::AnyIn, balls.ball(x));
        e.add_clause(gm.dens1()[x], Polarity::AnyOut, balls.ball(x));
    }
    return e;
}

struct CutNetwork::Impl {
    MaxFlow<std::int64_t> flow;
    std::size_t cells = 0;
    GridGeometry geometry;
    std::vector<std::int64_t> capacities;  // per clause
    bool exact = false;
    bool solved = false;
    std::int64_t value = 0;
};

CutNetwork::CutNetwork(const CutEnergy& energy, const CutOptions& options)
    : impl_(std::make_unique<Impl>()) {
    if (options.scale_exponent < 0 || options.scale_exponent > 15)
        throw InputError("scale exponent must be in [0, 15]");
    const std::size_t arcs = energy.network_arc_count();
    if (arcs > options.arc_budget)
        throw InputError("min-cut network needs " + std::to_string(arcs) + " arcs, budget is " +
                         std::to_string(options.arc_budget) +
                         " (about 2 * cells * stencil size); coarsen the grid or shrink eps");
    scale_ = pow10(options.scale_exponent);
    const std::size_t n = energy.cell_count();
    impl_->cells = n;
    impl_->geometry = energy.geometry();
    auto& flow = impl_->flow;
    flow = MaxFlow<std::int64_t>(2 + n);
    flow.reserve_arcs(arcs);

    std::vector<double> weights(energy.clause_count());
    for (std::size_t k = 0; k < weights.size(); ++k) weights[k] = energy.clause_weight(k);
    auto& caps = impl_->capacities;
    if (auto r = options.exact_rationals ? rational_masses(weights, kMaxExactDenominator) : std::nullopt)
        if (r->denominator <= pow10(options.scale_exponent)) {
            caps = std::move(r->units);
            scale_ = static_cast<double>(r->denominator);
            impl_->exact = true;
        }
    if (!impl_->exact) caps = scale_to_integers(weights, options.scale_exponent);
    std::int64_t total = 0;
    for (auto c : caps) total += c;
    const std::int64_t infinite = total + 1;
    constexpr std::size_t source = 0, sink = 1;
    for (std::size_t k = 0; k < caps.size(); ++k) {
        const auto cells = energy.clause_cells(k);
        const bool any_in = energy.clause_polarity(k) == Polarity::AnyIn;
        if (cells.size() == 1) {
            if (any_in) flow.add_arc(2 + cells[0], sink, caps[k]);
            else flow.add_arc(source, 2 + cells[0], caps[k]);
            continue;
        }
        const std::size_t aux = flow.add_node();
        if (any_in) {
            for (auto c : cells) flow.add_arc(2 + c, aux, infinite);
            flow.add_arc(aux, sink, caps[k]);
        } else {
            flow.add_arc(source, aux, caps[k]);
            for (auto c : cells) flow.add_arc(aux, 2 + c, infinite);
        }
    }
}

CutNetwork::~CutNetwork() = default;
CutNetwork::CutNetwork(CutNetwork&&) noexcept = default;
CutNetwork& CutNetwork::operator=(CutNetwork&&) noexcept = default;

std::int64_t CutNetwork::solve() {
    if (!impl_->solved) {
        impl_->value = impl_->flow.solve(0, 1);
        impl_->solved = true;
    }
    return impl_->value;
}

std::int64_t CutNetwork::flow_value() const {
    if (!impl_->solved) throw InternalError("CutNetwork::flow_value before solve()");
    return impl_->value;
}

std::size_t CutNetwork::arc_count() const { return impl_->flow.arc_count(); }

bool CutNetwork::exact() const noexcept { return impl_->exact; }

std::span<const std::int64_t> CutNetwork::capacities() const noexcept { return impl_->capacities; }

ExtremeSolutions CutNetwork::extreme_solutions() const {
    if (!impl_->solved) throw InternalError("extreme_solutions needs a solved network");
    const auto from_source = impl_->flow.source_reachable();
    const auto to_sink = impl_->flow.reaches_sink();
    ExtremeSolutions out{CellMask(impl_->geometry, false), CellMask(impl_->geometry, false)};
    for (std::size_t c = 0; c < impl_->cells; ++c) {
        out.a_min.set(c, from_source[2 + c] != 0);
        out.a_max.set(c, to_sink[2 + c] == 0);
    }
    return out;
}

ExtremeSolutions extreme_solutions(const CutNetwork& solved) { return solved.extreme_solutions(); }

CutSolution solve_mincut(const CutEnergy& energy, const CutOptions& options) {
    CutNetwork net(energy, options);
    CutSolution sol;
    sol.flow_value = net.solve();
    sol.scale = net.scale();
    auto ext = net.extreme_solutions();
    sol.exact = net.exact();
    sol.value = static_cast<double>(sol.flow_value) / sol.scale;
    sol.value_error_bound = sol.exact ? 0.0 : 0.5 * static_cast<double>(energy.clause_count()) / sol.scale;
    sol.a_min = std::move(ext.a_min);
    sol.a_max = std::move(ext.a_max);
    sol.mask = sol.a_min;
    for (const CellMask* m : {&sol.a_min, &sol.a_max})
        if (energy.evaluate_units(*m, net.capacities()) != sol.flow_value)
            throw InternalError("min-cut mask does not attain the flow value");
    if (!sol.a_min.subset_of(sol.a_max)) throw InternalError("A_min is not contained in A_max");
    return sol;
}

CutSolution solve_grid(const GridMeasure& gm, const BallStencil& stencil, const CutOptions& options) {
    return solve_mincut(assemble_energy(gm, stencil), options);
}

ThresholdGapReport threshold_gap_check(const ScalarField& u, const GridMeasure& gm,
                                       const BallStencil& stencil) {
    for (double v : u.values())
        if (!(v >= 0.0 && v <= 1.0)) throw InputError("threshold_gap_check: u must lie in [0, 1]");
    auto objective = [&](const ScalarField& f) {
        return data_term_grid(f, gm) + stencil.epsilon * pre_tv_grid(f, gm, stencil);
    };
    ThresholdGapReport rep;
    rep.relaxed_value = objective(u);

    std::vector<double> levels;
    for (double v : u.values())
        if (v > 0.0) levels.push_back(v);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Thresholds range over (0, 1]; t in (max u, 1] gives the empty set.
    rep.best_binary_value = std::numeric_limits<double>::infinity();
    if (levels.empty() || levels.back() < 1.0) {
        rep.best_mask = CellMask(u.geometry(), false);
        rep.best_threshold = 1.0;
        rep.best_binary_value = objective(ScalarField::indicator(rep.best_mask));
    }
    for (double t : levels) {
        CellMask m = u.superlevel(t);
        const double j = objective(ScalarField::indicator(m));
        if (j < rep.best_binary_value) {
            rep.best_binary_value = j;
            rep.best_threshold = t;
            rep.best_mask = std::move(m);
        }
    }
    rep.gap = rep.relaxed_value - rep.best_binary_value;
    rep.holds = rep.gap >= -1e-12;
    return rep;
}

std::vector<GridSweepRow> sweep_grid(const GridMeasure& gm, std::span<const double> epsilons,
                                     const Metric& metric, const CutOptions& options) {
    for (std::size_t k = 1; k < epsilons.size(); ++k)
        if (epsilons[k] < epsilons[k - 1]) throw InputError("epsilon list must be sorted");
    std::vector<GridSweepRow> rows;
    for (double eps : epsilons) {
        const auto st = ball_stencil(gm.geometry(), eps, metric);
        const auto sol = solve_grid(gm, st, options);
        const auto br = risk_breakdown_grid(sol.mask, gm, st);
        rows.push_back({eps, br.adversarial_risk, eps * br.pre_perimeter, br.empirical_risk});
    }
    return rows;
}

void write_grid_sweep(std::ostream& out, std::span<const GridSweepRow> rows) {
    out << "epsilon,value,perimeter_part,empirical_part\n";
    for (const auto& r : rows)
        out << format_real(r.epsilon) << ',' << format_real(r.value) << ','
            << format_real(r.perimeter_part) << ',' << format_real(r.empirical_part) << '\n';
}

}  // namespace robustcut
