#include "robustcut/alt_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "robustcut/errors.hpp"
#include "robustcut/maxflow.hpp"
#include "robustcut/scaling.hpp"

namespace robustcut {

KernelSpec::KernelSpec(KernelKind kind_, double epsilon_, Metric metric_)
    : kind(kind_), epsilon(epsilon_), metric(metric_) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("kernel epsilon must be positive");
}

double KernelSpec::operator()(double dist) const noexcept {
    if (kind == KernelKind::IndicatorBall) return dist < epsilon ? 1.0 : 0.0;
    const double r = dist / epsilon;
    return std::exp(-r * r);
}

double KernelSpec::support_radius() const noexcept {
    // exp(-16) ~ 1e-7: the Gaussian tail beyond 4 eps is dropped on grids.
    return kind == KernelKind::IndicatorBall ? epsilon : 4.0 * epsilon;
}

KernelKind parse_kernel_kind(std::string_view name) {
    if (name == "indicator" || name == "indicator-ball" || name == "ball") return KernelKind::IndicatorBall;
    if (name == "gaussian") return KernelKind::Gaussian;
    throw InputError("unknown kernel '" + std::string(name) + "' (expected indicator or gaussian)");
}

namespace {

void check_field(std::size_t n, const EmpiricalDataset& ds) {
    if (n != ds.size()) throw InputError("per-point values do not match dataset size");
}

}  // namespace

double graph_tv(std::span<const double> u, const EmpiricalDataset& ds, const KernelSpec& k) {
    check_field(u.size(), ds);
    double total = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (i == j || u[i] == u[j]) continue;
            total += k(distance(k.metric, ds.point(i), ds.point(j))) * std::abs(u[i] - u[j]);
        }
    return total / k.epsilon;
}

TransitionWeights transition_weights(const EmpiricalDataset& ds, const KernelSpec& k) {
    TransitionWeights w;
    w.n = ds.size();
    w.p.assign(w.n * w.n, 0.0);
    for (std::size_t i = 0; i < w.n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < w.n; ++j) {
            if (j == i) continue;
            const double v = k(distance(k.metric, ds.point(i), ds.point(j)));
            w.p[i * w.n + j] = v;
            row += v;
        }
        if (row > 0.0) {
            for (std::size_t j = 0; j < w.n; ++j) w.p[i * w.n + j] /= row;
        } else {
            w.isolated.push_back(i);
        }
    }
    return w;
}

DecisionTvReport decision_tv(std::span<const double> u, const EmpiricalDataset& ds, const KernelSpec& k) {
    check_field(u.size(), ds);
    const auto w = transition_weights(ds, k);
    DecisionTvReport rep;
    rep.skipped_rows = w.isolated;
    double total = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < ds.size(); ++j) {
            const double gap = ds.label(i) == 0 ? u[j] - u[i] : u[i] - u[j];
            if (gap > 0.0) row += w(i, j) * gap;
        }
        total += ds.mass(i) * row;
    }
    rep.value = total / k.epsilon;
    return rep;
}

double decision_model_risk(std::span<const std::uint8_t> labels, const EmpiricalDataset& ds,
                           const KernelSpec& k) {
    check_field(labels.size(), ds);
    const auto w = transition_weights(ds, k);
    std::vector<std::uint8_t> isolated(ds.size(), 0);
    for (auto i : w.isolated) isolated[i] = 1;
    auto loss = [&](std::size_t point, std::size_t at) {
        return (labels[at] != 0) != (ds.label(point) == 1) ? 1.0 : 0.0;
    };
    double risk = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (isolated[i]) {
            risk += ds.mass(i) * loss(i, i);
            continue;
        }
        double expected = 0.0;
        for (std::size_t j = 0; j < ds.size(); ++j)
            if (w(i, j) > 0.0) expected += w(i, j) * std::max(loss(i, j), loss(i, i));
        risk += ds.mass(i) * expected;
    }
    return risk;
}

std::int64_t PairwiseEnergy::evaluate(std::span<const std::uint8_t> labels) const {
    if (labels.size() != unary_in.size()) throw InputError("label count does not match energy");
    std::int64_t total = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) total += labels[i] ? unary_in[i] : unary_out[i];
    for (const auto& [a, b, w] : pairs)
        if (labels[a] && !labels[b]) total += w;
    return total;
}

namespace {

// Indicator rows are uniform over the deg_i neighbours, so with rational
// masses a / D every term m_i / deg_i is an exact multiple of 1 / (D * L),
// L = lcm of the degrees.
std::optional<PairwiseEnergy> exact_indicator_energy(const EmpiricalDataset& ds, const KernelSpec& k,
                                                     const TransitionWeights& w) {
    if (k.kind != KernelKind::IndicatorBall) return std::nullopt;
    const auto r = rational_masses(ds.masses());
    if (!r) return std::nullopt;
    const std::size_t n = ds.size();
    std::vector<std::int64_t> degree(n, 0);
    std::int64_t lcm = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) degree[i] += w(i, j) > 0.0 ? 1 : 0;
        if (degree[i] > 0) lcm = std::lcm(lcm, degree[i]);
        if (lcm > 1'000'000'000) return std::nullopt;
    }
    if (static_cast<double>(lcm) * static_cast<double>(r->denominator) > 1e15) return std::nullopt;
    PairwiseEnergy e;
    e.exact = true;
    e.scale = static_cast<double>(lcm * r->denominator);
    e.unary_in.assign(n, 0);
    e.unary_out.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        (ds.label(i) == 0 ? e.unary_in : e.unary_out)[i] = r->units[i] * lcm;
        for (std::size_t j = 0; j < n; ++j) {
            if (w(i, j) == 0.0) continue;
            const std::int64_t c = r->units[i] * (lcm / degree[i]);
            if (ds.label(i) == 0) e.pairs.emplace_back(j, i, c);
            else e.pairs.emplace_back(i, j, c);
        }
    }
    return e;
}

}  // namespace

PairwiseEnergy decision_energy(const EmpiricalDataset& ds, const KernelSpec& k, int scale_exponent) {
    const auto w = transition_weights(ds, k);
    if (auto exact = exact_indicator_energy(ds, k, w)) return std::move(*exact);
    PairwiseEnergy e;
    e.scale = pow10(scale_exponent);
    const std::size_t n = ds.size();
    e.unary_in.assign(n, 0);
    e.unary_out.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t m = scale_to_integer(ds.mass(i), scale_exponent);
        (ds.label(i) == 0 ? e.unary_in : e.unary_out)[i] = m;
        for (std::size_t j = 0; j < n; ++j) {
            if (w(i, j) == 0.0) continue;
            const std::int64_t c = scale_to_integer(ds.mass(i) * w(i, j), scale_exponent);
            if (c == 0) continue;
            // Label 0: (u_j - u_i)_+ fires on u_j = 1, u_i = 0. Label 1: the reverse.
            if (ds.label(i) == 0) e.pairs.emplace_back(j, i, c);
            else e.pairs.emplace_back(i, j, c);
        }
    }
    return e;
}

DecisionSolution solve_decision_model(const EmpiricalDataset& ds, const KernelSpec& k,
                                      int scale_exponent) {
    const PairwiseEnergy e = decision_energy(ds, k, scale_exponent);
    const std::size_t n = ds.size();
    MaxFlow<std::int64_t> flow(2 + n);
    flow.reserve_arcs(2 * n + e.pairs.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (e.unary_in[i]) flow.add_arc(2 + i, 1, e.unary_in[i]);
        if (e.unary_out[i]) flow.add_arc(0, 2 + i, e.unary_out[i]);
    }
    for (const auto& [a, b, w] : e.pairs) flow.add_arc(2 + a, 2 + b, w);

    DecisionSolution sol;
    sol.flow_value = flow.solve(0, 1);
    sol.scale = e.scale;
    sol.exact = e.exact;
    const auto reach = flow.source_reachable();
    sol.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.labels[i] = reach[2 + i] ? 1 : 0;
    if (e.evaluate(sol.labels) != sol.flow_value)
        throw InternalError("decision model cut does not attain the flow value");
    sol.value = decision_model_risk(sol.labels, ds, k);
    sol.skipped_rows = transition_weights(ds, k).isolated;
    return sol;
}

namespace {

// Visits (source cell, target cell, normalised weight) for the clipped,
// renormalised kernel.
template <class Visit>
void for_each_kernel_weight(const GridGeometry& g, const KernelSpec& k, Visit visit) {
    const auto st = ball_stencil(g, k.support_radius(), k.metric);
    const BallNeighborhoods balls(g, st);
    std::vector<double> wts;
    for (std::size_t x = 0; x < g.cell_count(); ++x) {
        const auto cx = g.center(x);
        const auto ball = balls.ball(x);
        wts.assign(ball.size(), 0.0);
        double total = 0.0;
        for (std::size_t t = 0; t < ball.size(); ++t) {
            const auto cy = g.center(ball[t]);
            wts[t] = k(distance(k.metric, {cx.data(), g.dim()}, {cy.data(), g.dim()}));
            total += wts[t];
        }
        for (std::size_t t = 0; t < ball.size(); ++t) visit(x, ball[t], wts[t] / total);
    }
}

}  // namespace

GridMeasure smooth_measure(const GridMeasure& gm, const KernelSpec& k) {
    const auto& g = gm.geometry();
    std::vector<double> s0(g.cell_count(), 0.0), s1(g.cell_count(), 0.0);
    for_each_kernel_weight(g, k, [&](std::size_t x, std::size_t y, double w) {
        s0[y] += gm.dens0()[x] * w;
        s1[y] += gm.dens1()[x] * w;
    });
    return GridMeasure::normalized(g, std::move(s0), std::move(s1));
}

CellMask smooth_bayes(const GridMeasure& gm, const KernelSpec& k) {
    const GridMeasure s = smooth_measure(gm, k);
    CellMask out(gm.geometry(), false);
    for (std::size_t c = 0; c < s.cell_count(); ++c) out.set(c, s.dens1()[c] > s.dens0()[c]);
    return out;
}

double random_perturbation_risk(const CellMask& mask, const GridMeasure& gm, const KernelSpec& k) {
    if (!mask.geometry().same_shape(gm.geometry())) throw InputError("mask does not match grid");
    // p_in[x] = nu_x(A)
    std::vector<double> p_in(gm.cell_count(), 0.0);
    for_each_kernel_weight(gm.geometry(), k, [&](std::size_t x, std::size_t y, double w) {
        if (mask[y]) p_in[x] += w;
    });
    double risk = 0.0;
    for (std::size_t x = 0; x < gm.cell_count(); ++x)
        risk += gm.dens0()[x] * p_in[x] + gm.dens1()[x] * (1.0 - p_in[x]);
    return risk;
}

}  // namespace robustcut
