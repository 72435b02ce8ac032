#include "robustcut/functionals.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <vector>

#include "robustcut/errors.hpp"
#include "robustcut/morphology.hpp"
#include "robustcut/records.hpp"

namespace robustcut {

namespace {

void check_compatible(const GridGeometry& g, const GridMeasure& gm, const BallStencil* stencil) {
    if (!g.same_shape(gm.geometry())) throw InputError("mask/field shape does not match grid measure");
    if (stencil && stencil->dim != gm.geometry().dim())
        throw InputError("stencil dimension does not match grid");
}

struct BallExtrema {
    double max;
    double min;
};

template <class Value>
BallExtrema extrema(std::span<const std::uint32_t> ball, Value value) {
    BallExtrema e{value(ball[0]), value(ball[0])};
    for (std::size_t k = 1; k < ball.size(); ++k) {
        const double v = value(ball[k]);
        e.max = std::max(e.max, v);
        e.min = std::min(e.min, v);
    }
    return e;
}

}  // namespace

void write_record(std::ostream& out, const RiskBreakdown& r) {
    out << "epsilon=" << format_real(r.epsilon) << '\n'
        << "empirical_risk=" << format_real(r.empirical_risk) << '\n'
        << "pre_perimeter=" << format_real(r.pre_perimeter) << '\n'
        << "adversarial_risk=" << format_real(r.adversarial_risk) << '\n';
}

RiskBreakdown parse_risk_record(std::istream& in) {
    const auto kv = parse_key_values(in);
    auto get = [&](const char* key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ParseError(std::string("risk record lacks '") + key + "'", 0);
        return parse_real(it->second);
    };
    return {get("epsilon"), get("empirical_risk"), get("pre_perimeter"), get("adversarial_risk")};
}

double adversarial_risk_grid(const CellMask& mask, const GridMeasure& gm, const BallStencil& stencil) {
    check_compatible(mask.geometry(), gm, &stencil);
    const BallNeighborhoods balls(gm.geometry(), stencil);
    const auto d0 = gm.dens0();
    const auto d1 = gm.dens1();
    double risk = 0.0;
    for (std::size_t x = 0; x < mask.size(); ++x) {
        bool any_in = false, any_out = false;
        for (auto y : balls.ball(x)) {
            if (mask[y]) any_in = true; else any_out = true;
        }
        if (any_in) risk += d0[x];
        if (any_out) risk += d1[x];
    }
    return risk;
}

double empirical_risk_grid(const CellMask& mask, const GridMeasure& gm) {
    check_compatible(mask.geometry(), gm, nullptr);
    double risk = 0.0;
    for (std::size_t x = 0; x < mask.size(); ++x) risk += mask[x] ? gm.dens0()[x] : gm.dens1()[x];
    return risk;
}

double pre_perimeter_grid(const CellMask& mask, const GridMeasure& gm, const BallStencil& stencil) {
    return pre_tv_grid(ScalarField::indicator(mask), gm, stencil);
}

RiskBreakdown risk_breakdown_grid(const CellMask& mask, const GridMeasure& gm,
                                  const BallStencil& stencil) {
    RiskBreakdown r;
    r.epsilon = stencil.epsilon;
    r.empirical_risk = empirical_risk_grid(mask, gm);
    r.pre_perimeter = pre_perimeter_grid(mask, gm, stencil);
    r.adversarial_risk = adversarial_risk_grid(mask, gm, stencil);
    return r;
}

double pre_tv_grid(const ScalarField& u, const GridMeasure& gm, const BallStencil& stencil) {
    check_compatible(u.geometry(), gm, &stencil);
    if (stencil.epsilon == 0.0) return 0.0;
    const BallNeighborhoods balls(gm.geometry(), stencil);
    const auto d0 = gm.dens0();
    const auto d1 = gm.dens1();
    double total = 0.0;
    for (std::size_t x = 0; x < u.size(); ++x) {
        if (d0[x] == 0.0 && d1[x] == 0.0) continue;
        const auto e = extrema(balls.ball(x), [&](std::uint32_t y) { return u[y]; });
        total += d0[x] * (e.max - u[x]) + d1[x] * (u[x] - e.min);
    }
    return total / stencil.epsilon;
}

double coarea_tv(const ScalarField& u, const GridMeasure& gm, const BallStencil& stencil) {
    check_compatible(u.geometry(), gm, &stencil);
    std::vector<double> levels(u.values().begin(), u.values().end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    double total = 0.0;
    // {u >= t_0} is the whole grid and has zero perimeter.
    for (std::size_t k = 1; k < levels.size(); ++k)
        total += pre_perimeter_grid(u.superlevel(levels[k]), gm, stencil) * (levels[k] - levels[k - 1]);
    return total;
}

double data_term_grid(const ScalarField& u, const GridMeasure& gm) {
    check_compatible(u.geometry(), gm, nullptr);
    double total = 0.0;
    for (std::size_t x = 0; x < u.size(); ++x)
        total += gm.dens0()[x] * u[x] + gm.dens1()[x] * (1.0 - u[x]);
    return total;
}

double morphological_risk(const CellMask& mask, const GridMeasure& gm, const BallStencil& stencil) {
    check_compatible(mask.geometry(), gm, &stencil);
    const BallNeighborhoods balls(gm.geometry(), stencil);
    const CellMask grown = dilate(mask, balls);
    const CellMask shrunk = erode(mask, balls);
    // Accumulate cell by cell in the same order as adversarial_risk_grid so
    // the two agree exactly, not merely up to rounding.
    double risk = 0.0;
    for (std::size_t x = 0; x < mask.size(); ++x) {
        if (grown[x]) risk += gm.dens0()[x];
        if (!shrunk[x]) risk += gm.dens1()[x];
    }
    return risk;
}

double adversarial_risk_empirical(const BallUnionClassifier& a, const EmpiricalDataset& ds,
                                  double epsilon) {
    if (!(epsilon >= 0.0)) throw InputError("epsilon must be >= 0");
    if (a.size() > 0 && a.dim != ds.dim()) throw InputError("classifier dimension does not match dataset");
    double risk = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto x = ds.point(i);
        if (ds.label(i) == 0) {
            bool hit = false;
            for (std::size_t j = 0; j < a.size() && !hit; ++j)
                hit = open_balls_meet(distance(a.metric, x, a.center(j)), epsilon, a.radii[j]);
            if (hit) risk += ds.mass(i);
        } else {
            bool safe = false;
            for (std::size_t j = 0; j < a.size() && !safe; ++j)
                safe = open_ball_inside(distance(a.metric, x, a.center(j)), epsilon, a.radii[j]);
            if (!safe) risk += ds.mass(i);
        }
    }
    return risk;
}

double empirical_risk_empirical(const BallUnionClassifier& a, const EmpiricalDataset& ds) {
    return adversarial_risk_empirical(a, ds, 0.0);
}

RiskBreakdown risk_breakdown_empirical(const BallUnionClassifier& a, const EmpiricalDataset& ds,
                                       double epsilon) {
    RiskBreakdown r;
    r.epsilon = epsilon;
    r.empirical_risk = empirical_risk_empirical(a, ds);
    r.adversarial_risk = adversarial_risk_empirical(a, ds, epsilon);
    r.pre_perimeter = epsilon > 0.0 ? (r.adversarial_risk - r.empirical_risk) / epsilon : 0.0;
    return r;
}

}  // namespace robustcut
