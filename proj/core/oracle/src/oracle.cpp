#include "robustcut/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "robustcut/errors.hpp"

namespace robustcut::oracle {

namespace {

double lp(const double* diff, std::size_t d, double p) {
    double acc = 0.0;
    if (std::isinf(p)) {
        for (std::size_t k = 0; k < d; ++k) acc = std::max(acc, std::fabs(diff[k]));
        return acc;
    }
    if (p == 2.0) {
        for (std::size_t k = 0; k < d; ++k) acc += diff[k] * diff[k];
        return std::sqrt(acc);
    }
    if (p == 1.0) {
        for (std::size_t k = 0; k < d; ++k) acc += std::fabs(diff[k]);
        return acc;
    }
    for (std::size_t k = 0; k < d; ++k) acc += std::pow(std::fabs(diff[k]), p);
    return std::pow(acc, 1.0 / p);
}

double point_distance(const EmpiricalDataset& ds, std::size_t i, std::size_t j, double p) {
    std::vector<double> diff(ds.dim());
    for (std::size_t k = 0; k < ds.dim(); ++k) diff[k] = ds.point(i)[k] - ds.point(j)[k];
    return lp(diff.data(), diff.size(), p);
}

// y in the open eps-ball of x, with B_0(x) = {x}.
bool in_ball(double d, double eps) { return eps == 0.0 ? d == 0.0 : d < eps; }

// Balls meet iff d < 2 eps; at eps = 0 iff the points coincide.
bool conflicting(double d, double eps) { return eps == 0.0 ? d == 0.0 : d < 2.0 * eps; }

// Integer masses over a common denominator: the smallest D <= 10^6 making
// every mass an integer multiple of 1/D, else 10^12 with rounding.
struct Units {
    std::int64_t denominator = 1;
    std::vector<std::int64_t> of;
};

Units integer_units(const std::vector<double>& masses) {
    Units u;
    for (std::int64_t d = 1; d <= 1'000'000; ++d) {
        bool ok = true;
        for (double m : masses) {
            const double scaled = m * static_cast<double>(d);
            if (std::fabs(scaled - std::round(scaled)) > 1e-9) {
                ok = false;
                break;
            }
        }
        if (ok) {
            u.denominator = d;
            break;
        }
    }
    if (u.denominator == 1 && !masses.empty()) {
        bool integral = true;
        for (double m : masses) integral = integral && m == std::round(m);
        if (!integral) u.denominator = 1'000'000'000'000;
    }
    for (double m : masses) u.of.push_back(std::llround(m * static_cast<double>(u.denominator)));
    return u;
}

// Ball of each cell as a bitmask, by scanning all cell pairs.
std::vector<std::uint32_t> ball_masks(const GridGeometry& g, double eps, double p) {
    const std::size_t n = g.cell_count();
    std::vector<std::uint32_t> balls(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        const auto ix = g.unflat(x);
        for (std::size_t y = 0; y < n; ++y) {
            const auto iy = g.unflat(y);
            double diff[kMaxGridDim];
            for (std::size_t k = 0; k < g.dim(); ++k)
                diff[k] = static_cast<double>(iy[k] - ix[k]) * g.spacing()[k];
            if (x == y || in_ball(lp(diff, g.dim(), p), eps)) balls[x] |= 1u << y;
        }
    }
    return balls;
}

}  // namespace

std::uint32_t encode(const CellMask& mask) {
    if (mask.size() > 32) throw InputError("encode: mask too large");
    std::uint32_t code = 0;
    for (std::size_t c = 0; c < mask.size(); ++c)
        if (mask[c]) code |= 1u << c;
    return code;
}

CellMask decode(std::uint32_t code, const GridGeometry& geometry) {
    CellMask m(geometry, false);
    for (std::size_t c = 0; c < m.size(); ++c) m.set(c, (code >> c) & 1u);
    return m;
}

double direct_risk_grid(const CellMask& mask, const GridMeasure& gm, double epsilon, const Metric& metric) {
    const auto& g = gm.geometry();
    const std::size_t n = g.cell_count();
    double risk = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        const auto ix = g.unflat(x);
        bool sup_in = false, sup_out = false;
        for (std::size_t y = 0; y < n; ++y) {
            const auto iy = g.unflat(y);
            double diff[kMaxGridDim];
            for (std::size_t k = 0; k < g.dim(); ++k)
                diff[k] = static_cast<double>(iy[k] - ix[k]) * g.spacing()[k];
            if (x != y && !in_ball(lp(diff, g.dim(), metric.p), epsilon)) continue;
            if (mask[y]) sup_in = true; else sup_out = true;
        }
        risk += (sup_in ? gm.dens0()[x] : 0.0) + (sup_out ? gm.dens1()[x] : 0.0);
    }
    return risk;
}

GridOptimum brute_force_grid(const GridMeasure& gm, const BallStencil& stencil) {
    const auto& g = gm.geometry();
    const std::size_t n = g.cell_count();
    if (n > kMaxGridCells)
        throw InputError("brute_force_grid: " + std::to_string(n) + " cells exceeds " +
                         std::to_string(kMaxGridCells) + " (2^cells masks are enumerated)");
    const auto balls = ball_masks(g, stencil.epsilon, stencil.metric.p);
    std::vector<double> masses(gm.dens0().begin(), gm.dens0().end());
    masses.insert(masses.end(), gm.dens1().begin(), gm.dens1().end());
    const Units u = integer_units(masses);
    const std::int64_t* k0 = u.of.data();
    const std::int64_t* k1 = u.of.data() + n;
    const std::uint32_t all = (1u << n) - 1u;
    GridOptimum out;
    out.denominator = u.denominator;
    out.value_units = std::numeric_limits<std::int64_t>::max();
    for (std::uint64_t code = 0; code <= all; ++code) {
        const auto m = static_cast<std::uint32_t>(code);
        std::int64_t cost = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (m & balls[x]) cost += k0[x];
            if (~m & all & balls[x]) cost += k1[x];
        }
        if (cost < out.value_units) {
            out.value_units = cost;
            out.optimal_masks.clear();
        }
        if (cost == out.value_units) out.optimal_masks.push_back(m);
    }
    out.value = static_cast<double>(out.value_units) / static_cast<double>(out.denominator);
    return out;
}

EmpiricalOptimum brute_force_empirical(const EmpiricalDataset& ds, double epsilon, const Metric& metric) {
    const std::size_t n = ds.size();
    if (n > kMaxEmpiricalPoints) throw InputError("brute_force_empirical: too many points");
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (ds.label(i) != ds.label(j) && conflicting(point_distance(ds, i, j, metric.p), epsilon))
                adj[i] |= 1u << j;
    const Units units = integer_units({ds.masses().begin(), ds.masses().end()});
    const auto& u = units.of;

    EmpiricalOptimum out;
    out.denominator = units.denominator;
    out.value_units = std::numeric_limits<std::int64_t>::max();
    const std::uint32_t all = (1u << n) - 1u;
    for (std::uint64_t code = 0; code <= all; ++code) {
        const auto s = static_cast<std::uint32_t>(code);
        // S must hit every conflict: each kept point's opponents are all in S.
        bool feasible = true;
        for (std::size_t i = 0; i < n && feasible; ++i)
            if (!(s >> i & 1u) && (adj[i] & ~s)) feasible = false;
        if (!feasible) continue;
        std::int64_t cost = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (s >> i & 1u) cost += u[i];
        if (cost < out.value_units) {
            out.value_units = cost;
            out.optimal_sets.clear();
        }
        if (cost == out.value_units) out.optimal_sets.push_back(s);
    }
    out.value = static_cast<double>(out.value_units) / static_cast<double>(out.denominator);
    return out;
}

double brute_force_coupling(const EmpiricalDataset& ds, double epsilon, const Metric& metric) {
    const std::size_t n = ds.size();
    std::size_t den = 0;
    std::vector<std::size_t> count(n);
    for (std::size_t d = 1; d <= kMaxCouplingUnits && den == 0; ++d) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const double scaled = ds.mass(i) * static_cast<double>(d);
            const double r = std::round(scaled);
            ok = r >= 1.0 && std::fabs(scaled - r) < 1e-9;
            if (ok) count[i] = static_cast<std::size_t>(r);
        }
        if (ok) den = d;
    }
    if (den == 0)
        throw InputError("brute_force_coupling: masses need a common denominator <= " +
                         std::to_string(kMaxCouplingUnits));

    // Unit atoms of mu (source side) and of mu^S (target side, labels swapped).
    std::vector<std::size_t> src, dst;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < count[i]; ++c) src.push_back(i);
    dst = src;
    auto cost = [&](std::size_t a, std::size_t b) {
        const int ya = ds.label(a);
        const int yb = 1 - ds.label(b);
        if (ya != yb) return 1;
        return conflicting(point_distance(ds, a, b, metric.p), epsilon) ? 0 : 1;
    };
    std::vector<std::vector<int>> c(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) c[a][b] = cost(a, b);

    int best = std::numeric_limits<int>::max();
    std::sort(dst.begin(), dst.end());
    do {
        int total = 0;
        for (std::size_t t = 0; t < src.size(); ++t) total += c[src[t]][dst[t]];
        best = std::min(best, total);
    } while (best > 0 && std::next_permutation(dst.begin(), dst.end()));
    const double ot_cost = static_cast<double>(best) / static_cast<double>(den);
    return 0.5 - 0.5 * ot_cost;
}

DecisionOptimum brute_force_decision(const EmpiricalDataset& ds, const KernelSpec& k) {
    const std::size_t n = ds.size();
    if (n > kMaxDecisionPoints) throw InputError("brute_force_decision: too many points");
    // Proposal law: kernel weights over the other points, normalised per row.
    std::vector<std::vector<double>> nu(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double r = point_distance(ds, i, j, k.metric.p) / k.epsilon;
            nu[i][j] = k.kind == KernelKind::IndicatorBall ? (r < 1.0 ? 1.0 : 0.0) : std::exp(-r * r);
            row += nu[i][j];
        }
        for (std::size_t j = 0; j < n; ++j) nu[i][j] = row > 0.0 ? nu[i][j] / row : 0.0;
        if (row == 0.0) nu[i][i] = 1.0;  // no proposal: the adversary keeps x
    }
    DecisionOptimum out;
    out.value = std::numeric_limits<double>::infinity();
    std::vector<double> values(std::size_t{1} << n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        double risk = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const int own = static_cast<int>(code >> i & 1u) != ds.label(i);
            double e = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (nu[i][j] == 0.0) continue;
                const int other = static_cast<int>(code >> j & 1u) != ds.label(i);
                e += nu[i][j] * std::max(own, other);
            }
            risk += ds.mass(i) * e;
        }
        values[code] = risk;
        out.value = std::min(out.value, risk);
    }
    for (std::uint64_t code = 0; code < values.size(); ++code)
        if (values[code] <= out.value + 1e-12) out.optimal_labelings.push_back(static_cast<std::uint32_t>(code));
    return out;
}

}  // namespace robustcut::oracle
