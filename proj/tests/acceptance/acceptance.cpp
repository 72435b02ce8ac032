#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "robustcut/alt_models.hpp"
#include "robustcut/exact_empirical.hpp"
#include "robustcut/functionals.hpp"
#include "robustcut/graphcut.hpp"
#include "robustcut/instances.hpp"
#include "robustcut/morphology.hpp"
#include "robustcut/oracle/oracle.hpp"
#include "robustcut/records.hpp"
#include "test_support.hpp"

using namespace robustcut;
using testsupport::below;
using testsupport::coin;
using testsupport::Rng;
using testsupport::uniform01;

namespace {

// Pinned tolerances and budgets.
constexpr double kDecompositionTol = 1e-10;
constexpr double kSubmodularTol = 1e-10;
constexpr double kCoareaTol = 1e-10;
constexpr double kDualityTol = 1e-9;
constexpr double kMonotoneTol = 1e-12;
constexpr double kDecisionTol = 1e-12;
constexpr double kTwoDeltaBudgetMs = 50.0;
constexpr double kDecompositionBudgetMs = 10'000.0;
constexpr double kMinCutBudgetMs = 30'000.0;

struct Verdict {
    bool pass = true;
    std::string detail;
    double budget_ms = 0.0;  // 0 = untimed
};

Metric pick_metric(Rng& rng) {
    switch (below(rng, 4)) {
    case 0: return Metric::l1();
    case 1: return Metric::l2();
    case 2: return Metric::linf();
    default: return Metric(3.0);
    }
}

GridGeometry random_geometry(Rng& rng, std::size_t max_side) {
    const std::size_t a = 1 + below(rng, max_side), b = 1 + below(rng, max_side);
    const double h = coin(rng) ? 1.0 : 1.0 / static_cast<double>(1 + below(rng, 16));
    return GridGeometry({a, b}, {h, h}, {0.0, 0.0});
}

CellMask any_mask(Rng& rng, const GridGeometry& g) {
    return coin(rng) ? testsupport::random_mask(rng, g) : testsupport::random_blob_mask(rng, g);
}

double random_eps(Rng& rng, const GridGeometry& g, double max_cells) {
    return uniform01(rng) * max_cells * g.spacing()[0];
}

// Rational values p1/q1 <= p2/q2 compared exactly.
int compare_units(std::int64_t p1, double q1, std::int64_t p2, double q2) {
    const __int128 a = static_cast<__int128>(p1) * static_cast<std::int64_t>(q2);
    const __int128 b = static_cast<__int128>(p2) * static_cast<std::int64_t>(q1);
    return a < b ? -1 : a > b ? 1 : 0;
}

std::uint32_t encode_labels(std::span<const std::uint8_t> labels) {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) code |= static_cast<std::uint32_t>(labels[i] != 0) << i;
    return code;
}

Verdict ac1_two_deltas() {
    const auto ds = two_deltas();
    std::size_t bad = 0;
    for (double eps : {1.1, 1.5, 1.9, 0.25, 0.5, 0.9}) {
        const double expected = eps > 1.0 ? 0.5 : 0.0;
        const auto opt = optimal_risk(ds, eps, Metric::l2());
        const double values[] = {opt.risk,
                                 opt.certificate.matching_value,
                                 opt.certificate.cover_value,
                                 ot_dual_value(ds, eps, Metric::l2()),
                                 oracle::brute_force_empirical(ds, eps, Metric::l2()).value,
                                 oracle::brute_force_coupling(ds, eps, Metric::l2())};
        for (double v : values) bad += v != expected;
    }
    return {bad == 0, "6 budgets x 6 evaluators, " + std::to_string(bad) + " mismatches", kTwoDeltaBudgetMs};
}

Verdict ac2_decomposition() {
    Rng rng(1002);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const auto g = random_geometry(rng, 32);
        const auto gm = testsupport::random_measure(rng, g);
        const auto s = ball_stencil(g, random_eps(rng, g, 5.0), pick_metric(rng));
        const auto a = any_mask(rng, g);
        const double lhs = adversarial_risk_grid(a, gm, s);
        const double rhs = empirical_risk_grid(a, gm) + s.epsilon * pre_perimeter_grid(a, gm, s);
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return {worst <= kDecompositionTol, "500 triples, max residual " + format_real(worst), kDecompositionBudgetMs};
}

Verdict ac3_submodularity() {
    Rng rng(1003);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto g = random_geometry(rng, 16);
        const auto gm = testsupport::random_measure(rng, g);
        const auto s = ball_stencil(g, random_eps(rng, g, 4.0), pick_metric(rng));
        const auto a = any_mask(rng, g), b = any_mask(rng, g);
        const double gap = adversarial_risk_grid(a | b, gm, s) + adversarial_risk_grid(a & b, gm, s) -
                           adversarial_risk_grid(a, gm, s) - adversarial_risk_grid(b, gm, s);
        worst = std::max(worst, gap);
    }
    return {worst <= kSubmodularTol, "1000 pairs, max violation " + format_real(std::max(worst, 0.0))};
}

Verdict ac4_coarea() {
    Rng rng(1004);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const auto g = random_geometry(rng, 16);
        const auto gm = testsupport::random_measure(rng, g);
        const auto s = ball_stencil(g, random_eps(rng, g, 4.0), pick_metric(rng));
        std::vector<double> levels(1 + below(rng, 8));
        for (auto& l : levels) l = uniform01(rng);
        std::vector<double> v(g.cell_count());
        for (auto& x : v) x = levels[below(rng, levels.size())];
        const ScalarField u(g, std::move(v));
        worst = std::max(worst, std::fabs(coarea_tv(u, gm, s) - pre_tv_grid(u, gm, s)));
    }
    return {worst <= kCoareaTol, "200 fields, max residual " + format_real(worst)};
}

struct BruteForceTally {
    std::size_t instances = 0;
    std::size_t value_mismatch = 0;
    std::size_t not_member = 0;
    std::size_t inexact = 0;
    std::size_t sandwich_fail = 0;
    std::size_t extreme_not_optimal = 0;
    std::size_t optima = 0;
    double ms = 0.0;
};

void tally_instance(BruteForceTally& t, const GridMeasure& gm, const BallStencil& s) {
    const auto bf = oracle::brute_force_grid(gm, s);
    const auto sol = solve_grid(gm, s);
    ++t.instances;
    t.inexact += !sol.exact;
    t.value_mismatch += compare_units(sol.flow_value, sol.scale, bf.value_units,
                                      static_cast<double>(bf.denominator)) != 0;
    auto optimal = [&](const CellMask& m) {
        return std::binary_search(bf.optimal_masks.begin(), bf.optimal_masks.end(), oracle::encode(m));
    };
    t.not_member += !optimal(sol.mask);
    t.extreme_not_optimal += !optimal(sol.a_min) + !optimal(sol.a_max);
    for (auto code : bf.optimal_masks) {
        const auto m = oracle::decode(code, gm.geometry());
        t.sandwich_fail += !(sol.a_min.subset_of(m) && m.subset_of(sol.a_max));
    }
    t.optima += bf.optimal_masks.size();
}

const BruteForceTally& brute_force_tally() {
    static const BruteForceTally tally = [] {
        BruteForceTally t;
        const auto start = std::chrono::steady_clock::now();
        Rng rng(1005);
        const double ps[] = {1.0, 2.0, std::numeric_limits<double>::infinity()};
        for (int draw = 0; draw < 25; ++draw) {
            const auto gm = testsupport::random_measure(rng, GridGeometry::unit({4, 4}), 3, 0.3);
            for (double eps : {0.0, 1.0, 1.5, 2.5})
                for (double p : ps) tally_instance(t, gm, ball_stencil(gm.geometry(), eps, Metric(p)));
        }
        for (int k = 0; k < 50; ++k) {
            const auto gm = testsupport::random_measure(rng, GridGeometry::unit({4, 5}), 5, 0.3);
            const double eps = 0.5 + static_cast<double>(below(rng, 3));
            tally_instance(t, gm, ball_stencil(gm.geometry(), eps, Metric(ps[k % 3])));
        }
        t.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return t;
    }();
    return tally;
}

Verdict ac5_mincut() {
    const auto& t = brute_force_tally();
    const bool ok = t.value_mismatch == 0 && t.not_member == 0 && t.inexact == 0;
    return {ok,
            std::to_string(t.instances) + " instances (300 on 4x4, 50 on 4x5): " + std::to_string(t.value_mismatch) +
                " value mismatches, " + std::to_string(t.not_member) + " non-optimal masks, " +
                std::to_string(t.inexact) + " inexact",
            kMinCutBudgetMs};
}

Verdict ac6_extremes() {
    const auto& t = brute_force_tally();
    const bool ok = t.sandwich_fail == 0 && t.extreme_not_optimal == 0;
    return {ok, std::to_string(t.optima) + " enumerated optima over " + std::to_string(t.instances) +
                    " instances: " + std::to_string(t.sandwich_fail) + " outside [A_min, A_max], " +
                    std::to_string(t.extreme_not_optimal) + " non-optimal extremes"};
}

Verdict ac7_morphology() {
    Rng rng(1007);
    std::size_t identity_fail = 0, risk_increase = 0, between_fail = 0;
    for (int t = 0; t < 500; ++t) {
        const auto g = random_geometry(rng, 20);
        const auto gm = testsupport::random_measure(rng, g);
        const auto s = ball_stencil(g, random_eps(rng, g, 4.0), pick_metric(rng));
        const auto a = any_mask(rng, g);
        const auto cl = closing(a, s), op = opening(a, s);
        const bool identities[] = {erode(a, s) == dilate(a.complement(), s).complement(),
                                   op.subset_of(a),
                                   a.subset_of(cl),
                                   dilate(cl, s) == dilate(a, s),
                                   erode(op, s) == erode(a, s),
                                   closing(a.complement(), s) == op.complement()};
        for (bool ok : identities) identity_fail += !ok;
        const double r = adversarial_risk_grid(a, gm, s);
        risk_increase += adversarial_risk_grid(cl, gm, s) > r;
        risk_increase += adversarial_risk_grid(op, gm, s) > r;
    }
    for (int t = 0; t < 10; ++t) {
        const auto g = random_geometry(rng, 16);
        const auto gm = testsupport::random_measure(rng, g);
        const auto s = ball_stencil(g, random_eps(rng, g, 3.0), pick_metric(rng));
        const auto e = assemble_energy(gm, s);
        const auto sol = solve_mincut(e);
        const CutNetwork net(e);
        const auto op = opening(sol.mask, s), cl = closing(sol.mask, s);
        for (int k = 0; k < 10; ++k) {
            const auto m = op | (cl & testsupport::random_mask(rng, g));
            between_fail += !sol.exact || e.evaluate_units(m, net.capacities()) != sol.flow_value;
        }
    }
    const bool ok = identity_fail == 0 && risk_increase == 0 && between_fail == 0;
    return {ok, "500 masks: " + std::to_string(identity_fail) + " identity failures, " +
                    std::to_string(risk_increase) + " risk increases; 100 intermediate sets: " +
                    std::to_string(between_fail) + " non-optimal"};
}

Verdict ac8_duality() {
    Rng rng(1008);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const auto ds = testsupport::random_dataset(rng, 2 + below(rng, 15), 1 + below(rng, 2), 6);
        const auto metric = pick_metric(rng);
        const double eps = 3.0 * uniform01(rng);
        const auto opt = optimal_risk(ds, eps, metric);
        const double values[] = {opt.certificate.matching_value, opt.certificate.cover_value,
                                 ot_dual_value(ds, eps, metric),
                                 oracle::brute_force_empirical(ds, eps, metric).value};
        for (double v : values) worst = std::max(worst, std::fabs(v - opt.risk));
    }
    double worst_coupling = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto ds = testsupport::random_uniform_dataset(rng, 2 + below(rng, 7), 1 + below(rng, 2), 4);
        const auto metric = pick_metric(rng);
        const double eps = 3.0 * uniform01(rng);
        const double c = oracle::brute_force_coupling(ds, eps, metric);
        worst_coupling = std::max(worst_coupling, std::fabs(c - optimal_risk(ds, eps, metric).risk));
    }
    return {worst <= kDualityTol && worst_coupling <= kDualityTol,
            "200 datasets max gap " + format_real(worst) + "; 50 coupling datasets max gap " +
                format_real(worst_coupling)};
}

Verdict ac9_four_squares() {
    const auto gm = four_squares(32);
    const auto& g = gm.geometry();
    const auto bayes = solve_grid(gm, ball_stencil(g, 0.0, Metric::l2()));
    std::size_t wrong = 0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const auto x = g.center(c);
        wrong += bayes.mask[c] != (x[0] * x[1] > 0.0);
    }
    const double eps = 4.0 * g.spacing()[0];
    const auto s = ball_stencil(g, eps, Metric::l2());
    const auto e = assemble_energy(gm, s);
    const auto sol = solve_mincut(e);
    const CutNetwork net(e);
    const auto joined = testsupport::four_squares_minimizer(g, eps, true);
    const auto split = testsupport::four_squares_minimizer(g, eps, false);
    const auto uj = e.evaluate_units(joined, net.capacities());
    const auto us = e.evaluate_units(split, net.capacities());
    const bool between = sol.a_min.subset_of(joined) && joined.subset_of(sol.a_max) &&
                         sol.a_min.subset_of(split) && split.subset_of(sol.a_max);
    const bool ok = wrong == 0 && net.exact() && uj == us && between;
    const auto den = std::to_string(static_cast<std::int64_t>(sol.scale));
    return {ok, "eps=0: " + std::to_string(wrong) + " cells off {xy>0}; eps=4 cells: smooth sets " +
                    std::to_string(uj) + "/" + den + " and " + std::to_string(us) + "/" + den +
                    (between ? ", both in [A_min, A_max]" : ", not between the extremes") + "; min-cut optimum " +
                    std::to_string(sol.flow_value) + "/" + den +
                    (uj > sol.flow_value ? ", so the smooth sets are not minimisers on this grid" : "")};
}

Verdict ac10_threshold_gap() {
    Rng rng(1010);
    std::size_t violations = 0;
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const auto g = random_geometry(rng, 12);
        const auto gm = testsupport::random_measure(rng, g);
        const auto s = ball_stencil(g, random_eps(rng, g, 3.0), pick_metric(rng));
        std::vector<double> v(g.cell_count());
        for (auto& x : v) x = t % 4 == 0 ? static_cast<double>(coin(rng)) : uniform01(rng);
        const auto rep = threshold_gap_check(ScalarField(g, std::move(v)), gm, s);
        violations += !rep.holds;
        worst = std::min(worst, rep.gap);
    }
    return {violations == 0, "500 fields, " + std::to_string(violations) + " violations, min gap " + format_real(worst)};
}

Verdict ac11_monotone() {
    Rng rng(1011);
    std::size_t decreases = 0, bound_fail = 0, sweeps = 0;
    auto dataset_sweep = [&](const EmpiricalDataset& ds, const Metric& metric, std::vector<double> eps) {
        ++sweeps;
        std::vector<double> risks;
        try {
            for (const auto& entry : sweep_epsilon(ds, eps, metric).entries) risks.push_back(entry.optimal_risk);
        } catch (const std::exception&) {
            ++decreases;
            return;
        }
        const double bound = std::min(ds.w0(), ds.w1());
        for (std::size_t k = 0; k < risks.size(); ++k) {
            bound_fail += risks[k] > bound + kMonotoneTol;
            if (k > 0) decreases += risks[k] < risks[k - 1] - kMonotoneTol;
        }
    };
    auto grid_sweep = [&](const GridMeasure& gm, const Metric& metric, const std::vector<double>& eps) {
        ++sweeps;
        CutSolution prev;
        for (std::size_t k = 0; k < eps.size(); ++k) {
            auto sol = solve_grid(gm, ball_stencil(gm.geometry(), eps[k], metric));
            bound_fail += sol.value > std::min(gm.w0(), gm.w1()) + sol.value_error_bound + kMonotoneTol;
            if (k > 0) {
                if (sol.exact && prev.exact)
                    decreases += compare_units(sol.flow_value, sol.scale, prev.flow_value, prev.scale) < 0;
                else
                    decreases += sol.value < prev.value - sol.value_error_bound - prev.value_error_bound;
            }
            prev = std::move(sol);
        }
    };
    auto ladder = [&](double top, std::size_t n) {
        std::vector<double> eps(n);
        for (auto& e : eps) e = top * uniform01(rng);
        std::sort(eps.begin(), eps.end());
        eps.front() = 0.0;
        return eps;
    };
    dataset_sweep(two_deltas(), Metric::l2(), {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0});
    dataset_sweep(two_clusters(200, 1), Metric::l2(), ladder(2.0, 12));
    for (int t = 0; t < 100; ++t)
        dataset_sweep(testsupport::random_dataset(rng, 2 + below(rng, 40), 1 + below(rng, 3), 8), pick_metric(rng),
                      ladder(4.0, 12));
    grid_sweep(four_squares(16), Metric::l2(), {0.0, 0.125, 0.25, 0.5, 1.0});
    for (int t = 0; t < 30; ++t) {
        const auto g = random_geometry(rng, 12);
        grid_sweep(testsupport::random_measure(rng, g), pick_metric(rng), ladder(4.0 * g.spacing()[0], 8));
    }
    for (int t = 0; t < 10; ++t) {
        const auto g = random_geometry(rng, 10);
        std::vector<double> d0(g.cell_count()), d1(g.cell_count());
        for (auto& v : d0) v = uniform01(rng);
        for (auto& v : d1) v = uniform01(rng);
        grid_sweep(GridMeasure::normalized(g, std::move(d0), std::move(d1)), pick_metric(rng),
                   ladder(4.0 * g.spacing()[0], 8));
    }
    return {decreases == 0 && bound_fail == 0, std::to_string(sweeps) + " sweeps, " + std::to_string(decreases) +
                                                   " decreases, " + std::to_string(bound_fail) + " bound violations"};
}

Verdict ac12_decision() {
    Rng rng(1012);
    std::size_t mismatches = 0, not_member = 0;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 4 + below(rng, 11);
        const auto ds = testsupport::random_dataset(rng, n, 1 + below(rng, 2), 6, 3);
        const KernelSpec k(t % 3 ? KernelKind::IndicatorBall : KernelKind::Gaussian,
                           0.5 + 0.5 * static_cast<double>(below(rng, 5)), pick_metric(rng));
        const auto sol = solve_decision_model(ds, k);
        const auto bf = oracle::brute_force_decision(ds, k);
        const double gap = std::fabs(sol.value - bf.value);
        worst = std::max(worst, gap);
        mismatches += gap > kDecisionTol;
        if (sol.exact)
            not_member += !std::binary_search(bf.optimal_labelings.begin(), bf.optimal_labelings.end(),
                                              encode_labels(sol.labels));
    }
    return {mismatches == 0 && not_member == 0, "50 instances, max gap " + format_real(worst) + ", " +
                                                    std::to_string(not_member) + " exact labelings off the optimum set"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
    };
    const Criterion criteria[] = {
        {"two-delta example", ac1_two_deltas},
        {"decomposition identity", ac2_decomposition},
        {"submodularity", ac3_submodularity},
        {"coarea formula", ac4_coarea},
        {"min-cut exactness", ac5_mincut},
        {"extreme solutions", ac6_extremes},
        {"morphology suite", ac7_morphology},
        {"Koenig and OT duality", ac8_duality},
        {"four squares", ac9_four_squares},
        {"threshold gap", ac10_threshold_gap},
        {"eps monotonicity", ac11_monotone},
        {"decision model", ac12_decision},
    };
    int failures = 0;
    int id = 0;
    for (const auto& c : criteria) {
        ++id;
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (id == 5) ms = brute_force_tally().ms;
        std::string timing = id == 6 ? "shared with AC05" : format_real(std::round(ms * 10.0) / 10.0) + " ms";
        if (v.budget_ms > 0.0) {
            timing += " of " + format_real(v.budget_ms) + " ms";
            if (ms >= v.budget_ms) {
                v.pass = false;
                v.detail += "; over time budget";
            }
        }
        failures += !v.pass;
        std::printf("AC%02d %s %s: %s [%s]\n", id, v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), timing.c_str());
    }
    std::printf("%d of %d criteria passed\n", id - failures, id);
    return failures == 0 ? 0 : 1;
}
