#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>

#include "robustcut/alt_models.hpp"
#include "robustcut/errors.hpp"
#include "robustcut/exact_empirical.hpp"
#include "robustcut/functionals.hpp"
#include "robustcut/morphology.hpp"
#include "robustcut/neighbors.hpp"
#include "robustcut/oracle/oracle.hpp"
#include "robustcut/records.hpp"
#include "robustcut/scaling.hpp"

namespace robustcut::cli {

namespace {

using Rng = std::mt19937_64;

double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

CellMask random_mask(Rng& rng, const GridGeometry& g, double p) {
    CellMask m(g, false);
    for (std::size_t c = 0; c < m.size(); ++c) m.set(c, unit(rng) < p);
    return m;
}

// Random masks alternate between noise and smoothed noise (one dilation of
// a sparse mask), so both fragmented and blob-like sets are covered.
CellMask random_probe(Rng& rng, const GridGeometry& g, const BallStencil& s, int k) {
    if (k % 2 == 0) return random_mask(rng, g, 0.5);
    return dilate(random_mask(rng, g, 0.05), s);
}

struct Runner {
    CheckReport report;

    void run(const std::string& name, const std::function<CheckResult()>& body) {
        CheckResult r;
        try {
            r = body();
        } catch (const std::exception& e) {
            r.outcome = Outcome::Fail;
            r.detail = e.what();
        }
        r.name = name;
        report.results.push_back(std::move(r));
    }
};

CheckResult verdict(bool ok, std::string detail) {
    return {"", ok ? Outcome::Pass : Outcome::Fail, std::move(detail)};
}

CheckResult skipped(std::string why) { return {"", Outcome::Skip, std::move(why)}; }

}  // namespace

bool CheckReport::all_passed() const {
    return std::none_of(results.begin(), results.end(), [](const CheckResult& r) { return r.outcome == Outcome::Fail; });
}

void CheckReport::print(std::ostream& out) const {
    for (const auto& r : results) {
        out << (r.outcome == Outcome::Pass ? "PASS " : r.outcome == Outcome::Fail ? "FAIL " : "SKIP ") << r.name;
        if (!r.detail.empty()) out << ": " << r.detail;
        out << '\n';
    }
}

CheckReport check_dataset(const EmpiricalDataset& ds, double epsilon, const Metric& metric, std::uint64_t seed) {
    Runner run;
    Rng rng(seed);
    const auto graph = build_conflict_graph(ds, epsilon, metric);
    const auto opt = optimal_risk(ds, graph);
    const double risk = opt.risk;

    run.run("koenig-duality", [&] {
        const auto& c = opt.certificate;
        return verdict(std::fabs(c.matching_value - c.cover_value) <= 1e-9,
                       "matching " + format_real(c.matching_value) + ", cover " + format_real(c.cover_value));
    });
    run.run("ot-dual", [&] {
        if (ds.size() > 1000) return skipped("N > 1000");
        const double ot = ot_dual_value(ds, epsilon, metric);
        return verdict(std::fabs(ot - risk) <= 1e-9, "ot " + format_real(ot) + ", risk " + format_real(risk));
    });
    run.run("trivial-bound", [&] {
        const double bound = std::min(ds.w0(), ds.w1());
        return verdict(risk <= bound + 1e-12, "risk " + format_real(risk) + " <= " + format_real(bound));
    });
    run.run("eps-monotone", [&] {
        const std::vector<double> list{0.0, epsilon / 4, epsilon / 2, epsilon, 2 * epsilon};
        const auto path = sweep_epsilon(ds, list, metric);
        bool ok = true;
        for (std::size_t k = 1; k < path.entries.size(); ++k)
            ok = ok && path.entries[k].optimal_risk >= path.entries[k - 1].optimal_risk - 1e-12;
        return verdict(ok, "eps in {0, e/4, e/2, e, 2e}");
    });
    run.run("classifier-attains-certificate", [&] {
        const auto a = build_classifier(ds, opt.certificate, epsilon, metric);
        const double r = adversarial_risk_empirical(a, ds, epsilon);
        return verdict(std::fabs(r - opt.certificate.cover_value) <= 1e-12, "classifier risk " + format_real(r));
    });
    run.run("attacks-within-ball", [&] {
        if (ds.size() > 2000) return skipped("N > 2000");
        const auto a = build_classifier(ds, opt.certificate, epsilon, metric);
        std::vector<std::vector<std::size_t>> reach(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) reach[i].push_back(i);
        for (const auto& [i, j] : pairs_within(ds, epsilon, metric)) {
            reach[i].push_back(j);
            reach[j].push_back(i);
        }
        double worst = 0.0;
        for (int attack = 0; attack < 200; ++attack) {
            double loss = 0.0;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                const auto k = reach[i][rng() % reach[i].size()];
                if (static_cast<int>(a.contains(ds.point(k))) != ds.label(i)) loss += ds.mass(i);
            }
            worst = std::max(worst, loss);
        }
        return verdict(worst <= risk + 1e-12, "worst of 200 attacks " + format_real(worst));
    });
    run.run("brute-force-cover", [&] {
        if (ds.size() > 20) return skipped("N > 20");
        const auto bf = oracle::brute_force_empirical(ds, epsilon, metric);
        return verdict(std::fabs(bf.value - risk) <= 1e-12, "oracle " + format_real(bf.value));
    });
    run.run("brute-force-coupling", [&] {
        if (ds.size() > 8 || !rational_masses(ds.masses(), 10)) return skipped("needs N <= 8 and masses in 1/D, D <= 10");
        const double c = oracle::brute_force_coupling(ds, epsilon, metric);
        return verdict(std::fabs(c - risk) <= 1e-12, "oracle " + format_real(c));
    });
    run.run("decision-model", [&] {
        if (ds.size() > 14) return skipped("N > 14");
        if (epsilon == 0.0) return skipped("kernel needs eps > 0");
        const KernelSpec k(KernelKind::IndicatorBall, epsilon, metric);
        const auto sol = solve_decision_model(ds, k);
        const auto bf = oracle::brute_force_decision(ds, k);
        return verdict(std::fabs(sol.value - bf.value) <= 1e-12,
                       "solver " + format_real(sol.value) + ", oracle " + format_real(bf.value));
    });
    return run.report;
}

CheckReport check_grid(const GridMeasure& gm, double epsilon, const Metric& metric, std::uint64_t seed,
                       const CutOptions& options) {
    Runner run;
    Rng rng(seed);
    const auto& g = gm.geometry();
    const auto s = ball_stencil(g, epsilon, metric);
    const auto energy = assemble_energy(gm, s);
    const auto sol = solve_mincut(energy, options);
    const CutNetwork net(energy, options);
    auto units = [&](const CellMask& m) { return energy.evaluate_units(m, net.capacities()); };
    auto risk = [&](const CellMask& m) { return adversarial_risk_grid(m, gm, s); };

    run.run("energy-faithful", [&] {
        bool ok = true;
        for (int k = 0; k < 30; ++k) {
            const auto m = random_probe(rng, g, s, k);
            ok = ok && energy.evaluate(m) == risk(m);
        }
        return verdict(ok, "30 random masks, exact");
    });
    run.run("decomposition", [&] {
        double worst = 0.0;
        for (int k = 0; k < 30; ++k) {
            const auto r = risk_breakdown_grid(random_probe(rng, g, s, k), gm, s);
            worst = std::max(worst, std::fabs(r.adversarial_risk - r.empirical_risk - epsilon * r.pre_perimeter));
        }
        return verdict(worst <= 1e-10, "max residual " + format_real(worst));
    });
    run.run("submodular", [&] {
        double worst = 0.0;
        for (int k = 0; k < 30; ++k) {
            const auto a = random_probe(rng, g, s, k), b = random_probe(rng, g, s, k + 1);
            worst = std::max(worst, risk(a | b) + risk(a & b) - risk(a) - risk(b));
        }
        return verdict(worst <= 1e-10, "max violation " + format_real(std::max(worst, 0.0)));
    });
    run.run("morphological-risk", [&] {
        bool ok = true;
        for (int k = 0; k < 20; ++k) {
            const auto m = random_probe(rng, g, s, k);
            ok = ok && morphological_risk(m, gm, s) == risk(m);
        }
        return verdict(ok, "20 random masks, exact");
    });
    run.run("morphology-identities", [&] {
        bool ok = true;
        for (int k = 0; k < 20; ++k) {
            const auto a = random_probe(rng, g, s, k);
            const auto cl = closing(a, s), op = opening(a, s);
            ok = ok && erode(a, s) == dilate(a.complement(), s).complement() && op.subset_of(a) &&
                 a.subset_of(cl) && dilate(cl, s) == dilate(a, s) && erode(op, s) == erode(a, s) &&
                 closing(a.complement(), s) == op.complement();
            ok = ok && risk(cl) <= risk(a) && risk(op) <= risk(a);
        }
        return verdict(ok, "six identities and risk monotonicity on 20 masks");
    });
    run.run("coarea", [&] {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const std::size_t nl = 1 + rng() % 8;
            std::vector<double> levels(nl);
            for (auto& l : levels) l = unit(rng);
            std::vector<double> v(g.cell_count());
            for (auto& x : v) x = levels[rng() % nl];
            const ScalarField u(g, v);
            worst = std::max(worst, std::fabs(coarea_tv(u, gm, s) - pre_tv_grid(u, gm, s)));
        }
        return verdict(worst <= 1e-10, "max residual " + format_real(worst));
    });
    run.run("extreme-solutions", [&] {
        const bool ok = sol.a_min.subset_of(sol.a_max) && units(sol.a_min) == sol.flow_value &&
                        units(sol.a_max) == sol.flow_value;
        return verdict(ok, "|A_min| " + std::to_string(sol.a_min.count()) + ", |A_max| " +
                               std::to_string(sol.a_max.count()));
    });
    run.run("minimiser-preserved", [&] {
        const auto op = opening(sol.mask, s), cl = closing(sol.mask, s);
        bool ok = units(op) == sol.flow_value && units(cl) == sol.flow_value;
        for (int k = 0; k < 20; ++k) ok = ok && units(op | (cl & random_mask(rng, g, 0.5))) == sol.flow_value;
        return verdict(ok, "opening, closing and 20 sets between them");
    });
    run.run("threshold-gap", [&] {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            std::vector<double> v(g.cell_count());
            const double lambda = unit(rng);
            for (std::size_t c = 0; c < v.size(); ++c) v[c] = lambda * sol.mask[c] + (1 - lambda) * unit(rng);
            worst = std::min(worst, threshold_gap_check(ScalarField(g, v), gm, s).gap);
        }
        return verdict(worst >= -1e-12, "min gap " + format_real(worst));
    });
    run.run("eps-monotone", [&] {
        const auto half = solve_grid(gm, ball_stencil(g, epsilon / 2, metric), options);
        return verdict(half.value <= sol.value + sol.value_error_bound + half.value_error_bound,
                       "value(e/2) " + format_real(half.value) + " <= value(e) " + format_real(sol.value));
    });
    run.run("brute-force-grid", [&] {
        if (g.cell_count() > 20) return skipped("more than 20 cells");
        const auto bf = oracle::brute_force_grid(gm, s);
        bool ok = std::fabs(risk(sol.mask) - bf.value) <= 1e-12 &&
                  std::binary_search(bf.optimal_masks.begin(), bf.optimal_masks.end(), oracle::encode(sol.mask));
        for (auto code : bf.optimal_masks) {
            const auto m = oracle::decode(code, g);
            ok = ok && sol.a_min.subset_of(m) && m.subset_of(sol.a_max);
        }
        return verdict(ok, std::to_string(bf.optimal_masks.size()) + " optima, value " + format_real(bf.value));
    });
    return run.report;
}

}  // namespace robustcut::cli
