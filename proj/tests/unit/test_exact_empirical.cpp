#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "robustcut/errors.hpp"
#include "robustcut/exact_empirical.hpp"
#include "robustcut/functionals.hpp"
#include "robustcut/oracle/oracle.hpp"
#include "robustcut/records.hpp"
#include "robustcut/scaling.hpp"
#include "test_support.hpp"

using namespace robustcut;
using testsupport::Rng;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> scan_conflicts(const EmpiricalDataset& ds, double eps,
                                                                const Metric& m) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (ds.label(i) != 0 || ds.label(j) != 1) continue;
            const double d = distance(m, ds.point(i), ds.point(j));
            if (eps == 0.0 ? d == 0.0 : d < 2 * eps) out.emplace_back(i, j);
        }
    return out;
}

double bayes_risk(const EmpiricalDataset& ds) {
    std::map<std::vector<double>, std::pair<double, double>> at;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto& slot = at[{ds.point(i).begin(), ds.point(i).end()}];
        (ds.label(i) ? slot.second : slot.first) += ds.mass(i);
    }
    double r = 0.0;
    for (const auto& [x, m] : at) r += std::min(m.first, m.second);
    return r;
}

testsupport::IntervalSet intervals_of(const EmpiricalDataset& ds, std::uint32_t sacrificed, double eps) {
    testsupport::IntervalSet a;
    for (std::size_t j = 0; j < ds.size(); ++j)
        if (ds.label(j) == 1 && !(sacrificed >> j & 1u)) a = a.unite(testsupport::IntervalSet::ball(ds.point(j)[0], eps));
    return a;
}

}  // namespace

TEST_CASE("two-delta conflict graph") {
    const auto ds = testsupport::two_deltas();
    const auto g15 = build_conflict_graph(ds, 1.5, Metric::l2());
    REQUIRE(g15.edges.size() == 1);
    CHECK(g15.edges[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(build_conflict_graph(ds, 0.5, Metric::l2()).edges.empty());
    CHECK(build_conflict_graph(ds, 1.0, Metric::l2()).edges.empty());
}

TEST_CASE("conflict graph equals a direct pair scan") {
    Rng rng(1);
    for (int t = 0; t < 30; ++t) {
        const auto ds = testsupport::random_dataset(rng, 12, 1 + t % 3, 10);
        for (double eps : {0.0, 0.5, 1.0, 2.5})
            for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
                CHECK(build_conflict_graph(ds, eps, Metric(p)).edges == scan_conflicts(ds, eps, Metric(p)));
    }
}

TEST_CASE("two-delta optimal risk") {
    const auto ds = testsupport::two_deltas();
    for (double eps : {1.1, 1.5, 1.9}) {
        const auto opt = optimal_risk(ds, eps, Metric::l2());
        CHECK(opt.risk == 0.5);
        CHECK(opt.certificate.exact);
        CHECK(opt.certificate.cover.size() == 1);
    }
    for (double eps : {0.0, 0.25, 0.5, 0.9, 1.0}) CHECK(optimal_risk(ds, eps, Metric::l2()).risk == 0.0);
}

TEST_CASE("optimal risk equals exhaustive cover search") {
    Rng rng(2);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + testsupport::below(rng, 15);
        const auto ds = testsupport::random_dataset(rng, n, 1 + t % 2, 8);
        const double eps = 0.5 * static_cast<double>(testsupport::below(rng, 6));
        const auto m = t % 3 ? Metric::l2() : Metric::l1();
        const auto opt = optimal_risk(ds, eps, m);
        const auto bf = oracle::brute_force_empirical(ds, eps, m);
        CHECK(std::fabs(opt.risk - bf.value) <= 1e-12);
        CHECK(std::fabs(opt.certificate.matching_value - opt.certificate.cover_value) <= 1e-9);
        std::uint32_t code = 0;
        for (auto i : opt.certificate.cover) code |= 1u << i;
        CHECK(std::binary_search(bf.optimal_sets.begin(), bf.optimal_sets.end(), code));
    }
}

TEST_CASE("irrational masses fall back to floating capacities") {
    const double a = 1.0 / std::sqrt(2.0) / 2.0;
    const EmpiricalDataset ds(1, {0, 0.5, 3, 3.2}, {0, 1, 0, 1}, {a, 0.5 - a, 0.25, 0.25});
    const auto opt = optimal_risk(ds, 1.0, Metric::l2());
    CHECK_FALSE(opt.certificate.exact);
    CHECK(opt.risk == doctest::Approx(0.5 - a + 0.25));
    CHECK(opt.risk == doctest::Approx(oracle::brute_force_empirical(ds, 1.0, Metric::l2()).value));
}

TEST_CASE("tampered certificates are rejected") {
    Rng rng(3);
    const auto ds = testsupport::random_dataset(rng, 10, 1, 6);
    const auto graph = build_conflict_graph(ds, 1.5, Metric::l2());
    REQUIRE_FALSE(graph.edges.empty());
    auto cert = optimal_risk(ds, graph).certificate;
    CHECK_NOTHROW(verify_certificate(ds, graph, cert));
    auto uncovered = cert;
    uncovered.cover.clear();
    CHECK_THROWS_AS(verify_certificate(ds, graph, uncovered), InternalError);
    auto gap = cert;
    gap.matching_value -= 0.01;
    CHECK_THROWS_AS(verify_certificate(ds, graph, gap), InternalError);
}

TEST_CASE("built classifiers realise the certified value") {
    SUBCASE("separated classes") {
        const EmpiricalDataset ds(1, {0, 1, 10, 11}, {1, 1, 0, 0});
        const auto opt = optimal_risk(ds, 1.0, Metric::l2());
        CHECK(opt.certificate.cover.empty());
        const auto a = build_classifier(ds, opt.certificate, 1.0, Metric::l2());
        CHECK(a.size() == 2);
        CHECK(adversarial_risk_empirical(a, ds, 1.0) == 0.0);
    }
    SUBCASE("two deltas, sacrificing -1") {
        const auto ds = testsupport::two_deltas();
        CoverCertificate cert;
        cert.epsilon = 1.5;
        cert.cover = {0};
        const auto a = build_classifier(ds, cert, 1.5, Metric::l2());
        REQUIRE(a.size() == 1);
        CHECK(a.center(0)[0] == 1.0);
        CHECK(a.radii[0] == 1.5);
        CHECK(adversarial_risk_empirical(a, ds, 1.5) == 0.5);
    }
    SUBCASE("random clouds") {
        Rng rng(4);
        for (int t = 0; t < 40; ++t) {
            const auto ds = testsupport::random_dataset(rng, 12, 2, 8);
            const double eps = 0.5 * static_cast<double>(testsupport::below(rng, 5));
            const auto opt = optimal_risk(ds, eps, Metric::l2());
            const auto a = build_classifier(ds, opt.certificate, eps, Metric::l2());
            CHECK(adversarial_risk_empirical(a, ds, eps) == opt.certificate.cover_value);
        }
    }
}

TEST_CASE("optimal transport dual") {
    const auto ds = testsupport::two_deltas();
    CHECK(ot_dual_value(ds, 1.5, Metric::l2()) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ot_dual_value(ds, 0.5, Metric::l2()) == doctest::Approx(0.0));
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        const auto ds6 = testsupport::random_dataset(rng, 2 + testsupport::below(rng, 7), 1, 6, 2);
        const double eps = 0.5 * static_cast<double>(testsupport::below(rng, 5));
        const double ot = ot_dual_value(ds6, eps, Metric::l2());
        CHECK(std::fabs(ot - optimal_risk(ds6, eps, Metric::l2()).risk) <= 1e-9);
        const auto r = rational_masses(ds6.masses(), 10);
        if (r) CHECK(std::fabs(ot - oracle::brute_force_coupling(ds6, eps, Metric::l2())) <= 1e-9);
    }
}

TEST_CASE("epsilon sweep") {
    const auto ds = testsupport::two_deltas();
    const std::vector<double> eps{0.5, 1.5};
    const auto path = sweep_epsilon(ds, eps, Metric::l2());
    REQUIRE(path.entries.size() == 2);
    CHECK(path.entries[0].optimal_risk == 0.0);
    CHECK(path.entries[1].optimal_risk == 0.5);
    const std::vector<double> unsorted{1.0, 0.5};
    CHECK_THROWS_AS(sweep_epsilon(ds, unsorted, Metric::l2()), InputError);
    const std::vector<double> negative{-1.0};
    CHECK_THROWS_AS(sweep_epsilon(ds, negative, Metric::l2()), InputError);

    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
        const auto cloud = testsupport::random_dataset(rng, 30, 2, 12);
        std::vector<double> list;
        for (int k = 0; k <= 12; ++k) list.push_back(0.5 * k);
        const auto rep = sweep_epsilon(cloud, list, Metric::l2());
        CHECK(rep.entries[0].optimal_risk == doctest::Approx(bayes_risk(cloud)).epsilon(1e-12));
        for (std::size_t k = 1; k < rep.entries.size(); ++k)
            CHECK(rep.entries[k].optimal_risk >= rep.entries[k - 1].optimal_risk);
        CHECK(rep.entries.back().optimal_risk <= std::min(cloud.w0(), cloud.w1()) + 1e-12);
    }
}

TEST_CASE("attacks within the eps-ball never beat the certificate") {
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        const auto ds = testsupport::random_dataset(rng, 25, 2, 10);
        const double eps = 0.5 + static_cast<double>(testsupport::below(rng, 3));
        const auto opt = optimal_risk(ds, eps, Metric::l2());
        const auto a = build_classifier(ds, opt.certificate, eps, Metric::l2());
        std::vector<std::vector<std::size_t>> reach(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i)
            for (std::size_t k = 0; k < ds.size(); ++k)
                if (k == i || distance(Metric::l2(), ds.point(i), ds.point(k)) < eps) reach[i].push_back(k);
        for (int attack = 0; attack < 100; ++attack) {
            double loss = 0.0;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                const auto k = reach[i][testsupport::below(rng, reach[i].size())];
                if (static_cast<int>(a.contains(ds.point(k))) != ds.label(i)) loss += ds.mass(i);
            }
            CHECK(loss <= opt.risk + 1e-12);
        }
    }
}

TEST_CASE("union and intersection of optimal classifiers stay optimal") {
    Rng rng(8);
    int pairs = 0;
    for (int t = 0; t < 60; ++t) {
        const auto ds = testsupport::random_dataset(rng, 4 + testsupport::below(rng, 9), 1, 12, 2);
        const double eps = 0.5 * static_cast<double>(testsupport::below(rng, 5));
        const auto bf = oracle::brute_force_empirical(ds, eps, Metric::l2());
        for (std::size_t a = 0; a < bf.optimal_sets.size(); ++a)
            for (std::size_t b = a + 1; b < bf.optimal_sets.size(); ++b) {
                const auto ia = intervals_of(ds, bf.optimal_sets[a], eps);
                const auto ib = intervals_of(ds, bf.optimal_sets[b], eps);
                CHECK(ia.adversarial_risk(ds, eps) == doctest::Approx(bf.value).epsilon(1e-12));
                CHECK(ia.unite(ib).adversarial_risk(ds, eps) == doctest::Approx(bf.value).epsilon(1e-12));
                CHECK(ia.intersect(ib).adversarial_risk(ds, eps) == doctest::Approx(bf.value).epsilon(1e-12));
                ++pairs;
            }
    }
    CHECK(pairs > 0);
}

TEST_CASE("certificate and classifier files") {
    Rng rng(9);
    const auto ds = testsupport::random_dataset(rng, 8, 2, 5);
    const auto opt = optimal_risk(ds, 1.0, Metric::l2());
    std::stringstream cert;
    write_certificate(cert, opt.certificate);
    const auto kv = parse_key_values(cert);
    CHECK(kv.at("epsilon") == "1");
    CHECK(parse_real(kv.at("cover_value")) == opt.certificate.cover_value);
    const auto a = build_classifier(ds, opt.certificate, 1.0, Metric::l2());
    std::stringstream io;
    write_classifier(io, a);
    const auto back = read_classifier(io, Metric::l2());
    CHECK(back.centers == a.centers);
    CHECK(back.radii == a.radii);
    std::stringstream report;
    const std::vector<double> list{0.0, 1.0};
    write_path_report(report, sweep_epsilon(ds, list, Metric::l2()));
    std::string header;
    std::getline(report, header);
    CHECK(header == "epsilon,risk,cover_size,cover");
}
