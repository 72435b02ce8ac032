#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "robustcut/errors.hpp"
#include "robustcut/exact_empirical.hpp"
#include "robustcut/functionals.hpp"
#include "robustcut/graphcut.hpp"
#include "robustcut/instances.hpp"
#include "robustcut/oracle/oracle.hpp"
#include "test_support.hpp"

using namespace robustcut;
using testsupport::Rng;

TEST_CASE("mask codes") {
    Rng rng(1);
    const auto g = GridGeometry::unit({3, 4});
    const auto m = testsupport::random_mask(rng, g);
    CHECK(oracle::decode(oracle::encode(m), g) == m);
    CHECK_THROWS_AS(oracle::encode(CellMask(GridGeometry::unit({6, 6}))), InputError);
}

TEST_CASE("grid brute force") {
    SUBCASE("one cell") {
        const auto g = GridGeometry::unit({1});
        const auto bf = oracle::brute_force_grid(GridMeasure(g, {0.25}, {0.75}), ball_stencil(g, 1.0, Metric::l2()));
        CHECK(bf.value == 0.25);
        CHECK(bf.optimal_masks == std::vector<std::uint32_t>{1});
    }
    SUBCASE("uniform 2x2 at eps = 0: every mask is optimal") {
        const auto g = GridGeometry::unit({2, 2});
        const GridMeasure gm(g, std::vector<double>(4, 0.125), std::vector<double>(4, 0.125));
        const auto bf = oracle::brute_force_grid(gm, ball_stencil(g, 0.0, Metric::l2()));
        CHECK(bf.value == 0.5);
        CHECK(bf.optimal_masks.size() == 16);
    }
    SUBCASE("coarse four squares matches the min-cut") {
        const auto gm = four_squares(4);
        for (double cells : {0.0, 1.0, 1.5, 2.0}) {
            const auto s = ball_stencil(gm.geometry(), cells * 0.5, Metric::l2());
            const auto bf = oracle::brute_force_grid(gm, s);
            const auto sol = solve_grid(gm, s);
            CHECK(bf.value == sol.value);
            CHECK(std::binary_search(bf.optimal_masks.begin(), bf.optimal_masks.end(), oracle::encode(sol.mask)));
        }
    }
    SUBCASE("frozen seeded 4x5 instance") {
        Rng rng(77);
        const auto gm = testsupport::random_measure(rng, GridGeometry::unit({4, 5}), 5, 0.3);
        const auto bf = oracle::brute_force_grid(gm, ball_stencil(gm.geometry(), 1.5, Metric::l2()));
        CHECK(bf.value_units == 40);
        CHECK(bf.denominator == 81);
        CHECK(bf.optimal_masks == std::vector<std::uint32_t>{0});
    }
    SUBCASE("minimum over masks equals the direct evaluator") {
        Rng rng(2);
        const auto gm = testsupport::random_measure(rng, GridGeometry::unit({3, 4}));
        const auto bf = oracle::brute_force_grid(gm, ball_stencil(gm.geometry(), 1.5, Metric::linf()));
        CHECK(oracle::direct_risk_grid(oracle::decode(bf.optimal_masks.front(), gm.geometry()), gm, 1.5,
                                       Metric::linf()) == doctest::Approx(bf.value).epsilon(1e-14));
    }
    SUBCASE("large grids are refused") {
        const auto gm = four_squares(6);
        CHECK_THROWS_WITH_AS(oracle::brute_force_grid(gm, ball_stencil(gm.geometry(), 0.0, Metric::l2())),
                             doctest::Contains("exceeds 22"), InputError);
    }
}

TEST_CASE("empirical brute force") {
    SUBCASE("two deltas") {
        const auto bf = oracle::brute_force_empirical(testsupport::two_deltas(), 1.5, Metric::l2());
        CHECK(bf.value == 0.5);
        CHECK(bf.optimal_sets == std::vector<std::uint32_t>{1, 2});
    }
    SUBCASE("no conflicts") {
        const auto bf = oracle::brute_force_empirical(testsupport::two_deltas(), 0.5, Metric::l2());
        CHECK(bf.value == 0.0);
        CHECK(bf.optimal_sets == std::vector<std::uint32_t>{0});
    }
    SUBCASE("frozen seeded dataset") {
        Rng rng(78);
        const auto ds = testsupport::random_uniform_dataset(rng, 8, 1, 6);
        const auto bf = oracle::brute_force_empirical(ds, 1.0, Metric::l2());
        CHECK(bf.value_units == 2);
        CHECK(bf.denominator == 8);
        CHECK(bf.optimal_sets == std::vector<std::uint32_t>{17});
        CHECK(oracle::brute_force_coupling(ds, 1.0, Metric::l2()) == 0.25);
    }
    SUBCASE("agrees with the certified solver") {
        Rng rng(3);
        for (int t = 0; t < 20; ++t) {
            const auto ds = testsupport::random_dataset(rng, 12, 2, 6);
            const auto bf = oracle::brute_force_empirical(ds, 1.0, Metric::l2());
            CHECK(std::fabs(bf.value - optimal_risk(ds, 1.0, Metric::l2()).risk) <= 1e-12);
        }
    }
}

TEST_CASE("coupling brute force") {
    CHECK(oracle::brute_force_coupling(testsupport::two_deltas(), 1.5, Metric::l2()) == 0.5);
    CHECK(oracle::brute_force_coupling(testsupport::two_deltas(), 0.5, Metric::l2()) == 0.0);
    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        const auto ds = testsupport::random_uniform_dataset(rng, 2 + testsupport::below(rng, 7), 1, 6);
        const double eps = 0.5 * static_cast<double>(testsupport::below(rng, 5));
        const double c = oracle::brute_force_coupling(ds, eps, Metric::l2());
        CHECK(std::fabs(c - ot_dual_value(ds, eps, Metric::l2())) <= 1e-12);
        CHECK(std::fabs(c - oracle::brute_force_empirical(ds, eps, Metric::l2()).value) <= 1e-12);
    }
    const EmpiricalDataset awkward(1, {0, 1}, {0, 1}, {1.0 / 11, 10.0 / 11});
    CHECK_THROWS_AS(oracle::brute_force_coupling(awkward, 1.0, Metric::l2()), InputError);
}

TEST_CASE("decision brute force") {
    const EmpiricalDataset ds(1, {0, 0.5, 3}, {0, 1, 1});
    const KernelSpec k(KernelKind::IndicatorBall, 1.0);
    const auto bf = oracle::brute_force_decision(ds, k);
    // Points 0 and 1 propose each other, so they either agree or both lose.
    // Sacrificing either one (codes 4 and 7) costs 1/3; point 2 is isolated.
    CHECK(bf.value == doctest::Approx(1.0 / 3.0));
    CHECK(bf.optimal_labelings == std::vector<std::uint32_t>{4, 7});
    Rng rng(5);
    CHECK_THROWS_AS(oracle::brute_force_decision(testsupport::random_dataset(rng, 21, 1, 5), k), InputError);
}
