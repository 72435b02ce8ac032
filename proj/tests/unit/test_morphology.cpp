#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "robustcut/functionals.hpp"
#include "robustcut/graphcut.hpp"
#include "robustcut/morphology.hpp"
#include "test_support.hpp"

using namespace robustcut;
using testsupport::Rng;

TEST_CASE("dilation and erosion of trivial sets") {
    const auto g = GridGeometry::unit({7, 6});
    const auto s = ball_stencil(g, 2.0, Metric::l2());
    CHECK(dilate(CellMask::empty(g), s) == CellMask::empty(g));
    CHECK(erode(CellMask::full(g), s) == CellMask::full(g));
    CHECK(dilate(CellMask::full(g), s) == CellMask::full(g));
    CHECK(erode(CellMask::empty(g), s) == CellMask::empty(g));
}

TEST_CASE("dilating a singleton gives the stencil footprint") {
    const auto g = GridGeometry::unit({9, 9});
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        const auto s = ball_stencil(g, 2.5, Metric(p));
        CellMask a(g, false);
        const std::size_t centre = g.flat({4, 4, 0});
        a.set(centre, true);
        const auto d = dilate(a, s);
        CHECK(d.count() == s.size());
        for (const auto& o : s.offsets) CHECK(d[g.flat({4 + o[0], 4 + o[1], 0})]);
    }
}

TEST_CASE("eps = 0 morphology is the identity") {
    Rng rng(1);
    const auto g = GridGeometry::unit({5, 5});
    const auto s = ball_stencil(g, 0.0, Metric::l2());
    const auto a = testsupport::random_mask(rng, g);
    CHECK(dilate(a, s) == a);
    CHECK(erode(a, s) == a);
}

TEST_CASE("algebraic identities on random masks") {
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        const std::size_t d = 1 + testsupport::below(rng, 3);
        std::vector<std::size_t> dims(d);
        for (auto& n : dims) n = 2 + testsupport::below(rng, d == 3 ? 5 : 10);
        const auto g = GridGeometry(dims, std::vector<double>(d, 1.0), std::vector<double>(d, 0.0));
        const double eps = 0.5 + 0.5 * static_cast<double>(testsupport::below(rng, 5));
        const Metric m = t % 3 == 0 ? Metric::l1() : t % 3 == 1 ? Metric::l2() : Metric::linf();
        const auto s = ball_stencil(g, eps, m);
        const auto a = t % 2 ? testsupport::random_mask(rng, g) : testsupport::random_blob_mask(rng, g);
        const auto cl = closing(a, s);
        const auto op = opening(a, s);
        CHECK(erode(a, s) == dilate(a.complement(), s).complement());
        CHECK(op.subset_of(a));
        CHECK(a.subset_of(cl));
        CHECK(dilate(cl, s) == dilate(a, s));
        CHECK(erode(op, s) == erode(a, s));
        CHECK(closing(a.complement(), s) == op.complement());
        CHECK(closing(cl, s) == cl);
        CHECK(opening(op, s) == op);
        const auto b = a | testsupport::random_mask(rng, g, 0.2);
        CHECK(dilate(a, s).subset_of(dilate(b, s)));
        CHECK(erode(a, s).subset_of(erode(b, s)));
    }
}

TEST_CASE("neighbourhood overloads agree with stencil overloads") {
    Rng rng(3);
    const auto g = GridGeometry::unit({11, 7});
    const auto s = ball_stencil(g, 2.2, Metric::l2());
    const BallNeighborhoods nb(g, s);
    for (int t = 0; t < 20; ++t) {
        const auto a = testsupport::random_mask(rng, g);
        CHECK(dilate(a, nb) == dilate(a, s));
        CHECK(erode(a, nb) == erode(a, s));
    }
}

TEST_CASE("opening and closing never increase the risk") {
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto gm = testsupport::random_measure(rng, GridGeometry::unit({8, 9}));
        const auto s = ball_stencil(gm.geometry(), 1.0 + static_cast<double>(testsupport::below(rng, 3)), Metric::l2());
        const auto a = testsupport::random_blob_mask(rng, gm.geometry());
        const double r = adversarial_risk_grid(a, gm, s);
        CHECK(adversarial_risk_grid(closing(a, s), gm, s) <= r);
        CHECK(adversarial_risk_grid(opening(a, s), gm, s) <= r);
    }
}

TEST_CASE("minimisers survive opening and closing, and so does anything between") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto gm = testsupport::random_measure(rng, GridGeometry::unit({7, 7}), 4, 0.5);
        const auto s = ball_stencil(gm.geometry(), 1.5, Metric::l2());
        const auto sol = solve_grid(gm, s);
        const auto energy = assemble_energy(gm, s);
        const CutNetwork net(energy);
        REQUIRE(net.exact());
        auto units = [&](const CellMask& m) { return energy.evaluate_units(m, net.capacities()); };
        const auto best = units(sol.mask);
        CHECK(best == sol.flow_value);
        const auto op = opening(sol.mask, s);
        const auto cl = closing(sol.mask, s);
        CHECK(units(op) == best);
        CHECK(units(cl) == best);
        for (int k = 0; k < 10; ++k) {
            const auto b = op | (cl & testsupport::random_mask(rng, gm.geometry()));
            CHECK(units(b) == best);
        }
    }
}

TEST_CASE("ball-union dilation") {
    const BallUnionClassifier a{2, {0, 0, 3, 1}, {1.0, 0.0}, Metric::l2()};
    const auto d = dilate_ball_union(a, 0.5);
    CHECK(d.radii == std::vector<double>{1.5, 0.5});
    const auto twice = dilate_ball_union(dilate_ball_union(a, 0.25), 0.5);
    const auto once = dilate_ball_union(a, 0.75);
    CHECK(twice.radii == once.radii);
    CHECK(twice.centers == once.centers);
}

TEST_CASE("rasterised ball dilation matches grid dilation away from the boundary") {
    const double h = 1.0 / 64;
    const auto g = GridGeometry({128, 128}, {h, h}, {-1, -1});
    const BallUnionClassifier a{2, {-0.3, 0.1, 0.35, -0.2, 0.0, 0.6}, {0.25, 0.15, 0.05}, Metric::l2()};
    const double eps = 0.1;
    const auto lhs = rasterize(dilate_ball_union(a, eps), g);
    const auto rhs = dilate(rasterize(a, g), ball_stencil(g, eps, Metric::l2()));
    std::size_t differ = 0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        if (lhs[c] == rhs[c]) continue;
        ++differ;
        const auto x = g.center(c);
        double signed_gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double dist = std::hypot(x[0] - a.center(j)[0], x[1] - a.center(j)[1]);
            signed_gap = std::min(signed_gap, dist - (a.radii[j] + eps));
        }
        CHECK(std::fabs(signed_gap) <= 2.0 * h);
    }
    CHECK(differ < g.cell_count() / 20);
}
