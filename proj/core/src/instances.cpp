#include "robustcut/instances.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "robustcut/errors.hpp"

namespace robustcut {

EmpiricalDataset two_deltas() { return EmpiricalDataset(1, {-1.0, 1.0}, {0, 1}); }

GridMeasure four_squares(std::size_t cells) {
    if (cells == 0 || cells % 2 != 0) throw InputError("four-squares: cells must be even and positive");
    const double h = 2.0 / static_cast<double>(cells);
    GridGeometry g({cells, cells}, {h, h}, {-1.0, -1.0});
    const std::size_t n = g.cell_count();
    const double mass = 1.0 / static_cast<double>(n);
    std::vector<double> d0(n, 0.0), d1(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        const auto x = g.center(c);
        (x[0] * x[1] > 0.0 ? d1 : d0)[c] = mass;
    }
    return GridMeasure(std::move(g), std::move(d0), std::move(d1));
}

EmpiricalDataset two_clusters(std::size_t n, std::uint64_t seed, double spread) {
    if (n < 2) throw InputError("two-clusters: need at least 2 points");
    if (!(spread >= 0.0)) throw InputError("two-clusters: spread must be >= 0");
    std::mt19937_64 rng(seed);
    auto unit = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; };
    std::vector<double> coords;
    std::vector<std::uint8_t> labels;
    coords.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::sqrt(-2.0 * std::log(unit()));
        const double t = 2.0 * std::numbers::pi * unit();
        const std::uint8_t y = i % 2 == 0 ? 0 : 1;
        coords.push_back((y ? 1.0 : -1.0) + spread * r * std::cos(t));
        coords.push_back(spread * r * std::sin(t));
        labels.push_back(y);
    }
    return EmpiricalDataset(2, std::move(coords), std::move(labels));
}

}  // namespace robustcut
