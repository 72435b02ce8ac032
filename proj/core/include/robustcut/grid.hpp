#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "robustcut/metric.hpp"

namespace robustcut {

inline constexpr std::size_t kMaxGridDim = 3;

/// Rectangular cell grid, d <= 3. Cells are stored row-major: axis 0 is the
/// slowest-varying index. Cell centres sit at origin + (i + 1/2) * spacing.
class GridGeometry {
public:
    using Index = std::array<std::ptrdiff_t, kMaxGridDim>;

    GridGeometry() = default;
    GridGeometry(std::vector<std::size_t> dims, std::vector<double> spacing,
                 std::vector<double> origin);

    /// Unit spacing, zero origin.
    static GridGeometry unit(std::vector<std::size_t> dims);

    std::size_t dim() const noexcept { return dims_.size(); }
    std::size_t cell_count() const noexcept { return cells_; }
    std::span<const std::size_t> dims() const noexcept { return dims_; }
    std::span<const double> spacing() const noexcept { return spacing_; }
    std::span<const double> origin() const noexcept { return origin_; }

    std::size_t flat(const Index& idx) const noexcept;
    Index unflat(std::size_t cell) const noexcept;
    bool contains(const Index& idx) const noexcept;
    std::array<double, kMaxGridDim> center(std::size_t cell) const noexcept;

    bool same_shape(const GridGeometry& other) const noexcept;

    friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

private:
    std::vector<std::size_t> dims_;
    std::vector<double> spacing_;
    std::vector<double> origin_;
    std::size_t cells_ = 0;
};

/// Discretised data measure: per-cell masses of w0*rho0 and w1*rho1.
class GridMeasure {
public:
    GridMeasure() = default;
    /// Entries must be finite and >= 0 and sum to 1 within 1e-9.
    GridMeasure(GridGeometry geometry, std::vector<double> dens0, std::vector<double> dens1);

    /// Rescales arbitrary nonnegative cell weights (not all zero) to total 1.
    static GridMeasure normalized(GridGeometry geometry, std::vector<double> dens0,
                                  std::vector<double> dens1);

    const GridGeometry& geometry() const noexcept { return geometry_; }
    std::size_t cell_count() const noexcept { return geometry_.cell_count(); }
    std::span<const double> dens0() const noexcept { return dens0_; }
    std::span<const double> dens1() const noexcept { return dens1_; }
    double w0() const noexcept { return w0_; }
    double w1() const noexcept { return w1_; }

private:
    GridGeometry geometry_;
    std::vector<double> dens0_;
    std::vector<double> dens1_;
    double w0_ = 0.0;
    double w1_ = 0.0;
};

/// Integer cell offsets whose centre displacement lies strictly inside the
/// open eps-ball. Invariants: contains 0, symmetric, lexicographic order.
/// eps == 0 gives exactly {0} (the B_0(x) = {x} convention).
struct BallStencil {
    std::size_t dim = 0;
    std::vector<GridGeometry::Index> offsets;
    double epsilon = 0.0;
    Metric metric;

    std::size_t size() const noexcept { return offsets.size(); }
};

/// Throws InputError for eps < 0 or non-finite eps.
BallStencil ball_stencil(const GridGeometry& geometry, double epsilon, const Metric& metric);

/// In-domain eps-ball of every cell as CSR (balls clipped at the boundary).
/// Each row lists the neighbour cells in stencil order and always includes
/// the cell itself.
class BallNeighborhoods {
public:
    BallNeighborhoods(const GridGeometry& geometry, const BallStencil& stencil);

    std::size_t cell_count() const noexcept { return row_start_.size() - 1; }
    std::span<const std::uint32_t> ball(std::size_t cell) const noexcept {
        return {cells_.data() + row_start_[cell], row_start_[cell + 1] - row_start_[cell]};
    }
    std::size_t total_entries() const noexcept { return cells_.size(); }

private:
    std::vector<std::size_t> row_start_;
    std::vector<std::uint32_t> cells_;
};

}  // namespace robustcut
