#include "robustcut/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "robustcut/errors.hpp"

namespace robustcut {

GridGeometry::GridGeometry(std::vector<std::size_t> dims, std::vector<double> spacing,
                           std::vector<double> origin)
    : dims_(std::move(dims)), spacing_(std::move(spacing)), origin_(std::move(origin)) {
    if (dims_.empty() || dims_.size() > kMaxGridDim)
        throw InputError("grid dimension must be 1, 2 or 3");
    if (spacing_.empty()) spacing_.assign(dims_.size(), 1.0);
    if (origin_.empty()) origin_.assign(dims_.size(), 0.0);
    if (spacing_.size() != dims_.size() || origin_.size() != dims_.size())
        throw InputError("grid: dims, spacing and origin must have equal length");
    cells_ = 1;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (dims_[k] == 0) throw InputError("grid: every axis needs at least one cell");
        if (!(spacing_[k] > 0.0) || !std::isfinite(spacing_[k]))
            throw InputError("grid: spacing must be positive");
        if (!std::isfinite(origin_[k])) throw InputError("grid: origin must be finite");
        if (cells_ > std::numeric_limits<std::uint32_t>::max() / dims_[k])
            throw InputError("grid: too many cells");
        cells_ *= dims_[k];
    }
}

GridGeometry GridGeometry::unit(std::vector<std::size_t> dims) {
    return GridGeometry(std::move(dims), {}, {});
}

std::size_t GridGeometry::flat(const Index& idx) const noexcept {
    std::size_t f = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) f = f * dims_[k] + static_cast<std::size_t>(idx[k]);
    return f;
}

GridGeometry::Index GridGeometry::unflat(std::size_t cell) const noexcept {
    Index idx{};
    for (std::size_t k = dims_.size(); k-- > 0;) {
        idx[k] = static_cast<std::ptrdiff_t>(cell % dims_[k]);
        cell /= dims_[k];
    }
    return idx;
}

bool GridGeometry::contains(const Index& idx) const noexcept {
    for (std::size_t k = 0; k < dims_.size(); ++k)
        if (idx[k] < 0 || idx[k] >= static_cast<std::ptrdiff_t>(dims_[k])) return false;
    return true;
}

std::array<double, kMaxGridDim> GridGeometry::center(std::size_t cell) const noexcept {
    const Index idx = unflat(cell);
    std::array<double, kMaxGridDim> c{};
    for (std::size_t k = 0; k < dims_.size(); ++k)
        c[k] = origin_[k] + (static_cast<double>(idx[k]) + 0.5) * spacing_[k];
    return c;
}

bool GridGeometry::same_shape(const GridGeometry& other) const noexcept {
    return dims_ == other.dims_;
}

GridMeasure::GridMeasure(GridGeometry geometry, std::vector<double> dens0, std::vector<double> dens1)
    : geometry_(std::move(geometry)), dens0_(std::move(dens0)), dens1_(std::move(dens1)) {
    const std::size_t n = geometry_.cell_count();
    if (n == 0) throw InputError("grid measure needs a geometry");
    if (dens0_.size() != n || dens1_.size() != n)
        throw InputError("grid measure: density length does not match cell count");
    w0_ = 0.0;
    w1_ = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        if (!(dens0_[c] >= 0.0) || !(dens1_[c] >= 0.0) || !std::isfinite(dens0_[c]) ||
            !std::isfinite(dens1_[c]))
            throw InputError("grid measure: densities must be finite and >= 0");
        w0_ += dens0_[c];
        w1_ += dens1_[c];
    }
    if (std::abs(w0_ + w1_ - 1.0) > 1e-9)
        throw InputError("grid measure: total mass " + std::to_string(w0_ + w1_) + ", expected 1");
}

GridMeasure GridMeasure::normalized(GridGeometry geometry, std::vector<double> dens0,
                                    std::vector<double> dens1) {
    double total = 0.0;
    for (double v : dens0) total += v;
    for (double v : dens1) total += v;
    if (!(total > 0.0) || !std::isfinite(total)) throw InputError("grid measure: total mass must be positive");
    for (double& v : dens0) v /= total;
    for (double& v : dens1) v /= total;
    return GridMeasure(std::move(geometry), std::move(dens0), std::move(dens1));
}

BallStencil ball_stencil(const GridGeometry& geometry, double epsilon, const Metric& metric) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw InputError("ball_stencil: epsilon must be finite and >= 0");
    BallStencil st;
    st.dim = geometry.dim();
    st.epsilon = epsilon;
    st.metric = metric;
    if (epsilon == 0.0) {
        st.offsets.push_back(GridGeometry::Index{});
        return st;
    }
    const std::size_t d = geometry.dim();
    GridGeometry::Index reach{};
    for (std::size_t k = 0; k < d; ++k)
        reach[k] = static_cast<std::ptrdiff_t>(std::floor(epsilon / geometry.spacing()[k])) + 1;

    // Odometer over the box [-reach, reach]^d in lexicographic order.
    GridGeometry::Index o{};
    for (std::size_t k = 0; k < d; ++k) o[k] = -reach[k];
    double disp[kMaxGridDim];
    for (;;) {
        for (std::size_t k = 0; k < d; ++k)
            disp[k] = static_cast<double>(o[k]) * geometry.spacing()[k];
        if (metric.norm({disp, d}) < epsilon) st.offsets.push_back(o);
        std::size_t k = d;
        while (k-- > 0) {
            if (++o[k] <= reach[k]) break;
            o[k] = -reach[k];
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return st;
}

BallNeighborhoods::BallNeighborhoods(const GridGeometry& geometry, const BallStencil& stencil) {
    if (stencil.dim != geometry.dim()) throw InputError("stencil dimension does not match grid");
    const std::size_t n = geometry.cell_count();
    row_start_.reserve(n + 1);
    row_start_.push_back(0);
    cells_.reserve(n * stencil.size());
    for (std::size_t c = 0; c < n; ++c) {
        const GridGeometry::Index base = geometry.unflat(c);
        for (const auto& off : stencil.offsets) {
            GridGeometry::Index y{};
            for (std::size_t k = 0; k < geometry.dim(); ++k) y[k] = base[k] + off[k];
            if (geometry.contains(y)) cells_.push_back(static_cast<std::uint32_t>(geometry.flat(y)));
        }
        row_start_.push_back(cells_.size());
    }
}

}  // namespace robustcut
