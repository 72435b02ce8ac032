#include "robustcut/mask.hpp"

#include <cmath>

#include "robustcut/errors.hpp"

namespace robustcut {

CellMask::CellMask(GridGeometry geometry, bool value)
    : geometry_(std::move(geometry)), bits_(geometry_.cell_count(), value ? 1 : 0) {}

CellMask::CellMask(GridGeometry geometry, std::vector<std::uint8_t> bits)
    : geometry_(std::move(geometry)), bits_(std::move(bits)) {
    if (bits_.size() != geometry_.cell_count())
        throw InputError("mask: bit count does not match cell count");
    for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t CellMask::count() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
}

CellMask CellMask::complement() const {
    CellMask out = *this;
    for (auto& b : out.bits_) b ^= 1;
    return out;
}

CellMask CellMask::operator|(const CellMask& other) const {
    if (!geometry_.same_shape(other.geometry_)) throw InputError("mask union: shape mismatch");
    CellMask out = *this;
    for (std::size_t c = 0; c < bits_.size(); ++c) out.bits_[c] |= other.bits_[c];
    return out;
}

CellMask CellMask::operator&(const CellMask& other) const {
    if (!geometry_.same_shape(other.geometry_)) throw InputError("mask intersection: shape mismatch");
    CellMask out = *this;
    for (std::size_t c = 0; c < bits_.size(); ++c) out.bits_[c] &= other.bits_[c];
    return out;
}

bool CellMask::subset_of(const CellMask& other) const {
    if (!geometry_.same_shape(other.geometry_)) throw InputError("mask inclusion: shape mismatch");
    for (std::size_t c = 0; c < bits_.size(); ++c)
        if (bits_[c] && !other.bits_[c]) return false;
    return true;
}

ScalarField::ScalarField(GridGeometry geometry, std::vector<double> values)
    : geometry_(std::move(geometry)), values_(std::move(values)) {
    if (values_.size() != geometry_.cell_count())
        throw InputError("field: value count does not match cell count");
    for (double v : values_)
        if (!std::isfinite(v)) throw InputError("field: entries must be finite");
}

ScalarField ScalarField::indicator(const CellMask& mask) {
    std::vector<double> v(mask.size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = mask[c] ? 1.0 : 0.0;
    return ScalarField(mask.geometry(), std::move(v));
}

ScalarField ScalarField::scaled(double alpha) const {
    ScalarField out = *this;
    for (double& v : out.values_) v *= alpha;
    return out;
}

CellMask ScalarField::superlevel(double t) const {
    std::vector<std::uint8_t> bits(values_.size());
    for (std::size_t c = 0; c < bits.size(); ++c) bits[c] = values_[c] >= t ? 1 : 0;
    return CellMask(geometry_, std::move(bits));
}

bool open_balls_meet(double d, double eps, double r) noexcept {
    if (eps == 0.0 && r == 0.0) return d == 0.0;
    return d < eps + r;
}

bool open_ball_inside(double d, double eps, double r) noexcept {
    if (r == 0.0) return eps == 0.0 && d == 0.0;
    if (eps == 0.0) return d < r;
    return d + eps <= r;
}

bool BallUnionClassifier::contains(std::span<const double> x) const {
    for (std::size_t j = 0; j < size(); ++j)
        if (open_ball_inside(distance(metric, x, center(j)), 0.0, radii[j])) return true;
    return false;
}

}  // namespace robustcut
