#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "robustcut/grid.hpp"
#include "robustcut/metric.hpp"

namespace robustcut {

/// Candidate classifier A on a grid: one bit per cell, true = cell in A.
class CellMask {
public:
    CellMask() = default;
    explicit CellMask(GridGeometry geometry, bool value = false);
    CellMask(GridGeometry geometry, std::vector<std::uint8_t> bits);

    static CellMask empty(const GridGeometry& g) { return CellMask(g, false); }
    static CellMask full(const GridGeometry& g) { return CellMask(g, true); }

    const GridGeometry& geometry() const noexcept { return geometry_; }
    std::size_t size() const noexcept { return bits_.size(); }
    bool operator[](std::size_t cell) const noexcept { return bits_[cell] != 0; }
    void set(std::size_t cell, bool value) noexcept { bits_[cell] = value ? 1 : 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::size_t count() const noexcept;

    CellMask complement() const;
    CellMask operator|(const CellMask& other) const;
    CellMask operator&(const CellMask& other) const;
    /// A subset-of B.
    bool subset_of(const CellMask& other) const;

    friend bool operator==(const CellMask& a, const CellMask& b) {
        return a.geometry_.same_shape(b.geometry_) && a.bits_ == b.bits_;
    }

private:
    GridGeometry geometry_;
    std::vector<std::uint8_t> bits_;
};

/// Real-valued function u on grid cells.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(GridGeometry geometry, std::vector<double> values);
    static ScalarField indicator(const CellMask& mask);

    const GridGeometry& geometry() const noexcept { return geometry_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t cell) const noexcept { return values_[cell]; }
    std::span<const double> values() const noexcept { return values_; }

    ScalarField scaled(double alpha) const;
    /// {u >= t}
    CellMask superlevel(double t) const;

private:
    GridGeometry geometry_;
    std::vector<double> values_;
};

/// A = union_j B_{r_j}(c_j) of open balls. r_j == 0 denotes the singleton
/// {c_j}, following the B_0(x) = {x} convention.
struct BallUnionClassifier {
    std::size_t dim = 0;
    std::vector<double> centers;  // row-major, dim entries per ball
    std::vector<double> radii;
    Metric metric;

    std::size_t size() const noexcept { return radii.size(); }
    std::span<const double> center(std::size_t j) const {
        return {centers.data() + j * dim, dim};
    }
    bool contains(std::span<const double> x) const;
};

/// Whether the open balls B_eps(x) and B_r(c) intersect given d = d(x, c).
bool open_balls_meet(double d, double eps, double r) noexcept;
/// Whether B_eps(x) is contained in B_r(c) given d = d(x, c).
bool open_ball_inside(double d, double eps, double r) noexcept;

}  // namespace robustcut
