#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace robustcut {

/// Labelled weighted point cloud: the empirical measure
/// mu = sum_i m_i delta_{(x_i, y_i)} with y_i in {0,1}.
class EmpiricalDataset {
public:
    EmpiricalDataset() = default;

    /// `masses` must be positive and sum to 1 within 1e-12. Empty `masses`
    /// means uniform 1/N.
    EmpiricalDataset(std::size_t dim, std::vector<double> coords, std::vector<std::uint8_t> labels,
                     std::vector<double> masses = {});

    /// Same as the constructor but rescales arbitrary positive weights to sum 1.
    static EmpiricalDataset from_weights(std::size_t dim, std::vector<double> coords,
                                         std::vector<std::uint8_t> labels,
                                         std::vector<double> weights);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return labels_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::uint8_t label(std::size_t i) const { return labels_[i]; }
    double mass(std::size_t i) const { return masses_[i]; }

    std::span<const double> coords() const noexcept { return coords_; }
    std::span<const std::uint8_t> labels() const noexcept { return labels_; }
    std::span<const double> masses() const noexcept { return masses_; }

    /// Class probabilities w0 = mu(X x {0}), w1 = 1 - w0.
    double w0() const noexcept { return w0_; }
    double w1() const noexcept { return 1.0 - w0_; }

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    std::vector<std::uint8_t> labels_;
    std::vector<double> masses_;
    double w0_ = 0.0;
};

}  // namespace robustcut
