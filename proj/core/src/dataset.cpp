#include "robustcut/dataset.hpp"

#include <cmath>
#include <string>

#include "robustcut/errors.hpp"
#include "robustcut/scaling.hpp"

namespace robustcut {

namespace {

void check_shape(std::size_t dim, const std::vector<double>& coords,
                 const std::vector<std::uint8_t>& labels) {
    if (dim == 0) throw InputError("dataset dimension must be positive");
    if (labels.empty()) throw InputError("dataset is empty");
    if (coords.size() != dim * labels.size())
        throw InputError("dataset: coordinate count does not match dim * N");
    for (double c : coords)
        if (!std::isfinite(c)) throw InputError("dataset: non-finite coordinate");
    for (std::uint8_t y : labels)
        if (y > 1) throw InputError("dataset: label must be 0 or 1");
}

}  // namespace

EmpiricalDataset::EmpiricalDataset(std::size_t dim, std::vector<double> coords,
                                   std::vector<std::uint8_t> labels, std::vector<double> masses)
    : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)), masses_(std::move(masses)) {
    check_shape(dim_, coords_, labels_);
    const std::size_t n = labels_.size();
    if (masses_.empty()) masses_.assign(n, 1.0 / static_cast<double>(n));
    if (masses_.size() != n) throw InputError("dataset: mass count does not match N");
    for (double m : masses_)
        if (!(m > 0.0) || !std::isfinite(m)) throw InputError("dataset: masses must be positive");
    const double total = accurate_sum(masses_);
    if (std::abs(total - 1.0) > 1e-12)
        throw InputError("dataset: masses sum to " + std::to_string(total) + ", expected 1");
    std::vector<double> class0;
    for (std::size_t i = 0; i < n; ++i)
        if (labels_[i] == 0) class0.push_back(masses_[i]);
    w0_ = accurate_sum(class0);
}

EmpiricalDataset EmpiricalDataset::from_weights(std::size_t dim, std::vector<double> coords,
                                                std::vector<std::uint8_t> labels,
                                                std::vector<double> weights) {
    if (weights.size() != labels.size()) throw InputError("dataset: weight count does not match N");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw InputError("dataset: weights must be positive");
    const double total = accurate_sum(weights);
    for (double& w : weights) w /= total;
    return EmpiricalDataset(dim, std::move(coords), std::move(labels), std::move(weights));
}

}  // namespace robustcut
