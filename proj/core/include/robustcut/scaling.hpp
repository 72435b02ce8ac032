#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace robustcut {

/// Masses written exactly as units / denominator.
struct RationalMasses {
    std::int64_t denominator = 1;
    std::vector<std::int64_t> units;
};

/// Recovers a common denominator <= max_denominator for masses that are
/// rationals (each within 8 ulp of p/q, q found by continued fractions).
/// Returns nullopt when none exists. Keep max_denominator well below 1e8:
/// beyond that every double has a convergent within a few ulp.
std::optional<RationalMasses> rational_masses(std::span<const double> masses,
                                              std::int64_t max_denominator = 1'000'000);

/// llround(w * 10^exponent) per entry.
std::vector<std::int64_t> scale_to_integers(std::span<const double> weights, int exponent);
std::int64_t scale_to_integer(double w, int exponent);
double pow10(int exponent);

/// Neumaier-compensated sum; error stays O(ulp) regardless of length.
double accurate_sum(std::span<const double> values);

}  // namespace robustcut
