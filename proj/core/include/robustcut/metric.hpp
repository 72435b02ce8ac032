#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>

namespace robustcut {

/// The l^p norm on R^d, p in [1, inf]. `p == inf` is the max-norm.
struct Metric {
    double p = 2.0;

    Metric() = default;
    explicit Metric(double p_value);

    static Metric l1() { return Metric(1.0); }
    static Metric l2() { return Metric(2.0); }
    static Metric linf() { return Metric(std::numeric_limits<double>::infinity()); }

    /// Accepts "1", "2", "inf" / "infinity", or any real >= 1.
    static Metric parse(std::string_view text);

    bool is_max() const noexcept { return p == std::numeric_limits<double>::infinity(); }
    std::string name() const;

    double norm(std::span<const double> v) const;

    friend bool operator==(const Metric&, const Metric&) = default;
};

/// l^p distance. Throws InputError on dimension mismatch.
double distance(const Metric& metric, std::span<const double> x, std::span<const double> y);

}  // namespace robustcut
