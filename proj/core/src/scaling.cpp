#include "robustcut/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "robustcut/errors.hpp"

namespace robustcut {

namespace {

// Smallest-denominator convergent of x within tol, if one exists below max_q.
std::optional<std::int64_t> denominator_of(double x, std::int64_t max_q, double tol) {
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(r);
        if (a > 1e18) break;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t p2 = ai * p1 + p0;
        const std::int64_t q2 = ai * q1 + q0;
        if (q2 > max_q) break;
        if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) <= tol * std::max(std::abs(x), 1e-300))
            return q2;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = r - a;
        if (frac <= 0.0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace

std::optional<RationalMasses> rational_masses(std::span<const double> masses,
                                              std::int64_t max_denominator) {
    std::int64_t den = 1;
    for (double m : masses) {
        const auto q = denominator_of(m, max_denominator, 8 * std::numeric_limits<double>::epsilon());
        if (!q) return std::nullopt;
        den = std::lcm(den, *q);
        if (den > max_denominator) return std::nullopt;
    }
    RationalMasses out;
    out.denominator = den;
    out.units.reserve(masses.size());
    const auto d = static_cast<double>(den);
    for (double m : masses) {
        const std::int64_t u = std::llround(m * d);
        if (std::abs(static_cast<double>(u) / d - m) > 8 * std::numeric_limits<double>::epsilon() * m)
            return std::nullopt;
        out.units.push_back(u);
    }
    return out;
}

double pow10(int exponent) { return std::pow(10.0, exponent); }

double accurate_sum(std::span<const double> values) {
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + carry;
}

std::int64_t scale_to_integer(double w, int exponent) {
    if (exponent < 0 || exponent > 15) throw InputError("scale exponent must be in [0, 15]");
    return std::llround(w * pow10(exponent));
}

std::vector<std::int64_t> scale_to_integers(std::span<const double> weights, int exponent) {
    std::vector<std::int64_t> out;
    out.reserve(weights.size());
    for (double w : weights) out.push_back(scale_to_integer(w, exponent));
    return out;
}

}  // namespace robustcut
