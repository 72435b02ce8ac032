#include "robustcut/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "robustcut/errors.hpp"
#include "robustcut/records.hpp"

namespace robustcut {

Metric::Metric(double p_value) : p(p_value) {
    if (!(p >= 1.0)) throw InputError("metric exponent p must be >= 1");
}

Metric Metric::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf" || text == "max") return linf();
    double p = 0.0;
    try {
        p = parse_real(text);
    } catch (const ParseError&) {
        throw InputError("bad metric '" + std::string(text) + "': expected 1, 2, inf or a real >= 1");
    }
    return Metric(p);
}

std::string Metric::name() const { return is_max() ? "inf" : format_real(p); }

double Metric::norm(std::span<const double> v) const {
    if (is_max()) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

double distance(const Metric& metric, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("distance: dimension mismatch");
    // Small fixed buffer covers the common case without allocating.
    constexpr std::size_t kInline = 8;
    double buf[kInline];
    std::vector<double> heap;
    double* diff = buf;
    if (x.size() > kInline) {
        heap.resize(x.size());
        diff = heap.data();
    }
    for (std::size_t k = 0; k < x.size(); ++k) diff[k] = x[k] - y[k];
    return metric.norm({diff, x.size()});
}

}  // namespace robustcut
