#include "robustcut/neighbors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "robustcut/errors.hpp"

namespace robustcut {

namespace {

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

bool within(double d, double radius) { return radius == 0.0 ? d == 0.0 : d < radius; }

void check_radius(double radius) {
    if (!(radius >= 0.0) || std::isnan(radius)) throw InputError("neighbour radius must be >= 0");
}

// Coincident points: sort indices by coordinates and pair up equal runs.
PairList coincident_pairs(const EmpiricalDataset& ds) {
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        const auto pa = ds.point(a), pb = ds.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::stable_sort(order.begin(), order.end(), less);
    PairList out;
    for (std::size_t s = 0; s < order.size();) {
        std::size_t e = s + 1;
        while (e < order.size() && !less(order[s], order[e])) ++e;
        for (std::size_t a = s; a < e; ++a)
            for (std::size_t b = a + 1; b < e; ++b)
                out.emplace_back(std::min(order[a], order[b]), std::max(order[a], order[b]));
        s = e;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

PairList pairs_within_all_pairs(const EmpiricalDataset& ds, double radius, const Metric& metric) {
    check_radius(radius);
    PairList out;
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j)
            if (within(distance(metric, ds.point(i), ds.point(j)), radius)) out.emplace_back(i, j);
    return out;
}

namespace {

// Uniform hash of the first (up to) three coordinates into cubes of side
// `radius`. Any l^p-close pair is l^inf-close, so a query only needs the 3^k
// adjacent cubes.
class SpatialHash {
public:
    SpatialHash(const EmpiricalDataset& ds, double radius)
        : ds_(ds), radius_(radius), k_(std::min<std::size_t>(ds.dim(), 3)) {
        for (std::size_t a = 0; a < k_; ++a) combos_ *= 3;
    }

    void insert(std::size_t i) { buckets_[key(i)].push_back(i); }

    template <class Visit>
    void query(std::size_t i, Visit visit) const {
        const Key base = key(i);
        for (std::size_t c = 0; c < combos_; ++c) {
            Key nb = base;
            std::size_t code = c;
            for (std::size_t a = 0; a < k_; ++a) {
                nb[a] += static_cast<std::int64_t>(code % 3) - 1;
                code /= 3;
            }
            const auto it = buckets_.find(nb);
            if (it == buckets_.end()) continue;
            for (std::size_t j : it->second) visit(j);
        }
    }

private:
    using Key = std::array<std::int64_t, 3>;
    struct KeyHash {
        std::size_t operator()(const Key& key) const noexcept {
            std::size_t h = 1469598103934665603ull;
            for (auto v : key) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
            return h;
        }
    };

    Key key(std::size_t i) const {
        Key key{};
        for (std::size_t a = 0; a < k_; ++a)
            key[a] = static_cast<std::int64_t>(std::floor(ds_.point(i)[a] / radius_));
        return key;
    }

    const EmpiricalDataset& ds_;
    double radius_;
    std::size_t k_;
    std::size_t combos_ = 1;
    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
};

}  // namespace

PairList pairs_within_hashed(const EmpiricalDataset& ds, double radius, const Metric& metric) {
    check_radius(radius);
    if (radius == 0.0) return coincident_pairs(ds);
    SpatialHash hash(ds, radius);
    for (std::size_t i = 0; i < ds.size(); ++i) hash.insert(i);
    PairList out;
    for (std::size_t i = 0; i < ds.size(); ++i)
        hash.query(i, [&](std::size_t j) {
            if (j > i && within(distance(metric, ds.point(i), ds.point(j)), radius)) out.emplace_back(i, j);
        });
    std::sort(out.begin(), out.end());
    return out;
}

PairList opposite_label_pairs(const EmpiricalDataset& ds, double radius, const Metric& metric) {
    check_radius(radius);
    PairList out;
    auto keep = [&](std::size_t i, std::size_t j) {
        if (ds.label(i) != ds.label(j) && within(distance(metric, ds.point(i), ds.point(j)), radius))
            out.emplace_back(std::min(i, j), std::max(i, j));
    };
    if (radius == 0.0) {
        for (const auto& [i, j] : coincident_pairs(ds))
            if (ds.label(i) != ds.label(j)) out.emplace_back(i, j);
        return out;
    }
    if (ds.size() <= kAllPairsThreshold) {
        for (std::size_t i = 0; i < ds.size(); ++i)
            for (std::size_t j = i + 1; j < ds.size(); ++j) keep(i, j);
        return out;
    }
    SpatialHash hash(ds, radius);
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (ds.label(i) == 1) hash.insert(i);
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (ds.label(i) == 0) hash.query(i, [&](std::size_t j) { keep(i, j); });
    std::sort(out.begin(), out.end());
    return out;
}

PairList pairs_within(const EmpiricalDataset& ds, double radius, const Metric& metric) {
    if (ds.size() <= kAllPairsThreshold) return pairs_within_all_pairs(ds, radius, metric);
    return pairs_within_hashed(ds, radius, metric);
}

}  // namespace robustcut
