#include "robustcut/exact_empirical.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "robustcut/errors.hpp"
#include "robustcut/maxflow.hpp"
#include "robustcut/neighbors.hpp"
#include "robustcut/records.hpp"
#include "robustcut/scaling.hpp"

namespace robustcut {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InputError("epsilon must be finite and >= 0");
}

// Capacities for the flow: exact integer units when the masses are
// rationals with a small common denominator, raw doubles otherwise.
struct Capacities {
    bool exact = false;
    std::int64_t denominator = 1;
    std::vector<std::int64_t> units;
};

Capacities capacities_for(const EmpiricalDataset& ds) {
    Capacities c;
    if (auto r = rational_masses(ds.masses())) {
        c.exact = true;
        c.denominator = r->denominator;
        c.units = std::move(r->units);
    }
    return c;
}

struct BipartiteFlow {
    double value = 0.0;
    std::vector<std::uint8_t> reachable;  // per node
};

// source -> left (mass), left -> right (inf), right -> sink (mass).
template <class Cap>
BipartiteFlow bipartite_flow(std::size_t n_left, std::size_t n_right,
                             const std::vector<std::pair<std::size_t, std::size_t>>& arcs,
                             const std::vector<Cap>& left_cap, const std::vector<Cap>& right_cap,
                             Cap infinite, Cap tolerance, double unit) {
    MaxFlow<Cap> flow(2 + n_left + n_right, tolerance);
    flow.reserve_arcs(n_left + n_right + arcs.size());
    for (std::size_t k = 0; k < n_left; ++k) flow.add_arc(0, 2 + k, left_cap[k]);
    for (const auto& [a, b] : arcs) flow.add_arc(2 + a, 2 + n_left + b, infinite);
    for (std::size_t k = 0; k < n_right; ++k) flow.add_arc(2 + n_left + k, 1, right_cap[k]);
    const Cap total = flow.solve(0, 1);
    return {static_cast<double>(total) / unit, flow.source_reachable()};
}

}  // namespace

ConflictGraph build_conflict_graph(const EmpiricalDataset& ds, double epsilon, const Metric& metric) {
    check_epsilon(epsilon);
    ConflictGraph g;
    g.epsilon = epsilon;
    for (std::size_t i = 0; i < ds.size(); ++i) (ds.label(i) == 0 ? g.left : g.right).push_back(i);
    for (const auto& [i, j] : opposite_label_pairs(ds, 2.0 * epsilon, metric))
        g.edges.emplace_back(ds.label(i) == 0 ? i : j, ds.label(i) == 0 ? j : i);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

void verify_certificate(const EmpiricalDataset& ds, const ConflictGraph& graph,
                        const CoverCertificate& cert) {
    std::vector<std::uint8_t> in_cover(ds.size(), 0);
    for (std::size_t i : cert.cover) {
        if (i >= ds.size()) throw InternalError("cover index out of range");
        in_cover[i] = 1;
    }
    for (const auto& [i, j] : graph.edges)
        if (!in_cover[i] && !in_cover[j])
            throw InternalError("cover misses conflict edge (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
    double total = 0.0;
    for (std::size_t i : cert.cover) total += ds.mass(i);
    if (std::abs(total - cert.cover_value) > 1e-12) throw InternalError("cover value does not match masses");
    if (std::abs(cert.cover_value - cert.matching_value) > 1e-9)
        throw InternalError("duality gap: cover " + format_real(cert.cover_value) + " vs flow " +
                            format_real(cert.matching_value));
}

EmpiricalOptimum optimal_risk(const EmpiricalDataset& ds, const ConflictGraph& graph) {
    std::vector<std::size_t> slot(ds.size(), 0);
    for (std::size_t k = 0; k < graph.left.size(); ++k) slot[graph.left[k]] = k;
    for (std::size_t k = 0; k < graph.right.size(); ++k) slot[graph.right[k]] = k;
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    arcs.reserve(graph.edges.size());
    for (const auto& [i, j] : graph.edges) arcs.emplace_back(slot[i], slot[j]);

    const Capacities caps = capacities_for(ds);
    BipartiteFlow result;
    if (caps.exact) {
        std::vector<std::int64_t> lc, rc;
        for (auto i : graph.left) lc.push_back(caps.units[i]);
        for (auto j : graph.right) rc.push_back(caps.units[j]);
        result = bipartite_flow<std::int64_t>(graph.left.size(), graph.right.size(), arcs, lc, rc,
                                              caps.denominator + 1, 0,
                                              static_cast<double>(caps.denominator));
    } else {
        std::vector<double> lc, rc;
        for (auto i : graph.left) lc.push_back(ds.mass(i));
        for (auto j : graph.right) rc.push_back(ds.mass(j));
        result = bipartite_flow<double>(graph.left.size(), graph.right.size(), arcs, lc, rc, 2.0,
                                        1e-15, 1.0);
    }

    // Koenig: left nodes cut off from the source plus right nodes still
    // reachable form a minimum cover.
    CoverCertificate cert;
    cert.epsilon = graph.epsilon;
    cert.exact = caps.exact;
    cert.matching_value = result.value;
    for (std::size_t k = 0; k < graph.left.size(); ++k)
        if (!result.reachable[2 + k]) cert.cover.push_back(graph.left[k]);
    for (std::size_t k = 0; k < graph.right.size(); ++k)
        if (result.reachable[2 + graph.left.size() + k]) cert.cover.push_back(graph.right[k]);
    std::sort(cert.cover.begin(), cert.cover.end());
    for (std::size_t i : cert.cover) cert.cover_value += ds.mass(i);
    verify_certificate(ds, graph, cert);
    // In exact mode the flow value is units / denominator rounded once, so
    // equal optima compare equal across instances.
    const double risk = cert.exact ? cert.matching_value : cert.cover_value;
    return {risk, std::move(cert)};
}

EmpiricalOptimum optimal_risk(const EmpiricalDataset& ds, double epsilon, const Metric& metric) {
    return optimal_risk(ds, build_conflict_graph(ds, epsilon, metric));
}

BallUnionClassifier build_classifier(const EmpiricalDataset& ds, const CoverCertificate& cert,
                                     double epsilon, const Metric& metric) {
    check_epsilon(epsilon);
    std::vector<std::uint8_t> in_cover(ds.size(), 0);
    for (std::size_t i : cert.cover) in_cover.at(i) = 1;
    BallUnionClassifier a;
    a.dim = ds.dim();
    a.metric = metric;
    for (std::size_t j = 0; j < ds.size(); ++j) {
        if (ds.label(j) != 1 || in_cover[j]) continue;
        const auto x = ds.point(j);
        a.centers.insert(a.centers.end(), x.begin(), x.end());
        a.radii.push_back(epsilon);
    }
    return a;
}

double ot_dual_value(const EmpiricalDataset& ds, double epsilon, const Metric& metric) {
    check_epsilon(epsilon);
    const std::size_t n = ds.size();
    // Atom i of mu is (x_i, y_i); atom k of mu^S is (x_k, 1 - y_k). The cost
    // vanishes iff the labels agree and |x_i - x_k| < 2 eps.
    std::vector<std::pair<std::size_t, std::size_t>> zero_cost;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (ds.label(i) != 1 - ds.label(k)) continue;
            const double d = distance(metric, ds.point(i), ds.point(k));
            const bool close = epsilon == 0.0 ? d == 0.0 : d < 2.0 * epsilon;
            if (close) zero_cost.emplace_back(i, k);
        }
    }
    const Capacities caps = capacities_for(ds);
    double moved = 0.0;  // largest mass transportable at zero cost
    if (caps.exact) {
        moved = bipartite_flow<std::int64_t>(n, n, zero_cost, caps.units, caps.units,
                                             caps.denominator + 1, 0,
                                             static_cast<double>(caps.denominator))
                    .value;
    } else {
        std::vector<double> m(ds.masses().begin(), ds.masses().end());
        moved = bipartite_flow<double>(n, n, zero_cost, m, m, 2.0, 1e-15, 1.0).value;
    }
    const double transport_cost = 1.0 - moved;
    return 0.5 - 0.5 * transport_cost;
}

PathReport sweep_epsilon(const EmpiricalDataset& ds, std::span<const double> epsilons,
                         const Metric& metric) {
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        check_epsilon(epsilons[k]);
        if (k > 0 && epsilons[k] < epsilons[k - 1]) throw InputError("epsilon list must be sorted");
    }
    PathReport report;
    const double bound = std::min(ds.w0(), ds.w1());
    for (double eps : epsilons) {
        auto opt = optimal_risk(ds, eps, metric);
        if (opt.risk > bound + 1e-12)
            throw InternalError("optimal risk exceeds min(w0, w1) at eps=" + format_real(eps));
        if (!report.entries.empty() && opt.risk < report.entries.back().optimal_risk - 1e-12)
            throw InternalError("optimal risk decreased at eps=" + format_real(eps));
        PathEntry e;
        e.epsilon = eps;
        e.optimal_risk = opt.risk;
        e.classifier = build_classifier(ds, opt.certificate, eps, metric);
        e.certificate = std::move(opt.certificate);
        report.entries.push_back(std::move(e));
    }
    return report;
}

void write_certificate(std::ostream& out, const CoverCertificate& cert) {
    out << "epsilon=" << format_real(cert.epsilon) << '\n'
        << "matching_value=" << format_real(cert.matching_value) << '\n'
        << "cover_value=" << format_real(cert.cover_value) << '\n'
        << "exact=" << (cert.exact ? 1 : 0) << '\n'
        << "cover=";
    for (std::size_t k = 0; k < cert.cover.size(); ++k) out << (k ? " " : "") << cert.cover[k];
    out << '\n';
}

void write_classifier(std::ostream& out, const BallUnionClassifier& a) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (double c : a.center(j)) out << format_real(c) << ';';
        out << format_real(a.radii[j]) << '\n';
    }
}

BallUnionClassifier read_classifier(std::istream& in, const Metric& metric) {
    BallUnionClassifier a;
    a.metric = metric;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<double> vals;
        std::size_t start = 0;
        for (;;) {
            const auto pos = line.find(';', start);
            vals.push_back(parse_real(std::string_view(line).substr(start, pos - start), lineno));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (vals.size() < 2) throw ParseError("classifier row needs centre and radius", lineno);
        const std::size_t dim = vals.size() - 1;
        if (a.size() == 0) a.dim = dim;
        if (dim != a.dim) throw ParseError("inconsistent classifier dimension", lineno);
        if (!(vals.back() >= 0.0)) throw ParseError("radius must be >= 0", lineno);
        a.centers.insert(a.centers.end(), vals.begin(), vals.end() - 1);
        a.radii.push_back(vals.back());
    }
    return a;
}

void write_path_report(std::ostream& out, const PathReport& report) {
    out << "epsilon,risk,cover_size,cover\n";
    for (const auto& e : report.entries) {
        out << format_real(e.epsilon) << ',' << format_real(e.optimal_risk) << ','
            << e.certificate.cover.size() << ',';
        for (std::size_t k = 0; k < e.certificate.cover.size(); ++k)
            out << (k ? " " : "") << e.certificate.cover[k];
        out << '\n';
    }
}

}  // namespace robustcut
