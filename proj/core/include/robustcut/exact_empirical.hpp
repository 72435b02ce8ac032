#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "robustcut/dataset.hpp"
#include "robustcut/mask.hpp"
#include "robustcut/metric.hpp"

namespace robustcut {

/// Bipartite graph of label-0 / label-1 pairs whose open eps-balls meet,
/// i.e. d(x_i, x_j) < 2 eps (coincident points only when eps == 0).
struct ConflictGraph {
    double epsilon = 0.0;
    std::vector<std::size_t> left;   // label-0 point indices
    std::vector<std::size_t> right;  // label-1 point indices
    /// (label-0 point, label-1 point), sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

ConflictGraph build_conflict_graph(const EmpiricalDataset& ds, double epsilon,
                                   const Metric& metric);

/// Min-weight vertex cover of the conflict graph with its flow dual.
struct CoverCertificate {
    double epsilon = 0.0;
    std::vector<std::size_t> cover;  // sorted point indices
    double matching_value = 0.0;
    double cover_value = 0.0;
    /// True when the flow ran on exact integer units (rational masses).
    bool exact = false;
};

struct EmpiricalOptimum {
    double risk = 0.0;
    CoverCertificate certificate;
};

/// Optimal adversarial risk for the empirical measure. The certificate is
/// checked (cover feasibility and flow/cover equality) before returning;
/// a failure throws InternalError.
EmpiricalOptimum optimal_risk(const EmpiricalDataset& ds, double epsilon, const Metric& metric);
EmpiricalOptimum optimal_risk(const EmpiricalDataset& ds, const ConflictGraph& graph);

/// Throws InternalError unless every edge is covered and
/// |cover_value - matching_value| <= 1e-9.
void verify_certificate(const EmpiricalDataset& ds, const ConflictGraph& graph,
                        const CoverCertificate& cert);

/// A = union of B_eps(x_j) over label-1 points j not in the cover.
BallUnionClassifier build_classifier(const EmpiricalDataset& ds, const CoverCertificate& cert,
                                     double epsilon, const Metric& metric);

/// 1/2 - 1/2 inf_{pi in Gamma(mu, mu^S)} int c_eps d pi, where mu^S swaps
/// labels and c_eps is 0 exactly on same-label pairs closer than 2 eps.
/// Solved as a transportation max-flow over all 2N x 2N atom pairs.
double ot_dual_value(const EmpiricalDataset& ds, double epsilon, const Metric& metric);

struct PathEntry {
    double epsilon = 0.0;
    double optimal_risk = 0.0;
    CoverCertificate certificate;
    BallUnionClassifier classifier;
};

struct PathReport {
    std::vector<PathEntry> entries;
};

/// Solves every eps in a nondecreasing list (InputError otherwise) and
/// checks that the risk is nondecreasing and <= min(w0, w1).
PathReport sweep_epsilon(const EmpiricalDataset& ds, std::span<const double> epsilons,
                         const Metric& metric);

/// "epsilon=...", "matching_value=...", "cover_value=...", "cover=i j k".
void write_certificate(std::ostream& out, const CoverCertificate& cert);
/// One ball per row: "c1;...;cd;radius".
void write_classifier(std::ostream& out, const BallUnionClassifier& a);
BallUnionClassifier read_classifier(std::istream& in, const Metric& metric);
/// CSV "epsilon,risk,cover_size,cover" with space-separated cover indices.
void write_path_report(std::ostream& out, const PathReport& report);

}  // namespace robustcut
