#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "robustcut/dataset.hpp"
#include "robustcut/graphcut.hpp"
#include "robustcut/grid.hpp"
#include "robustcut/metric.hpp"

namespace robustcut::cli {

enum class Outcome { Pass, Fail, Skip };

struct CheckResult {
    std::string name;
    Outcome outcome = Outcome::Pass;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> results;
    bool all_passed() const;
    void print(std::ostream& out) const;
};

CheckReport check_dataset(const EmpiricalDataset& ds, double epsilon, const Metric& metric,
                          std::uint64_t seed);

CheckReport check_grid(const GridMeasure& gm, double epsilon, const Metric& metric, std::uint64_t seed,
                       const CutOptions& options);

}  // namespace robustcut::cli
