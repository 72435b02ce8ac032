#pragma once

#include <iosfwd>
#include <string>

#include "robustcut/dataset.hpp"
#include "robustcut/grid.hpp"
#include "robustcut/mask.hpp"

namespace robustcut {

/// Adversarial risk split into its unperturbed part and the perimeter
/// penalty: adversarial_risk == empirical_risk + epsilon * pre_perimeter.
struct RiskBreakdown {
    double epsilon = 0.0;
    double empirical_risk = 0.0;
    double pre_perimeter = 0.0;
    double adversarial_risk = 0.0;
};

/// Flat "key=value" lines in the order epsilon, empirical_risk,
/// pre_perimeter, adversarial_risk.
void write_record(std::ostream& out, const RiskBreakdown& r);
RiskBreakdown parse_risk_record(std::istream& in);

// Grid functionals. Sums run in row-major cell order. Balls are clipped to
// the grid. Shape mismatches throw InputError.

/// sum_x dens0(x) max_{B(x)} 1_A + dens1(x) max_{B(x)} 1_{A^c}
double adversarial_risk_grid(const CellMask& mask, const GridMeasure& gm,
                             const BallStencil& stencil);
/// sum_x dens0(x) 1_A(x) + dens1(x) 1_{A^c}(x)
double empirical_risk_grid(const CellMask& mask, const GridMeasure& gm);
/// (1/eps) [sum dens0 (max_B 1_A - 1_A) + sum dens1 (1_A - min_B 1_A)]; 0 at eps = 0.
double pre_perimeter_grid(const CellMask& mask, const GridMeasure& gm, const BallStencil& stencil);
RiskBreakdown risk_breakdown_grid(const CellMask& mask, const GridMeasure& gm,
                                  const BallStencil& stencil);

/// (1/eps) [sum dens0 (max_B u - u) + sum dens1 (u - min_B u)]; 0 at eps = 0.
double pre_tv_grid(const ScalarField& u, const GridMeasure& gm, const BallStencil& stencil);
/// sum_k Per({u >= t_k}) (t_k - t_{k-1}) over the sorted distinct values of u.
double coarea_tv(const ScalarField& u, const GridMeasure& gm, const BallStencil& stencil);
/// E|u(x) - y| = sum dens0 u + dens1 (1 - u)
double data_term_grid(const ScalarField& u, const GridMeasure& gm);

/// w0 rho0(A^eps) + w1 - w1 rho1(A^{-eps}), evaluated through dilation and
/// erosion. Agrees bit-for-bit with adversarial_risk_grid.
double morphological_risk(const CellMask& mask, const GridMeasure& gm, const BallStencil& stencil);

// Empirical functionals for ball-union classifiers. The classifier's metric
// is used for every distance.

/// Label-0 point loses its mass iff B_eps(x) meets some ball of A; label-1
/// point loses iff B_eps(x) is contained in no single ball of A.
double adversarial_risk_empirical(const BallUnionClassifier& a, const EmpiricalDataset& ds,
                                  double epsilon);
double empirical_risk_empirical(const BallUnionClassifier& a, const EmpiricalDataset& ds);
RiskBreakdown risk_breakdown_empirical(const BallUnionClassifier& a, const EmpiricalDataset& ds,
                                       double epsilon);

}  // namespace robustcut
