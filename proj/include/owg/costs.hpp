#pragma once

#include "owg/equilibria.hpp"

namespace owg {

// Per-trader equilibrium cost split into its three sources. For A and A'
// smoothing is the instantaneous cost (eps/2) int (Xdot)^2; for B it is the
// block cost (theta0 (dX_0)^2 + thetaT (dX_T)^2)/2. The terminal penalty is
// (phi/2) (X_T)^2 and nonzero only for A: the oracle reconciliation pins the
// objective's 1/2 convention for the totals (see tests).
struct CostBreakdown {
    std::vector<double> impact;
    std::vector<double> smoothing;
    std::vector<double> terminal;
    std::vector<double> total;
};

// Closed-form costs from the constants table (A, A') or the block-cost
// expressions (B). Throws no_equilibrium when the B gate rejects the inputs.
CostBreakdown cost_closed_form(const ModelParams& params, const CostSpec& spec);

// Same breakdown computed independently: trapezoid quadrature of int I dX and
// (eps/2) int (Xdot)^2 on the grid, exact algebraic jump terms for B.
// Agreement with cost_closed_form is O(dt^2).
CostBreakdown cost_by_quadrature(const ModelParams& params, const CostSpec& spec,
                                 const EquilibriumSolution& solution, const TimeGrid& grid);

} // namespace owg
