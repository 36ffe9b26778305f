#pragma once

#include <array>

#include "owg/costs.hpp"

namespace owg {

// Quantitative diagnostics for the two limit regimes: phi -> inf (terminal
// penalty approaching the liquidation constraint) and eps -> 0 (instantaneous
// cost approaching the block-cost game).
// head_i = eps int_0^delta (Xdot^i)^2 dt and tail_i = eps int_delta^T, from
// the closed-form split integrals (a boundary layer at eps -> 0 that
// quadrature would miss); targets are theta0 (dX_0)^2 and thetaT (dX_T)^2 of
// the block-cost equilibrium, stated without the 1/2 on either side.
struct SplitReport {
    std::vector<double> head, tail, target_head, target_tail;
};

struct ConvergenceReport {
    std::vector<double> parameter_values;
    std::vector<double> sup_distances;   // max over traders and window nodes of |dX|
    std::vector<double> h1_distances;    // sup|dX| + L2 norm of the rate gap (phi sweep)
    // per sweep value: max-over-traders absolute gap of impact, smoothing,
    // terminal, and total cost components
    std::vector<std::array<double, 4>> cost_gaps;
    std::vector<SplitReport> splits;     // eps sweep: head/tail split at the window margin
    double window_lo = 0.0, window_hi = 0.0;
    bool monotone = true;  // flagged, not failed, if a step breaks monotonicity
};

ConvergenceReport phi_sweep(const ModelParams& params, double eps,
                            const std::vector<double>& phis, int grid_m = 1001);

// Distances on [delta, T - delta] between the liquidation-constraint
// equilibrium at each eps and the block-cost equilibrium at the matching
// thetas; cost gaps against the block-cost totals.
ConvergenceReport eps_sweep(const ModelParams& params, const std::vector<double>& eps_list,
                            double delta, int grid_m = 1001);

SplitReport instantaneous_cost_split(const ModelParams& params, double eps, double delta);

} // namespace owg
