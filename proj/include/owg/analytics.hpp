#pragma once

#include "owg/model.hpp"

namespace owg {

// Population-level impact analytics of the block-cost equilibrium. Ratios are
// stored as dimensionless fractions; the percent factor in the definitions is
// display-only. n is real-valued (> 1) so the large-population limits can be
// plotted smoothly; integer populations are the ordinary case.

// Population impact cost of liquidating net inventory x_net: n = 1 gives the
// single-trader (central planner) cost lambda x^2/(beta T + 2).
double pic(double lambda, double beta, double horizon, double n, double x_net);

// Cost of anarchy PIC_N / PIC_1 - 1; independent of x and lambda.
double coa(double beta, double horizon, double n);

// Large-population limit beta T / (2 (beta T + 1)^2).
double coa_limit_n(double beta, double horizon);

// Liquidator's impact cost when one trader unwinds x against n - 1 predators.
double lic(double lambda, double beta, double horizon, double n, double x);

struct PredationReport {
    double lic_n = 0.0;
    double cop = 0.0;            // LIC_N / LIC_1 - 1
    double friction_term = 0.0;  // (N-1)/(N (beta T + 1))
    double coa_share = 0.0;      // CoA_N / N
};

PredationReport cop(double lambda, double beta, double horizon, double n, double x = 1.0);

struct AnarchyReport {
    double pic_n = 0.0;
    double pic_1 = 0.0;
    double coa = 0.0;
};

AnarchyReport anarchy_report(const ModelParams& params, double x_net);

} // namespace owg
