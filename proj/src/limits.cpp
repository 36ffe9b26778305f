#include "owg/limits.hpp"

#include <cmath>

#include "owg/parallel.hpp"

namespace owg {

namespace {

std::array<double, 4> component_gaps(const CostBreakdown& a, const CostBreakdown& b) {
    std::array<double, 4> g{0, 0, 0, 0};
    for (std::size_t i = 0; i < a.total.size(); ++i) {
        g[0] = std::max(g[0], std::abs(a.impact[i] - b.impact[i]));
        g[1] = std::max(g[1], std::abs(a.smoothing[i] - b.smoothing[i]));
        g[2] = std::max(g[2], std::abs(a.terminal[i] - b.terminal[i]));
        g[3] = std::max(g[3], std::abs(a.total[i] - b.total[i]));
    }
    return g;
}

void flag_monotone(ConvergenceReport& report) {
    for (std::size_t k = 1; k < report.sup_distances.size(); ++k)
        if (report.sup_distances[k] > report.sup_distances[k - 1]) report.monotone = false;
}

} // namespace

ConvergenceReport phi_sweep(const ModelParams& params, double eps,
                            const std::vector<double>& phis, int grid_m) {
    const TimeGrid grid = make_grid(params.horizon, grid_m);
    const EquilibriumSolution limit = solve_Aprime(params, eps);
    const CostBreakdown limit_cost = cost_closed_form(params, CostSpec::make_APrime(eps));
    const int n = params.n_traders;

    ConvergenceReport report;
    report.window_lo = 0.0;
    report.window_hi = params.horizon;
    report.parameter_values = phis;
    report.sup_distances.resize(phis.size());
    report.h1_distances.resize(phis.size());
    report.cost_gaps.resize(phis.size());

    parallel_for(static_cast<long long>(phis.size()), [&](long long idx) {
        const double phi = phis[idx];
        const EquilibriumSolution sol = solve_A(params, eps, phi);
        double sup = 0.0, h1 = 0.0;
        const double dt = grid.dt();
        for (int i = 0; i < n; ++i) {
            double sup_i = 0.0, dv2_i = 0.0;
            for (int k = 0; k <= grid.n_steps; ++k) {
                const double t = grid.node(k);
                const double wq = (k == 0 || k == grid.n_steps) ? 0.5 : 1.0;  // trapezoid
                sup_i = std::max(sup_i, std::abs(sol.inventory(i, t) - limit.inventory(i, t)));
                const double dr = sol.rate(i, t) - limit.rate(i, t);
                dv2_i += wq * dr * dr * dt;
            }
            sup = std::max(sup, sup_i);
            h1 = std::max(h1, sup_i + std::sqrt(dv2_i));
        }
        report.sup_distances[idx] = sup;
        report.h1_distances[idx] = h1;
        report.cost_gaps[idx] =
            component_gaps(cost_closed_form(params, CostSpec::make_A(eps, phi)), limit_cost);
    });
    flag_monotone(report);
    return report;
}

ConvergenceReport eps_sweep(const ModelParams& params, const std::vector<double>& eps_list,
                            double delta, int grid_m) {
    if (!(delta > 0.0) || !(delta < 0.5 * params.horizon))
        throw invalid_parameter("delta", "window margin must lie in (0, T/2)");
    const double theta0 = params.lambda * (params.n_traders - 1) / 2.0;
    const double thetaT = params.lambda / 2.0;
    const auto block = solve_B(params, theta0, thetaT);
    const EquilibriumSolution& limit = std::get<EquilibriumSolution>(block);
    const CostBreakdown limit_cost = cost_closed_form(params, CostSpec::make_B(theta0, thetaT));
    const int n = params.n_traders;

    ConvergenceReport report;
    report.window_lo = delta;
    report.window_hi = params.horizon - delta;
    report.parameter_values = eps_list;
    report.sup_distances.resize(eps_list.size());
    report.h1_distances.assign(eps_list.size(), 0.0);
    report.cost_gaps.resize(eps_list.size());
    report.splits.resize(eps_list.size());

    parallel_for(static_cast<long long>(eps_list.size()), [&](long long idx) {
        const double eps = eps_list[idx];
        const EquilibriumSolution sol = solve_Aprime(params, eps);
        double sup = 0.0;
        for (int k = 0; k <= grid_m; ++k) {
            const double t = report.window_lo
                           + (report.window_hi - report.window_lo) * k / grid_m;
            for (int i = 0; i < n; ++i)
                sup = std::max(sup, std::abs(sol.inventory(i, t) - limit.inventory(i, t)));
        }
        report.sup_distances[idx] = sup;
        report.cost_gaps[idx] =
            component_gaps(cost_closed_form(params, CostSpec::make_APrime(eps)), limit_cost);
        report.splits[idx] = instantaneous_cost_split(params, eps, delta);
    });
    flag_monotone(report);
    return report;
}

SplitReport instantaneous_cost_split(const ModelParams& params, double eps, double delta) {
    if (!(delta > 0.0) || !(delta < params.horizon))
        throw invalid_parameter("delta", "split point must lie in (0, T)");
    const ConstantsTable c = eval_constants(params, eps, std::nullopt);
    const double xbar = mean_inventory(params);
    const std::vector<double> dev = deviations(params);
    const int n = params.n_traders;
    const double T = params.horizon;

    SplitReport out;
    out.head.resize(n);
    out.tail.resize(n);
    out.target_head.resize(n);
    out.target_tail.resize(n);

    const auto block = solve_B(params, params.lambda * (n - 1) / 2.0, params.lambda / 2.0);
    const EquilibriumSolution& limit = std::get<EquilibriumSolution>(block);

    const double h3h = split_h3(c, 0.0, delta), h3t = split_h3(c, delta, T);
    const double h4h = split_h4(c, 0.0, delta), h4t = split_h4(c, delta, T);
    const double h5h = split_h5(c, 0.0, delta), h5t = split_h5(c, delta, T);
    for (int i = 0; i < n; ++i) {
        const double m2 = xbar * xbar, d2 = dev[i] * dev[i], md = xbar * dev[i];
        out.head[i] = eps * (h3h / (c.Psi * c.Psi) * m2 + h4h / (c.Xi * c.Xi) * d2
                             + 2.0 * h5h / (c.Xi * c.Psi) * md);
        out.tail[i] = eps * (h3t / (c.Psi * c.Psi) * m2 + h4t / (c.Xi * c.Xi) * d2
                             + 2.0 * h5t / (c.Xi * c.Psi) * md);
        out.target_head[i] = limit.spec.theta0 * limit.jump0[i] * limit.jump0[i];
        out.target_tail[i] = limit.spec.thetaT * limit.jumpT[i] * limit.jumpT[i];
    }
    return out;
}

} // namespace owg
