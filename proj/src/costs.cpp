#include "owg/costs.hpp"

#include <cmath>

namespace owg {

namespace {

CostBreakdown alloc(int n) {
    CostBreakdown b;
    b.impact.assign(n, 0.0);
    b.smoothing.assign(n, 0.0);
    b.terminal.assign(n, 0.0);
    b.total.assign(n, 0.0);
    return b;
}

void fill_totals(CostBreakdown& b) {
    for (std::size_t i = 0; i < b.total.size(); ++i)
        b.total[i] = b.impact[i] + b.smoothing[i] + b.terminal[i];
}

// trapezoid on grid nodes of f(t_k) already tabulated
double trapz(const std::vector<double>& f, double dt) {
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < f.size(); ++k) s += f[k];
    return s * dt;
}

} // namespace

CostBreakdown cost_closed_form(const ModelParams& params, const CostSpec& spec) {
    validate(params, spec);
    const int n = params.n_traders;
    CostBreakdown b = alloc(n);

    if (spec.variant == CostSpec::Variant::B) {
        auto result = solve_B(params, spec.theta0, spec.thetaT);
        if (std::holds_alternative<NoEquilibrium>(result))
            throw no_equilibrium(std::get<NoEquilibrium>(result));
        const auto& s = std::get<EquilibriumSolution>(result);

        const double beta = params.beta, T = params.horizon, N = n, lambda = params.lambda;
        const double zz = beta * (N + 1) / (N - 1);
        const double ezm = std::exp(-zz * T);
        const double Dt = N * ((beta * T + 1) * (N + 1) + 2.0) - (N - 1) * ezm;
        // impact-cost kernel rescaled by e^{-2 zz T}
        const double E = ((beta * T + 0.5) * (N + 1) + 3.0)
                       - 2.0 * (N - 1) / (N * N) * (N * ezm + 0.25 * ezm * ezm);
        const double mean_term = lambda * N * N * N * (N + 1) * E / (Dt * Dt) * s.mean_x * s.mean_x;
        for (int i = 0; i < n; ++i) {
            b.impact[i] = lambda * N / (beta * T + 1.0) * s.mean_x * s.dev_x[i] + mean_term;
            b.smoothing[i] = 0.5 * (spec.theta0 * s.jump0[i] * s.jump0[i]
                                    + spec.thetaT * s.jumpT[i] * s.jumpT[i]);
        }
        fill_totals(b);
        return b;
    }

    const bool is_a = spec.variant == CostSpec::Variant::A;
    const ConstantsTable c = is_a ? eval_constants(params, spec.eps, spec.phi)
                                  : eval_constants(params, spec.eps, std::nullopt);
    const double xbar = mean_inventory(params);
    const std::vector<double> dev = deviations(params);
    const double lambda = params.lambda;
    const double N = n;

    // A uses (phi/eps)-scaled denominators psi, xi; A' their phi -> inf
    // limits Psi/eps, Xi/eps. Writing both through the same pair keeps one
    // code path: scale = phi for A, and formally phi -> 1 with psi -> Psi/eps.
    const double den_mean = is_a ? c.psi * c.eps / spec.phi : c.Psi;   // = eps psi / phi
    const double den_dev = is_a ? c.xi * c.eps / spec.phi : c.Xi;      // = eps xi / phi
    for (int i = 0; i < n; ++i) {
        b.impact[i] = lambda * N * (c.h1 / (den_mean * den_mean) * xbar * xbar
                                    + c.h2 / (den_dev * den_mean) * dev[i] * xbar);
        b.smoothing[i] = c.eps * (c.h3 / (2.0 * den_mean * den_mean) * xbar * xbar
                                  + c.h4 / (2.0 * den_dev * den_dev) * dev[i] * dev[i]
                                  + c.h5 / (den_dev * den_mean) * xbar * dev[i]);
        if (is_a) {
            const double xt = (c.z3 / c.xi) * dev[i] + (c.p_frak / c.psi) * xbar;
            b.terminal[i] = 0.5 * spec.phi * xt * xt;
        }
    }
    fill_totals(b);
    return b;
}

CostBreakdown cost_by_quadrature(const ModelParams& params, const CostSpec& spec,
                                 const EquilibriumSolution& solution, const TimeGrid& grid) {
    if (grid.n_steps < 8) throw grid_too_coarse(grid.n_steps);
    const int n = params.n_traders;
    const int m = grid.n_steps;
    const double dt = grid.dt();
    CostBreakdown b = alloc(n);

    const ImpactPath path = impact_path(params, spec, solution);
    std::vector<double> impact_nodes(m + 1), rate_nodes(m + 1);
    std::vector<double> f(m + 1);
    for (int k = 0; k <= m; ++k) impact_nodes[k] = path(grid.node(k));

    for (int i = 0; i < n; ++i) {
        for (int k = 0; k <= m; ++k) rate_nodes[k] = solution.rate(i, grid.node(k));

        for (int k = 0; k <= m; ++k) f[k] = impact_nodes[k] * rate_nodes[k];
        b.impact[i] = trapz(f, dt);

        if (spec.variant == CostSpec::Variant::B) {
            // atoms of int I_{t-} dX: I_{0-} a = 0 and I_{T-} b, plus the
            // mid-price jump terms (dI dX)/2 at both ends
            b.impact[i] += impact_nodes[m] * solution.jumpT[i]
                         + 0.5 * path.jump_at_0 * solution.jump0[i]
                         + 0.5 * path.jump_at_T * solution.jumpT[i];
            b.smoothing[i] = 0.5 * (spec.theta0 * solution.jump0[i] * solution.jump0[i]
                                    + spec.thetaT * solution.jumpT[i] * solution.jumpT[i]);
        } else {
            for (int k = 0; k <= m; ++k) f[k] = rate_nodes[k] * rate_nodes[k];
            b.smoothing[i] = 0.5 * spec.eps * trapz(f, dt);
            if (spec.variant == CostSpec::Variant::A) {
                const double xt = params.inventories[i] + trapz(rate_nodes, dt);
                b.terminal[i] = 0.5 * spec.phi * xt * xt;
            }
        }
    }
    fill_totals(b);
    return b;
}

} // namespace owg
