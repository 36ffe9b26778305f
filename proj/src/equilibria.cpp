#include "owg/equilibria.hpp"

#include <cmath>
#include <sstream>

namespace owg {

double ExpCombo::operator()(double t) const {
    double v = c0 + c1 * t;
    for (const auto& term : terms) v += term.coeff * std::exp(term.rate * (t - term.anchor));
    return v;
}

ExpCombo ExpCombo::derivative() const {
    ExpCombo d;
    d.c0 = c1;
    d.terms.reserve(terms.size());
    for (const auto& term : terms) d.terms.push_back({term.coeff * term.rate, term.rate, term.anchor});
    return d;
}

double ExpCombo::resolvent_tail(double beta, double T, double t) const {
    const double tau = T - t;
    const double ebt = std::exp(-beta * tau);
    // constant part: c0 (1 - e^{-beta tau})/beta
    double v = c0 * (-std::expm1(-beta * tau)) / beta;
    // linear part: int_t^T s e^{-beta(s-t)} ds
    if (c1 != 0.0) {
        const double x = beta * tau;
        const double core = (x < 1e-4)
            ? x * x / 2.0 - x * x * x / 3.0 + x * x * x * x / 8.0  // 1 - (1+x)e^{-x}
            : 1.0 - (1.0 + x) * ebt;
        v += c1 * (t * (-std::expm1(-x)) / beta + core / (beta * beta));
    }
    for (const auto& term : terms) {
        const double d = term.rate - beta;
        if (d * tau <= 1.0) {
            // e^{rate (t - anchor)} (e^{d tau} - 1)/d, exact at d = 0
            v += term.coeff * std::exp(term.rate * (t - term.anchor)) * stable_expm1_div(d, tau);
        } else {
            // both exponents are safe here: large positive rates are anchored at T
            v += term.coeff * (std::exp(term.rate * (T - term.anchor)) * ebt
                               - std::exp(term.rate * (t - term.anchor))) / d;
        }
    }
    return v;
}

namespace {

std::vector<double> zeros(int n) { return std::vector<double>(n, 0.0); }

EquilibriumSolution make_inst_cost_solution(const ModelParams& params, const CostSpec& spec,
                                            const ConstantsTable& c, double k_dev, double k_mean) {
    // Shared builder for games A and A'. The strategies are
    //   dev(t)  = 1 - k_dev  [beta t + (lambda/(eps z3)) (e^{z3 (t-T)} - e^{-z3 T})]
    //   mean(t) = 1 - k_mean [beta rho_- t + (e^{z1 t}-1)/z1 - (g1/g2)(e^{z2 t}-1)/z2]
    // with k_dev = (phi/eps)/xi, k_mean = (phi/eps)/psi for A and
    // k_dev = 1/Xi, k_mean = 1/Psi for A'.
    EquilibriumSolution s;
    s.variant = spec.variant;
    s.params = params;
    s.spec = spec;
    s.mean_x = mean_inventory(params);
    s.dev_x = deviations(params);
    s.table = c;

    const double T = params.horizon;
    const double lam_ez3 = c.lambda / (c.eps * c.z3);
    const double e3mT = std::exp(-c.z3 * T);

    s.dev.c0 = 1.0 + k_dev * lam_ez3 * e3mT;
    s.dev.c1 = -k_dev * c.beta;
    s.dev.terms = {{-k_dev * lam_ez3, c.z3, T}};

    const double G = c.gamma_ratio;
    s.mean.c0 = 1.0 + k_mean * (1.0 / c.z1 - G / c.z2);
    s.mean.c1 = -k_mean * c.beta * c.rho_minus;
    s.mean.terms = {{-k_mean / c.z1, c.z1, 0.0}, {k_mean * G / c.z2, c.z2, 0.0}};

    s.dev_rate = s.dev.derivative();
    s.mean_rate = s.mean.derivative();

    const double devT = s.dev(T);
    const double meanT = s.mean(T);
    s.dev_sides = {1.0, 1.0, devT, devT};
    s.mean_sides = {1.0, 1.0, meanT, meanT};

    const int n = params.n_traders;
    s.jump0 = zeros(n);
    s.jumpT = zeros(n);
    s.terminal_inventory = zeros(n);
    return s;
}

} // namespace

EquilibriumSolution solve_A(const ModelParams& params, double eps, double phi) {
    validate(params, CostSpec::make_A(eps, phi));
    const ConstantsTable c = eval_constants(params, eps, phi);
    const double k_dev = (phi / eps) / c.xi;
    const double k_mean = (phi / eps) / c.psi;
    EquilibriumSolution s = make_inst_cost_solution(params, CostSpec::make_A(eps, phi), c, k_dev, k_mean);

    // X_T^i = (z3/xi)(x^i - xbar) + (p/psi) xbar; pin the sides to the same values
    const double devT = c.z3 / c.xi;
    const double meanT = c.p_frak / c.psi;
    s.dev_sides.preT = s.dev_sides.atT = devT;
    s.mean_sides.preT = s.mean_sides.atT = meanT;
    for (int i = 0; i < params.n_traders; ++i)
        s.terminal_inventory[i] = devT * s.dev_x[i] + meanT * s.mean_x;
    return s;
}

EquilibriumSolution solve_Aprime(const ModelParams& params, double eps) {
    validate(params, CostSpec::make_APrime(eps));
    const ConstantsTable c = eval_constants(params, eps, std::nullopt);
    EquilibriumSolution s = make_inst_cost_solution(params, CostSpec::make_APrime(eps), c,
                                                    1.0 / c.Xi, 1.0 / c.Psi);
    // full liquidation holds exactly by construction
    s.dev_sides.preT = s.dev_sides.atT = 0.0;
    s.mean_sides.preT = s.mean_sides.atT = 0.0;
    return s;
}

SolveBResult solve_B(const ModelParams& params, double theta0, double thetaT,
                     const BGateTolerances& tol) {
    validate(params, CostSpec::make_B(theta0, thetaT));

    const double lambda = params.lambda;
    const double beta = params.beta;
    const double T = params.horizon;
    const double N = params.n_traders;

    const double xbar = mean_inventory(params);
    const std::vector<double> dev = deviations(params);
    double xinf = 0.0, devinf = 0.0;
    for (double v : params.inventories) xinf = std::max(xinf, std::abs(v));
    for (double v : dev) devinf = std::max(devinf, std::abs(v));
    const double x_scale = tol.tol_x * std::max(1.0, xinf);

    const bool match0 = std::abs(theta0 - lambda * (N - 1) / 2.0) <= tol.tol_theta * lambda;
    const bool matchT = std::abs(thetaT - lambda / 2.0) <= tol.tol_theta * lambda;
    const bool mean_ok = std::abs(xbar) <= x_scale;
    const bool dev_ok = devinf <= x_scale;

    if (!match0 || !matchT) {
        const bool bad0 = !match0 && !mean_ok;
        const bool badT = !matchT && !dev_ok;
        if (bad0 || badT) {
            NoEquilibrium no;
            std::ostringstream w;
            if (bad0 && badT) {
                no.reason = NoEquilibrium::Reason::WrongBoth;
                w << "theta0 != lambda(N-1)/2 with mean inventory " << xbar
                  << " != 0, and thetaT != lambda/2 with unequal inventories (max deviation "
                  << devinf << ")";
            } else if (bad0) {
                no.reason = NoEquilibrium::Reason::WrongTheta0;
                w << "theta0 != lambda(N-1)/2 requires zero mean inventory, got " << xbar;
            } else {
                no.reason = NoEquilibrium::Reason::WrongThetaT;
                w << "thetaT != lambda/2 requires equal inventories, max deviation " << devinf;
            }
            no.witness = w.str();
            return no;
        }
    }

    EquilibriumSolution s;
    s.variant = CostSpec::Variant::B;
    s.params = params;
    s.spec = CostSpec::make_B(theta0, thetaT);
    // project onto the exact degenerate case so the consistency equations
    // hold with the supplied thetas
    s.mean_x = match0 ? xbar : 0.0;
    s.dev_x = matchT ? dev : zeros(params.n_traders);

    // zz = beta (N+1)/(N-1); all formulas divided through by e^{zz T}
    const double zz = beta * (N + 1) / (N - 1);
    const double ezm = std::exp(-zz * T);
    const double Dt = N * ((beta * T + 1) * (N + 1) + 2.0) - (N - 1) * ezm;

    s.dev.c0 = 1.0;
    s.dev.c1 = -beta / (beta * T + 1.0);
    s.dev_rate = s.dev.derivative();
    s.dev_sides = {1.0, 1.0, 1.0 / (beta * T + 1.0), 0.0};

    s.mean.c0 = 1.0 - (N * (N + 1) - (N - 1) * ezm) / Dt;
    s.mean.c1 = -N * (N + 1) * beta / Dt;
    s.mean.terms = {{-2.0 * N / Dt, zz, T}};
    s.mean_rate = s.mean.derivative();
    // the mean part has no terminal jump (the b^i sum to zero): interior
    // formula reaches 0 at T; pin it exactly
    s.mean_sides = {1.0, s.mean(0.0), 0.0, 0.0};

    const double a_coeff = -(N + 1) * (N + ezm) / Dt;  // = mean(0) - 1
    s.jump0.assign(params.n_traders, a_coeff * s.mean_x);
    s.jumpT.resize(params.n_traders);
    for (int i = 0; i < params.n_traders; ++i) s.jumpT[i] = -s.dev_x[i] / (1.0 + beta * T);
    s.terminal_inventory = zeros(params.n_traders);
    return s;
}

ImpactPath impact_path(const ModelParams& params, const CostSpec& spec,
                       const EquilibriumSolution& solution) {
    ImpactPath path;
    const double xbar = solution.mean_x;
    if (spec.variant == CostSpec::Variant::B) {
        const double beta = params.beta, T = params.horizon, N = params.n_traders;
        const double zz = beta * (N + 1) / (N - 1);
        const double ezm = std::exp(-zz * T);
        const double Dt = N * ((beta * T + 1) * (N + 1) + 2.0) - (N - 1) * ezm;
        const double k = params.lambda * N * (N + 1) / Dt * xbar;
        path.values.c0 = -k * N;
        path.values.terms = {{-k, zz, T}};
        double jump_sum = 0.0;
        for (double a : solution.jump0) jump_sum += a;
        path.jump_at_0 = params.lambda * jump_sum;
        path.jump_at_T = 0.0;  // lambda sum b^i, and the b^i sum to zero
        path.pre0 = 0.0;
        return path;
    }

    const ConstantsTable& c = *solution.table;
    const double k = (spec.variant == CostSpec::Variant::A)
                   ? (*c.phi / c.eps) / c.psi
                   : 1.0 / c.Psi;
    const double G = c.gamma_ratio;
    const double amp = -params.n_traders * params.lambda * k * xbar;
    path.values.c0 = amp * c.rho_minus;
    path.values.terms = {{amp / (c.z1 + c.beta), c.z1, 0.0},
                         {-amp * G / (c.z2 + c.beta), c.z2, 0.0}};
    path.pre0 = path.values(0.0);  // zero up to rounding
    return path;
}

SampledPaths sample(const EquilibriumSolution& solution, const TimeGrid& grid) {
    const int n = solution.params.n_traders;
    const int m = grid.n_steps;
    SampledPaths out;
    out.t = grid.nodes();
    out.inventories.assign(n, std::vector<double>(m + 1, 0.0));
    out.pre0.resize(n);
    out.preT.resize(n);
    for (int i = 0; i < n; ++i) {
        out.pre0[i] = solution.inventory_pre0(i);
        out.preT[i] = solution.inventory_preT(i);
        out.inventories[i][0] = solution.inventory_at0(i);
        for (int k = 1; k < m; ++k) out.inventories[i][k] = solution.inventory(i, out.t[k]);
        out.inventories[i][m] = solution.inventory_atT(i);
    }
    return out;
}

} // namespace owg
