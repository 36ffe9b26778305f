#include "owg/analytics.hpp"

#include <cmath>

namespace owg {

namespace {

// Shared kernel of the population impact cost, with numerator and
// denominator both rescaled by e^{-2 zz T} (zz = beta (N+1)/(N-1)) so the
// expression survives beta T in the thousands.
double pic_ratio(double beta, double horizon, double n) {
    const double bt = beta * horizon;
    const double zz = beta * (n + 1.0) / (n - 1.0);
    const double ezm = std::exp(-zz * horizon);
    const double num = ((bt + 0.5) * (n + 1.0) + 3.0)
                     - 2.0 * (n - 1.0) / (n * n) * (n * ezm + 0.25 * ezm * ezm);
    const double den = n * ((bt + 1.0) * (n + 1.0) + 2.0) - (n - 1.0) * ezm;
    return n * n * (n + 1.0) * num / (den * den);
}

void check_population(double beta, double horizon, double n, bool allow_one) {
    if (!(beta > 0.0)) throw invalid_parameter("beta", "must be positive");
    if (!(horizon > 0.0)) throw invalid_parameter("T", "must be positive");
    const double lo = allow_one ? 1.0 : 1.0 + 1e-12;
    if (!(n >= lo)) throw invalid_parameter("n", "population must exceed 1 for the game");
}

} // namespace

double pic(double lambda, double beta, double horizon, double n, double x_net) {
    check_population(beta, horizon, n, true);
    if (n == 1.0) return lambda * x_net * x_net / (beta * horizon + 2.0);
    return lambda * pic_ratio(beta, horizon, n) * x_net * x_net;
}

double coa(double beta, double horizon, double n) {
    check_population(beta, horizon, n, false);
    return pic_ratio(beta, horizon, n) * (beta * horizon + 2.0) - 1.0;
}

double coa_limit_n(double beta, double horizon) {
    const double bt = beta * horizon;
    return bt / (2.0 * (bt + 1.0) * (bt + 1.0));
}

double lic(double lambda, double beta, double horizon, double n, double x) {
    check_population(beta, horizon, n, true);
    if (n == 1.0) return lambda * x * x / (beta * horizon + 2.0);
    const double friction = (n - 1.0) / (n * (beta * horizon + 1.0));
    return lambda * (friction + pic_ratio(beta, horizon, n) / n) * x * x;
}

PredationReport cop(double lambda, double beta, double horizon, double n, double x) {
    check_population(beta, horizon, n, false);
    PredationReport r;
    r.lic_n = lic(lambda, beta, horizon, n, x);
    r.friction_term = (n - 1.0) / (n * (beta * horizon + 1.0));
    r.coa_share = coa(beta, horizon, n) / n;
    r.cop = r.lic_n / lic(lambda, beta, horizon, 1.0, x) - 1.0;
    return r;
}

AnarchyReport anarchy_report(const ModelParams& params, double x_net) {
    AnarchyReport r;
    r.pic_n = pic(params.lambda, params.beta, params.horizon, params.n_traders, x_net);
    r.pic_1 = pic(params.lambda, params.beta, params.horizon, 1.0, x_net);
    if (x_net == 0.0)
        throw invalid_parameter("x", "cost of anarchy is undefined for zero net inventory");
    r.coa = coa(params.beta, params.horizon, params.n_traders);
    return r;
}

} // namespace owg
